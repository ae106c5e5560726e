//! Farey fractions of order x (here `0 < b ≤ c ≤ x`, so 1/1 is included and
//! 0/1 is not), Euler's totient and its summatory function `Φ(x)`.

use thiserror::Error;

use crate::integrand::Integrand;
use crate::sum::CompensatedSum;

/// Largest table the sieve will allocate.
pub const MAX_SIEVE_LIMIT: u64 = 100_000_000;
/// Largest order [`farey_sequence`] will materialize (`Φ(10⁴) ≈ 3·10⁷`).
pub const MAX_MATERIALIZED_ORDER: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FareyError {
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("order {order} exceeds the capacity limit {limit}")]
    Capacity { order: u64, limit: u64 },
    #[error("integer overflow while stepping the Farey recurrence at order {order}")]
    Overflow { order: u64 },
    #[error("integrand `{label}` is not finite at {num}/{den}")]
    NonFinite { label: String, num: u64, den: u64 },
}

/// Reduced fraction `num / den`; ordering is by value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: u64,
    pub den: u64,
}

impl Fraction {
    pub const fn new(num: u64, den: u64) -> Self {
        Self { num, den }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl std::fmt::Display for Fraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// `values[n] = φ(n)` for `1 ≤ n ≤ limit` (index 0 unused, holds 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotientTable {
    limit: u64,
    values: Vec<u64>,
}

impl TotientTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// φ(n); `None` outside `1..=limit`.
    pub fn phi(&self, n: u64) -> Option<u64> {
        if n == 0 || n > self.limit {
            None
        } else {
            Some(self.values[n as usize])
        }
    }

    /// φ(1), ..., φ(limit).
    pub fn values(&self) -> &[u64] {
        &self.values[1..]
    }

    /// `Φ(x) = Σ_{n ≤ x} φ(n)` for `x ≤ limit`.
    pub fn summatory(&self, x: u64) -> Option<u64> {
        if x == 0 || x > self.limit {
            return None;
        }
        Some(self.values[1..=x as usize].iter().sum())
    }
}

/// Linear sieve: every composite is crossed out exactly once, by its smallest
/// prime factor.
pub fn totient_sieve(x: u64) -> Result<TotientTable, FareyError> {
    if x == 0 {
        return Err(FareyError::ZeroOrder);
    }
    if x > MAX_SIEVE_LIMIT {
        return Err(FareyError::Capacity {
            order: x,
            limit: MAX_SIEVE_LIMIT,
        });
    }
    let n = x as usize;
    let mut phi = vec![0u64; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    phi[1] = 1;
    for i in 2..=n {
        if phi[i] == 0 {
            phi[i] = (i - 1) as u64;
            primes.push(i);
        }
        for &p in &primes {
            let ip = i * p;
            if ip > n {
                break;
            }
            if i % p == 0 {
                phi[ip] = phi[i] * p as u64;
                break;
            }
            phi[ip] = phi[i] * (p as u64 - 1);
        }
    }
    Ok(TotientTable {
        limit: x,
        values: phi,
    })
}

/// `Φ(x)`, the number of terms of the Farey sequence of order x.
pub fn phi_summatory(x: u64) -> Result<u64, FareyError> {
    let table = totient_sieve(x)?;
    Ok(table.summatory(x).expect("x within table"))
}

/// Streaming traversal of the Farey sequence in ascending order, via the
/// neighbour recurrence: from consecutive `p/q < r/s`, the next term is
/// `(k r - p) / (k s - q)` with `k = ⌊(x + q) / s⌋`.
#[derive(Debug, Clone)]
pub struct FareyIter {
    order: u64,
    prev: Option<Fraction>,
    last: Option<Fraction>,
    done: bool,
}

impl FareyIter {
    pub fn new(order: u64) -> Result<Self, FareyError> {
        if order == 0 {
            return Err(FareyError::ZeroOrder);
        }
        Ok(Self {
            order,
            prev: None,
            last: None,
            done: false,
        })
    }

    fn step(&self, p: Fraction, r: Fraction) -> Result<Fraction, FareyError> {
        let x = self.order;
        let overflow = || FareyError::Overflow { order: x };
        let k = x.checked_add(p.den).ok_or_else(overflow)? / r.den;
        let num = k
            .checked_mul(r.num)
            .and_then(|v| v.checked_sub(p.num))
            .ok_or_else(overflow)?;
        let den = k
            .checked_mul(r.den)
            .and_then(|v| v.checked_sub(p.den))
            .ok_or_else(overflow)?;
        Ok(Fraction::new(num, den))
    }
}

impl Iterator for FareyIter {
    type Item = Result<Fraction, FareyError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let next = match (self.prev, self.last) {
            (_, None) => Fraction::new(1, self.order),
            (_, Some(l)) if l.num == l.den => {
                self.done = true;
                return None;
            }
            // 1/x is followed by 1/(x-1); x ≥ 2 here since 1/x ≠ 1/1
            (None, Some(_)) => Fraction::new(1, self.order - 1),
            (Some(p), Some(l)) => match self.step(p, l) {
                Ok(f) => f,
                Err(e) => {
                    self.done = true;
                    return Some(Err(e));
                }
            },
        };
        self.prev = self.last;
        self.last = Some(next);
        Some(Ok(next))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareySequence {
    order: u64,
    fractions: Vec<Fraction>,
}

impl FareySequence {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn fractions(&self) -> &[Fraction] {
        &self.fractions
    }

    /// `Φ(x)`.
    pub fn count(&self) -> u64 {
        self.fractions.len() as u64
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Fraction> {
        self.fractions.iter()
    }
}

impl<'a> IntoIterator for &'a FareySequence {
    type Item = &'a Fraction;
    type IntoIter = std::slice::Iter<'a, Fraction>;

    fn into_iter(self) -> Self::IntoIter {
        self.fractions.iter()
    }
}

pub fn farey_sequence(x: u64) -> Result<FareySequence, FareyError> {
    if x > MAX_MATERIALIZED_ORDER {
        return Err(FareyError::Capacity {
            order: x,
            limit: MAX_MATERIALIZED_ORDER,
        });
    }
    let fractions = FareyIter::new(x)?.collect::<Result<Vec<_>, _>>()?;
    Ok(FareySequence {
        order: x,
        fractions,
    })
}

fn farey_mean<I>(f: &Integrand, fractions: I) -> Result<f64, FareyError>
where
    I: IntoIterator<Item = Result<Fraction, FareyError>>,
{
    let mut acc = CompensatedSum::new();
    let mut count = 0u64;
    for fr in fractions {
        let fr = fr?;
        let v = f.eval_ratio(fr.num, fr.den);
        if !v.is_finite() {
            return Err(FareyError::NonFinite {
                label: f.label().to_string(),
                num: fr.num,
                den: fr.den,
            });
        }
        acc += v;
        count += 1;
    }
    Ok(acc.value() / count as f64)
}

/// Mean of `f` over the materialized Farey sequence of order x.
pub fn weyl_average(f: &Integrand, x: u64) -> Result<f64, FareyError> {
    let seq = farey_sequence(x)?;
    farey_mean(f, seq.iter().copied().map(Ok))
}

/// Same as [`weyl_average`] without materializing the sequence; no order cap.
pub fn weyl_average_streaming(f: &Integrand, x: u64) -> Result<f64, FareyError> {
    farey_mean(f, FareyIter::new(x)?)
}

/// Fraction of pairs in `[1, N]²` that are coprime, `(2Φ(N) - 1) / N²`.
pub fn coprime_density(n: u64) -> Result<f64, FareyError> {
    let phi = phi_summatory(n)?;
    let nf = n as f64;
    Ok((2 * phi - 1) as f64 / (nf * nf))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }

    #[test]
    fn sieve_small() {
        let t = totient_sieve(1).unwrap();
        assert_eq!(t.values(), &[1]);
        let t = totient_sieve(10).unwrap();
        assert_eq!(t.values(), &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4]);
        assert_eq!(t.phi(10), Some(4));
        assert_eq!(t.phi(0), None);
        assert_eq!(t.phi(11), None);
    }

    #[test]
    fn sieve_divisor_sum() {
        let t = totient_sieve(2000).unwrap();
        for n in 1..=2000u64 {
            let s: u64 = (1..=n)
                .filter(|d| n % d == 0)
                .map(|d| t.phi(d).unwrap())
                .sum();
            assert_eq!(s, n);
        }
        // primes
        for p in [2u64, 3, 5, 7, 97, 1999] {
            assert_eq!(t.phi(p), Some(p - 1));
        }
    }

    #[test]
    fn sieve_errors() {
        assert_eq!(totient_sieve(0), Err(FareyError::ZeroOrder));
        assert!(matches!(
            totient_sieve(MAX_SIEVE_LIMIT + 1),
            Err(FareyError::Capacity { .. })
        ));
    }

    #[test]
    fn summatory_small() {
        assert_eq!(phi_summatory(1).unwrap(), 1);
        assert_eq!(phi_summatory(5).unwrap(), 10);
        let brute = (1..=5u64)
            .flat_map(|c| (1..=c).map(move |b| (b, c)))
            .filter(|&(b, c)| gcd(b, c) == 1)
            .count();
        assert_eq!(brute, 10);
    }

    #[test]
    fn sequence_examples() {
        let s = farey_sequence(1).unwrap();
        assert_eq!(s.fractions(), &[Fraction::new(1, 1)]);
        let s = farey_sequence(2).unwrap();
        assert_eq!(s.fractions(), &[Fraction::new(1, 2), Fraction::new(1, 1)]);
        let s = farey_sequence(3).unwrap();
        assert_eq!(
            s.fractions(),
            &[
                Fraction::new(1, 3),
                Fraction::new(1, 2),
                Fraction::new(2, 3),
                Fraction::new(1, 1)
            ]
        );
        let s = farey_sequence(5).unwrap();
        assert_eq!(s.count(), 10);
        assert_eq!(s.fractions()[0], Fraction::new(1, 5));
        assert_eq!(*s.fractions().last().unwrap(), Fraction::new(1, 1));
    }

    #[test]
    fn sequence_capacity() {
        assert!(matches!(
            farey_sequence(MAX_MATERIALIZED_ORDER + 1),
            Err(FareyError::Capacity { .. })
        ));
        assert_eq!(farey_sequence(0).unwrap_err(), FareyError::ZeroOrder);
    }

    #[test]
    fn overflow_is_reported_not_wrapped() {
        let mut it = FareyIter::new(u64::MAX).unwrap();
        assert_eq!(it.next(), Some(Ok(Fraction::new(1, u64::MAX))));
        assert_eq!(it.next(), Some(Ok(Fraction::new(1, u64::MAX - 1))));
        assert_eq!(
            it.next(),
            Some(Err(FareyError::Overflow { order: u64::MAX }))
        );
        assert_eq!(it.next(), None);
    }

    #[test]
    fn weyl_examples() {
        let id = Integrand::identity();
        assert_eq!(
            weyl_average(&Integrand::exp(), 1).unwrap(),
            std::f64::consts::E
        );
        assert!((weyl_average(&id, 5).unwrap() - 0.55).abs() < 1e-15);
        let e1 = std::f64::consts::E - 1.0;
        assert!((weyl_average(&Integrand::exp(), 200).unwrap() - e1).abs() <= 0.02);
    }

    #[test]
    fn streaming_matches_materialized_bitwise() {
        for f in [Integrand::exp(), Integrand::ln_gamma()] {
            let a = weyl_average(&f, 500).unwrap();
            let b = weyl_average_streaming(&f, 500).unwrap();
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn density_examples() {
        assert_eq!(coprime_density(1).unwrap(), 1.0);
        assert_eq!(coprime_density(2).unwrap(), 0.75);
    }

    #[test]
    fn fraction_ordering() {
        assert!(Fraction::new(1, 3) < Fraction::new(1, 2));
        assert!(Fraction::new(2, 3) > Fraction::new(1, 2));
        assert_eq!(
            Fraction::new(1, 2).cmp(&Fraction::new(2, 4)),
            std::cmp::Ordering::Equal
        );
        assert_eq!(Fraction::new(3, 7).to_string(), "3/7");
    }
}
