//! ±1 matrices, the Sylvester construction, and the oscillation bound that
//! rules out realizing a large symmetric Hadamard matrix as `A_{f,n}` with a
//! Riemann integrable `f`.
//!
//! If rows `n-1` and `n` come from `f(i/(n-1))` and `f(i/n)`, every column
//! `i ≤ n-1` where they disagree puts a jump of height 2 inside
//! `[i/n, (i+1)/n]`. The upper-minus-lower Darboux sum on the uniform
//! partition is then at least `2 · #I₀ / n`.

use thiserror::Error;

use crate::eigen::DenseSymmetric;

/// Largest Sylvester exponent accepted (order 2048).
pub const MAX_SYLVESTER_K: u32 = 11;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HadamardError {
    #[error("order 2^{k} exceeds the dense limit 2^{max}")]
    Capacity { k: u32, max: u32 },
    #[error("matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("oscillation bound needs order >= 2, got {0}")]
    TooSmall(usize),
    #[error("entry ({i}, {j}) is {value}, expected +1 or -1")]
    NotSign { i: usize, j: usize, value: i64 },
    #[error("rows must be non-empty and square")]
    NotSquare,
}

/// Square matrix of ±1 entries, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    order: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, HadamardError> {
        let n = rows.len();
        if n == 0 {
            return Err(HadamardError::NotSquare);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(HadamardError::NotSquare);
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    1 => entries.push(1),
                    -1 => entries.push(-1),
                    value => return Err(HadamardError::NotSign { i, j, value }),
                }
            }
        }
        Ok(Self { order: n, entries })
    }

    pub fn filled(order: usize, value: i8) -> Self {
        assert!(value == 1 || value == -1);
        Self {
            order,
            entries: vec![value; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry `(i, j)`, 0-based.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.order + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.entries.chunks_exact(self.order)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows()
            .map(|r| r.iter().map(|&v| v as i64).collect())
            .collect()
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        let idx = i * self.order + j;
        self.entries[idx] = -self.entries[idx];
    }

    pub fn negate_row(&mut self, i: usize) {
        let n = self.order;
        for v in &mut self.entries[i * n..(i + 1) * n] {
            *v = -*v;
        }
    }

    /// `P M Pᵀ` for the permutation `perm` (row/column `i` of the result is
    /// row/column `perm[i]` of `self`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.order;
        assert_eq!(perm.len(), n);
        let mut entries = Vec::with_capacity(n * n);
        for &pi in perm {
            for &pj in perm {
                entries.push(self.get(pi, pj));
            }
        }
        Self { order: n, entries }
    }

    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// As a floating-point symmetric matrix, for the eigenvalue cross-check.
    pub fn to_dense_symmetric(&self) -> Result<DenseSymmetric, HadamardError> {
        if let Some((i, j)) = self.first_asymmetry() {
            return Err(HadamardError::NotSymmetric { i, j });
        }
        Ok(
            DenseSymmetric::from_lower_fn(self.order, |i, j| self.get(i, j) as f64)
                .expect("order >= 1 and entries finite"),
        )
    }
}

/// `H_{2^k}` from `H_1 = [1]` and `H_{2m} = [[H, H], [H, -H]]`.
pub fn sylvester(k: u32) -> Result<SignMatrix, HadamardError> {
    if k > MAX_SYLVESTER_K {
        return Err(HadamardError::Capacity {
            k,
            max: MAX_SYLVESTER_K,
        });
    }
    let mut m = SignMatrix {
        order: 1,
        entries: vec![1],
    };
    for _ in 0..k {
        let h = m.order;
        let n = 2 * h;
        let mut entries = vec![0i8; n * n];
        for i in 0..h {
            for j in 0..h {
                let v = m.get(i, j);
                entries[i * n + j] = v;
                entries[i * n + j + h] = v;
                entries[(i + h) * n + j] = v;
                entries[(i + h) * n + j + h] = -v;
            }
        }
        m = SignMatrix { order: n, entries };
    }
    Ok(m)
}

/// True iff `M Mᵀ = n I` exactly.
pub fn is_hadamard(m: &SignMatrix) -> bool {
    let n = m.order;
    let rows: Vec<&[i8]> = m.rows().collect();
    for i in 0..n {
        for j in i..n {
            let dot: i64 = rows[i]
                .iter()
                .zip(rows[j])
                .map(|(&a, &b)| (a as i64) * (b as i64))
                .sum();
            let want = if i == j { n as i64 } else { 0 };
            if dot != want {
                return false;
            }
        }
    }
    true
}

/// Squared Frobenius norm, `Σ m_ij²`; always `n²` for a sign matrix.
pub fn spectral_sum_sq(m: &SignMatrix) -> u64 {
    m.entries
        .iter()
        .map(|&v| (v as i64 * v as i64) as u64)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// The Darboux gap exceeds 1/2: no Riemann integrable `f` can produce this
    /// matrix at this order.
    ExceedsHalf,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ExceedsHalf => "exceeds_half",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationReport {
    pub order: usize,
    /// `#I₀`
    pub mismatch_count: usize,
    /// `2 · #I₀ / n`
    pub lower_bound: f64,
    pub verdict: Verdict,
}

/// Count the columns `i ≤ n-1` where the last two rows disagree.
pub fn oscillation_bound(m: &SignMatrix) -> Result<OscillationReport, HadamardError> {
    let n = m.order;
    if n < 2 {
        return Err(HadamardError::TooSmall(n));
    }
    if let Some((i, j)) = m.first_asymmetry() {
        return Err(HadamardError::NotSymmetric { i, j });
    }
    let mismatch_count = (0..n - 1)
        .filter(|&i| m.get(n - 2, i) as i32 * m.get(n - 1, i) as i32 == -1)
        .count();
    // exact comparison: 2c/n > 1/2  <=>  4c > n
    let verdict = if 4 * mismatch_count > n {
        Verdict::ExceedsHalf
    } else {
        Verdict::Inconclusive
    };
    Ok(OscillationReport {
        order: n,
        mismatch_count,
        lower_bound: 2.0 * mismatch_count as f64 / n as f64,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small() {
        assert_eq!(sylvester(0).unwrap().to_rows(), vec![vec![1]]);
        assert_eq!(
            sylvester(1).unwrap().to_rows(),
            vec![vec![1, 1], vec![1, -1]]
        );
        let h8 = sylvester(3).unwrap();
        assert_eq!(h8.order(), 8);
        assert!(h8.is_symmetric());
        assert!(is_hadamard(&h8));
        assert!(matches!(sylvester(12), Err(HadamardError::Capacity { .. })));
    }

    #[test]
    fn hadamard_checks() {
        assert!(is_hadamard(&sylvester(1).unwrap()));
        assert!(!is_hadamard(&SignMatrix::filled(2, 1)));
        let mut h = sylvester(5).unwrap();
        h.flip(7, 19);
        assert!(!is_hadamard(&h));
    }

    #[test]
    fn from_rows_validation() {
        assert!(SignMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).is_err());
        assert!(SignMatrix::from_rows(&[vec![1, 1]]).is_err());
        let empty: [Vec<i64>; 0] = [];
        assert!(SignMatrix::from_rows(&empty).is_err());
    }

    #[test]
    fn spectral_sums() {
        assert_eq!(spectral_sum_sq(&sylvester(0).unwrap()), 1);
        assert_eq!(spectral_sum_sq(&sylvester(2).unwrap()), 16);
        assert_eq!(spectral_sum_sq(&sylvester(4).unwrap()), 256);
    }

    #[test]
    fn oscillation_examples() {
        let r = oscillation_bound(&sylvester(2).unwrap()).unwrap();
        assert_eq!(r.mismatch_count, 1);
        assert_eq!(r.lower_bound, 0.5);
        assert_eq!(r.verdict, Verdict::Inconclusive);

        let r = oscillation_bound(&sylvester(3).unwrap()).unwrap();
        assert_eq!(r.mismatch_count, 3);
        assert_eq!(r.lower_bound, 0.75);
        assert_eq!(r.verdict, Verdict::ExceedsHalf);

        let r = oscillation_bound(&SignMatrix::filled(2, 1)).unwrap();
        assert_eq!(r.mismatch_count, 0);
        assert_eq!(r.lower_bound, 0.0);
    }

    #[test]
    fn oscillation_preconditions() {
        assert_eq!(
            oscillation_bound(&sylvester(0).unwrap()),
            Err(HadamardError::TooSmall(1))
        );
        let asym = SignMatrix::from_rows(&[vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!(
            oscillation_bound(&asym),
            Err(HadamardError::NotSymmetric { i: 1, j: 0 })
        );
    }
}
