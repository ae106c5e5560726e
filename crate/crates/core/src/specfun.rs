//! Log-Gamma and the Gamma/sine identities built on it.
//!
//! `ln Γ` is evaluated with a Lanczos approximation (g = 7, nine terms) for
//! `x ≥ 1/2` and the reflection formula `Γ(x)Γ(1-x) = π / sin(πx)` below that.
//! The closed partial form of `∫₀¹ ln Γ` deliberately avoids the evaluator so
//! the two routes to that integral stay independent.

use std::f64::consts::{LN_2, PI};

use thiserror::Error;

use crate::integrand::Integrand;
use crate::matrix::{norm_power, MatrixError, SampledMatrixSpec};
use crate::sum::CompensatedSum;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("{op}: argument {arg} outside the domain {domain}")]
    Domain {
        op: &'static str,
        arg: f64,
        domain: &'static str,
    },
}

fn domain(op: &'static str, arg: f64, domain: &'static str) -> SpecFunError {
    SpecFunError::Domain { op, arg, domain }
}

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_SQRT_PI: f64 = 0.572_364_942_924_700_1;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Fixed-coefficient Lanczos evaluator for `ln Γ` on the positive reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaEvaluator {
    coefficients: &'static [f64],
    shift: f64,
}

impl Default for GammaEvaluator {
    fn default() -> Self {
        Self::lanczos()
    }
}

impl GammaEvaluator {
    pub const fn lanczos() -> Self {
        Self {
            coefficients: &LANCZOS_COEFFS,
            shift: LANCZOS_G,
        }
    }

    pub fn coefficients(&self) -> &[f64] {
        self.coefficients
    }

    pub fn shift(&self) -> f64 {
        self.shift
    }

    pub fn ln_gamma(&self, x: f64) -> Result<f64, SpecFunError> {
        if x.is_nan() || x <= 0.0 || x.is_infinite() {
            return Err(domain("ln_gamma", x, "x > 0"));
        }
        if x < 0.5 {
            // ln Γ(x) = ln(π / sin πx) - ln Γ(1 - x)
            let sin = (PI * x).sin();
            return Ok((PI / sin).ln() - self.lanczos_ln(1.0 - x));
        }
        Ok(self.lanczos_ln(x))
    }

    /// Valid for x ≥ 1/2.
    fn lanczos_ln(&self, x: f64) -> f64 {
        let z = x - 1.0;
        let (head, tail) = self.coefficients.split_first().expect("non-empty table");
        let series: f64 = *head
            + tail
                .iter()
                .enumerate()
                .map(|(i, c)| c / (z + (i + 1) as f64))
                .sum::<f64>();
        let t = z + self.shift + 0.5;
        LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
    }
}

static EVALUATOR: GammaEvaluator = GammaEvaluator::lanczos();

/// `ln Γ(x)` for `x > 0` with the default evaluator.
pub fn ln_gamma(x: f64) -> Result<f64, SpecFunError> {
    EVALUATOR.ln_gamma(x)
}

/// `ln Γ(s) + ln Γ(1-s) - ln(π / sin πs)` for `0 < s < 1`.
pub fn euler_reflection_residual(s: f64) -> Result<f64, SpecFunError> {
    if !(s > 0.0 && s < 1.0) {
        return Err(domain("euler_reflection_residual", s, "0 < s < 1"));
    }
    let rhs = (PI / (PI * s).sin()).ln();
    Ok(ln_gamma(s)? + ln_gamma(1.0 - s)? - rhs)
}

/// Log-form residual of `√π Γ(2z) = 2^(2z-1) Γ(z) Γ(z + 1/2)`.
pub fn duplication_residual(z: f64) -> Result<f64, SpecFunError> {
    if z.is_nan() || z <= 0.0 || z.is_infinite() {
        return Err(domain("duplication_residual", z, "z > 0"));
    }
    let lhs = LN_SQRT_PI + ln_gamma(2.0 * z)?;
    let rhs = (2.0 * z - 1.0) * LN_2 + ln_gamma(z)? + ln_gamma(z + 0.5)?;
    Ok(lhs - rhs)
}

/// `Σ_{k=1..n} ln sin(kπ/d)`.
fn ln_sine_product(n: u64, d: u64) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        acc += (k as f64 * PI / d as f64).sin().ln();
    }
    acc.value()
}

/// `ln ∏_{j=1..⌊k/2⌋} sin(jπ/k)`, the half-product that both sine identities
/// reduce to. Equal to `ln(√k / √2^(k-1))` for every `k ≥ 2`.
pub fn ln_half_sine_product(k: u64) -> f64 {
    ln_sine_product(k / 2, k)
}

/// `(2n+1) - 2^(2n) ∏_{k=1..n} sin²(kπ/(2n+1))`.
pub fn sine_product_odd_residual(n: u64) -> f64 {
    let order = 2 * n + 1;
    let ln_rhs = (2 * n) as f64 * LN_2 + 2.0 * ln_sine_product(n, order);
    order as f64 - ln_rhs.exp()
}

/// `2n - 2^(2n-1) ∏_{k=1..n} sin²(kπ/(2n))`.
pub fn sine_product_even_residual(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let order = 2 * n;
    let ln_rhs = (2 * n - 1) as f64 * LN_2 + 2.0 * ln_sine_product(n, order);
    order as f64 - ln_rhs.exp()
}

/// `Σ_{j=1..k-1} ln Γ(j/k)`, which should equal `((k-1)/2) ln 2π - (1/2) ln k`.
pub fn gamma_row_log_product(k: u64) -> Result<f64, SpecFunError> {
    if k < 2 {
        return Err(domain("gamma_row_log_product", k as f64, "k >= 2"));
    }
    let mut acc = CompensatedSum::new();
    for j in 1..k {
        acc += ln_gamma(j as f64 / k as f64)?;
    }
    Ok(acc.value())
}

/// Closed form of [`gamma_row_log_product`].
pub fn gamma_row_log_product_closed(k: u64) -> f64 {
    let k = k as f64;
    0.5 * (k - 1.0) * (2.0 * PI).ln() - 0.5 * k.ln()
}

/// `(1/n²) [ (n(n-1)/2) ln 2π - ln n! ]`, with `ln n!` summed directly.
pub fn gamma_integral_closed_partial(n: u64) -> f64 {
    let nf = n as f64;
    let mut ln_fact = CompensatedSum::new();
    for k in 2..=n {
        ln_fact += (k as f64).ln();
    }
    let pairs = nf * (nf - 1.0) / 2.0;
    (pairs * (2.0 * PI).ln() - ln_fact.value()) / (nf * nf)
}

/// `(1/n²) ‖A_{lnΓ,n}‖₁`, computed through the sampled-matrix norm.
pub fn gamma_integral_via_matrix(n: u64) -> Result<f64, MatrixError> {
    let spec = SampledMatrixSpec::new(Integrand::ln_gamma(), n)?;
    let raw = norm_power(&spec, 1.0)?;
    let nf = n as f64;
    Ok(raw / (nf * nf))
}

/// `ln √(2π)`, the limit of both Gamma-integral routes.
pub fn ln_sqrt_two_pi() -> f64 {
    LN_SQRT_2PI
}
