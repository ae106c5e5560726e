//! Function-sampled symmetric matrices `A_{f,n}` with entries
//! `f(min(i,j) / max(i,j))`, and their entrywise m-norms.
//!
//! The full matrix is never built for norms. Row `k` of the lower triangle
//! holds `f(1/k), ..., f(k/k)`, so
//!
//! ```text
//! ‖A‖_m^m = 2 Σ_{k=1..n} Σ_{j=1..k} |f(j/k)|^m - n |f(1)|^m
//! ```
//!
//! Rows are summed in fixed blocks (possibly on several threads) and the block
//! partials are merged in ascending row order, so the result is bit-for-bit
//! the same whatever the thread count.

use rayon::prelude::*;
use thiserror::Error;

use crate::integrand::Integrand;
use crate::quadrature::{self, QuadratureError};
use crate::sum::CompensatedSum;

/// Rows per parallel work unit. Fixed so that block boundaries, and therefore
/// the merged result, never depend on the thread pool.
const ROW_BLOCK: u64 = 32;
const PARALLEL_THRESHOLD: u64 = 256;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatrixError {
    #[error("matrix order must be at least 1")]
    ZeroOrder,
    #[error("index ({i}, {j}) out of range for order {order} (indices are 1-based)")]
    IndexOutOfRange { i: u64, j: u64, order: u64 },
    #[error("integrand `{label}` is not finite at {num}/{den} (got {value})")]
    NonFinite {
        label: String,
        num: u64,
        den: u64,
        value: f64,
    },
    #[error("exponent m = {0} must be a finite real >= 1")]
    BadExponent(f64),
    #[error("orders must be non-empty and strictly increasing")]
    BadOrders,
    #[error("weighted Cesàro mean needs a non-empty sequence")]
    EmptySequence,
    #[error("term a_{index} = {value} is not finite")]
    NonFiniteTerm { index: usize, value: f64 },
    #[error("limit quadrature failed: {0}")]
    Quadrature(#[from] QuadratureError),
}

#[derive(Debug, Clone)]
pub struct SampledMatrixSpec {
    integrand: Integrand,
    order: u64,
}

impl SampledMatrixSpec {
    pub fn new(integrand: Integrand, order: u64) -> Result<Self, MatrixError> {
        if order == 0 {
            return Err(MatrixError::ZeroOrder);
        }
        Ok(Self { integrand, order })
    }

    pub fn integrand(&self) -> &Integrand {
        &self.integrand
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: u64, j: u64) -> Result<f64, MatrixError> {
        matrix_entry(self, i, j)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub order: u64,
    pub exponent: f64,
    /// `‖A‖_m^m`
    pub raw_norm_power: f64,
    /// `‖A‖_m^m / n²`
    pub normalized: f64,
    pub predicted_limit: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CesaroInput {
    pub terms: Vec<f64>,
    pub claimed_limit: f64,
}

impl CesaroInput {
    pub fn new(terms: Vec<f64>, claimed_limit: f64) -> Result<Self, MatrixError> {
        if terms.is_empty() {
            return Err(MatrixError::EmptySequence);
        }
        Ok(Self {
            terms,
            claimed_limit,
        })
    }

    /// The value the weighted mean should approach, `b / 2`.
    pub fn expected_limit(&self) -> f64 {
        0.5 * self.claimed_limit
    }
}

pub fn matrix_entry(spec: &SampledMatrixSpec, i: u64, j: u64) -> Result<f64, MatrixError> {
    let n = spec.order;
    if i == 0 || j == 0 || i > n || j > n {
        return Err(MatrixError::IndexOutOfRange { i, j, order: n });
    }
    Ok(spec.integrand.eval_ratio(i.min(j), i.max(j)))
}

fn check_exponent(m: f64) -> Result<(), MatrixError> {
    if m.is_finite() && m >= 1.0 {
        Ok(())
    } else {
        Err(MatrixError::BadExponent(m))
    }
}

#[inline]
fn abs_pow(v: f64, m: f64) -> f64 {
    let a = v.abs();
    if m == 1.0 {
        a
    } else if m == 2.0 {
        a * a
    } else {
        a.powf(m)
    }
}

fn sample(f: &Integrand, num: u64, den: u64) -> Result<f64, MatrixError> {
    let value = f.eval_ratio(num, den);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(MatrixError::NonFinite {
            label: f.label().to_string(),
            num,
            den,
            value,
        })
    }
}

/// Compensated sum of `|f(j/k)|^m` over rows `k in lo..=hi`, `j = 1..=k`.
fn triangle_block(f: &Integrand, m: f64, lo: u64, hi: u64) -> Result<CompensatedSum, MatrixError> {
    let mut acc = CompensatedSum::new();
    for k in lo..=hi {
        for j in 1..=k {
            acc += abs_pow(sample(f, j, k)?, m);
        }
    }
    Ok(acc)
}

fn triangle_sum(f: &Integrand, m: f64, n: u64, parallel: bool) -> Result<f64, MatrixError> {
    let blocks: Vec<(u64, u64)> = (0..n.div_ceil(ROW_BLOCK))
        .map(|b| (b * ROW_BLOCK + 1, ((b + 1) * ROW_BLOCK).min(n)))
        .collect();
    let partials: Vec<CompensatedSum> = if parallel {
        blocks
            .par_iter()
            .map(|&(lo, hi)| triangle_block(f, m, lo, hi))
            .collect::<Result<_, _>>()?
    } else {
        blocks
            .iter()
            .map(|&(lo, hi)| triangle_block(f, m, lo, hi))
            .collect::<Result<_, _>>()?
    };
    let mut total = CompensatedSum::new();
    for p in &partials {
        total.merge(p);
    }
    Ok(total.value())
}

fn norm_power_impl(spec: &SampledMatrixSpec, m: f64, parallel: bool) -> Result<f64, MatrixError> {
    check_exponent(m)?;
    let f = &spec.integrand;
    let n = spec.order;
    let diag = abs_pow(sample(f, 1, 1)?, m);
    let tri = triangle_sum(f, m, n, parallel)?;
    Ok(2.0 * tri - n as f64 * diag)
}

/// `‖A‖_m^m = Σ_{i,j} |a_ij|^m` from the lower triangle only.
///
/// Large orders are split across the rayon pool; the answer is identical to
/// [`norm_power_serial`].
pub fn norm_power(spec: &SampledMatrixSpec, m: f64) -> Result<f64, MatrixError> {
    norm_power_impl(spec, m, spec.order >= PARALLEL_THRESHOLD)
}

/// Single-threaded [`norm_power`].
pub fn norm_power_serial(spec: &SampledMatrixSpec, m: f64) -> Result<f64, MatrixError> {
    norm_power_impl(spec, m, false)
}

pub fn norm_report(
    spec: &SampledMatrixSpec,
    m: f64,
    predicted: f64,
) -> Result<NormReport, MatrixError> {
    let raw = norm_power(spec, m)?;
    let n = spec.order as f64;
    let normalized = raw / (n * n);
    Ok(NormReport {
        order: spec.order,
        exponent: m,
        raw_norm_power: raw,
        normalized,
        predicted_limit: predicted,
        abs_error: (normalized - predicted).abs(),
    })
}

/// `∫₀¹ |f(x)|^m dx` by adaptive Simpson (absolute tolerance 1e-10, never
/// sampling x = 0).
pub fn predict_limit(f: &Integrand, m: f64) -> Result<f64, MatrixError> {
    predict_limit_with_tol(f, m, quadrature::DEFAULT_TOL)
}

pub fn predict_limit_with_tol(f: &Integrand, m: f64, tol: f64) -> Result<f64, MatrixError> {
    check_exponent(m)?;
    let r = quadrature::integrate_unit_open(
        |t| abs_pow(f.eval(t), m),
        tol,
        quadrature::DEFAULT_PANEL_BUDGET,
    )?;
    Ok(r.value)
}

/// `(Σ_{k=1..n} k a_k) / n²`.
pub fn weighted_cesaro(input: &CesaroInput) -> Result<f64, MatrixError> {
    if input.terms.is_empty() {
        return Err(MatrixError::EmptySequence);
    }
    let mut acc = CompensatedSum::new();
    for (idx, &a) in input.terms.iter().enumerate() {
        if !a.is_finite() {
            return Err(MatrixError::NonFiniteTerm {
                index: idx + 1,
                value: a,
            });
        }
        acc += (idx + 1) as f64 * a;
    }
    let n = input.terms.len() as f64;
    Ok(acc.value() / (n * n))
}

/// Row means `a_k = (1/k) Σ_{j=1..k} f(j/k)` for `k = 1..=n`; the sequence
/// whose weighted Cesàro mean reproduces `‖A_{f,n}‖₁`-type sums.
pub fn row_means(f: &Integrand, n: u64) -> Result<Vec<f64>, MatrixError> {
    (1..=n)
        .map(|k| {
            let mut acc = CompensatedSum::new();
            for j in 1..=k {
                acc += sample(f, j, k)?;
            }
            Ok(acc.value() / k as f64)
        })
        .collect()
}

/// One [`NormReport`] per order, all against the same quadrature limit.
pub fn convergence_table(
    f: &Integrand,
    m: f64,
    orders: &[u64],
) -> Result<Vec<NormReport>, MatrixError> {
    let predicted = predict_limit(f, m)?;
    convergence_table_against(f, m, orders, predicted)
}

/// [`convergence_table`] against a caller-supplied limit.
pub fn convergence_table_against(
    f: &Integrand,
    m: f64,
    orders: &[u64],
    predicted: f64,
) -> Result<Vec<NormReport>, MatrixError> {
    check_exponent(m)?;
    if orders.is_empty() || orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(MatrixError::BadOrders);
    }
    orders
        .iter()
        .map(|&n| {
            let spec = SampledMatrixSpec::new(f.clone(), n)?;
            norm_report(&spec, m, predicted)
        })
        .collect()
}
