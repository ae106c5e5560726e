//! Dense symmetric matrices and a cyclic Jacobi eigenvalue solver.

use thiserror::Error;

use crate::integrand::Integrand;
use crate::matrix::{MatrixError, SampledMatrixSpec};
use crate::sum::CompensatedSum;

pub const DEFAULT_DENSE_LIMIT: u64 = 2048;
pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_SWEEPS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EigenError {
    #[error("order {order} exceeds the dense limit {limit}")]
    Capacity { order: u64, limit: u64 },
    #[error("matrix order must be at least 1")]
    ZeroOrder,
    #[error("entry ({i}, {j}) is not finite")]
    NonFinite { i: usize, j: usize },
    #[error("packed storage of length {len} does not fit any order")]
    BadPackedLength { len: usize },
    #[error("Jacobi did not converge in {sweeps} sweeps (off-diagonal residual {residual:e})")]
    NoConvergence { sweeps: u32, residual: f64 },
    #[error("tolerance must be positive and finite, got {0}")]
    BadTolerance(f64),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Symmetric matrix stored as its packed lower triangle, row by row:
/// `(0,0), (1,0), (1,1), (2,0), ...` (0-based).
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymmetric {
    order: usize,
    packed: Vec<f64>,
}

#[inline]
fn packed_index(i: usize, j: usize) -> usize {
    let (r, c) = if i >= j { (i, j) } else { (j, i) };
    r * (r + 1) / 2 + c
}

impl DenseSymmetric {
    /// Build from `entry(i, j)` evaluated for `j ≤ i` (0-based).
    pub fn from_lower_fn<F>(order: usize, mut entry: F) -> Result<Self, EigenError>
    where
        F: FnMut(usize, usize) -> f64,
    {
        if order == 0 {
            return Err(EigenError::ZeroOrder);
        }
        let mut packed = Vec::with_capacity(order * (order + 1) / 2);
        for i in 0..order {
            for j in 0..=i {
                let v = entry(i, j);
                if !v.is_finite() {
                    return Err(EigenError::NonFinite { i, j });
                }
                packed.push(v);
            }
        }
        Ok(Self { order, packed })
    }

    pub fn from_packed(packed: Vec<f64>) -> Result<Self, EigenError> {
        let len = packed.len();
        // solve n(n+1)/2 = len
        let n = ((((8 * len + 1) as f64).sqrt() - 1.0) / 2.0).round() as usize;
        if n == 0 || n * (n + 1) / 2 != len {
            return Err(EigenError::BadPackedLength { len });
        }
        if let Some(pos) = packed.iter().position(|v| !v.is_finite()) {
            let i = (0..n).find(|&r| (r + 1) * (r + 2) / 2 > pos).unwrap_or(0);
            return Err(EigenError::NonFinite {
                i,
                j: pos - i * (i + 1) / 2,
            });
        }
        Ok(Self { order: n, packed })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn packed(&self) -> &[f64] {
        &self.packed
    }

    /// Entry `(i, j)`, 0-based; symmetric by construction.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.order && j < self.order, "index out of range");
        self.packed[packed_index(i, j)]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order)
            .map(|i| self.get(i, i))
            .sum::<CompensatedSum>()
            .value()
    }

    /// `Σ_{i,j} a_ij²`.
    pub fn frobenius_sq(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for i in 0..self.order {
            for j in 0..=i {
                let v = self.get(i, j);
                acc += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        acc.value()
    }

    fn to_full(&self) -> Vec<f64> {
        let n = self.order;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.get(i, j);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }
}

/// Lower triangle of `A_{f,n}`, capped at [`DEFAULT_DENSE_LIMIT`].
pub fn materialize(spec: &SampledMatrixSpec) -> Result<DenseSymmetric, EigenError> {
    materialize_with_limit(spec, DEFAULT_DENSE_LIMIT)
}

pub fn materialize_with_limit(
    spec: &SampledMatrixSpec,
    limit: u64,
) -> Result<DenseSymmetric, EigenError> {
    let n = spec.order();
    if n > limit {
        return Err(EigenError::Capacity { order: n, limit });
    }
    let f = spec.integrand();
    let mut packed = Vec::with_capacity((n * (n + 1) / 2) as usize);
    for k in 1..=n {
        for j in 1..=k {
            let v = f.eval_ratio(j, k);
            if !v.is_finite() {
                return Err(MatrixError::NonFinite {
                    label: f.label().to_string(),
                    num: j,
                    den: k,
                    value: v,
                }
                .into());
            }
            packed.push(v);
        }
    }
    Ok(DenseSymmetric {
        order: n as usize,
        packed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub sweeps_used: u32,
    /// Off-diagonal Frobenius norm at exit.
    pub off_diag_residual: f64,
}

impl EigenDecomposition {
    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum::<CompensatedSum>().value()
    }

    pub fn sum_sq(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|l| l * l)
            .sum::<CompensatedSum>()
            .value()
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut acc = CompensatedSum::new();
    for i in 0..n {
        for j in 0..i {
            let v = a[i * n + j];
            acc += 2.0 * v * v;
        }
    }
    acc.value().sqrt()
}

/// Cyclic Jacobi: sweep over all `(p, q)` pairs with `p < q`, zeroing each by
/// a plane rotation, until the off-diagonal Frobenius norm falls to
/// `tol · ‖A‖_F`.
pub fn jacobi_eigenvalues(
    matrix: &DenseSymmetric,
    tol: f64,
    max_sweeps: u32,
) -> Result<EigenDecomposition, EigenError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(EigenError::BadTolerance(tol));
    }
    let n = matrix.order;
    let mut a = matrix.to_full();
    let threshold = tol * matrix.frobenius_sq().sqrt();

    let mut sweeps = 0;
    let mut off = off_diagonal_norm(&a, n);
    while off > threshold {
        if sweeps == max_sweeps {
            return Err(EigenError::NoConvergence {
                sweeps,
                residual: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_norm(&a, n);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(EigenDecomposition {
        eigenvalues,
        sweeps_used: sweeps,
        off_diag_residual: off,
    })
}

/// Zero `a[p][q]` with a Jacobi rotation applied on both sides.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for r in 0..n {
        if r == p || r == q {
            continue;
        }
        let g = a[r * n + p];
        let h = a[r * n + q];
        let rp = g - s * (h + g * tau);
        let rq = h + s * (g - h * tau);
        a[r * n + p] = rp;
        a[p * n + r] = rp;
        a[r * n + q] = rq;
        a[q * n + r] = rq;
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralSums {
    /// `Σ λᵢ`
    pub trace: f64,
    /// `Σ λᵢ²`
    pub sum_sq: f64,
    /// `Σ λᵢ² / n²`
    pub normalized_sum_sq: f64,
    pub sweeps_used: u32,
}

pub fn spectral_sum_report(f: &Integrand, n: u64) -> Result<SpectralSums, EigenError> {
    spectral_sum_report_with(f, n, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)
}

pub fn spectral_sum_report_with(
    f: &Integrand,
    n: u64,
    tol: f64,
    max_sweeps: u32,
) -> Result<SpectralSums, EigenError> {
    let spec = SampledMatrixSpec::new(f.clone(), n)?;
    let dense = materialize(&spec)?;
    let dec = jacobi_eigenvalues(&dense, tol, max_sweeps)?;
    let sum_sq = dec.sum_sq();
    let nf = n as f64;
    Ok(SpectralSums {
        trace: dec.sum(),
        sum_sq,
        normalized_sum_sq: sum_sq / (nf * nf),
        sweeps_used: dec.sweeps_used,
    })
}
