//! Numerical experiments on function-sampled symmetric matrices
//! `A_{f,n} = [f(min(i,j)/max(i,j))]`.
//!
//! - [`matrix`]: entrywise m-norms and their limits `∫₀¹ |f|^m`.
//! - [`specfun`]: `ln Γ`, reflection/duplication/sine-product identities and
//!   the two routes to `∫₀¹ ln Γ = ln √(2π)`.
//! - [`farey`]: Farey sequences, totients, Weyl averages.
//! - [`eigen`]: Jacobi eigenvalues and spectral sums of `A_{f,n}`.
//! - [`hadamard`]: Sylvester matrices and the oscillation bound.

pub mod eigen;
pub mod farey;
pub mod hadamard;
pub mod integrand;
pub mod matrix;
pub mod quadrature;
pub mod specfun;
pub mod sum;

pub use eigen::{
    jacobi_eigenvalues, materialize, spectral_sum_report, DenseSymmetric, EigenDecomposition,
    SpectralSums,
};
pub use farey::{
    coprime_density, farey_sequence, phi_summatory, totient_sieve, weyl_average, FareySequence,
    Fraction,
};
pub use hadamard::{
    is_hadamard, oscillation_bound, spectral_sum_sq, sylvester, OscillationReport, SignMatrix,
    Verdict,
};
pub use integrand::{Integrand, Preset};
pub use matrix::{
    convergence_table, matrix_entry, norm_power, norm_report, predict_limit, weighted_cesaro,
    CesaroInput, NormReport, SampledMatrixSpec,
};
pub use specfun::{ln_gamma, GammaEvaluator};
pub use sum::CompensatedSum;

/// Any error produced by this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Matrix(#[from] matrix::MatrixError),
    #[error(transparent)]
    SpecFun(#[from] specfun::SpecFunError),
    #[error(transparent)]
    Farey(#[from] farey::FareyError),
    #[error(transparent)]
    Eigen(#[from] eigen::EigenError),
    #[error(transparent)]
    Hadamard(#[from] hadamard::HadamardError),
    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadratureError),
}
