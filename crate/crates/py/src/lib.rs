//! Python bindings for `symlab`.
//!
//! Integrands are chosen by preset name (`"exp"`, `"lngamma"`, `"identity"`,
//! `"const1"`). Library errors surface as `symlab.SymlabError`, a subclass of
//! `ValueError`.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use symlab::{eigen, farey, hadamard, matrix, specfun, Integrand, Preset, SampledMatrixSpec};

create_exception!(
    symlab,
    SymlabError,
    PyValueError,
    "Error raised by symlab computations."
);

fn err<E: Into<symlab::Error>>(e: E) -> PyErr {
    SymlabError::new_err(e.into().to_string())
}

fn integrand(name: &str) -> PyResult<Integrand> {
    name.parse::<Preset>()
        .map(|p| p.integrand())
        .map_err(|e| SymlabError::new_err(e.to_string()))
}

fn spec(f: &str, n: u64) -> PyResult<SampledMatrixSpec> {
    SampledMatrixSpec::new(integrand(f)?, n).map_err(err)
}

/// Names of the available integrand presets.
#[pyfunction]
fn presets() -> Vec<&'static str> {
    [
        Preset::Exp,
        Preset::LnGamma,
        Preset::Identity,
        Preset::Const1,
    ]
    .iter()
    .map(|p| p.name())
    .collect()
}

/// Entry (i, j) of the order-n sampled matrix, 1-based.
#[pyfunction]
fn matrix_entry(f: &str, n: u64, i: u64, j: u64) -> PyResult<f64> {
    matrix::matrix_entry(&spec(f, n)?, i, j).map_err(err)
}

/// Sum of |a_ij|^m over the order-n sampled matrix.
#[pyfunction]
#[pyo3(signature = (f, n, m = 1.0))]
fn norm_power(py: Python<'_>, f: &str, n: u64, m: f64) -> PyResult<f64> {
    let s = spec(f, n)?;
    py.detach(|| matrix::norm_power(&s, m)).map_err(err)
}

/// Integral of |f|^m over (0, 1].
#[pyfunction]
#[pyo3(signature = (f, m = 1.0))]
fn predict_limit(f: &str, m: f64) -> PyResult<f64> {
    matrix::predict_limit(&integrand(f)?, m).map_err(err)
}

#[pyclass(
    name = "NormReport",
    module = "symlab",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyNormReport {
    order: u64,
    exponent: f64,
    raw_norm_power: f64,
    normalized: f64,
    predicted_limit: f64,
    abs_error: f64,
}

#[pymethods]
impl PyNormReport {
    fn __repr__(&self) -> String {
        format!(
            "NormReport(order={}, exponent={}, normalized={}, predicted_limit={}, abs_error={:e})",
            self.order, self.exponent, self.normalized, self.predicted_limit, self.abs_error
        )
    }
}

impl From<matrix::NormReport> for PyNormReport {
    fn from(r: matrix::NormReport) -> Self {
        Self {
            order: r.order,
            exponent: r.exponent,
            raw_norm_power: r.raw_norm_power,
            normalized: r.normalized,
            predicted_limit: r.predicted_limit,
            abs_error: r.abs_error,
        }
    }
}

/// Normalized m-norms for increasing orders, measured against the integral limit.
#[pyfunction]
#[pyo3(signature = (f, orders, m = 1.0))]
fn convergence_table(
    py: Python<'_>,
    f: &str,
    orders: Vec<u64>,
    m: f64,
) -> PyResult<Vec<PyNormReport>> {
    let f = integrand(f)?;
    let rows = py
        .detach(|| matrix::convergence_table(&f, m, &orders))
        .map_err(err)?;
    Ok(rows.into_iter().map(PyNormReport::from).collect())
}

/// Weighted mean (1/n²) Σ k·a_k; tends to b/2 when a_k → b.
#[pyfunction]
fn weighted_cesaro(terms: Vec<f64>) -> PyResult<f64> {
    let input = matrix::CesaroInput::new(terms, f64::NAN).map_err(err)?;
    matrix::weighted_cesaro(&input).map_err(err)
}

#[pyfunction]
fn ln_gamma(x: f64) -> PyResult<f64> {
    specfun::ln_gamma(x).map_err(err)
}

#[pyfunction]
fn euler_reflection_residual(s: f64) -> PyResult<f64> {
    specfun::euler_reflection_residual(s).map_err(err)
}

#[pyfunction]
fn duplication_residual(z: f64) -> PyResult<f64> {
    specfun::duplication_residual(z).map_err(err)
}

#[pyfunction]
fn sine_product_odd_residual(n: u64) -> f64 {
    specfun::sine_product_odd_residual(n)
}

#[pyfunction]
fn sine_product_even_residual(n: u64) -> f64 {
    specfun::sine_product_even_residual(n)
}

/// ln Π_{j=1}^{k-1} Γ(j/k).
#[pyfunction]
fn gamma_row_log_product(k: u64) -> PyResult<f64> {
    specfun::gamma_row_log_product(k).map_err(err)
}

#[pyfunction]
fn gamma_row_log_product_closed(k: u64) -> f64 {
    specfun::gamma_row_log_product_closed(k)
}

/// Normalized 1-norm of the order-n lnΓ matrix.
#[pyfunction]
fn gamma_integral_via_matrix(py: Python<'_>, n: u64) -> PyResult<f64> {
    py.detach(|| specfun::gamma_integral_via_matrix(n))
        .map_err(err)
}

#[pyfunction]
fn gamma_integral_closed_partial(n: u64) -> f64 {
    specfun::gamma_integral_closed_partial(n)
}

#[pyfunction]
fn ln_sqrt_two_pi() -> f64 {
    specfun::ln_sqrt_two_pi()
}

/// Farey sequence of order x as (numerator, denominator) pairs.
#[pyfunction]
fn farey_sequence(x: u64) -> PyResult<Vec<(u64, u64)>> {
    let seq = farey::farey_sequence(x).map_err(err)?;
    Ok(seq.iter().map(|f| (f.num, f.den)).collect())
}

/// Euler totients φ(1), …, φ(x).
#[pyfunction]
fn totients(x: u64) -> PyResult<Vec<u64>> {
    let table = farey::totient_sieve(x).map_err(err)?;
    Ok(table.values().to_vec())
}

#[pyfunction]
fn phi_summatory(x: u64) -> PyResult<u64> {
    farey::phi_summatory(x).map_err(err)
}

/// Mean of f over the Farey fractions of order x.
#[pyfunction]
fn weyl_average(py: Python<'_>, f: &str, x: u64) -> PyResult<f64> {
    let f = integrand(f)?;
    py.detach(|| farey::weyl_average_streaming(&f, x))
        .map_err(err)
}

#[pyfunction]
fn coprime_density(n: u64) -> PyResult<f64> {
    farey::coprime_density(n).map_err(err)
}

/// Eigenvalues (ascending) of the order-n sampled matrix.
#[pyfunction]
#[pyo3(signature = (f, n, tol = eigen::DEFAULT_TOL, max_sweeps = eigen::DEFAULT_MAX_SWEEPS))]
fn eigenvalues(py: Python<'_>, f: &str, n: u64, tol: f64, max_sweeps: u32) -> PyResult<Vec<f64>> {
    let s = spec(f, n)?;
    py.detach(|| {
        let dense = eigen::materialize(&s)?;
        eigen::jacobi_eigenvalues(&dense, tol, max_sweeps)
    })
    .map(|d| d.eigenvalues)
    .map_err(err)
}

#[pyclass(
    name = "SpectralSums",
    module = "symlab",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PySpectralSums {
    trace: f64,
    sum_sq: f64,
    normalized_sum_sq: f64,
    sweeps_used: u32,
}

#[pymethods]
impl PySpectralSums {
    fn __repr__(&self) -> String {
        format!(
            "SpectralSums(trace={}, sum_sq={}, normalized_sum_sq={}, sweeps_used={})",
            self.trace, self.sum_sq, self.normalized_sum_sq, self.sweeps_used
        )
    }
}

/// Σλ and Σλ² of the order-n sampled matrix, with Σλ²/n².
#[pyfunction]
fn spectral_sums(py: Python<'_>, f: &str, n: u64) -> PyResult<PySpectralSums> {
    let f = integrand(f)?;
    let s = py
        .detach(|| eigen::spectral_sum_report(&f, n))
        .map_err(err)?;
    Ok(PySpectralSums {
        trace: s.trace,
        sum_sq: s.sum_sq,
        normalized_sum_sq: s.normalized_sum_sq,
        sweeps_used: s.sweeps_used,
    })
}

#[pyclass(
    name = "OscillationReport",
    module = "symlab",
    frozen,
    get_all,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyOscillationReport {
    order: usize,
    mismatch_count: usize,
    lower_bound: f64,
    verdict: &'static str,
}

#[pymethods]
impl PyOscillationReport {
    fn __repr__(&self) -> String {
        format!(
            "OscillationReport(order={}, mismatch_count={}, lower_bound={}, verdict='{}')",
            self.order, self.mismatch_count, self.lower_bound, self.verdict
        )
    }
}

/// Square ±1 matrix.
#[pyclass(name = "SignMatrix", module = "symlab", skip_from_py_object)]
#[derive(Clone)]
struct PySignMatrix {
    inner: hadamard::SignMatrix,
}

#[pymethods]
impl PySignMatrix {
    #[new]
    fn new(rows: Vec<Vec<i64>>) -> PyResult<Self> {
        let inner = hadamard::SignMatrix::from_rows(&rows).map_err(err)?;
        Ok(Self { inner })
    }

    /// Sylvester-Hadamard matrix of order 2^k.
    #[staticmethod]
    fn sylvester(k: u32) -> PyResult<Self> {
        let inner = hadamard::sylvester(k).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<i64>> {
        self.inner.to_rows()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<i8> {
        let n = self.inner.order();
        if i >= n || j >= n {
            return Err(SymlabError::new_err(format!(
                "index ({i}, {j}) out of range for order {n}"
            )));
        }
        Ok(self.inner.get(i, j))
    }

    /// Negate entry (i, j) in place.
    fn flip(&mut self, i: usize, j: usize) -> PyResult<()> {
        self.get(i, j)?;
        self.inner.flip(i, j);
        Ok(())
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn is_hadamard(&self) -> bool {
        hadamard::is_hadamard(&self.inner)
    }

    fn spectral_sum_sq(&self) -> u64 {
        hadamard::spectral_sum_sq(&self.inner)
    }

    fn oscillation_bound(&self) -> PyResult<PyOscillationReport> {
        let r = hadamard::oscillation_bound(&self.inner).map_err(err)?;
        Ok(PyOscillationReport {
            order: r.order,
            mismatch_count: r.mismatch_count,
            lower_bound: r.lower_bound,
            verdict: r.verdict.as_str(),
        })
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("SignMatrix(order={})", self.inner.order())
    }
}

#[pymodule]
#[pyo3(name = "symlab")]
pub fn symlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SymlabError", m.py().get_type::<SymlabError>())?;
    m.add_class::<PyNormReport>()?;
    m.add_class::<PySpectralSums>()?;
    m.add_class::<PyOscillationReport>()?;
    m.add_class::<PySignMatrix>()?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    m.add_function(wrap_pyfunction!(matrix_entry, m)?)?;
    m.add_function(wrap_pyfunction!(norm_power, m)?)?;
    m.add_function(wrap_pyfunction!(predict_limit, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_table, m)?)?;
    m.add_function(wrap_pyfunction!(weighted_cesaro, m)?)?;
    m.add_function(wrap_pyfunction!(ln_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(euler_reflection_residual, m)?)?;
    m.add_function(wrap_pyfunction!(duplication_residual, m)?)?;
    m.add_function(wrap_pyfunction!(sine_product_odd_residual, m)?)?;
    m.add_function(wrap_pyfunction!(sine_product_even_residual, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_row_log_product, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_row_log_product_closed, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_integral_via_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_integral_closed_partial, m)?)?;
    m.add_function(wrap_pyfunction!(ln_sqrt_two_pi, m)?)?;
    m.add_function(wrap_pyfunction!(farey_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(totients, m)?)?;
    m.add_function(wrap_pyfunction!(phi_summatory, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_average, m)?)?;
    m.add_function(wrap_pyfunction!(coprime_density, m)?)?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_sums, m)?)?;
    Ok(())
}
