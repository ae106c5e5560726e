//! `symlab` experiment runner: argument model, validation and the commands
//! that turn library results into [`Report`] tables.

pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use symlab::eigen::{self, spectral_sum_report_with};
use symlab::farey::{coprime_density, phi_summatory, weyl_average_streaming};
use symlab::specfun::{self, ln_sqrt_two_pi};
use symlab::{hadamard, matrix, Preset, SampledMatrixSpec};

pub use report::{Cell, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flag values or combinations; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// The computation itself failed; exit status 1.
    #[error(transparent)]
    Compute(#[from] symlab::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn compute<E: Into<symlab::Error>>(e: E) -> CliError {
    CliError::Compute(e.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "symlab",
    version,
    about = "Norm, spectrum, Gamma, Farey and Hadamard experiments on sampled symmetric matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Add a Unix timestamp to the JSON metadata
    #[arg(long)]
    pub timestamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normalized entrywise m-norms against the integral limit
    Norm(NormArgs),
    /// Gamma identities and the two routes to the Gamma integral
    Gamma(GammaArgs),
    /// Farey counts, Weyl averages and coprime density
    Farey(FareyArgs),
    /// Jacobi spectral sums of sampled matrices
    Eigen(EigenArgs),
    /// Sylvester-Hadamard checks
    Hadamard(HadamardArgs),
}

impl Command {
    pub fn output(&self) -> &OutputArgs {
        match self {
            Command::Norm(a) => &a.output,
            Command::Gamma(a) => &a.output,
            Command::Farey(a) => &a.output,
            Command::Eigen(a) => &a.output,
            Command::Hadamard(a) => &a.output,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Command::Norm(_) => "norm",
            Command::Gamma(_) => "gamma",
            Command::Farey(_) => "farey",
            Command::Eigen(_) => "eigen",
            Command::Hadamard(_) => "hadamard",
        }
    }
}

fn parse_preset(s: &str) -> Result<Preset, String> {
    s.parse::<Preset>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct NormArgs {
    /// Integrand: exp, lngamma, identity, const1
    #[arg(long = "f", value_parser = parse_preset, default_value = "exp")]
    pub integrand: Preset,
    /// Exponent m >= 1
    #[arg(long, default_value_t = 1.0)]
    pub m: f64,
    /// Matrix orders, strictly increasing
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<u64>,
    /// Absolute tolerance of the limit quadrature
    #[arg(long, default_value_t = symlab::quadrature::DEFAULT_TOL)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaMode {
    Integral,
    Rowproduct,
    SineOdd,
    SineEven,
    Reflection,
    Duplication,
}

impl GammaMode {
    fn name(self) -> &'static str {
        match self {
            GammaMode::Integral => "integral",
            GammaMode::Rowproduct => "rowproduct",
            GammaMode::SineOdd => "sine-odd",
            GammaMode::SineEven => "sine-even",
            GammaMode::Reflection => "reflection",
            GammaMode::Duplication => "duplication",
        }
    }

    fn takes_points(self) -> bool {
        matches!(self, GammaMode::Reflection | GammaMode::Duplication)
    }
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, value_enum)]
    pub mode: GammaMode,
    /// Integer arguments (n or k) for integral, rowproduct, sine-odd, sine-even
    #[arg(long, value_delimiter = ',')]
    pub orders: Vec<u64>,
    /// Real arguments for reflection (default 0.05..0.95) and duplication
    /// (default 0.05..10)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub at: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FareyArgs {
    /// Farey orders, strictly increasing
    #[arg(long = "x", value_delimiter = ',', required = true)]
    pub orders: Vec<u64>,
    #[arg(long = "f", value_parser = parse_preset, default_value = "identity")]
    pub integrand: Preset,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long = "f", value_parser = parse_preset, default_value = "exp")]
    pub integrand: Preset,
    /// Matrix orders, strictly increasing, each at most 2048
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<u64>,
    /// Relative off-diagonal tolerance for the Jacobi sweeps
    #[arg(long, default_value_t = eigen::DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = eigen::DEFAULT_MAX_SWEEPS)]
    pub max_sweeps: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HadamardCheck {
    Orthogonality,
    Oscillation,
    Spectral,
}

impl HadamardCheck {
    fn name(self) -> &'static str {
        match self {
            HadamardCheck::Orthogonality => "orthogonality",
            HadamardCheck::Oscillation => "oscillation",
            HadamardCheck::Spectral => "spectral",
        }
    }
}

#[derive(Debug, Args)]
pub struct HadamardArgs {
    /// Sylvester exponents (order 2^k), strictly increasing
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    #[arg(long, value_enum)]
    pub check: HadamardCheck,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn check_ascending<T: PartialOrd + Copy + std::fmt::Display>(
    what: &str,
    values: &[T],
) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(usage(format!("--{what} needs at least one value")));
    }
    if let Some(w) = values.windows(2).find(|w| w[0] >= w[1]) {
        return Err(usage(format!(
            "--{what} must be strictly increasing ({} is followed by {})",
            w[0], w[1]
        )));
    }
    Ok(())
}

fn check_positive(what: &str, values: &[u64]) -> Result<(), CliError> {
    if values.contains(&0) {
        return Err(usage(format!("--{what} values must be at least 1")));
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(usage(format!(
            "--tol must be a positive finite number, got {tol}"
        )))
    }
}

fn orders_json(values: &[u64]) -> Value {
    Value::from(values.to_vec())
}

fn base_report(command: &str, columns: Vec<&'static str>) -> Report {
    let mut r = Report::new(columns);
    r.meta("tool", concat!("symlab ", env!("CARGO_PKG_VERSION")));
    r.meta("command", command);
    r
}

pub fn run_norm(a: &NormArgs) -> Result<Report, CliError> {
    if !(a.m.is_finite() && a.m >= 1.0) {
        return Err(usage(format!(
            "--m must be a finite real >= 1, got {}",
            a.m
        )));
    }
    check_ascending("orders", &a.orders)?;
    check_positive("orders", &a.orders)?;
    check_tol(a.tol)?;
    let f = a.integrand.integrand();
    let predicted = matrix::predict_limit_with_tol(&f, a.m, a.tol).map_err(compute)?;
    let rows = matrix::convergence_table_against(&f, a.m, &a.orders, predicted).map_err(compute)?;

    let mut r = base_report(
        "norm",
        vec!["n", "raw", "normalized", "predicted", "abs_error"],
    );
    r.meta("f", a.integrand.name())
        .meta("m", a.m)
        .meta("orders", orders_json(&a.orders))
        .meta("tol", a.tol);
    for row in rows {
        r.push(vec![
            row.order.into(),
            row.raw_norm_power.into(),
            row.normalized.into(),
            row.predicted_limit.into(),
            row.abs_error.into(),
        ]);
    }
    Ok(r)
}

fn default_points(mode: GammaMode) -> Vec<f64> {
    match mode {
        GammaMode::Reflection => (1..=19).map(|i| i as f64 * 0.05).collect(),
        _ => (1..=200).map(|i| i as f64 * 0.05).collect(),
    }
}

pub fn run_gamma(a: &GammaArgs) -> Result<Report, CliError> {
    let mode = a.mode;
    if mode.takes_points() {
        if !a.orders.is_empty() {
            return Err(usage(format!(
                "--orders does not apply to --mode {}; use --at",
                mode.name()
            )));
        }
    } else {
        if !a.at.is_empty() {
            return Err(usage(format!(
                "--at does not apply to --mode {}; use --orders",
                mode.name()
            )));
        }
        check_ascending("orders", &a.orders)?;
        check_positive("orders", &a.orders)?;
    }

    let mut r;
    match mode {
        GammaMode::Integral => {
            r = base_report(
                "gamma",
                vec![
                    "n",
                    "matrix_route",
                    "closed_route",
                    "rel_diff",
                    "limit",
                    "abs_error",
                ],
            );
            for &n in &a.orders {
                let via = specfun::gamma_integral_via_matrix(n).map_err(compute)?;
                let closed = specfun::gamma_integral_closed_partial(n);
                let rel = if closed == 0.0 {
                    (via - closed).abs()
                } else {
                    ((via - closed) / closed).abs()
                };
                r.push(vec![
                    n.into(),
                    via.into(),
                    closed.into(),
                    rel.into(),
                    ln_sqrt_two_pi().into(),
                    (via - ln_sqrt_two_pi()).abs().into(),
                ]);
            }
        }
        GammaMode::Rowproduct => {
            if a.orders[0] < 2 {
                return Err(usage("--mode rowproduct needs k >= 2"));
            }
            r = base_report("gamma", vec!["k", "log_product", "closed_form", "abs_diff"]);
            for &k in &a.orders {
                let got = specfun::gamma_row_log_product(k).map_err(compute)?;
                let closed = specfun::gamma_row_log_product_closed(k);
                r.push(vec![
                    k.into(),
                    got.into(),
                    closed.into(),
                    (got - closed).abs().into(),
                ]);
            }
        }
        GammaMode::SineOdd | GammaMode::SineEven => {
            r = base_report("gamma", vec!["n", "order", "residual"]);
            for &n in &a.orders {
                let (order, res) = if mode == GammaMode::SineOdd {
                    (2 * n + 1, specfun::sine_product_odd_residual(n))
                } else {
                    (2 * n, specfun::sine_product_even_residual(n))
                };
                r.push(vec![n.into(), order.into(), res.into()]);
            }
        }
        GammaMode::Reflection | GammaMode::Duplication => {
            let points = if a.at.is_empty() {
                default_points(mode)
            } else {
                a.at.clone()
            };
            let col = if mode == GammaMode::Reflection {
                "s"
            } else {
                "z"
            };
            r = base_report("gamma", vec![col, "residual"]);
            for &p in &points {
                let res = if mode == GammaMode::Reflection {
                    specfun::euler_reflection_residual(p)
                } else {
                    specfun::duplication_residual(p)
                }
                .map_err(compute)?;
                r.push(vec![p.into(), res.into()]);
            }
            r.meta("mode", mode.name()).meta("at", points);
            return Ok(r);
        }
    }
    r.meta("mode", mode.name())
        .meta("orders", orders_json(&a.orders));
    Ok(r)
}

pub fn run_farey(a: &FareyArgs) -> Result<Report, CliError> {
    check_ascending("x", &a.orders)?;
    check_positive("x", &a.orders)?;
    let f = a.integrand.integrand();
    let integral = matrix::predict_limit(&f, 1.0).map_err(compute)?;
    let mut r = base_report(
        "farey",
        vec![
            "x",
            "phi",
            "average",
            "integral",
            "abs_error",
            "coprime_density",
        ],
    );
    r.meta("f", a.integrand.name())
        .meta("x", orders_json(&a.orders));
    for &x in &a.orders {
        let phi = phi_summatory(x).map_err(compute)?;
        let avg = weyl_average_streaming(&f, x).map_err(compute)?;
        let density = coprime_density(x).map_err(compute)?;
        r.push(vec![
            x.into(),
            phi.into(),
            avg.into(),
            integral.into(),
            (avg - integral).abs().into(),
            density.into(),
        ]);
    }
    Ok(r)
}

pub fn run_eigen(a: &EigenArgs) -> Result<Report, CliError> {
    check_ascending("orders", &a.orders)?;
    check_positive("orders", &a.orders)?;
    check_tol(a.tol)?;
    if let Some(&n) = a.orders.iter().find(|&&n| n > eigen::DEFAULT_DENSE_LIMIT) {
        return Err(usage(format!(
            "--orders value {n} exceeds the dense limit {}",
            eigen::DEFAULT_DENSE_LIMIT
        )));
    }
    let f = a.integrand.integrand();
    let predicted = matrix::predict_limit(&f, 2.0).map_err(compute)?;
    let mut r = base_report(
        "eigen",
        vec![
            "n",
            "trace",
            "sum_sq",
            "normalized_sum_sq",
            "frobenius_sq",
            "predicted",
            "sweeps",
        ],
    );
    r.meta("f", a.integrand.name())
        .meta("orders", orders_json(&a.orders))
        .meta("tol", a.tol)
        .meta("max_sweeps", a.max_sweeps);
    for &n in &a.orders {
        let s = spectral_sum_report_with(&f, n, a.tol, a.max_sweeps).map_err(compute)?;
        let spec = SampledMatrixSpec::new(f.clone(), n).map_err(compute)?;
        let frob = matrix::norm_power(&spec, 2.0).map_err(compute)?;
        r.push(vec![
            n.into(),
            s.trace.into(),
            s.sum_sq.into(),
            s.normalized_sum_sq.into(),
            frob.into(),
            predicted.into(),
            s.sweeps_used.into(),
        ]);
    }
    Ok(r)
}

pub fn run_hadamard(a: &HadamardArgs) -> Result<Report, CliError> {
    check_ascending("k", &a.k)?;
    let columns = match a.check {
        HadamardCheck::Orthogonality => vec!["k", "order", "is_hadamard"],
        HadamardCheck::Oscillation => {
            vec!["k", "order", "mismatch_count", "lower_bound", "verdict"]
        }
        HadamardCheck::Spectral => vec!["k", "order", "spectral_sum_sq", "order_squared"],
    };
    let mut r = base_report("hadamard", columns);
    r.meta("check", a.check.name()).meta("k", a.k.clone());
    for &k in &a.k {
        let m = hadamard::sylvester(k).map_err(compute)?;
        let n = m.order();
        let row = match a.check {
            HadamardCheck::Orthogonality => {
                vec![k.into(), n.into(), hadamard::is_hadamard(&m).into()]
            }
            HadamardCheck::Oscillation => {
                let o = hadamard::oscillation_bound(&m).map_err(compute)?;
                vec![
                    k.into(),
                    n.into(),
                    o.mismatch_count.into(),
                    o.lower_bound.into(),
                    o.verdict.as_str().into(),
                ]
            }
            HadamardCheck::Spectral => vec![
                k.into(),
                n.into(),
                hadamard::spectral_sum_sq(&m).into(),
                ((n * n) as u64).into(),
            ],
        };
        r.push(row);
    }
    Ok(r)
}

/// Build the report for a parsed command line.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let mut report = match &cli.command {
        Command::Norm(a) => run_norm(a),
        Command::Gamma(a) => run_gamma(a),
        Command::Farey(a) => run_farey(a),
        Command::Eigen(a) => run_eigen(a),
        Command::Hadamard(a) => run_hadamard(a),
    }?;
    if cli.command.output().timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        report.meta("timestamp", secs);
    }
    Ok(report)
}

/// Encode a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("symlab").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn norm_rows() {
        let cli = parse(&["norm", "--f", "exp", "--m", "1", "--orders", "100,200,400"]);
        let r = run(&cli).unwrap();
        assert_eq!(
            r.columns,
            vec!["n", "raw", "normalized", "predicted", "abs_error"]
        );
        assert_eq!(r.rows.len(), 3);
        match r.rows[0][3] {
            Cell::Real(p) => assert!((p - 1.718_282).abs() < 1e-6),
            ref c => panic!("{c:?}"),
        }
    }

    #[test]
    fn validation_is_usage_error() {
        for args in [
            &["norm", "--orders", "4,2"][..],
            &["norm", "--orders", "2", "--m", "0.5"],
            &["norm", "--orders", "0,2"],
            &["norm", "--orders", "2", "--tol", "0"],
            &["gamma", "--mode", "integral"],
            &[
                "gamma", "--mode", "integral", "--orders", "4", "--at", "0.5",
            ],
            &["gamma", "--mode", "reflection", "--orders", "4"],
            &["gamma", "--mode", "rowproduct", "--orders", "1,2"],
            &["eigen", "--orders", "4096"],
            &["hadamard", "--k", "3,2", "--check", "spectral"],
        ] {
            let err = run(&parse(args)).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}: {err}");
        }
    }

    #[test]
    fn compute_errors_exit_one() {
        let err = run(&parse(&["hadamard", "--k", "0", "--check", "oscillation"])).unwrap_err();
        assert_eq!(err.exit_code(), 1);
        let err = run(&parse(&["gamma", "--mode", "reflection", "--at", "1.5"])).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn gamma_default_grid() {
        let r = run(&parse(&["gamma", "--mode", "reflection"])).unwrap();
        assert_eq!(r.rows.len(), 19);
        assert_eq!(r.columns, vec!["s", "residual"]);
    }

    #[test]
    fn timestamp_only_on_request() {
        let r = run(&parse(&["hadamard", "--k", "1", "--check", "spectral"])).unwrap();
        assert!(!r.meta.contains_key("timestamp"));
        let r = run(&parse(&[
            "hadamard",
            "--k",
            "1",
            "--check",
            "spectral",
            "--timestamp",
        ]))
        .unwrap();
        assert!(r.meta.contains_key("timestamp"));
    }
}
