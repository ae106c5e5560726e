//! Adaptive Simpson quadrature on (0, 1].
//!
//! The origin is never sampled. The unit interval is peeled into dyadic bands
//! `[2^-(i+1), 2^-i]`, each integrated by recursive Simpson bisection, until
//! the remaining sliver `(0, b]` is small enough that two open midpoint
//! estimates of it agree within tolerance. This handles integrands with an
//! integrable singularity at 0 (such as `ln Γ`) as well as smooth ones.

use thiserror::Error;

use crate::sum::CompensatedSum;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_PANEL_BUDGET: usize = 1 << 20;

const MAX_DEPTH: u32 = 60;
const MAX_BANDS: u32 = 1000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("quadrature did not converge within {budget} panels")]
    BudgetExhausted { budget: usize },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
    #[error("invalid quadrature tolerance {0}")]
    BadTolerance(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub panels: usize,
}

struct Ctx<'a, F> {
    f: &'a F,
    panels: usize,
    budget: usize,
}

impl<F: Fn(f64) -> f64> Ctx<'_, F> {
    fn eval(&self, x: f64) -> Result<f64, QuadratureError> {
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFinite { x })
        }
    }

    fn charge(&mut self, n: usize) -> Result<(), QuadratureError> {
        self.panels += n;
        if self.panels > self.budget {
            Err(QuadratureError::BudgetExhausted {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn simpson(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64, QuadratureError> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = self.eval(lm)?;
        let frm = self.eval(rm)?;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth >= MAX_DEPTH || delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        self.charge(1)?;
        let l = self.simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)?;
        let r = self.simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)?;
        Ok(l + r)
    }

    fn band(&mut self, a: f64, b: f64, tol: f64) -> Result<f64, QuadratureError> {
        self.charge(1)?;
        let fa = self.eval(a)?;
        let fb = self.eval(b)?;
        let m = 0.5 * (a + b);
        let fm = self.eval(m)?;
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        self.simpson(a, b, fa, fm, fb, whole, tol, 0)
    }
}

/// Integrate `f` over (0, 1] to absolute tolerance `tol`, spending at most
/// `budget` panels.
pub fn integrate_unit_open<F>(
    f: F,
    tol: f64,
    budget: usize,
) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(QuadratureError::BadTolerance(tol));
    }
    let mut ctx = Ctx {
        f: &f,
        panels: 0,
        budget,
    };
    let band_tol = tol / 128.0;
    let tail_tol = tol / 4.0;
    let mut total = CompensatedSum::new();
    let mut hi = 1.0_f64;
    for _ in 0..MAX_BANDS {
        // open estimates of the sliver (0, hi]
        let one = hi * ctx.eval(0.5 * hi)?;
        let two = 0.5 * hi * (ctx.eval(0.25 * hi)? + ctx.eval(0.75 * hi)?);
        if (two - one).abs() <= tail_tol {
            // midpoint error is O(h²): one Richardson step
            total += two + (two - one) / 3.0;
            return Ok(QuadratureResult {
                value: total.value(),
                panels: ctx.panels,
            });
        }
        let lo = 0.5 * hi;
        total += ctx.band(lo, hi, band_tol)?;
        hi = lo;
    }
    Err(QuadratureError::BudgetExhausted { budget })
}
