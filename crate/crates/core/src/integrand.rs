use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::specfun;

type EvalFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A real function sampled on rational points of (0, 1].
///
/// Cloning is cheap; the function itself is shared.
#[derive(Clone)]
pub struct Integrand {
    label: String,
    eval: Arc<EvalFn>,
}

impl Integrand {
    pub fn new<F>(label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn exp() -> Self {
        Self::new("exp", f64::exp)
    }

    /// `ln Γ(t)`. Sample points are always positive so the domain error
    /// of [`specfun::ln_gamma`] cannot fire; non-positive input maps to NaN.
    pub fn ln_gamma() -> Self {
        Self::new("lngamma", |t| specfun::ln_gamma(t).unwrap_or(f64::NAN))
    }

    pub fn identity() -> Self {
        Self::new("identity", |t| t)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("const{c}"), move |_| c)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        (self.eval)(t)
    }

    /// Evaluate at the rational point `num / den`.
    #[inline]
    pub fn eval_ratio(&self, num: u64, den: u64) -> f64 {
        (self.eval)(num as f64 / den as f64)
    }

    /// `t ↦ factor · f(t)`.
    pub fn scaled(&self, factor: f64) -> Self {
        let inner = Arc::clone(&self.eval);
        Self::new(format!("{factor}*{}", self.label), move |t| {
            factor * inner(t)
        })
    }
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Integrand")
            .field("label", &self.label)
            .finish()
    }
}

/// The closed set of named integrands reachable from the command line and
/// the Python bindings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Preset {
    Exp,
    LnGamma,
    Identity,
    Const1,
}

impl Preset {
    pub const ALL: [Preset; 4] = [
        Preset::Exp,
        Preset::LnGamma,
        Preset::Identity,
        Preset::Const1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Exp => "exp",
            Preset::LnGamma => "lngamma",
            Preset::Identity => "identity",
            Preset::Const1 => "const1",
        }
    }

    pub fn integrand(self) -> Integrand {
        match self {
            Preset::Exp => Integrand::exp(),
            Preset::LnGamma => Integrand::ln_gamma(),
            Preset::Identity => Integrand::identity(),
            Preset::Const1 => Integrand::new("const1", |_| 1.0),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown integrand `{0}` (expected one of: exp, lngamma, identity, const1)")]
pub struct UnknownPreset(pub String);

impl FromStr for Preset {
    type Err = UnknownPreset;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp" => Ok(Preset::Exp),
            "lngamma" | "ln_gamma" | "lgamma" => Ok(Preset::LnGamma),
            "identity" | "id" => Ok(Preset::Identity),
            "const1" | "one" => Ok(Preset::Const1),
            other => Err(UnknownPreset(other.to_string())),
        }
    }
}
