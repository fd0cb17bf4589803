//! Built-in function families with analytic envelopes and singularity metadata.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::AdaptiveGaussLegendre;
use crate::tfops::{norm, Envelope, FunctionEvaluator};

/// Gauss-Legendre degree of each panel in the Edgar-Rosenblatt integral.
const ER_RULE_DEGREE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Example1,
    Example2,
    SingularCos,
    Gaussian,
    EdgarRosenblatt,
    Bump,
}

/// JSON-facing description of a built-in function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: Family,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
    #[serde(default = "default_quad_tol")]
    pub quad_tol: f64,
}

fn default_quad_tol() -> f64 {
    1e-9
}

impl FamilySpec {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            params: BTreeMap::new(),
            quad_tol: default_quad_tol(),
        }
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    fn allowed_params(&self) -> &'static [&'static str] {
        match self.family {
            Family::Example1 => &["C", "omega"],
            Family::Example2 | Family::SingularCos => &["omega"],
            Family::Gaussian | Family::EdgarRosenblatt => &[],
            Family::Bump => &["radius"],
        }
    }

    fn param(&self, name: &str, default: Option<f64>) -> Result<f64> {
        match (self.params.get(name), default) {
            (Some(v), _) => Ok(*v),
            (None, Some(d)) => Ok(d),
            (None, None) => Err(Error::InvalidParameter(format!(
                "{:?} requires parameter `{name}`",
                self.family
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let allowed = self.allowed_params();
        if let Some(bad) = self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!(
                "unknown parameter `{bad}` for {:?}",
                self.family
            )));
        }
        if !(self.quad_tol > 0.0 && self.quad_tol <= 1e-3) {
            return Err(Error::InvalidParameter(format!(
                "quad_tol must lie in (0, 1e-3], got {}",
                self.quad_tol
            )));
        }
        Ok(())
    }

    /// Builds the evaluator in dimension `dim`; only the Gaussian and bump are
    /// defined for `dim = 2` besides Edgar-Rosenblatt, which is 2-dimensional only.
    pub fn build(&self, dim: usize) -> Result<FunctionEvaluator> {
        self.validate()?;
        let need = |expected: usize| {
            if dim == expected {
                Ok(())
            } else {
                Err(Error::DimensionMismatch { expected, got: dim })
            }
        };
        match self.family {
            Family::Example1 => {
                need(1)?;
                make_example1(self.param("C", None)?, self.param("omega", Some(0.0))?)
            }
            Family::Example2 => {
                need(1)?;
                make_example2(self.param("omega", Some(0.0))?)
            }
            Family::SingularCos => {
                need(1)?;
                make_singular_cos(self.param("omega", Some(1.0))?)
            }
            Family::Gaussian => make_gaussian(dim),
            Family::EdgarRosenblatt => {
                need(2)?;
                make_edgar_rosenblatt(self.quad_tol)
            }
            Family::Bump => make_bump(dim, self.param("radius", Some(0.4))?),
        }
    }
}

/// `f_{C,omega}(t) = C cos(omega t)` for `|t| < 1/C`, `cos(omega t)/|t|` otherwise.
pub fn make_example1(c: f64, omega: f64) -> Result<FunctionEvaluator> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "C must be positive, got {c}"
        )));
    }
    let f = FunctionEvaluator::real(1, move |t| {
        let a = t[0].abs();
        if a < 1.0 / c {
            c * (omega * t[0]).cos()
        } else {
            (omega * t[0]).cos() / a
        }
    })?;
    Ok(f.with_envelope(Envelope::radial(1, move |r| {
        if r > 0.0 {
            c.min(1.0 / r)
        } else {
            c
        }
    }))
    .square_integrable(true))
}

/// `g_omega(t) = cos(omega t)/|t|^{1/4}` for `|t| < 1`, `cos(omega t)/|t|` otherwise.
///
/// Singular at the origin; the envelope is infinite at `r = 0`.
pub fn make_example2(omega: f64) -> Result<FunctionEvaluator> {
    let f = FunctionEvaluator::real(1, move |t| {
        let a = t[0].abs();
        let c = (omega * t[0]).cos();
        if a < 1.0 {
            c / a.powf(0.25)
        } else {
            c / a
        }
    })?;
    Ok(f.with_envelope(Envelope::radial(1, |r| {
        if r <= 0.0 {
            f64::INFINITY
        } else if r < 1.0 {
            r.powf(-0.25)
        } else {
            1.0 / r
        }
    }))
    .with_singularities(vec![vec![0.0]])
    .square_integrable(true))
}

/// `cos(omega t)/|t|`: singular at the origin and not square-integrable.
pub fn make_singular_cos(omega: f64) -> Result<FunctionEvaluator> {
    let f = FunctionEvaluator::real(1, move |t| (omega * t[0]).cos() / t[0].abs())?;
    Ok(f.with_envelope(Envelope::radial(1, |r| {
        if r > 0.0 {
            1.0 / r
        } else {
            f64::INFINITY
        }
    }))
    .with_singularities(vec![vec![0.0]])
    .square_integrable(false))
}

/// Unit-norm Gaussian `2^{n/4} e^{-pi ||t||^2}`.
pub fn make_gaussian(n: usize) -> Result<FunctionEvaluator> {
    let amp = 2f64.powf(n as f64 / 4.0);
    let f = FunctionEvaluator::real(n, move |t| {
        let r2: f64 = t.iter().map(|v| v * v).sum();
        amp * (-PI * r2).exp()
    })?;
    Ok(
        f.with_envelope(Envelope::radial(n, move |r| amp * (-PI * r * r).exp()))
            .square_integrable(true),
    )
}

/// Smooth compactly supported bump `exp(1 - 1/(1 - (||t||/a)^2))` on `||t|| < a`, peak value 1.
pub fn make_bump(n: usize, radius: f64) -> Result<FunctionEvaluator> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "bump radius must be positive, got {radius}"
        )));
    }
    let profile = move |r: f64| {
        let s = r / radius;
        if s < 1.0 {
            (1.0 - 1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    };
    let f = FunctionEvaluator::real(n, move |t| profile(norm(t)))?;
    Ok(f.with_envelope(Envelope::radial(n, profile))
        .square_integrable(true))
}

/// `f(a, b) = int_{1/3}^{2/3} exp(i (a acos(t) + b acos(1 - t))) dt`, by adaptive
/// Gauss-Legendre to absolute tolerance `quad_tol`.
pub fn make_edgar_rosenblatt(quad_tol: f64) -> Result<FunctionEvaluator> {
    if !(quad_tol > 0.0 && quad_tol <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "quad_tol must lie in (0, 1e-3], got {quad_tol}"
        )));
    }
    let rule = AdaptiveGaussLegendre::new(ER_RULE_DEGREE, quad_tol);
    let f = FunctionEvaluator::new(2, move |ab| edgar_rosenblatt_with(&rule, ab[0], ab[1]))?;
    Ok(f.square_integrable(false))
}

pub(crate) fn edgar_rosenblatt_with(rule: &AdaptiveGaussLegendre, a: f64, b: f64) -> Complex64 {
    rule.integrate(1.0 / 3.0, 2.0 / 3.0, |t| {
        Complex64::cis(a * t.acos() + b * (1.0 - t).acos())
    })
    .value
}
