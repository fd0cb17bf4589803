use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

type EvalFn = dyn Fn(&[f64]) -> Complex64 + Send + Sync;
type BoundFn = dyn Fn(f64) -> f64 + Send + Sync;

/// Monotone radial upper bound on `|f|` about a center point.
///
/// `at(r)` bounds `sup_{||t - center|| >= r} |f(t)|` and is nonincreasing in `r`.
/// Built-in families are centered at the origin; translation moves the center
/// along with the function.
#[derive(Clone)]
pub struct Envelope {
    center: Vec<f64>,
    bound: Arc<BoundFn>,
}

impl Envelope {
    pub fn new<F>(center: Vec<f64>, bound: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            center,
            bound: Arc::new(bound),
        }
    }

    /// Envelope centered at the origin of `R^dim`.
    pub fn radial<F>(dim: usize, bound: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(vec![0.0; dim], bound)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn at(&self, r: f64) -> f64 {
        (self.bound)(r.max(0.0))
    }

    /// Upper bound on `sup_{||t - anchor|| >= r} |f(t)|`.
    ///
    /// Points at distance `>= r` from `anchor` are at distance `>= r - ||anchor - center||`
    /// from the center, so the envelope evaluated there is still a bound.
    pub fn bound_about(&self, anchor: &[f64], r: f64) -> f64 {
        let offset = distance(anchor, &self.center);
        self.at(r - offset)
    }
}

impl fmt::Debug for Envelope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Envelope")
            .field("center", &self.center)
            .finish_non_exhaustive()
    }
}

/// A pointwise complex-valued function on `R^n` together with its analytic metadata.
///
/// Evaluators are immutable and cheap to clone; operators build new evaluators
/// that wrap the old one, so arbitrary real shifts stay exact.
#[derive(Clone)]
pub struct FunctionEvaluator {
    dim: usize,
    eval: Arc<EvalFn>,
    envelope: Option<Envelope>,
    singularities: Vec<Vec<f64>>,
    square_integrable: bool,
}

impl FunctionEvaluator {
    pub fn new<F>(dim: usize, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        check_dim(dim)?;
        Ok(Self {
            dim,
            eval: Arc::new(eval),
            envelope: None,
            singularities: Vec::new(),
            square_integrable: false,
        })
    }

    /// Real-valued convenience constructor.
    pub fn real<F>(dim: usize, eval: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(dim, move |t| Complex64::new(eval(t), 0.0))
    }

    pub fn with_envelope(mut self, envelope: Envelope) -> Self {
        debug_assert_eq!(envelope.center.len(), self.dim);
        self.envelope = Some(envelope);
        self
    }

    pub fn without_envelope(mut self) -> Self {
        self.envelope = None;
        self
    }

    pub fn with_singularities(mut self, singularities: Vec<Vec<f64>>) -> Self {
        self.singularities = singularities;
        self
    }

    pub fn square_integrable(mut self, flag: bool) -> Self {
        self.square_integrable = flag;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn envelope(&self) -> Option<&Envelope> {
        self.envelope.as_ref()
    }

    pub fn singularities(&self) -> &[Vec<f64>] {
        &self.singularities
    }

    pub fn is_square_integrable(&self) -> bool {
        self.square_integrable
    }

    #[inline]
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        debug_assert_eq!(t.len(), self.dim);
        (self.eval)(t)
    }

    /// True when `t` lies within `radius` of a singularity (exact hit when `radius == 0`).
    pub fn near_singularity(&self, t: &[f64], radius: f64) -> bool {
        self.singularities.iter().any(|p| {
            let d = distance(t, p);
            d <= radius
        })
    }

    /// Evaluates after checking dimension and singularity membership.
    pub fn eval_checked(&self, t: &[f64]) -> Result<Complex64> {
        self.require_dim(t.len())?;
        if self.near_singularity(t, 0.0) {
            return Err(Error::SingularityHit(t.to_vec()));
        }
        Ok(self.eval(t))
    }

    pub(crate) fn require_dim(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    pub(crate) fn map_eval<F>(&self, eval: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            dim: self.dim,
            eval: Arc::new(eval),
            envelope: self.envelope.clone(),
            singularities: self.singularities.clone(),
            square_integrable: self.square_integrable,
        }
    }
}

impl fmt::Debug for FunctionEvaluator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionEvaluator")
            .field("dim", &self.dim)
            .field("envelope", &self.envelope)
            .field("singularities", &self.singularities)
            .field("square_integrable", &self.square_integrable)
            .finish_non_exhaustive()
    }
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 1 || dim == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
