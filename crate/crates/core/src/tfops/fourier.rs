use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::evaluator::{dot, FunctionEvaluator};
use super::grid::GridSpec;
use crate::error::{Error, Result};

/// Truncated-quadrature Fourier transform `f^(omega) = int_{[-L,L]^n} f(t) e^{-2 pi i omega.t} dt`.
///
/// `f` is sampled once on the grid; the returned evaluator accepts any real
/// frequency. Refuses inputs whose tail mass outside the box cannot be bounded.
pub fn fourier(f: &FunctionEvaluator, grid: &GridSpec) -> Result<FunctionEvaluator> {
    if f.envelope().is_none() && !f.is_square_integrable() {
        return Err(Error::UnboundedTruncation);
    }
    let samples = Arc::new(WeightedSamples::new(f, grid)?);
    let dim = f.dim();
    let out = FunctionEvaluator::new(dim, move |w| samples.transform(w, -1.0))?
        .square_integrable(f.is_square_integrable());
    Ok(out)
}

/// Applies the Fourier multiplier `m(xi)`: returns an evaluator for
/// `t -> int m(xi) f^(xi) e^{2 pi i xi.t} d xi`, with both transforms by truncated
/// quadrature on `grid` (the frequency box reuses the grid's extent).
pub fn fourier_multiplier<M>(
    f: &FunctionEvaluator,
    multiplier: M,
    grid: &GridSpec,
) -> Result<FunctionEvaluator>
where
    M: Fn(&[f64]) -> Complex64 + Sync,
{
    let fhat = fourier(f, grid)?;
    let nodes = grid.nodes(f.dim(), &[])?;
    let dim = f.dim();
    let mut points = Vec::with_capacity(nodes.len() * dim);
    let mut values = Vec::with_capacity(nodes.len());
    for k in 0..nodes.len() {
        let xi = nodes.point(k);
        points.extend_from_slice(xi);
        values.push(nodes.weight(k) * multiplier(xi) * fhat.eval(xi));
    }
    let spectrum = Arc::new(WeightedSamples {
        dim,
        points,
        values,
    });
    let out = FunctionEvaluator::new(dim, move |t| spectrum.transform(t, 1.0))?
        .square_integrable(f.is_square_integrable());
    Ok(out)
}

/// `w_k f(t_k)` on a fixed node set.
struct WeightedSamples {
    dim: usize,
    points: Vec<f64>,
    values: Vec<Complex64>,
}

impl WeightedSamples {
    fn new(f: &FunctionEvaluator, grid: &GridSpec) -> Result<Self> {
        let nodes = grid.nodes(f.dim(), f.singularities())?;
        let dim = f.dim();
        let mut points = Vec::with_capacity(nodes.len() * dim);
        let mut values = Vec::with_capacity(nodes.len());
        for k in 0..nodes.len() {
            let t = nodes.point(k);
            points.extend_from_slice(t);
            values.push(f.eval(t) * nodes.weight(k));
        }
        Ok(Self {
            dim,
            points,
            values,
        })
    }

    /// `sum_k v_k e^{sign 2 pi i w.t_k}`, summed sequentially.
    fn transform(&self, w: &[f64], sign: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in self.values.iter().enumerate() {
            let t = &self.points[k * self.dim..(k + 1) * self.dim];
            acc += v * Complex64::cis(sign * 2.0 * PI * dot(w, t));
        }
        acc
    }
}
