use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evaluator::{check_dim, FunctionEvaluator};
use crate::error::{Error, Result};

/// Reduction chunk size. Fixed so that parallel sums are bit-identical for any thread count.
const CHUNK: usize = 1024;

/// Truncation box `[-L, L]^n`, per-axis sample count, and singularity exclusion radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub half_width: f64,
    pub samples_per_axis: usize,
    #[serde(default = "default_exclusion")]
    pub exclusion_radius: f64,
}

fn default_exclusion() -> f64 {
    1e-6
}

impl GridSpec {
    pub fn new(half_width: f64, samples_per_axis: usize, exclusion_radius: f64) -> Result<Self> {
        let g = Self {
            half_width,
            samples_per_axis,
            exclusion_radius,
        };
        g.validate()?;
        Ok(g)
    }

    /// Default quadrature grid: `L = 8, m = 4096` for `n = 1`, `L = 6, m = 512` for `n = 2`.
    pub fn default_for(dim: usize) -> Self {
        match dim {
            1 => Self {
                half_width: 8.0,
                samples_per_axis: 4096,
                exclusion_radius: default_exclusion(),
            },
            _ => Self {
                half_width: 6.0,
                samples_per_axis: 512,
                exclusion_radius: default_exclusion(),
            },
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "half_width must be positive, got {}",
                self.half_width
            )));
        }
        if self.samples_per_axis < 2 {
            return Err(Error::InvalidGrid("samples_per_axis must be >= 2".into()));
        }
        if !(self.exclusion_radius >= 0.0 && self.exclusion_radius < self.half_width) {
            return Err(Error::InvalidGrid(
                "exclusion_radius must lie in [0, half_width)".into(),
            ));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        2.0 * self.half_width / (self.samples_per_axis - 1) as f64
    }

    pub fn axis(&self) -> Vec<f64> {
        let h = self.step();
        (0..self.samples_per_axis)
            .map(|k| -self.half_width + k as f64 * h)
            .collect()
    }

    /// Tensor-product trapezoid nodes in `R^dim`, omitting points within
    /// `exclusion_radius` of any of `singularities`.
    pub fn nodes(&self, dim: usize, singularities: &[Vec<f64>]) -> Result<Nodes> {
        self.validate()?;
        check_dim(dim)?;
        let axis = self.axis();
        let h = self.step();
        let m = axis.len();
        let w1 = |k: usize| if k == 0 || k == m - 1 { 0.5 * h } else { h };
        let total = m.pow(dim as u32);
        let mut coords = Vec::with_capacity(total * dim);
        let mut weights = Vec::with_capacity(total);
        let excluded = |t: &[f64]| {
            singularities.iter().any(|p| {
                let d2: f64 = t.iter().zip(p).map(|(a, b)| (a - b) * (a - b)).sum();
                d2.sqrt() <= self.exclusion_radius
            })
        };
        let mut buf = [0.0; 2];
        for idx in 0..total {
            let mut rem = idx;
            let mut w = 1.0;
            for d in (0..dim).rev() {
                let k = rem % m;
                rem /= m;
                buf[d] = axis[k];
                w *= w1(k);
            }
            if !singularities.is_empty() && excluded(&buf[..dim]) {
                continue;
            }
            coords.extend_from_slice(&buf[..dim]);
            weights.push(w);
        }
        Ok(Nodes {
            dim,
            coords,
            weights,
        })
    }

    /// Lattice sample points (no weights, no exclusion), for sup-norm scans.
    pub fn lattice(&self, dim: usize) -> Vec<Vec<f64>> {
        let axis = self.axis();
        let m = axis.len();
        let total = m.pow(dim as u32);
        (0..total)
            .map(|idx| {
                let mut rem = idx;
                let mut p = vec![0.0; dim];
                for d in (0..dim).rev() {
                    p[d] = axis[rem % m];
                    rem /= m;
                }
                p
            })
            .collect()
    }
}

/// Quadrature nodes with weights, stored flat.
#[derive(Debug, Clone)]
pub struct Nodes {
    dim: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
}

impl Nodes {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    #[inline]
    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    /// Weighted sum `sum_k w_k f(t_k)` with a deterministic chunked reduction.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&[f64]) -> Complex64 + Sync,
    {
        chunked_sum(self.len(), |k| f(self.point(k)) * self.weight(k))
    }
}

/// Sums `term(0) + ... + term(len - 1)`; chunks are summed in parallel and the
/// partial sums are combined left to right.
pub fn chunked_sum<F>(len: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partial: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in lo..hi {
                acc += term(k);
            }
            acc
        })
        .collect();
    partial
        .into_iter()
        .fold(Complex64::new(0.0, 0.0), |a, b| a + b)
}

/// Quadrature approximation of `||f||_2` over the truncation box.
pub fn l2_norm(f: &FunctionEvaluator, grid: &GridSpec) -> Result<f64> {
    let nodes = grid.nodes(f.dim(), f.singularities())?;
    Ok(nodes
        .integrate(|t| Complex64::new(f.eval(t).norm_sqr(), 0.0))
        .re
        .sqrt())
}

/// Quadrature approximation of `<f, g> = int f conj(g)`.
pub fn inner(f: &FunctionEvaluator, g: &FunctionEvaluator, grid: &GridSpec) -> Result<Complex64> {
    f.require_dim(g.dim())?;
    let mut sing = f.singularities().to_vec();
    sing.extend_from_slice(g.singularities());
    let nodes = grid.nodes(f.dim(), &sing)?;
    Ok(nodes.integrate(|t| f.eval(t) * g.eval(t).conj()))
}
