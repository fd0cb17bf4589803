use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::evaluator::{dot, FunctionEvaluator};
use super::grid::{GridSpec, Nodes};
use super::point::TFPoint;
use crate::error::{Error, Result};

/// `V_g f(lambda) = <f, pi(lambda) g>` by truncated quadrature.
pub fn stft(
    f: &FunctionEvaluator,
    g: &FunctionEvaluator,
    lam: &TFPoint,
    grid: &GridSpec,
) -> Result<Complex64> {
    let plan = StftPlan::new(f, g, grid)?;
    plan.check_point(lam)?;
    Ok(plan.eval(lam))
}

/// Reusable STFT evaluator: `f` is sampled once, the window is re-evaluated per time shift.
pub struct StftPlan {
    window: FunctionEvaluator,
    nodes: Nodes,
    weighted_f: Vec<Complex64>,
}

impl StftPlan {
    pub fn new(f: &FunctionEvaluator, g: &FunctionEvaluator, grid: &GridSpec) -> Result<Self> {
        f.require_dim(g.dim())?;
        if !f.is_square_integrable() || !g.is_square_integrable() {
            return Err(Error::NotSquareIntegrable);
        }
        let nodes = grid.nodes(f.dim(), f.singularities())?;
        let weighted_f = (0..nodes.len())
            .map(|k| f.eval(nodes.point(k)) * nodes.weight(k))
            .collect();
        Ok(Self {
            window: g.clone(),
            nodes,
            weighted_f,
        })
    }

    pub fn dim(&self) -> usize {
        self.nodes.dim()
    }

    fn check_point(&self, lam: &TFPoint) -> Result<()> {
        if lam.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: lam.dim(),
            });
        }
        Ok(())
    }

    /// `f(t_k) w_k conj(g(t_k - x))` for every node.
    fn row(&self, x: &[f64]) -> Vec<Complex64> {
        let dim = self.dim();
        let mut buf = [0.0; 2];
        (0..self.nodes.len())
            .map(|k| {
                let t = self.nodes.point(k);
                for d in 0..dim {
                    buf[d] = t[d] - x[d];
                }
                self.weighted_f[k] * self.window.eval(&buf[..dim]).conj()
            })
            .collect()
    }

    fn contract(&self, row: &[Complex64], omega: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, v) in row.iter().enumerate() {
            acc += v * Complex64::cis(-2.0 * PI * dot(omega, self.nodes.point(k)));
        }
        acc
    }

    pub fn eval(&self, lam: &TFPoint) -> Complex64 {
        self.contract(&self.row(&lam.x), &lam.omega)
    }

    /// Evaluates at every `(x, omega)` with `x` in `xs` and `omega` in `omegas`;
    /// result is row-major over `xs`.
    pub fn eval_product(&self, xs: &[Vec<f64>], omegas: &[Vec<f64>]) -> Vec<Complex64> {
        xs.par_iter()
            .flat_map_iter(|x| {
                let row = self.row(x);
                omegas
                    .iter()
                    .map(|w| self.contract(&row, w))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Evaluates at an arbitrary list of points.
    pub fn eval_many(&self, points: &[TFPoint]) -> Vec<Complex64> {
        points.par_iter().map(|p| self.eval(p)).collect()
    }
}
