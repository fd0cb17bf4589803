//! Window design search: find `g` in a Gaussian-Hermite family so that
//! `|V_g f|` is small outside a ball of radius `R` relative to `|<f, g>|`.
//!
//! The tail is scanned on a lattice (plus the boundary circle), so every ratio
//! here is a heuristic lower bound of the true supremum.

mod hermite;
mod simplex;

use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use hermite::hermite_functions;
use simplex::{nelder_mead, Bounds};

use crate::error::{Error, Result};
use crate::tfops::{inner, norm, FunctionEvaluator, GridSpec, StftPlan, TFPoint};

pub const MIN_WIDTH: f64 = 1.0 / 16.0;
pub const MAX_WIDTH: f64 = 16.0;
pub const MAX_DEGREE: usize = 8;
/// `|<f, g>|` at or below this is treated as orthogonal.
pub const MIN_INNER: f64 = 1e-10;
/// Ratios within this relative distance of the target do not count as achieved.
pub const ACHIEVE_TOL: f64 = 1e-9;
const CIRCLE_POINTS: usize = 256;
const RESTARTS: u64 = 3;
const COEFF_BOX: f64 = 1.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowParams {
    pub width: f64,
    pub hermite_coeffs: Vec<f64>,
}

impl WindowParams {
    pub fn gaussian() -> Self {
        Self {
            width: 1.0,
            hermite_coeffs: vec![1.0],
        }
    }

    pub fn degree(&self) -> usize {
        self.hermite_coeffs.len().saturating_sub(1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(MIN_WIDTH..=MAX_WIDTH).contains(&self.width) {
            return Err(Error::InvalidParameter(format!(
                "window width {} outside [1/16, 16]",
                self.width
            )));
        }
        if self.hermite_coeffs.is_empty() || self.degree() > MAX_DEGREE {
            return Err(Error::InvalidParameter(format!(
                "need 1..={} Hermite coefficients",
                MAX_DEGREE + 1
            )));
        }
        if self.hermite_coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter(
                "non-finite Hermite coefficient".into(),
            ));
        }
        if self.hermite_coeffs.iter().all(|c| *c == 0.0) {
            return Err(Error::InvalidParameter(
                "Hermite coefficients are all zero".into(),
            ));
        }
        Ok(())
    }

    /// `g(t) = width^{-1/2} sum_k c_k h_k(t / width)` on the real line.
    pub fn realize(&self) -> Result<FunctionEvaluator> {
        self.validate()?;
        let w = self.width;
        let c = self.hermite_coeffs.clone();
        let d = self.degree();
        let scale = w.sqrt().recip();
        FunctionEvaluator::real(1, move |t| {
            let h = hermite_functions(d, t[0] / w);
            scale * c.iter().zip(&h).map(|(a, b)| a * b).sum::<f64>()
        })
        .map(|g| g.square_integrable(true))
    }
}

/// Details of one tail scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailScan {
    pub ratio: f64,
    pub tail_max: f64,
    pub inner_abs: f64,
    pub lattice_half_width: f64,
    pub lattice_samples_per_axis: usize,
    pub points_scanned: usize,
}

/// Lattice for the tail scan: `[-8, 8]^2` in `(x, omega)`, 33 points per axis.
pub fn default_tail_lattice() -> GridSpec {
    GridSpec::new(8.0, 33, 0.0).expect("static grid")
}

/// Quadrature grid for `<f, g>` and the STFT.
pub fn default_tail_quadrature() -> GridSpec {
    GridSpec::new(8.0, 512, 1e-6).expect("static grid")
}

/// `max |V_g f(lambda)| / |<f, g>|` over lattice points with `||lambda|| > R`
/// and the circle `||lambda|| = R`.
pub fn tail_ratio(
    f: &FunctionEvaluator,
    g_params: &WindowParams,
    radius: f64,
    n: usize,
    lattice: &GridSpec,
) -> Result<f64> {
    Ok(tail_scan(f, g_params, radius, n, lattice, &default_tail_quadrature())?.ratio)
}

pub fn tail_scan(
    f: &FunctionEvaluator,
    g_params: &WindowParams,
    radius: f64,
    n: usize,
    lattice: &GridSpec,
    grid: &GridSpec,
) -> Result<TailScan> {
    f.require_dim(1)?;
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "R must be positive, got {radius}"
        )));
    }
    lattice.validate()?;
    let g = g_params.realize()?;
    let ip = inner(f, &g, grid)?.norm();
    if ip <= MIN_INNER {
        return Err(Error::NearOrthogonal(ip));
    }
    let mut points: Vec<TFPoint> = lattice
        .lattice(2)
        .into_iter()
        .filter(|p| norm(p) > radius)
        .map(|p| TFPoint {
            x: vec![p[0]],
            omega: vec![p[1]],
        })
        .collect();
    points.extend((0..CIRCLE_POINTS).map(|k| {
        let th = 2.0 * PI * k as f64 / CIRCLE_POINTS as f64;
        TFPoint {
            x: vec![radius * th.cos()],
            omega: vec![radius * th.sin()],
        }
    }));
    let plan = StftPlan::new(f, &g, grid)?;
    let tail_max = plan
        .eval_many(&points)
        .into_iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    Ok(TailScan {
        ratio: tail_max / ip,
        tail_max,
        inner_abs: ip,
        lattice_half_width: lattice.half_width,
        lattice_samples_per_axis: lattice.samples_per_axis,
        points_scanned: points.len(),
    })
}

/// Whether `ratio` beats `target` by more than the rounding margin.
pub fn is_achieved(ratio: f64, target: f64) -> bool {
    ratio < target * (1.0 - ACHIEVE_TOL)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub evaluation: usize,
    pub restart: usize,
    pub params: WindowParams,
    /// `None` when the window was near-orthogonal to `f`.
    pub ratio: Option<f64>,
    /// Best ratio seen so far across all restarts.
    pub incumbent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub best_params: WindowParams,
    pub ratio: f64,
    pub target: f64,
    pub achieved: bool,
    pub evaluations: usize,
    pub radius: f64,
    pub n: usize,
    pub lattice_half_width: f64,
    pub lattice_samples_per_axis: usize,
    pub trace: Vec<TraceEntry>,
}

impl SearchResult {
    /// Trace as CSV: `evaluation,restart,width,c0..cd,ratio,incumbent`.
    pub fn trace_csv(&self) -> String {
        let d = self.best_params.degree();
        let mut out = String::from("evaluation,restart,width");
        for k in 0..=d {
            out.push_str(&format!(",c{k}"));
        }
        out.push_str(",ratio,incumbent\n");
        for e in &self.trace {
            out.push_str(&format!(
                "{},{},{:e}",
                e.evaluation, e.restart, e.params.width
            ));
            for c in &e.params.hermite_coeffs {
                out.push_str(&format!(",{c:e}"));
            }
            match e.ratio {
                Some(r) => out.push_str(&format!(",{r:e}")),
                None => out.push(','),
            }
            out.push_str(&format!(",{:e}\n", e.incumbent));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOptions {
    pub lattice: GridSpec,
    pub grid: GridSpec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            lattice: default_tail_lattice(),
            grid: default_tail_quadrature(),
        }
    }
}

fn to_params(x: &[f64]) -> WindowParams {
    WindowParams {
        width: x[0].exp2(),
        hermite_coeffs: x[1..].to_vec(),
    }
}

/// Seeded simplex search minimizing [`tail_ratio`] over windows of degree `d`.
pub fn search(
    f: &FunctionEvaluator,
    radius: f64,
    n: usize,
    d: usize,
    budget: usize,
    seed: u64,
) -> Result<SearchResult> {
    search_with(f, radius, n, d, budget, seed, &SearchOptions::default())
}

pub fn search_with(
    f: &FunctionEvaluator,
    radius: f64,
    n: usize,
    d: usize,
    budget: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<SearchResult> {
    if budget < 10 {
        return Err(Error::InvalidParameter(format!(
            "budget must be >= 10, got {budget}"
        )));
    }
    if d > MAX_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "degree {d} exceeds {MAX_DEGREE}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("N must be at least 1".into()));
    }
    f.require_dim(1)?;
    let dim = d + 2;
    let bounds = Bounds {
        lo: std::iter::once(MIN_WIDTH.log2())
            .chain(std::iter::repeat_n(-COEFF_BOX, d + 1))
            .collect(),
        hi: std::iter::once(MAX_WIDTH.log2())
            .chain(std::iter::repeat_n(COEFF_BOX, d + 1))
            .collect(),
    };
    let mut trace: Vec<TraceEntry> = Vec::new();
    let mut best: Option<(WindowParams, f64)> = None;
    let mut failures: Vec<String> = Vec::new();
    let per = budget / RESTARTS as usize;
    for restart in 0..RESTARTS {
        let quota = if restart == 0 {
            budget - per * (RESTARTS as usize - 1)
        } else {
            per
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart));
        let start: Vec<f64> = if restart == 0 {
            let mut x = vec![0.0; dim];
            x[1] = 1.0;
            x
        } else {
            (0..dim)
                .map(|k| rng.random_range(bounds.lo[k]..bounds.hi[k]))
                .collect()
        };
        let steps: Vec<f64> = (0..dim)
            .map(|k| {
                let s = if k == 0 { 0.5 } else { 0.25 };
                s * rng.random_range(0.5..1.5)
            })
            .collect();
        let mut used = 0;
        nelder_mead(&start, &steps, &bounds, |x| {
            if used >= quota {
                return None;
            }
            used += 1;
            let params = to_params(x);
            let ratio = match tail_scan(f, &params, radius, n, &opts.lattice, &opts.grid) {
                Ok(s) => Some(s.ratio),
                Err(e) => {
                    if failures.len() < 8 {
                        failures.push(e.to_string());
                    }
                    None
                }
            };
            if let Some(r) = ratio {
                if best.as_ref().is_none_or(|(_, b)| r < *b) {
                    best = Some((params.clone(), r));
                }
            }
            trace.push(TraceEntry {
                evaluation: trace.len() + 1,
                restart: restart as usize,
                params,
                ratio,
                incumbent: best.as_ref().map_or(f64::INFINITY, |b| b.1),
            });
            Some(ratio.unwrap_or(f64::INFINITY))
        });
    }
    let Some((best_params, ratio)) = best else {
        return Err(Error::SearchFailed(format!(
            "all {} evaluations failed: {}",
            trace.len(),
            failures.join("; ")
        )));
    };
    let target = 1.0 / n as f64;
    Ok(SearchResult {
        best_params,
        ratio,
        target,
        achieved: is_achieved(ratio, target),
        evaluations: trace.len(),
        radius,
        n,
        lattice_half_width: opts.lattice.half_width,
        lattice_samples_per_axis: opts.lattice.samples_per_axis,
        trace,
    })
}
