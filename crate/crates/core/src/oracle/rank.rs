use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rayon::prelude::*;

use super::report::{IndependenceReport, IndependenceVerdict, RankMode};
use crate::error::{Error, Result};
use crate::tfops::{dot, FunctionEvaluator, GridSpec, PointSet, TFPoint};

/// Largest system handled by the dense decompositions.
pub const MAX_POINTS: usize = 64;
/// Collocation matrices with `sigma_max` below this carry no information.
const ZERO_SIGMA: f64 = 1e-12;
/// Samples closer than this to a shifted singularity count as hits.
const HIT_RADIUS: f64 = 1e-9;

fn shifted_eval(f: &FunctionEvaluator, lam: &TFPoint, t: &[f64]) -> Complex64 {
    let mut buf = [0.0; 2];
    for d in 0..t.len() {
        buf[d] = t[d] - lam.x[d];
    }
    Complex64::cis(2.0 * PI * dot(&lam.omega, t)) * f.eval(&buf[..t.len()])
}

fn shifted_singularities(f: &FunctionEvaluator, lam: &PointSet) -> Vec<Vec<f64>> {
    lam.iter()
        .flat_map(|p| {
            f.singularities()
                .iter()
                .map(move |s| s.iter().zip(&p.x).map(|(a, b)| a + b).collect())
        })
        .collect()
}

fn check_size(f: &FunctionEvaluator, lam: &PointSet) -> Result<()> {
    f.require_dim(lam.dim())?;
    if lam.len() > MAX_POINTS {
        return Err(Error::TooManyPoints(lam.len()));
    }
    Ok(())
}

fn assemble_gram(
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
) -> Result<Vec<Vec<Complex64>>> {
    let nodes = grid.nodes(f.dim(), &shifted_singularities(f, lam))?;
    let n = lam.len();
    let columns: Vec<Vec<Complex64>> = lam
        .points()
        .par_iter()
        .map(|p| {
            (0..nodes.len())
                .map(|k| shifted_eval(f, p, nodes.point(k)))
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let entries: Vec<Complex64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&columns[i], &columns[j]);
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..nodes.len() {
                acc += a[k] * b[k].conj() * nodes.weight(k);
            }
            acc
        })
        .collect();
    Ok(entries.chunks(n).map(|r| r.to_vec()).collect())
}

/// Gram matrix `G_ij = <pi(lambda_i) f, pi(lambda_j) f>` by quadrature, with the
/// extremal eigenvalues of its Hermitian part.
///
/// The quadrature error estimate is the largest entry change against the same
/// assembly on a grid with half as many points per axis.
pub fn gram_matrix(
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
) -> Result<IndependenceReport> {
    check_size(f, lam)?;
    if !f.is_square_integrable() {
        return Err(Error::NotSquareIntegrable);
    }
    let n = lam.len();
    let g = assemble_gram(f, lam, grid)?;
    let coarse = GridSpec {
        samples_per_axis: (grid.samples_per_axis / 2).max(2),
        ..*grid
    };
    let gc = assemble_gram(f, lam, &coarse)?;
    let mut quad_err = 0.0f64;
    let mut defect = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            quad_err = quad_err.max((g[i][j] - gc[i][j]).norm());
            defect = defect.max((g[i][j] - g[j][i].conj()).norm());
        }
    }
    let herm = DMatrix::from_fn(n, n, |i, j| (g[i][j] + g[j][i].conj()) * 0.5);
    let eig = SymmetricEigen::new(herm).eigenvalues;
    let lmin = eig.iter().copied().fold(f64::INFINITY, f64::min);
    let lmax = eig.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sigma_min = lmin.max(0.0);
    let sigma_max = lmax.max(0.0);
    let relative_gap = if sigma_max > 0.0 {
        sigma_min / sigma_max
    } else {
        0.0
    };
    let verdict = if sigma_max > 0.0 {
        IndependenceVerdict::from_gap(relative_gap)
    } else {
        IndependenceVerdict::Inconclusive
    };
    Ok(IndependenceReport {
        mode: RankMode::Gram,
        matrix_dim: [n, n],
        sigma_min,
        sigma_max,
        relative_gap,
        verdict,
        quad_error_estimate: quad_err,
        min_eigenvalue: Some(lmin),
        hermitian_defect: Some(defect),
        matrix: g,
    })
}

/// Collocation test: singular values of `A_{k,i} = (pi(lambda_i) f)(t_k)`.
///
/// An `Independent` verdict is sound for continuous `f`; `Dependent` is heuristic.
/// A numerically zero matrix is `Inconclusive`.
pub fn collocation_rank(
    f: &FunctionEvaluator,
    lam: &PointSet,
    samples: &[Vec<f64>],
) -> Result<IndependenceReport> {
    check_size(f, lam)?;
    let n = lam.len();
    if samples.len() < n {
        return Err(Error::InvalidParameter(format!(
            "need at least N = {n} sample points, got {}",
            samples.len()
        )));
    }
    let sing = shifted_singularities(f, lam);
    for s in samples {
        f.require_dim(s.len())?;
        if sing
            .iter()
            .any(|p| crate::tfops::distance(p, s) <= HIT_RADIUS)
        {
            return Err(Error::SingularityHit(s.clone()));
        }
    }
    let k = samples.len();
    let a = DMatrix::from_fn(k, n, |r, c| shifted_eval(f, &lam.points()[c], &samples[r]));
    let sv = a.clone().svd(false, false).singular_values;
    let smin = sv.iter().copied().fold(f64::INFINITY, f64::min);
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let (relative_gap, verdict) = if smax < ZERO_SIGMA || !smax.is_finite() {
        (0.0, IndependenceVerdict::Inconclusive)
    } else {
        let gap = smin / smax;
        (gap, IndependenceVerdict::from_gap(gap))
    };
    let matrix = (0..k)
        .map(|r| (0..n).map(|c| a[(r, c)]).collect())
        .collect();
    Ok(IndependenceReport {
        mode: RankMode::Collocation,
        matrix_dim: [k, n],
        sigma_min: smin,
        sigma_max: smax,
        relative_gap,
        verdict,
        quad_error_estimate: 0.0,
        min_eigenvalue: None,
        hermitian_defect: None,
        matrix,
    })
}

/// Default collocation samples: the time coordinates of `lam`, midpoints of
/// consecutive times, and `4N` Halton points in the truncation box, dropping any
/// point within `grid.exclusion_radius` of a shifted singularity.
pub fn default_collocation_samples(
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
) -> Vec<Vec<f64>> {
    let dim = lam.dim();
    let mut times = lam.times();
    if dim == 1 {
        times.sort_by(|a, b| a[0].total_cmp(&b[0]));
    }
    let mut out = times.clone();
    for w in times.windows(2) {
        out.push(w[0].iter().zip(&w[1]).map(|(a, b)| 0.5 * (a + b)).collect());
    }
    let bases = [2u64, 3];
    for i in 1..=(4 * lam.len()) as u64 {
        out.push(
            (0..dim)
                .map(|d| grid.half_width * (2.0 * halton(i, bases[d]) - 1.0))
                .collect(),
        );
    }
    let sing = shifted_singularities(f, lam);
    let radius = grid.exclusion_radius.max(HIT_RADIUS);
    out.retain(|s| sing.iter().all(|p| crate::tfops::distance(p, s) > radius));
    out
}

fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}
