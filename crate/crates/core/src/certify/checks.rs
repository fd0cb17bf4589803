use rayon::prelude::*;

use super::certificate::{bound_for, Certificate, SupMethod, Theorem, Verdict};
use super::radius::decay_radius;
use super::CertifyOptions;
use crate::error::{Error, Result};
use crate::tfops::{
    dilate, distance, min_pairwise, translate, FunctionEvaluator, GridSpec, PointSet,
};

/// Checks `|f(x_i - x_j)| < |f(0)|/(N-1)` for every ordered pair of distinct indices.
pub fn check_lemma1(f: &FunctionEvaluator, s: &[Vec<f64>]) -> Result<Certificate> {
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    for p in s {
        f.require_dim(p.len())?;
    }
    let origin = vec![0.0; f.dim()];
    let peak = f.eval_checked(&origin)?.norm();
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::ZeroAnchor);
    }
    if n == 1 {
        return Ok(Certificate::trivial(
            Theorem::Lemma1,
            peak,
            SupMethod::Pointwise,
        ));
    }
    let bound = bound_for(peak, n);
    let mut margins = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d: Vec<f64> = s[i].iter().zip(&s[j]).map(|(a, b)| a - b).collect();
            margins.push(bound - f.eval_checked(&d)?.norm());
        }
    }
    let certified = margins.iter().all(|m| *m > 0.0);
    Ok(Certificate {
        theorem: Theorem::Lemma1,
        verdict: verdict(certified),
        n,
        radius: 0.0,
        separation: min_pairwise(s),
        peak,
        bound,
        margins,
        translate_x: None,
        threshold_r: None,
        sup_method: SupMethod::Pointwise,
        note: None,
    })
}

/// Theorem 1: certified iff the minimum time separation exceeds the decay radius.
///
/// The function is anchored at its envelope center (the origin when there is no
/// envelope), which is the translate with the most useful peak for built-ins.
pub fn check_theorem1(
    f: &FunctionEvaluator,
    lam: &PointSet,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    f.require_dim(lam.dim())?;
    if !f.singularities().is_empty() {
        return Err(Error::InvalidParameter(
            "function has singularities; use check_theorem2".into(),
        ));
    }
    let anchor = anchor_of(f);
    let n = lam.len();
    if n == 1 {
        let peak = f.eval(&anchor).norm();
        if peak == 0.0 {
            return Err(Error::ZeroAnchor);
        }
        return Ok(Certificate::trivial(
            Theorem::Thm1,
            peak,
            SupMethod::Pointwise,
        ));
    }
    let dr = decay_radius(f, n, &anchor, opts)?;
    let times = lam.times();
    let separation = min_pairwise(&times);
    let margins = pair_margins(&times, dr.radius);
    let certified = separation > dr.radius;
    let note = (separation == 0.0).then(|| {
        "duplicate time coordinates give M = 0; the time-separation hypothesis fails".to_string()
    });
    Ok(Certificate {
        theorem: Theorem::Thm1,
        verdict: verdict(certified),
        n,
        radius: dr.radius,
        separation,
        peak: dr.peak,
        bound: dr.bound,
        margins,
        translate_x: anchor.iter().any(|a| *a != 0.0).then_some(anchor),
        threshold_r: None,
        sup_method: dr.method,
        note,
    })
}

/// Dilation threshold `M / R` of the dilation corollary.
///
/// Contract: for every `0 < r < M/R`, [`check_corollary1`] with parameter `r`
/// (the function contracted as `t -> t/r`) is certified. Infinite when `R = 0`.
pub fn dilation_threshold(
    f: &FunctionEvaluator,
    lam: &PointSet,
    opts: &CertifyOptions,
) -> Result<f64> {
    f.require_dim(lam.dim())?;
    let separation = lam.min_time_separation();
    if separation == 0.0 {
        return Err(Error::NotCertifiable(
            "minimum time separation is zero".into(),
        ));
    }
    if lam.len() < 2 {
        return Ok(f64::INFINITY);
    }
    let dr = decay_radius(f, lam.len(), &anchor_of(f), opts)?;
    if dr.radius == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(separation / dr.radius)
}

/// Theorem 1 applied to `f` contracted by the factor `r`, i.e. `dilate(f, 1/r)`,
/// whose decay radius is `r R`.
pub fn check_corollary1(
    f: &FunctionEvaluator,
    lam: &PointSet,
    r: f64,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dilation parameter must be positive, got {r}"
        )));
    }
    let mut cert = check_theorem1(&dilate(f, 1.0 / r)?, lam, opts)?;
    cert.theorem = Theorem::Cor1;
    cert.threshold_r = dilation_threshold(f, lam, opts)
        .ok()
        .filter(|t| t.is_finite());
    Ok(cert)
}

/// Searches for an anchor `a` such that Lemma 1 holds for `f(. + a)` on `s`.
///
/// The origin is tried first. Otherwise candidates are the sample-grid points
/// where `|f| >= 0.5 max |f|`, and the certified candidate with the largest
/// minimum margin wins (earliest on ties).
pub fn best_translate(
    f: &FunctionEvaluator,
    s: &[Vec<f64>],
    opts: &CertifyOptions,
) -> Result<Option<Vec<f64>>> {
    if s.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    for p in s {
        f.require_dim(p.len())?;
    }
    let origin = vec![0.0; f.dim()];
    if let Ok(c) = check_lemma1(f, s) {
        if c.is_certified() {
            return Ok(Some(origin));
        }
    }
    let grid = opts
        .sample_grid
        .unwrap_or_else(|| GridSpec::default_for(f.dim()));
    let lattice = grid.lattice(f.dim());
    let mags: Vec<f64> = lattice
        .par_iter()
        .map(|t| {
            if f.near_singularity(t, grid.exclusion_radius) {
                0.0
            } else {
                let v = f.eval(t).norm();
                if v.is_finite() {
                    v
                } else {
                    0.0
                }
            }
        })
        .collect();
    let max = mags.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Ok(None);
    }
    let candidates: Vec<usize> = (0..lattice.len())
        .filter(|&k| mags[k] >= 0.5 * max)
        .collect();
    let scored: Vec<Option<f64>> = candidates
        .par_iter()
        .map(|&k| {
            let neg: Vec<f64> = lattice[k].iter().map(|v| -v).collect();
            let g = translate(f, &neg).ok()?;
            let c = check_lemma1(&g, s).ok()?;
            c.is_certified().then(|| c.min_margin())
        })
        .collect();
    let mut best: Option<(usize, f64)> = None;
    for (i, score) in scored.iter().enumerate() {
        if let Some(m) = score {
            if best.is_none_or(|(_, b)| *m > b) {
                best = Some((candidates[i], *m));
            }
        }
    }
    Ok(best.map(|(k, _)| lattice[k].clone()))
}

pub(crate) fn anchor_of(f: &FunctionEvaluator) -> Vec<f64> {
    f.envelope()
        .map(|e| e.center().to_vec())
        .unwrap_or_else(|| vec![0.0; f.dim()])
}

/// `||p_i - p_j|| - radius` over unordered pairs.
pub(crate) fn pair_margins(points: &[Vec<f64>], radius: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            out.push(distance(&points[i], &points[j]) - radius);
        }
    }
    out
}

pub(crate) fn verdict(certified: bool) -> Verdict {
    if certified {
        Verdict::Certified
    } else {
        Verdict::NotCertified
    }
}
