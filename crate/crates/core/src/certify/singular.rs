use rayon::prelude::*;

use super::certificate::{bound_for, Certificate, SupMethod, Theorem};
use super::checks::check_lemma1;
use super::CertifyOptions;
use crate::error::{Error, Result};
use crate::tfops::{distance, translate, FunctionEvaluator, GridSpec, PointSet};

/// Geometric ratio of the radii tried when searching for the peak translate.
const SHRINK: f64 = 0.9;
const MIN_SEARCH_RADIUS: f64 = 1e-12;
/// Offset from the singularity used for the trivial `N = 1` certificate.
const TRIVIAL_OFFSET: f64 = 1e-3;

/// Theorem 2 for a function with a single blow-up singularity `p`.
///
/// With `R` the minimum time separation, bounds `A = sup_{||t - p|| >= R/2} |f(t)|`
/// and searches `||x - p|| < R/2` for `|f(x)| > A (N - 1)`. The certificate carries
/// `x` and the margins of Lemma 1 re-run on `f(. + x)`.
pub fn check_theorem2(
    f: &FunctionEvaluator,
    lam: &PointSet,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    f.require_dim(lam.dim())?;
    let p = match f.singularities() {
        [p] => p.clone(),
        s => {
            return Err(Error::InvalidParameter(format!(
                "Theorem 2 needs exactly one singularity, found {}",
                s.len()
            )))
        }
    };
    let dim = f.dim();
    let n = lam.len();
    if n == 1 {
        let mut x = p.clone();
        x[0] += TRIVIAL_OFFSET;
        let peak = f.eval(&x).norm();
        let mut cert = Certificate::trivial(Theorem::Thm2, peak, SupMethod::Pointwise);
        cert.translate_x = Some(x);
        return Ok(cert);
    }
    let separation = lam.min_time_separation();
    if separation == 0.0 {
        return Err(Error::NotCertifiable(
            "minimum time separation R is zero".into(),
        ));
    }
    let half = 0.5 * separation;
    let (a_sup, method) = sup_away_from(f, &p, half, opts)?;
    let target = a_sup * (n - 1) as f64;

    let mut found = None;
    let mut s = half * SHRINK;
    'search: while s > MIN_SEARCH_RADIUS {
        for d in 0..dim {
            for sign in [1.0, -1.0] {
                let mut x = p.clone();
                x[d] += sign * s;
                if f.near_singularity(&x, 0.0) {
                    continue;
                }
                let v = f.eval(&x).norm();
                if v.is_finite() && v > target {
                    found = Some((x, v));
                    break 'search;
                }
            }
        }
        s *= SHRINK;
    }
    let Some((x, peak)) = found else {
        return Ok(Certificate {
            theorem: Theorem::Thm2,
            verdict: super::Verdict::NotCertified,
            n,
            radius: separation,
            separation,
            peak: 0.0,
            bound: 0.0,
            margins: Vec::new(),
            translate_x: None,
            threshold_r: None,
            sup_method: method,
            note: Some(format!(
                "no x within R/2 of the singularity with |f(x)| > A(N-1) = {target:.6e}"
            )),
        });
    };
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let lemma = check_lemma1(&translate(f, &neg)?, &lam.times())?;
    Ok(Certificate {
        theorem: Theorem::Thm2,
        verdict: lemma.verdict,
        n,
        radius: separation,
        separation,
        peak,
        bound: bound_for(peak, n),
        margins: lemma.margins,
        translate_x: Some(x),
        threshold_r: None,
        sup_method: method,
        note: Some(format!("A = {a_sup:.6e}")),
    })
}

/// `sup_{||t - p|| >= r} |f(t)|`, from the envelope when finite, else by sampling.
fn sup_away_from(
    f: &FunctionEvaluator,
    p: &[f64],
    r: f64,
    opts: &CertifyOptions,
) -> Result<(f64, SupMethod)> {
    if let Some(env) = f.envelope() {
        let a = env.bound_about(p, r);
        if a.is_finite() {
            return Ok((a, SupMethod::Envelope));
        }
    }
    if opts.rigorous {
        return Err(Error::NotCertifiable(
            "envelope is unbounded away from the singularity".into(),
        ));
    }
    let grid = opts
        .sample_grid
        .unwrap_or_else(|| GridSpec::default_for(f.dim()));
    let sup = grid
        .lattice(f.dim())
        .par_iter()
        .map(|s| {
            let t: Vec<f64> = s.iter().zip(p).map(|(a, b)| a + b).collect();
            if distance(&t, p) >= r {
                f.eval(&t).norm()
            } else {
                0.0
            }
        })
        .reduce(|| 0.0, f64::max);
    if !sup.is_finite() {
        return Err(Error::NotCertifiable("sampled sup is infinite".into()));
    }
    Ok((sup, SupMethod::DenseSample))
}
