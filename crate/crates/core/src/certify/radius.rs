use rayon::prelude::*;

use super::certificate::{bound_for, SupMethod};
use super::CertifyOptions;
use crate::error::{Error, Result};
use crate::tfops::{norm, FunctionEvaluator, GridSpec};

/// Bisection tolerance on radii.
pub const RADIUS_TOL: f64 = 1e-9;
/// Radii beyond this are treated as "envelope never drops below the bound".
const SEARCH_HORIZON: f64 = 1e6;
/// Radii below `sqrt(eps)` are reported as zero: near a smooth maximum `|f|`
/// changes by `O(r^2)`, which rounding cannot resolve below this scale.
const ZERO_RADIUS: f64 = 1.4901161193847656e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRadius {
    pub radius: f64,
    pub peak: f64,
    pub bound: f64,
    pub method: SupMethod,
}

/// Smallest `R` with `|f(t)| < |f(anchor)|/(N-1)` whenever `||t - anchor|| > R`.
///
/// With an envelope the result is rigorous (bisection to [`RADIUS_TOL`], rounded
/// up). Without one, and only if `opts.rigorous` is false, `|f|` is scanned on the
/// sample grid around `anchor` and the outermost exceedance is refined along its ray.
pub fn decay_radius(
    f: &FunctionEvaluator,
    n: usize,
    anchor: &[f64],
    opts: &CertifyOptions,
) -> Result<DecayRadius> {
    f.require_dim(anchor.len())?;
    if n < 2 {
        return Err(Error::InvalidParameter("decay_radius needs N >= 2".into()));
    }
    if f.near_singularity(anchor, 0.0) {
        return Err(Error::SingularityHit(anchor.to_vec()));
    }
    let peak = f.eval(anchor).norm();
    if peak == 0.0 || !peak.is_finite() {
        return Err(Error::ZeroAnchor);
    }
    let bound = bound_for(peak, n);
    if let Some(env) = f.envelope() {
        let radius = bisect_monotone(|r| env.bound_about(anchor, r) < bound)?;
        return Ok(DecayRadius {
            radius,
            peak,
            bound,
            method: SupMethod::Envelope,
        });
    }
    if opts.rigorous {
        return Err(Error::EnvelopeRequired);
    }
    let grid = opts
        .sample_grid
        .unwrap_or_else(|| GridSpec::default_for(f.dim()));
    let radius = sampled_radius(
        |s| {
            let t: Vec<f64> = s.iter().zip(anchor).map(|(a, b)| a + b).collect();
            if f.near_singularity(&t, grid.exclusion_radius) {
                None
            } else {
                Some(f.eval(&t).norm())
            }
        },
        f.dim(),
        &grid,
        bound,
    )?;
    Ok(DecayRadius {
        radius,
        peak,
        bound,
        method: SupMethod::DenseSample,
    })
}

/// Smallest `r >= 0` where the monotone predicate `below(r)` turns true, returned
/// as the upper end of the final bracket. Crossings below `ZERO_RADIUS` return 0.
pub(crate) fn bisect_monotone<P: Fn(f64) -> bool>(below: P) -> Result<f64> {
    if below(0.0) {
        return Ok(0.0);
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while !below(hi) {
        lo = hi;
        hi *= 2.0;
        if hi > SEARCH_HORIZON {
            return Err(Error::NotCertifiable(format!(
                "bound not reached within radius {SEARCH_HORIZON}"
            )));
        }
    }
    while hi - lo > RADIUS_TOL {
        let mid = 0.5 * (lo + hi);
        if below(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if hi <= ZERO_RADIUS {
        return Ok(0.0);
    }
    Ok(hi)
}

/// Heuristic decay radius of a sampled magnitude `value(s)` (relative offset `s`,
/// `None` for excluded points) on the lattice of `grid` in `R^dim`.
pub(crate) fn sampled_radius<V>(value: V, dim: usize, grid: &GridSpec, bound: f64) -> Result<f64>
where
    V: Fn(&[f64]) -> Option<f64> + Sync,
{
    let lattice = grid.lattice(dim);
    let values: Vec<Option<f64>> = lattice.par_iter().map(|s| value(s)).collect();
    let edge = grid.half_width - 0.5 * grid.step();
    let mut outer: Option<(f64, usize)> = None;
    for (k, v) in values.iter().enumerate() {
        if let Some(v) = v {
            if *v >= bound {
                let rho = norm(&lattice[k]);
                if lattice[k].iter().any(|c| c.abs() > edge) {
                    return Err(Error::NotCertifiable(format!(
                        "magnitude {v:.3e} >= bound {bound:.3e} on the sampling box edge"
                    )));
                }
                if outer.is_none_or(|(r, _)| rho > r) {
                    outer = Some((rho, k));
                }
            }
        }
    }
    let (rho_star, dir) = match outer {
        Some((rho, k)) if rho > 0.0 => (rho, lattice[k].iter().map(|c| c / rho).collect()),
        Some(_) => {
            let mut e = vec![0.0; dim];
            e[0] = 1.0;
            (0.0, e)
        }
        None => return Ok(0.0),
    };
    refine_along_ray(
        |rho| {
            let s: Vec<f64> = dir.iter().map(|d| d * rho).collect();
            value(&s)
        },
        rho_star,
        grid.step() * (dim as f64).sqrt(),
        bound,
        grid.half_width * (dim as f64).sqrt(),
    )
}

/// From `rho_star` (where the magnitude is `>= bound`), steps outward until the
/// magnitude falls below `bound`, then bisects the crossing.
pub(crate) fn refine_along_ray<V>(
    value: V,
    rho_star: f64,
    step: f64,
    bound: f64,
    limit: f64,
) -> Result<f64>
where
    V: Fn(f64) -> Option<f64>,
{
    let below = |rho: f64| value(rho).is_none_or(|v| v < bound);
    let mut lo = rho_star;
    let mut hi = rho_star + step;
    while !below(hi) {
        lo = hi;
        hi += step;
        if hi > limit {
            return Err(Error::NotCertifiable(
                "magnitude stays above the bound up to the sampling limit".into(),
            ));
        }
    }
    while hi - lo > RADIUS_TOL {
        let mid = 0.5 * (lo + hi);
        if below(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if hi <= ZERO_RADIUS {
        return Ok(0.0);
    }
    Ok(hi)
}
