use super::certificate::{bound_for, Certificate, SupMethod, Theorem};
use super::checks::{check_theorem1, pair_margins, verdict};
use super::radius::{bisect_monotone, decay_radius, sampled_radius};
use super::CertifyOptions;
use crate::error::{Error, Result};
use crate::tfops::{dilate, fourier, FunctionEvaluator, GridSpec, PointSet, StftPlan, TFPoint};

/// Below this `|<f, g>|` Theorem 3 is refused.
pub const MIN_INNER_PRODUCT: f64 = 1e-12;

fn spectrum(
    f: &FunctionEvaluator,
    grid: &GridSpec,
    opts: &CertifyOptions,
) -> Result<FunctionEvaluator> {
    let fhat = fourier(f, grid)?;
    Ok(match &opts.spectral_envelope {
        Some(env) => fhat.with_envelope(env.clone()),
        None => fhat,
    })
}

fn spectral_opts(grid: &GridSpec, opts: &CertifyOptions) -> CertifyOptions {
    CertifyOptions {
        sample_grid: Some(opts.sample_grid.unwrap_or(*grid)),
        ..opts.clone()
    }
}

/// Frequency-side Theorem 1: runs Theorem 1 on the quadrature Fourier transform
/// with the rotated set `{(omega_i, -x_i)}`.
pub fn check_corollary2(
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    f.require_dim(lam.dim())?;
    let fhat = spectrum(f, grid, opts)?;
    let mut cert = check_theorem1(&fhat, &lam.fourier_rotated(), &spectral_opts(grid, opts))?;
    cert.theorem = Theorem::Cor2;
    if cert.separation == 0.0 && lam.len() > 1 {
        cert.note = Some("duplicate frequencies give M = 0 in the rotated set".into());
    }
    Ok(cert)
}

/// `r = R^ / M_omega`: for every `r' > r`, [`check_corollary3`] with parameter `r'`
/// (the function stretched as `t -> t / r'`, which contracts its spectrum) is certified.
pub fn dilation_threshold_freq(
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
    opts: &CertifyOptions,
) -> Result<f64> {
    f.require_dim(lam.dim())?;
    let m = lam.min_frequency_separation();
    if m == 0.0 {
        return Err(Error::NotCertifiable(
            "minimum frequency separation is zero".into(),
        ));
    }
    if lam.len() < 2 {
        return Ok(0.0);
    }
    let fhat = spectrum(f, grid, opts)?;
    let origin = vec![0.0; f.dim()];
    let dr = decay_radius(&fhat, lam.len(), &origin, &spectral_opts(grid, opts))?;
    Ok(dr.radius / m)
}

/// Frequency-side Theorem 1 for `f` stretched by `r`, i.e. `dilate(f, 1/r)`.
pub fn check_corollary3(
    f: &FunctionEvaluator,
    lam: &PointSet,
    r: f64,
    grid: &GridSpec,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dilation parameter must be positive, got {r}"
        )));
    }
    let mut cert = check_corollary2(&dilate(f, 1.0 / r)?, lam, grid, opts)?;
    cert.theorem = Theorem::Cor3;
    cert.threshold_r = dilation_threshold_freq(f, lam, grid, opts).ok();
    Ok(cert)
}

/// Decay radius of `|V_g f|` in `R^{2n}` together with `|<f, g>|` and the sup method.
pub fn stft_decay_radius(
    f: &FunctionEvaluator,
    g: &FunctionEvaluator,
    n_points: usize,
    grid: &GridSpec,
    lattice: &GridSpec,
    opts: &CertifyOptions,
) -> Result<(f64, f64, SupMethod)> {
    let plan = StftPlan::new(f, g, grid)?;
    let dim = f.dim();
    let peak = plan.eval(&TFPoint::origin(dim)).norm();
    if peak < MIN_INNER_PRODUCT {
        return Err(Error::NearOrthogonal(peak));
    }
    let bound = bound_for(peak, n_points);
    if let Some(env) = &opts.stft_envelope {
        let origin = vec![0.0; 2 * dim];
        let r = bisect_monotone(|r| env.bound_about(&origin, r) < bound)?;
        return Ok((r, peak, SupMethod::Envelope));
    }
    if opts.rigorous {
        return Err(Error::EnvelopeRequired);
    }
    let r = stft_sampled_radius(&plan, lattice, bound)?;
    Ok((r, peak, SupMethod::DenseSample))
}

/// Lattice scan of `|V_g f|` over `R^{2n}`, refined along the ray of the outermost
/// lattice point at or above `bound`.
pub(crate) fn stft_sampled_radius(plan: &StftPlan, lattice: &GridSpec, bound: f64) -> Result<f64> {
    let dim = plan.dim();
    let side = lattice.lattice(dim);
    let values = plan.eval_product(&side, &side);
    let lookup = |s: &[f64]| -> Option<f64> {
        let lam = TFPoint::new(s[..dim].to_vec(), s[dim..].to_vec()).ok()?;
        Some(plan.eval(&lam).norm())
    };
    // Index into the precomputed product, falling back to direct evaluation off-lattice.
    let axis = lattice.axis();
    let h = lattice.step();
    let index_of = |c: f64| -> Option<usize> {
        let k = ((c + lattice.half_width) / h).round();
        if k < 0.0 || k as usize >= axis.len() || (axis[k as usize] - c).abs() > 1e-12 {
            None
        } else {
            Some(k as usize)
        }
    };
    let m = axis.len();
    let flat = |s: &[f64]| -> Option<usize> {
        let mut xi = 0;
        let mut wi = 0;
        for d in 0..dim {
            xi = xi * m + index_of(s[d])?;
            wi = wi * m + index_of(s[dim + d])?;
        }
        Some(xi * side.len() + wi)
    };
    sampled_radius(
        |s| match flat(s) {
            Some(k) => Some(values[k].norm()),
            None => lookup(s),
        },
        2 * dim,
        lattice,
        bound,
    )
}

/// Theorem 3: certified iff the minimum time-frequency distance exceeds the decay
/// radius of `|V_g f|` relative to `|<f, g>|/(N-1)`.
pub fn check_theorem3(
    f: &FunctionEvaluator,
    g: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
    lattice: &GridSpec,
    opts: &CertifyOptions,
) -> Result<Certificate> {
    f.require_dim(lam.dim())?;
    let n = lam.len();
    if n == 1 {
        let plan = StftPlan::new(f, g, grid)?;
        let peak = plan.eval(&TFPoint::origin(f.dim())).norm();
        if peak < MIN_INNER_PRODUCT {
            return Err(Error::NearOrthogonal(peak));
        }
        return Ok(Certificate::trivial(
            Theorem::Thm3,
            peak,
            SupMethod::Pointwise,
        ));
    }
    let (radius, peak, method) = stft_decay_radius(f, g, n, grid, lattice, opts)?;
    let coords: Vec<Vec<f64>> = lam.iter().map(TFPoint::coords).collect();
    let separation = lam.min_tf_separation();
    Ok(Certificate {
        theorem: Theorem::Thm3,
        verdict: verdict(separation > radius),
        n,
        radius,
        separation,
        peak,
        bound: bound_for(peak, n),
        margins: pair_margins(&coords, radius),
        translate_x: None,
        threshold_r: None,
        sup_method: method,
        note: None,
    })
}

/// Default Theorem 3 lattice: half-width 8 with 128 points per axis for `n = 1`;
/// 12 per axis for `n = 2`, where the scan is four-dimensional.
pub fn default_stft_lattice(dim: usize) -> GridSpec {
    GridSpec {
        half_width: 8.0,
        samples_per_axis: if dim == 1 { 128 } else { 12 },
        exclusion_radius: 0.0,
    }
}
