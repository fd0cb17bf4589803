//! Invariant checks shared by the property suites and the acceptance runner.
//! Each returns `Err` with a diagnostic instead of panicking.

#![allow(dead_code)]

use std::f64::consts::PI;

use tfcert::certify::{
    check_corollary1, check_lemma1, check_theorem1, check_theorem2, check_theorem3, decay_radius,
    dilation_threshold, Certificate, CertifyOptions,
};
use tfcert::funcs::{make_edgar_rosenblatt, make_example1, make_gaussian, make_singular_cos};
use tfcert::oracle::{
    collocation_rank, default_collocation_samples, dependence_residual_er_at, gram_matrix,
    stft_identity_residual, stft_identity_residual_with, IndependenceVerdict, ShiftOrder,
};
use tfcert::tfops::{
    chirp_mul, dilate, distance, dot, fourier, l2_norm, modulate, tf_shift, translate,
    FunctionEvaluator, GridSpec, PointSet, TFPoint,
};
use tfcert::windowsearch::{search_with, tail_scan, SearchOptions, SearchResult, WindowParams};
use tfcert::Complex64;

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: tfcert::Error) -> String {
    e.to_string()
}

/// Gaussian-class inputs: `a e^{-pi s |t - c|^2}` with the analytic envelope.
pub fn gaussian_like(dim: usize, s: f64, center: &[f64]) -> FunctionEvaluator {
    let g = make_gaussian(dim).unwrap();
    let d = dilate(&g, s.sqrt()).unwrap();
    translate(&d, center).unwrap()
}

// ---- tfops ----

pub fn identity_shifts(f: &FunctionEvaluator, points: &[Vec<f64>]) -> Check {
    let dim = f.dim();
    let shifted = tf_shift(f, &TFPoint::origin(dim)).map_err(err)?;
    let dilated = dilate(f, 1.0).map_err(err)?;
    let chirped = if dim == 1 {
        Some(chirp_mul(f, 0.0).map_err(err)?)
    } else {
        None
    };
    for t in points {
        let v = f.eval(t);
        ensure(shifted.eval(t) == v, || {
            format!("tf_shift(f,0) != f at {t:?}")
        })?;
        ensure(dilated.eval(t) == v, || {
            format!("dilate(f,1) != f at {t:?}")
        })?;
        if let Some(c) = &chirped {
            ensure(c.eval(t) == v, || format!("chirp_mul(f,0) != f at {t:?}"))?;
        }
    }
    Ok(())
}

/// `|M_omega f| = |f|` and `|S_r f| = |f|` up to the rounding of one complex product.
pub fn unimodularity(f: &FunctionEvaluator, omega: &[f64], r: f64, points: &[Vec<f64>]) -> Check {
    let m = modulate(f, omega).map_err(err)?;
    let c = if f.dim() == 1 {
        Some(chirp_mul(f, r).map_err(err)?)
    } else {
        None
    };
    let tol = |a: f64| 4.0 * f64::EPSILON * a;
    for t in points {
        let a = f.eval(t).norm();
        let b = m.eval(t).norm();
        ensure((a - b).abs() <= tol(a), || {
            format!("|M f| = {b} vs |f| = {a} at {t:?}")
        })?;
        if let Some(c) = &c {
            let b = c.eval(t).norm();
            ensure((a - b).abs() <= tol(a), || {
                format!("|S f| = {b} vs |f| = {a} at {t:?}")
            })?;
        }
    }
    Ok(())
}

pub fn unitarity(f: &FunctionEvaluator, lam: &TFPoint, r: f64, grid: &GridSpec) -> Check {
    let base = l2_norm(f, grid).map_err(err)?;
    let shifted = l2_norm(&tf_shift(f, lam).map_err(err)?, grid).map_err(err)?;
    let dilated = l2_norm(&dilate(f, r).map_err(err)?, grid).map_err(err)?;
    ensure((shifted - base).abs() <= 1e-8 * base, || {
        format!("||pi f|| = {shifted} vs {base}")
    })?;
    ensure((dilated - base).abs() <= 1e-8 * base, || {
        format!("||D_r f|| = {dilated} vs {base} (r = {r})")
    })
}

pub fn composition(f: &FunctionEvaluator, lam: &TFPoint, t: &[f64]) -> Check {
    let lhs = tf_shift(f, lam).map_err(err)?.eval(t);
    let shifted: Vec<f64> = t.iter().zip(&lam.x).map(|(a, b)| a - b).collect();
    let rhs = Complex64::cis(2.0 * PI * dot(&lam.omega, t)) * f.eval(&shifted);
    ensure(lhs == rhs, || {
        format!("tf_shift mismatch at {t:?}: {lhs} vs {rhs}")
    })
}

/// `F(T_x g) = M_{-x} F g` and `F(M_w g) = T_w F g` at 25 frequencies in `[-3, 3]`.
pub fn fourier_exchange(x: f64, w: f64, grid: &GridSpec) -> Result<f64, String> {
    let g = make_gaussian(1).unwrap();
    let fg = fourier(&g, grid).map_err(err)?;
    let ft = fourier(&translate(&g, &[x]).map_err(err)?, grid).map_err(err)?;
    let fm = fourier(&modulate(&g, &[w]).map_err(err)?, grid).map_err(err)?;
    let mut worst = 0.0f64;
    for k in 0..25 {
        let xi = -3.0 + 0.25 * k as f64;
        let a = ft.eval(&[xi]) - Complex64::cis(-2.0 * PI * x * xi) * fg.eval(&[xi]);
        let b = fm.eval(&[xi]) - fg.eval(&[xi - w]);
        worst = worst.max(a.norm()).max(b.norm());
    }
    if worst < 1e-6 {
        Ok(worst)
    } else {
        Err(format!("exchange residual {worst:e} at x = {x}, w = {w}"))
    }
}

pub fn stft_covariance(
    u: f64,
    eta: f64,
    lattice: &GridSpec,
    grid: &GridSpec,
) -> Result<f64, String> {
    let g = make_gaussian(1).unwrap();
    let r = stft_identity_residual(&g, &g, &[u], &[eta], lattice, grid).map_err(err)?;
    if r.max_abs_residual < 1e-8 {
        Ok(r.max_abs_residual)
    } else {
        Err(format!(
            "STFT covariance residual {:e} at u = {u}, eta = {eta}",
            r.max_abs_residual
        ))
    }
}

// ---- funcs ----

/// `|f(c + r e)| <= env(r)` on log-spaced radii in several directions.
pub fn envelope_respected(f: &FunctionEvaluator) -> Check {
    let env = f.envelope().ok_or("no envelope")?;
    let c = env.center().to_vec();
    let dirs: Vec<Vec<f64>> = if f.dim() == 1 {
        vec![vec![1.0], vec![-1.0]]
    } else {
        (0..8)
            .map(|k| {
                let th = PI * k as f64 / 4.0 + 0.1;
                vec![th.cos(), th.sin()]
            })
            .collect()
    };
    for k in 0..400 {
        let r = 10f64.powf(-6.0 + 9.0 * k as f64 / 399.0);
        for d in &dirs {
            let t: Vec<f64> = c.iter().zip(d).map(|(a, b)| a + r * b).collect();
            let bound = env.at(distance(&t, &c));
            let v = f.eval(&t).norm();
            ensure(v <= bound * (1.0 + 1e-12), || {
                format!("|f| = {v:e} > env = {bound:e} at r = {r:e}")
            })?;
        }
    }
    Ok(())
}

pub fn example1_limit(c: f64, omega: f64, t: f64) -> Check {
    if t.abs() < 1.0 / c {
        return Ok(());
    }
    let a = make_example1(c, omega).unwrap().eval(&[t]);
    let b = make_singular_cos(omega).unwrap().eval(&[t]);
    ensure(a == b, || format!("f_C({t}) = {a} vs {b}"))
}

pub fn er_deterministic(a: f64, b: f64) -> Check {
    let f = make_edgar_rosenblatt(1e-9).unwrap();
    let x = f.eval(&[a, b]);
    let y = f.eval(&[a, b]);
    ensure(
        x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits(),
        || format!("ER not bit-identical at ({a}, {b})"),
    )
}

// ---- certify ----

pub fn translation_invariance(f: &FunctionEvaluator, lam: &PointSet, a: &[f64]) -> Check {
    let opts = CertifyOptions::default();
    let c0 = check_theorem1(f, lam, &opts).map_err(err)?;
    let c1 = check_theorem1(
        &translate(f, a).map_err(err)?,
        &lam.shifted_in_time(a),
        &opts,
    )
    .map_err(err)?;
    ensure(
        c0.verdict == c1.verdict && c0.radius == c1.radius && c0.separation == c1.separation,
        || {
            format!(
                "(R, M) ({}, {}) vs ({}, {})",
                c0.radius, c0.separation, c1.radius, c1.separation
            )
        },
    )
}

/// A certified configuration must be Independent under the Gram oracle.
pub fn soundness(
    cert: &Certificate,
    f: &FunctionEvaluator,
    lam: &PointSet,
    grid: &GridSpec,
) -> Check {
    if !cert.is_certified() {
        return Err(format!("configuration not certified: {cert:?}"));
    }
    let r = gram_matrix(f, lam, grid).map_err(err)?;
    ensure(
        r.verdict == IndependenceVerdict::Independent && r.relative_gap > 1e-6,
        || {
            format!(
                "certified but Gram gap {:e} ({:?})",
                r.relative_gap, r.verdict
            )
        },
    )
}

pub fn monotone_in_n(f: &FunctionEvaluator, anchor: &[f64]) -> Check {
    let opts = CertifyOptions::default();
    let mut prev = 0.0;
    for n in 2..=12 {
        let r = decay_radius(f, n, anchor, &opts).map_err(err)?.radius;
        ensure(r >= prev, || {
            format!("R(N={n}) = {r} < R(N={}) = {prev}", n - 1)
        })?;
        prev = r;
    }
    Ok(())
}

/// Twenty log-spaced `r` in `(0, threshold)` are certified.
pub fn cor1_contract(f: &FunctionEvaluator, lam: &PointSet) -> Check {
    let opts = CertifyOptions::default();
    let thr = dilation_threshold(f, lam, &opts).map_err(err)?;
    let top = if thr.is_finite() { thr } else { 1e3 };
    for k in 1..=20 {
        let r = top * 10f64.powf(-3.0 * k as f64 / 20.0);
        let c = check_corollary1(f, lam, r, &opts).map_err(err)?;
        ensure(c.is_certified(), || {
            format!(
                "r = {r} < threshold {thr} not certified: R = {}, M = {}",
                c.radius, c.separation
            )
        })?;
    }
    Ok(())
}

pub fn thm2_consistency(f: &FunctionEvaluator, lam: &PointSet) -> Check {
    let cert = check_theorem2(f, lam, &CertifyOptions::default()).map_err(err)?;
    ensure(cert.is_certified(), || {
        format!("Theorem 2 not certified: {cert:?}")
    })?;
    let x = cert.translate_x.ok_or("no translate recorded")?;
    let neg: Vec<f64> = x.iter().map(|v| -v).collect();
    let lemma = check_lemma1(&translate(f, &neg).map_err(err)?, &lam.times()).map_err(err)?;
    ensure(lemma.is_certified(), || {
        format!("re-anchored Lemma 1 fails at x = {x:?}")
    })
}

// ---- oracle ----

pub fn gram_hermitian_psd(f: &FunctionEvaluator, lam: &PointSet, grid: &GridSpec) -> Check {
    let r = gram_matrix(f, lam, grid).map_err(err)?;
    let defect = r.hermitian_defect.unwrap_or(f64::NAN);
    let lmin = r.min_eigenvalue.unwrap_or(f64::NAN);
    ensure(defect <= 1e-12, || format!("Hermitian defect {defect:e}"))?;
    ensure(lmin >= -1e-10, || format!("min eigenvalue {lmin:e}"))
}

/// `G(T_a f, Lambda) = G(f, Lambda + a)` entrywise, and `G(f, Lambda + a) = D G(f, Lambda) D*`
/// with `D = diag(e^{2 pi i omega_i . a})`.
pub fn gram_invariance(f: &FunctionEvaluator, lam: &PointSet, a: &[f64], grid: &GridSpec) -> Check {
    let g0 = gram_matrix(f, lam, grid).map_err(err)?.matrix;
    let moved = lam.shifted_in_time(a);
    let g1 = gram_matrix(f, &moved, grid).map_err(err)?.matrix;
    let g2 = gram_matrix(&translate(f, a).map_err(err)?, lam, grid)
        .map_err(err)?
        .matrix;
    let phases: Vec<Complex64> = lam
        .iter()
        .map(|p| Complex64::cis(2.0 * PI * dot(&p.omega, a)))
        .collect();
    for i in 0..g0.len() {
        for j in 0..g0.len() {
            let d12 = (g1[i][j] - g2[i][j]).norm();
            ensure(d12 <= 1e-8, || {
                format!("G(T_a f) vs G(f, Lambda + a) differ by {d12:e} at ({i},{j})")
            })?;
            let d = (g1[i][j] - phases[i] * g0[i][j] * phases[j].conj()).norm();
            ensure(d <= 1e-8, || {
                format!("unitary equivalence off by {d:e} at ({i},{j})")
            })?;
        }
    }
    Ok(())
}

pub fn collocation_soundness(f: &FunctionEvaluator, lam: &PointSet, grid: &GridSpec) -> Check {
    let samples = default_collocation_samples(f, lam, grid);
    ensure(samples.len() >= 2 * lam.len(), || "too few samples".into())?;
    let r = collocation_rank(f, lam, &samples).map_err(err)?;
    ensure(r.verdict == IndependenceVerdict::Independent, || {
        format!("collocation gap {:e} ({:?})", r.relative_gap, r.verdict)
    })
}

/// Halving the inner tolerance does not increase the residual at `(0, 0)`
/// beyond the rounding floor of the five-term sum.
pub fn er_refinement(tol: f64) -> Check {
    let coarse = dependence_residual_er_at(0.0, 0.0, tol, 2.0);
    let fine = dependence_residual_er_at(0.0, 0.0, tol / 2.0, 2.0);
    ensure(fine <= coarse + 8.0 * f64::EPSILON, || {
        format!("residual {fine:e} at tol/2 > {coarse:e} at tol {tol:e}")
    })
}

pub fn stft_order_phase(u: f64, eta: f64, lattice: &GridSpec, grid: &GridSpec) -> Check {
    let g = make_gaussian(1).unwrap();
    let r = stft_identity_residual_with(
        &g,
        &g,
        &[u],
        &[eta],
        lattice,
        grid,
        ShiftOrder::TranslationFirst,
        -1.0,
    )
    .map_err(err)?;
    ensure(r.max_abs_residual < 1e-8, || {
        format!("M_eta T_u ordering residual {:e}", r.max_abs_residual)
    })
}

// ---- windowsearch ----

pub fn trace_monotone(r: &SearchResult) -> Check {
    let mut prev = f64::INFINITY;
    for e in &r.trace {
        ensure(e.incumbent <= prev, || {
            format!("incumbent rose at evaluation {}", e.evaluation)
        })?;
        prev = e.incumbent;
    }
    ensure(
        r.achieved == tfcert::windowsearch::is_achieved(r.ratio, r.target),
        || "achieved flag inconsistent".into(),
    )?;
    ensure(!r.achieved || r.ratio < r.target, || {
        "achieved with ratio >= target".into()
    })
}

pub fn search_deterministic(
    f: &FunctionEvaluator,
    radius: f64,
    n: usize,
    d: usize,
    budget: usize,
    seed: u64,
) -> Check {
    let opts = fast_search_options();
    let a = search_with(f, radius, n, d, budget, seed, &opts).map_err(err)?;
    let b = search_with(f, radius, n, d, budget, seed, &opts).map_err(err)?;
    let ja = serde_json::to_string(&a).unwrap();
    let jb = serde_json::to_string(&b).unwrap();
    ensure(ja == jb, || {
        "search traces differ for identical inputs".into()
    })?;
    trace_monotone(&a)
}

pub fn fast_search_options() -> SearchOptions {
    SearchOptions {
        lattice: GridSpec::new(6.0, 17, 0.0).unwrap(),
        grid: GridSpec::new(8.0, 256, 1e-6).unwrap(),
    }
}

pub fn tail_scaling(
    f: &FunctionEvaluator,
    params: &WindowParams,
    scale: f64,
    radius: f64,
) -> Check {
    let o = fast_search_options();
    let scaled = WindowParams {
        width: params.width,
        hermite_coeffs: params.hermite_coeffs.iter().map(|c| c * scale).collect(),
    };
    match (
        tail_scan(f, params, radius, 2, &o.lattice, &o.grid),
        tail_scan(f, &scaled, radius, 2, &o.lattice, &o.grid),
    ) {
        (Ok(a), Ok(b)) => ensure(
            (a.ratio - b.ratio).abs() <= 1e-10 * a.ratio.max(1e-300),
            || {
                format!(
                    "tail ratio {} vs {} after scaling by {scale}",
                    a.ratio, b.ratio
                )
            },
        ),
        (Err(_), Err(_)) => Ok(()),
        (a, b) => Err(format!("scaling changed orthogonality: {a:?} vs {b:?}")),
    }
}

/// An achieved search that survives a double-density rescan yields a Theorem 3
/// certificate for points separated by more than `R`.
pub fn achieved_implies_thm3(f: &FunctionEvaluator, radius: f64, n: usize) -> Check {
    let opts = SearchOptions::default();
    let r = search_with(f, radius, n, 0, 20, 1, &opts).map_err(err)?;
    if !r.achieved {
        return Ok(());
    }
    let dense = GridSpec::new(
        opts.lattice.half_width,
        2 * opts.lattice.samples_per_axis - 1,
        0.0,
    )
    .unwrap();
    let again = tail_scan(f, &r.best_params, radius, n, &dense, &opts.grid).map_err(err)?;
    if !tfcert::windowsearch::is_achieved(again.ratio, r.target) {
        return Ok(());
    }
    let g = r.best_params.realize().map_err(err)?;
    let step = radius * 1.05;
    let pairs: Vec<(f64, f64)> = (0..n).map(|k| (step * k as f64, 0.3 * k as f64)).collect();
    let lam = PointSet::from_pairs(&pairs).map_err(err)?;
    let cert = check_theorem3(
        f,
        &g,
        &lam,
        &GridSpec::default_for(1),
        &tfcert::certify::default_stft_lattice(1),
        &CertifyOptions::default(),
    )
    .map_err(err)?;
    ensure(cert.is_certified(), || {
        format!(
            "Theorem 3 not certified: R = {}, M = {}",
            cert.radius, cert.separation
        )
    })
}
