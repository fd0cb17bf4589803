use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::ResidualReport;
use crate::error::{Error, Result};
use crate::funcs::edgar_rosenblatt_with;
use crate::quad::AdaptiveGaussLegendre;
use crate::tfops::{
    chirp_mul, dilate, dot, fourier_multiplier, modulate, tf_shift_modulation_first, translate,
    FunctionEvaluator, GridSpec, StftPlan, TFPoint,
};

const ER_RULE_DEGREE: usize = 10;

/// `|c f(a,b) - f(a+1,b) - f(a-1,b) - f(a,b+1) - f(a,b-1)|` at one point.
fn er_combination(rule: &AdaptiveGaussLegendre, a: f64, b: f64, center_coeff: f64) -> f64 {
    let f = |a, b| edgar_rosenblatt_with(rule, a, b);
    (f(a, b) * center_coeff - f(a + 1.0, b) - f(a - 1.0, b) - f(a, b + 1.0) - f(a, b - 1.0)).norm()
}

/// Maximum five-term dependence residual of the Edgar-Rosenblatt function over
/// the 2-D lattice of `lattice`.
pub fn dependence_residual_er(lattice: &GridSpec, quad_tol: f64) -> Result<ResidualReport> {
    dependence_residual_er_with_coefficient(lattice, quad_tol, 2.0)
}

/// As [`dependence_residual_er`] with the center coefficient replaced (negative controls).
pub fn dependence_residual_er_with_coefficient(
    lattice: &GridSpec,
    quad_tol: f64,
    center_coeff: f64,
) -> Result<ResidualReport> {
    if !(quad_tol > 0.0 && quad_tol <= 1e-6) {
        return Err(Error::InvalidParameter(format!(
            "quad_tol must lie in (0, 1e-6], got {quad_tol}"
        )));
    }
    lattice.validate()?;
    let rule = AdaptiveGaussLegendre::new(ER_RULE_DEGREE, quad_tol);
    let points = lattice.lattice(2);
    let max = points
        .par_iter()
        .map(|p| er_combination(&rule, p[0], p[1], center_coeff))
        .reduce(|| 0.0, f64::max);
    Ok(ResidualReport {
        identity_name: format!("{center_coeff} f(a,b) = f(a+1,b) + f(a-1,b) + f(a,b+1) + f(a,b-1)"),
        max_abs_residual: max,
        phase_optimized: false,
        best_phase: Complex64::new(1.0, 0.0),
        points: points.len(),
    })
}

/// Single-point variant of [`dependence_residual_er`].
pub fn dependence_residual_er_at(a: f64, b: f64, quad_tol: f64, center_coeff: f64) -> f64 {
    er_combination(
        &AdaptiveGaussLegendre::new(ER_RULE_DEGREE, quad_tol),
        a,
        b,
        center_coeff,
    )
}

/// Order of the shifts applied to `f` on the left side of the covariance identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShiftOrder {
    /// `T_u M_eta f`
    ModulationFirst,
    /// `M_eta T_u f`, which equals `e^{2 pi i u.eta} T_u M_eta f`.
    TranslationFirst,
}

/// Residual of `V_g(T_u M_eta f)(x, omega) = e^{-2 pi i u.omega} V_g f(x - u, omega - eta)`
/// over the `2n`-dimensional product lattice.
pub fn stft_identity_residual(
    f: &FunctionEvaluator,
    g: &FunctionEvaluator,
    u: &[f64],
    eta: &[f64],
    lattice: &GridSpec,
    grid: &GridSpec,
) -> Result<ResidualReport> {
    stft_identity_residual_with(
        f,
        g,
        u,
        eta,
        lattice,
        grid,
        ShiftOrder::ModulationFirst,
        -1.0,
    )
}

/// General form: `order` picks the left-hand shift order (the right-hand side
/// gains `e^{2 pi i u.eta}` for [`ShiftOrder::TranslationFirst`]); `phase_sign`
/// is `-1` for the correct identity and `+1` for the wrong-phase control.
#[allow(clippy::too_many_arguments)]
pub fn stft_identity_residual_with(
    f: &FunctionEvaluator,
    g: &FunctionEvaluator,
    u: &[f64],
    eta: &[f64],
    lattice: &GridSpec,
    grid: &GridSpec,
    order: ShiftOrder,
    phase_sign: f64,
) -> Result<ResidualReport> {
    f.require_dim(u.len())?;
    f.require_dim(eta.len())?;
    let shifted = match order {
        ShiftOrder::ModulationFirst => tf_shift_modulation_first(f, u, eta)?,
        ShiftOrder::TranslationFirst => modulate(&translate(f, u)?, eta)?,
    };
    let extra = match order {
        ShiftOrder::ModulationFirst => Complex64::new(1.0, 0.0),
        ShiftOrder::TranslationFirst => Complex64::cis(2.0 * PI * dot(u, eta)),
    };
    let lhs_plan = StftPlan::new(&shifted, g, grid)?;
    let rhs_plan = StftPlan::new(f, g, grid)?;
    let side = lattice.lattice(f.dim());
    let lhs = lhs_plan.eval_product(&side, &side);
    let moved: Vec<TFPoint> = side
        .iter()
        .flat_map(|x| {
            side.iter().map(move |w| TFPoint {
                x: x.iter().zip(u).map(|(a, b)| a - b).collect(),
                omega: w.iter().zip(eta).map(|(a, b)| a - b).collect(),
            })
        })
        .collect();
    let rhs = rhs_plan.eval_many(&moved);
    let mut max = 0.0f64;
    let mut k = 0;
    for _x in &side {
        for w in &side {
            let phase = Complex64::cis(phase_sign * 2.0 * PI * dot(u, w)) * extra;
            max = max.max((lhs[k] - phase * rhs[k]).norm());
            k += 1;
        }
    }
    Ok(ResidualReport {
        identity_name: match order {
            ShiftOrder::ModulationFirst => {
                "V_g(T_u M_eta f)(x,w) = e^{-2 pi i u.w} V_g f(x-u, w-eta)"
            }
            ShiftOrder::TranslationFirst => {
                "V_g(M_eta T_u f)(x,w) = e^{2 pi i u.eta} e^{-2 pi i u.w} V_g f(x-u, w-eta)"
            }
        }
        .to_string(),
        max_abs_residual: max,
        phase_optimized: false,
        best_phase: Complex64::new(1.0, 0.0),
        points: lhs.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetaplecticKind {
    /// `D_r M_omega T_x f`
    DilationCov,
    /// `S_r M_omega T_x f`
    ChirpCov,
    /// `U_r M_omega T_x f` with `U_r` the Fourier multiplier `e^{2 pi i r xi^2}`.
    FourierMultCov,
}

/// Right-hand side parameters: the identity is tested as `LHS = c M_modulation T_translation Op f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parameterization {
    /// The form as printed in the source identity.
    Printed,
    /// The form that holds for the conventions implemented here.
    Standard,
    Custom {
        label: String,
        modulation: Vec<f64>,
        translation: Vec<f64>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetaplecticParams {
    pub r: f64,
    pub x: Vec<f64>,
    pub omega: Vec<f64>,
}

impl MetaplecticKind {
    fn rhs_params(
        self,
        p: &MetaplecticParams,
        form: &Parameterization,
    ) -> (String, Vec<f64>, Vec<f64>) {
        let r = p.r;
        let (x, w) = (&p.x, &p.omega);
        let zip = |a: &[f64], b: &[f64], f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> {
            a.iter().zip(b).map(|(u, v)| f(*u, *v)).collect()
        };
        match (self, form) {
            (
                _,
                Parameterization::Custom {
                    label,
                    modulation,
                    translation,
                },
            ) => (label.clone(), modulation.clone(), translation.clone()),
            (Self::DilationCov, Parameterization::Printed) => (
                "M_{w/r} T_{x r} D_r f".into(),
                w.iter().map(|v| v / r).collect(),
                x.iter().map(|v| v * r).collect(),
            ),
            (Self::DilationCov, Parameterization::Standard) => (
                "M_{r w} T_{x/r} D_r f".into(),
                w.iter().map(|v| v * r).collect(),
                x.iter().map(|v| v / r).collect(),
            ),
            (Self::ChirpCov, Parameterization::Printed) => (
                "M_{w - x r} T_x S_r f".into(),
                zip(w, x, &|w, x| w - x * r),
                x.clone(),
            ),
            (Self::ChirpCov, Parameterization::Standard) => (
                "M_{w + 2 r x} T_x S_r f".into(),
                zip(w, x, &|w, x| w + 2.0 * r * x),
                x.clone(),
            ),
            (Self::FourierMultCov, Parameterization::Printed) => (
                "M_{-w} T_{-x - r w} U_r f".into(),
                w.iter().map(|v| -v).collect(),
                zip(x, w, &|x, w| -x - r * w),
            ),
            (Self::FourierMultCov, Parameterization::Standard) => (
                "M_w T_{x - 2 r w} U_r f".into(),
                w.clone(),
                zip(x, w, &|x, w| x - 2.0 * r * w),
            ),
        }
    }

    fn apply(self, f: &FunctionEvaluator, r: f64, grid: &GridSpec) -> Result<FunctionEvaluator> {
        match self {
            Self::DilationCov => dilate(f, r),
            Self::ChirpCov => chirp_mul(f, r),
            Self::FourierMultCov => {
                if f.dim() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        got: f.dim(),
                    });
                }
                fourier_multiplier(
                    f,
                    move |xi| Complex64::cis(2.0 * PI * r * xi[0] * xi[0]),
                    grid,
                )
            }
        }
    }
}

/// Evaluates both sides of a metaplectic covariance identity on the sample
/// lattice, for each requested right-hand parameterization, fitting a global
/// unimodular phase. Returns one report per form, in order.
pub fn metaplectic_residual(
    kind: MetaplecticKind,
    params: &MetaplecticParams,
    f: &FunctionEvaluator,
    sample: &GridSpec,
    grid: &GridSpec,
    forms: &[Parameterization],
) -> Result<Vec<ResidualReport>> {
    f.require_dim(params.x.len())?;
    f.require_dim(params.omega.len())?;
    if kind == MetaplecticKind::DilationCov && params.r == 0.0 {
        return Err(Error::InvalidParameter(
            "dilation parameter r must be nonzero".into(),
        ));
    }
    if kind != MetaplecticKind::DilationCov && f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    let shifted = modulate(&translate(f, &params.x)?, &params.omega)?;
    let lhs_fn = kind.apply(&shifted, params.r, grid)?;
    let op_f = kind.apply(f, params.r, grid)?;
    let mut sing = lhs_fn.singularities().to_vec();
    sing.extend_from_slice(op_f.singularities());
    let points: Vec<Vec<f64>> = sample
        .lattice(f.dim())
        .into_iter()
        .filter(|t| {
            !sing
                .iter()
                .any(|p| crate::tfops::distance(p, t) <= sample.exclusion_radius)
        })
        .collect();
    let lhs: Vec<Complex64> = points.par_iter().map(|t| lhs_fn.eval(t)).collect();
    forms
        .iter()
        .map(|form| {
            let (label, m, y) = kind.rhs_params(params, form);
            if m.len() != f.dim() || y.len() != f.dim() {
                return Err(Error::DimensionMismatch {
                    expected: f.dim(),
                    got: m.len(),
                });
            }
            let rhs_fn = modulate(&translate(&op_f, &y)?, &m)?;
            let rhs: Vec<Complex64> = points.par_iter().map(|t| rhs_fn.eval(t)).collect();
            let (phase, max) = fit_phase(&lhs, &rhs);
            Ok(ResidualReport {
                identity_name: format!("{kind:?}: LHS = c {label}"),
                max_abs_residual: max,
                phase_optimized: true,
                best_phase: phase,
                points: points.len(),
            })
        })
        .collect()
}

fn max_residual(lhs: &[Complex64], rhs: &[Complex64], c: Complex64) -> f64 {
    lhs.iter()
        .zip(rhs)
        .map(|(l, r)| (l - c * r).norm())
        .fold(0.0, f64::max)
}

/// Unimodular `c` approximately minimizing `max |lhs - c rhs|`: the least-squares
/// phase, then a golden-section refinement of the angle around it.
pub(crate) fn fit_phase(lhs: &[Complex64], rhs: &[Complex64]) -> (Complex64, f64) {
    let cross: Complex64 = lhs.iter().zip(rhs).map(|(l, r)| r.conj() * l).sum();
    let c0 = if cross.norm() > 0.0 {
        cross / cross.norm()
    } else {
        Complex64::new(1.0, 0.0)
    };
    let best0 = max_residual(lhs, rhs, c0);
    let theta0 = c0.arg();
    let obj = |th: f64| max_residual(lhs, rhs, Complex64::cis(th));
    let gr = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (theta0 - PI / 4.0, theta0 + PI / 4.0);
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let (mut fc, mut fd) = (obj(c), obj(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = obj(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = obj(d);
        }
    }
    let th = 0.5 * (a + b);
    let refined = obj(th);
    if refined < best0 {
        (Complex64::cis(th), refined)
    } else {
        (c0, best0)
    }
}
