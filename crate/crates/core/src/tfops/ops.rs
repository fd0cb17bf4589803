use std::f64::consts::PI;

use num_complex::Complex64;

use super::evaluator::{dot, Envelope, FunctionEvaluator};
use super::point::TFPoint;
use crate::error::{Error, Result};

/// `T_x f(t) = f(t - x)`.
///
/// Singularities and the envelope center move with the function.
pub fn translate(f: &FunctionEvaluator, x: &[f64]) -> Result<FunctionEvaluator> {
    f.require_dim(x.len())?;
    let inner = f.clone();
    let shift = x.to_vec();
    let dim = f.dim();
    let mut out = f.map_eval(move |t| {
        let mut buf = [0.0; 2];
        for d in 0..dim {
            buf[d] = t[d] - shift[d];
        }
        inner.eval(&buf[..dim])
    });
    let sing = f
        .singularities()
        .iter()
        .map(|p| p.iter().zip(x).map(|(a, b)| a + b).collect())
        .collect();
    out = out.with_singularities(sing);
    if let Some(env) = f.envelope() {
        let center: Vec<f64> = env.center().iter().zip(x).map(|(c, s)| c + s).collect();
        let e = env.clone();
        out = out.with_envelope(Envelope::new(center, move |r| e.at(r)));
    }
    Ok(out)
}

/// `M_omega f(t) = e^{2 pi i omega.t} f(t)`.
pub fn modulate(f: &FunctionEvaluator, omega: &[f64]) -> Result<FunctionEvaluator> {
    f.require_dim(omega.len())?;
    let inner = f.clone();
    let w = omega.to_vec();
    Ok(f.map_eval(move |t| Complex64::cis(2.0 * PI * dot(&w, t)) * inner.eval(t)))
}

/// `pi(lambda) f = M_omega T_x f`: translation first, then modulation.
pub fn tf_shift(f: &FunctionEvaluator, lam: &TFPoint) -> Result<FunctionEvaluator> {
    modulate(&translate(f, &lam.x)?, &lam.omega)
}

/// `T_u M_eta f`: modulation first, then translation.
pub fn tf_shift_modulation_first(
    f: &FunctionEvaluator,
    u: &[f64],
    eta: &[f64],
) -> Result<FunctionEvaluator> {
    translate(&modulate(f, eta)?, u)
}

/// `D_r f(t) = |r|^{n/2} f(r t)`.
///
/// The envelope transforms as `rho -> |r|^{n/2} env(|r| rho)` about the center `c / r`.
pub fn dilate(f: &FunctionEvaluator, r: f64) -> Result<FunctionEvaluator> {
    if r == 0.0 || !r.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "dilation parameter must be nonzero and finite, got {r}"
        )));
    }
    let dim = f.dim();
    let scale = r.abs().powf(dim as f64 / 2.0);
    let inner = f.clone();
    let mut out = f.map_eval(move |t| {
        let mut buf = [0.0; 2];
        for d in 0..dim {
            buf[d] = r * t[d];
        }
        inner.eval(&buf[..dim]) * scale
    });
    let sing = f
        .singularities()
        .iter()
        .map(|p| p.iter().map(|v| v / r).collect())
        .collect();
    out = out.with_singularities(sing);
    if let Some(env) = f.envelope() {
        let center = env.center().iter().map(|c| c / r).collect();
        let e = env.clone();
        let ar = r.abs();
        out = out.with_envelope(Envelope::new(center, move |rho| scale * e.at(ar * rho)));
    }
    Ok(out)
}

/// Chirp multiplication `S_r f(t) = e^{2 pi i r t^2} f(t)`, one dimension only.
pub fn chirp_mul(f: &FunctionEvaluator, r: f64) -> Result<FunctionEvaluator> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: f.dim(),
        });
    }
    let inner = f.clone();
    Ok(f.map_eval(move |t| Complex64::cis(2.0 * PI * r * t[0] * t[0]) * inner.eval(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcs::{make_example1, make_gaussian};

    fn gauss_unnormalized() -> FunctionEvaluator {
        FunctionEvaluator::real(1, |t| (-PI * t[0] * t[0]).exp()).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn translate_examples() {
        let g = gauss_unnormalized();
        let tg = translate(&g, &[1.0]).unwrap();
        assert!(close(tg.eval(&[1.0]), Complex64::new(1.0, 0.0), 1e-15));
        assert!(close(
            tg.eval(&[0.0]),
            Complex64::new((-PI).exp(), 0.0),
            1e-15
        ));

        let f = make_example1(2.0, 0.0).unwrap();
        assert_eq!(translate(&f, &[3.0]).unwrap().eval(&[3.0]).re, 2.0);
        assert!(translate(&f, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn modulate_examples() {
        let g = gauss_unnormalized();
        let v = modulate(&g, &[1.0]).unwrap().eval(&[0.5]);
        assert!(close(v, Complex64::new(-(-PI / 4.0).exp(), 0.0), 1e-15));
        assert!(modulate(&g, &[1.0, 1.0]).is_err());
    }

    #[test]
    fn tf_shift_example() {
        let g = gauss_unnormalized();
        let v = tf_shift(&g, &TFPoint::scalar(1.0, 1.0))
            .unwrap()
            .eval(&[1.0]);
        assert!(close(v, Complex64::new(1.0, 0.0), 1e-14));
    }

    #[test]
    fn dilate_examples() {
        let g = gauss_unnormalized();
        let v = dilate(&g, 2.0).unwrap().eval(&[1.0]);
        assert!(close(
            v,
            Complex64::new(2f64.sqrt() * (-4.0 * PI).exp(), 0.0),
            1e-18
        ));
        assert!(matches!(dilate(&g, 0.0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn dilate_transforms_envelope() {
        let f = make_gaussian(1).unwrap();
        let d = dilate(&f, 3.0).unwrap();
        let env = d.envelope().unwrap();
        for &rho in &[0.0, 0.1, 0.5, 1.0] {
            let expect = 3f64.sqrt() * 2f64.powf(0.25) * (-PI * 9.0 * rho * rho).exp();
            assert!((env.at(rho) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn chirp_examples() {
        let g = gauss_unnormalized();
        let v = chirp_mul(&g, 0.5).unwrap().eval(&[1.0]);
        assert!(close(v, Complex64::new(-(-PI).exp(), 0.0), 1e-15));
        assert!(chirp_mul(&make_gaussian(2).unwrap(), 1.0).is_err());
    }

    #[test]
    fn translate_moves_singularities_and_envelope_center() {
        let f = crate::funcs::make_singular_cos(1.0).unwrap();
        let t = translate(&f, &[2.5]).unwrap();
        assert_eq!(t.singularities(), &[vec![2.5]]);
        assert_eq!(t.envelope().unwrap().center(), &[2.5]);
    }
}
