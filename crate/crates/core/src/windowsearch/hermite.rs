use std::f64::consts::PI;

/// `L^2`-normalized Hermite functions `h_0..h_degree` at `t` (unit Gaussian
/// convention, `h_0(t) = 2^{1/4} e^{-pi t^2}`), by the three-term recurrence.
pub fn hermite_functions(degree: usize, t: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(degree + 1);
    let x = (2.0 * PI).sqrt() * t;
    out.push(2f64.powf(0.25) * (-PI * t * t).exp());
    if degree >= 1 {
        out.push(2f64.sqrt() * x * out[0]);
    }
    for k in 1..degree {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * x * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}
