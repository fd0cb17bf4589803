//! Bounded Nelder-Mead with reflection at the box faces.

/// Maps `v` into `[lo, hi]` by mirror reflection.
pub(crate) fn reflect_into(v: f64, lo: f64, hi: f64) -> f64 {
    let w = hi - lo;
    let mut y = (v - lo).rem_euclid(2.0 * w);
    if y > w {
        y = 2.0 * w - y;
    }
    lo + y
}

pub(crate) struct Bounds {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Bounds {
    fn project(&self, x: &mut [f64]) {
        for (k, v) in x.iter_mut().enumerate() {
            *v = reflect_into(*v, self.lo[k], self.hi[k]);
        }
    }
}

/// Minimizes `objective` from the simplex `start ∪ {start + steps_k e_k}`.
/// `objective` returns `None` once the evaluation budget is spent, which stops
/// the search.
pub(crate) fn nelder_mead<F>(start: &[f64], steps: &[f64], bounds: &Bounds, mut objective: F)
where
    F: FnMut(&[f64]) -> Option<f64>,
{
    let dim = start.len();
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
    let mut x0 = start.to_vec();
    bounds.project(&mut x0);
    let Some(f0) = objective(&x0) else { return };
    simplex.push((x0.clone(), f0));
    for k in 0..dim {
        let mut x = x0.clone();
        x[k] += steps[k];
        bounds.project(&mut x);
        let Some(fx) = objective(&x) else { return };
        simplex.push((x, fx));
    }
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let worst = simplex[dim].clone();
        let centroid: Vec<f64> = (0..dim)
            .map(|k| simplex[..dim].iter().map(|p| p.0[k]).sum::<f64>() / dim as f64)
            .collect();
        let along = |t: f64| -> Vec<f64> {
            let mut x: Vec<f64> = centroid
                .iter()
                .zip(&worst.0)
                .map(|(c, w)| c + t * (c - w))
                .collect();
            bounds.project(&mut x);
            x
        };
        let xr = along(1.0);
        let Some(fr) = objective(&xr) else { return };
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let Some(fe) = objective(&xe) else { return };
            simplex[dim] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[dim - 1].1 {
            simplex[dim] = (xr, fr);
            continue;
        }
        let (xc, fc) = if fr < worst.1 {
            let x = along(0.5);
            let Some(f) = objective(&x) else { return };
            (x, f)
        } else {
            let x = along(-0.5);
            let Some(f) = objective(&x) else { return };
            (x, f)
        };
        if fc < worst.1.min(fr) {
            simplex[dim] = (xc, fc);
            continue;
        }
        let best = simplex[0].0.clone();
        for p in simplex.iter_mut().skip(1) {
            let mut x: Vec<f64> = best
                .iter()
                .zip(&p.0)
                .map(|(b, v)| b + 0.5 * (v - b))
                .collect();
            bounds.project(&mut x);
            let Some(f) = objective(&x) else { return };
            *p = (x, f);
        }
    }
}
