//! Adaptive Gauss-Legendre quadrature for smooth complex integrands on an interval.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num_complex::Complex64;

const MAX_DEPTH: u32 = 48;

#[derive(Debug, Clone)]
pub struct AdaptiveGaussLegendre {
    /// Nodes and weights on `[-1, 1]`.
    rule: Vec<(f64, f64)>,
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Sum of the accepted `|two-panel - one-panel|` differences.
    pub error_estimate: f64,
    pub panels: usize,
}

impl AdaptiveGaussLegendre {
    pub fn new(degree: usize, tol: f64) -> Self {
        let degree = NonZeroUsize::new(degree.max(1)).expect("degree is positive");
        let rule = GaussLegendre::new(degree).as_node_weight_pairs().to_vec();
        Self { rule, tol }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn panel<F: Fn(f64) -> Complex64>(&self, a: f64, b: f64, f: &F) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(x, w) in &self.rule {
            acc += f(mid + half * x) * w;
        }
        acc * half
    }

    /// Bisects until the two-panel and one-panel estimates of each piece differ
    /// by less than its share of the tolerance (halved at every split).
    pub fn integrate<F: Fn(f64) -> Complex64>(&self, a: f64, b: f64, f: F) -> QuadResult {
        let mut value = Complex64::new(0.0, 0.0);
        let mut error_estimate = 0.0;
        let mut panels = 0;
        // Depth-first, left piece first, so the summation order is fixed.
        let mut stack = vec![(a, b, self.panel(a, b, &f), self.tol, 0u32)];
        while let Some((lo, hi, whole, tol, depth)) = stack.pop() {
            let mid = 0.5 * (lo + hi);
            let left = self.panel(lo, mid, &f);
            let right = self.panel(mid, hi, &f);
            let diff = (left + right - whole).norm();
            if diff < tol || depth >= MAX_DEPTH {
                value += left + right;
                error_estimate += diff;
                panels += 2;
            } else {
                stack.push((mid, hi, right, 0.5 * tol, depth + 1));
                stack.push((lo, mid, left, 0.5 * tol, depth + 1));
            }
        }
        QuadResult {
            value,
            error_estimate,
            panels,
        }
    }
}
