use serde::{Deserialize, Serialize};

use crate::tfops::GridSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Lemma1,
    Thm1,
    Cor1,
    Cor2,
    Cor3,
    Thm2,
    Thm3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    NotCertified,
}

/// How a supremum was obtained. Only `Envelope` and `Pointwise` are rigorous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupMethod {
    /// Analytic monotone envelope: a true upper bound.
    Envelope,
    /// Maximum over lattice samples: a lower bound of the true sup, heuristic.
    DenseSample,
    /// Finitely many exact point evaluations (no sup involved).
    Pointwise,
}

impl SupMethod {
    pub fn is_rigorous(self) -> bool {
        !matches!(self, SupMethod::DenseSample)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupEstimate {
    pub value: f64,
    pub method: SupMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
}

/// Record of which sufficient condition was checked and every number it used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub theorem: Theorem,
    pub verdict: Verdict,
    #[serde(rename = "N")]
    pub n: usize,
    /// Decay radius, in units of `t` (or of `lambda` for Theorem 3).
    #[serde(rename = "R")]
    pub radius: f64,
    /// Minimum pairwise separation of the relevant coordinates.
    #[serde(rename = "M")]
    pub separation: f64,
    pub peak: f64,
    /// `peak / (N - 1)`; equal to `peak` when `N = 1`.
    pub bound: f64,
    pub margins: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translate_x: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_r: Option<f64>,
    pub sup_method: SupMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    /// Smallest margin, `+inf` when there are none.
    pub fn min_margin(&self) -> f64 {
        self.margins.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub(crate) fn trivial(theorem: Theorem, peak: f64, sup_method: SupMethod) -> Self {
        Self {
            theorem,
            verdict: Verdict::Certified,
            n: 1,
            radius: 0.0,
            separation: 0.0,
            peak,
            bound: peak,
            margins: Vec::new(),
            translate_x: None,
            threshold_r: None,
            sup_method,
            note: Some("a single nonzero function is linearly independent".into()),
        }
    }
}

pub(crate) fn bound_for(peak: f64, n: usize) -> f64 {
    if n >= 2 {
        peak / (n - 1) as f64
    } else {
        peak
    }
}
