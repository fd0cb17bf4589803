use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative gap above which a system is reported independent.
pub const EPS_INDEP: f64 = 1e-6;
/// Relative gap below which a system is reported dependent.
pub const EPS_DEP: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    Gram,
    Collocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndependenceVerdict {
    Independent,
    Dependent,
    Inconclusive,
}

impl IndependenceVerdict {
    pub fn from_gap(relative_gap: f64) -> Self {
        if relative_gap > EPS_INDEP {
            Self::Independent
        } else if relative_gap < EPS_DEP {
            Self::Dependent
        } else {
            Self::Inconclusive
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub mode: RankMode,
    /// `[rows, cols]` of the assembled matrix.
    pub matrix_dim: [usize; 2],
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub relative_gap: f64,
    pub verdict: IndependenceVerdict,
    pub quad_error_estimate: f64,
    /// Smallest eigenvalue of the Hermitian part before clamping (Gram mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_eigenvalue: Option<f64>,
    /// `max |G - G^H|` (Gram mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hermitian_defect: Option<f64>,
    #[serde(skip)]
    pub matrix: Vec<Vec<Complex64>>,
}

impl IndependenceReport {
    /// Matrix entries as CSV rows `row,col,re,im`.
    pub fn matrix_csv(&self) -> String {
        let mut out = String::from("row,col,re,im\n");
        for (i, row) in self.matrix.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                out.push_str(&format!("{i},{j},{:e},{:e}\n", v.re, v.im));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub identity_name: String,
    pub max_abs_residual: f64,
    pub phase_optimized: bool,
    pub best_phase: Complex64,
    pub points: usize,
}
