//! Sufficient conditions for linear independence as checkable certificates.
//!
//! Each checker evaluates the hypotheses of one result (Lemma 1, Theorem 1 and
//! its dilation and Fourier-side corollaries, the singular-function Theorem 2, and
//! the STFT Theorem 3) and returns a [`Certificate`] with every numeric witness.
//! Envelope-based sups are rigorous; sampled sups are flagged
//! [`SupMethod::DenseSample`] and only used when `rigorous` is off.

mod certificate;
mod checks;
mod radius;
mod singular;
mod spectral;

pub use certificate::{Certificate, SupEstimate, SupMethod, Theorem, Verdict};
pub use checks::{
    best_translate, check_corollary1, check_lemma1, check_theorem1, dilation_threshold,
};
pub use radius::{decay_radius, DecayRadius, RADIUS_TOL};
pub use singular::check_theorem2;
pub use spectral::{
    check_corollary2, check_corollary3, check_theorem3, default_stft_lattice,
    dilation_threshold_freq, stft_decay_radius, MIN_INNER_PRODUCT,
};

use crate::tfops::{Envelope, GridSpec};

#[derive(Debug, Clone, Default)]
pub struct CertifyOptions {
    /// Refuse heuristic (sampled) sups.
    pub rigorous: bool,
    /// Grid for sampled sups and anchor scans; defaults per dimension.
    pub sample_grid: Option<GridSpec>,
    /// Analytic envelope for the Fourier transform, making Fourier-side checks rigorous.
    pub spectral_envelope: Option<Envelope>,
    /// Analytic envelope for `|V_g f|` on `R^{2n}`, making Theorem 3 rigorous.
    pub stft_envelope: Option<Envelope>,
}

impl CertifyOptions {
    pub fn rigorous() -> Self {
        Self {
            rigorous: true,
            ..Self::default()
        }
    }
}
