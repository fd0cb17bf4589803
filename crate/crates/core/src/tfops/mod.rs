//! Operator algebra on pointwise function evaluators: translation, modulation,
//! time-frequency shifts, dilation, chirp multiplication, the Fourier transform
//! and the short-time Fourier transform.
//!
//! Functions are closures rather than sample arrays, so shifts by arbitrary reals
//! are exact. Sampling only happens inside quadrature and sup-norm scans, always
//! on a [`GridSpec`] trapezoid grid.

mod evaluator;
mod fourier;
mod grid;
mod ops;
mod point;
mod stft;

pub use evaluator::{distance, dot, norm, Envelope, FunctionEvaluator};
pub use fourier::{fourier, fourier_multiplier};
pub use grid::{chunked_sum, inner, l2_norm, GridSpec, Nodes};
pub use ops::{chirp_mul, dilate, modulate, tf_shift, tf_shift_modulation_first, translate};
pub use point::{min_pairwise, PointSet, TFPoint};
pub use stft::{stft, StftPlan};
