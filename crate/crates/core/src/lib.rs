//! Numerical certificates for linear independence of finite sets of
//! time-frequency translates `{M_omega T_x f}`.
//!
//! - [`tfops`]: operators on function evaluators (shifts, dilation, Fourier, STFT).
//! - [`funcs`]: built-in function families with analytic envelopes.
//! - [`certify`]: sufficient-condition checkers producing [`certify::Certificate`]s.
//! - [`oracle`]: independent Gram/collocation rank tests and identity residuals.
//! - [`windowsearch`]: window design search for small STFT tails.
//! - [`reproduce`]: pinned reproduction recipes for the worked examples.

pub mod certify;
pub mod error;
pub mod funcs;
pub mod oracle;
pub mod quad;
pub mod reproduce;
pub mod tfops;
pub mod windowsearch;

pub use error::{Error, Result};
pub use num_complex::Complex64;
