//! Independent checks: rank of Gram and collocation matrices, and residuals of
//! the covariance identities the certificates rely on.

mod rank;
mod report;
mod residual;

pub use rank::{collocation_rank, default_collocation_samples, gram_matrix, MAX_POINTS};
pub use report::{
    IndependenceReport, IndependenceVerdict, RankMode, ResidualReport, EPS_DEP, EPS_INDEP,
};
pub use residual::{
    dependence_residual_er, dependence_residual_er_at, dependence_residual_er_with_coefficient,
    metaplectic_residual, stft_identity_residual, stft_identity_residual_with, MetaplecticKind,
    MetaplecticParams, Parameterization, ShiftOrder,
};
