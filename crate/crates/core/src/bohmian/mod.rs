//! Guidance-equation dynamics: velocity fields, trajectory ensembles, equivariance checks,
//! conditional wave functions and the conditional/reduced density-matrix identity.

mod conditional;
mod density_matrix;
mod equivariance;
mod trajectory;
mod velocity;

pub use conditional::{conditional_wavefunction, ConditionalWaveFunction, NULL_SLICE_LIMIT};
pub use density_matrix::{
    reduced_density_matrix, reduced_vs_conditional_identity, DensityMatrix1D, IdentityReport,
    MAX_MATRIX_POINTS,
};
pub use equivariance::{verify_equivariance, verify_equivariance_at, EquivarianceReport};
pub use trajectory::{
    advance_ensemble, advance_point, ordering_preserved, record_frames, TrajectoryEnsemble,
    TrajectoryHistory, TIE_TOLERANCE,
};
pub use velocity::{velocity_field, VelocityEvaluator, VelocityFieldFrame, NODE_EPSILON};
