//! The classical regime of a macroscopic centre of mass under frequent weak collapses:
//! regime time scales, the asymptotic Gaussian state, the stochastic equations for its
//! mean position and velocity, the Bohmian velocity of that state and the Newtonian limit.
//!
//! Two conventions for the collapse strength coexist. The time scales use
//! `Λ_QMUPL = Λ/r_C²`; the asymptotic state and the noise amplitudes use `Λ` in s⁻¹
//! directly, which is the convention that reproduces the quoted sphere numbers. Every
//! report names the convention it used.

mod gaussian;
mod params;
mod sde;
mod velocity;

pub use gaussian::{GaussianMeanState, MIN_POINTS_PER_WIDTH};
pub use params::{classical_time, collapse_time, LambdaConvention, QmuplParams, RegimeReport};
pub use sde::{
    fluctuation_statistics, newton_check, sde_evolve, FluctuationStatistics, NewtonReport, SdeOptions, SdePath,
};
pub use velocity::{bohmian_velocity_identity, VelocityIdentityReport};
