//! GRW spontaneous localization in Bell's formulation: Poisson-timed Gaussian collapses
//! interleaved with Schrödinger evolution, the collapse-centre law, the statistical
//! master equation and the `Λ = Nλ` amplification rule.
//!
//! The one-dimensional localization operator is
//! `L(z) = (π r_C²)^{−1/4} exp(−(x − z)²/2r_C²)`, normalized so that
//! `∫ dz ‖L(z)ψ‖² = 1` on the line.

mod clock;
mod evolve;
mod localization;
mod master;
mod params;

pub use clock::{snap_to_steps, PoissonClock};
pub use evolve::{evolve_grw, evolve_with_collapses, max_step_for_rate, CollapseEvent, GrwRun, SNAP_FRACTION};
pub use localization::{
    apply_localization, collapse_center_pdf, localization_multiplier, sample_collapse_center,
    MIN_POST_COLLAPSE_NORM,
};
pub use master::{master_equation_evolve, Dynamics, MasterEquation};
pub use params::{amplified_rate, GrwParams, GRW_LAMBDA, GRW_R_C};
