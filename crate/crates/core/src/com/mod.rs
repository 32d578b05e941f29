//! Centre-of-mass machinery for rigid N-particle bodies: the split into centre of mass
//! and relative coordinates, the centre-of-mass wave function conditioned on the actual
//! relative positions, collisions that hit one constituent, and the `Λ = Nλ` rate law.

mod amplification;
mod config;
mod state;

pub use amplification::{measure_amplification, AmplificationModel, AmplificationReport, AmplificationRow};
pub use config::{com_split, exponent_identity, reconstruct, ManyBodyConfig};
pub use state::{
    collision_on_particle_k, com_conditional, CollisionFactor, ComCollision, ComConditionalState, ManyBodyBase,
    ManyBodyState, Packet, TabulatedState, MAX_TABULATED_PARTICLES,
};
