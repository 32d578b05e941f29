//! Exactly solvable system–bath collisions: a von-Neumann coupling `x̂_S p̂_E` switched
//! on over a window shears the joint wave function, so the bath coordinate records the
//! system position. Conditioning on the bath particle turns each collision into a
//! GRW-type localization of width `√2σ` centred at `Z = X + Y⁰`.

mod estimates;
mod run;
mod shear;
mod statistics;
mod window;

pub use estimates::{EnvironmentEstimate, EnvironmentInputs};
pub use run::{multi_collision_run, BathRun, CenterShifts, CollisionRecord, RunOptions};
pub use shear::{bath_packet, collision_multiplier, collision_trajectories, conditional_pair, shear_evolution, SHEAR_LOSS_LIMIT};
pub use statistics::{localization_center_statistics, ZStatistics};
pub use window::{BathParticleSpec, InteractionWindow};
