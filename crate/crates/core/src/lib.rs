//! One-dimensional simulator for Bohmian trajectories, GRW-type collapse and the
//! classicalization of trajectories by an environment.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] grids, complex fields, split-step propagation, densities and sampling;
//! * [`bohmian`] velocity fields, guided trajectories, conditional wave functions and
//!   density matrices;
//! * [`grw`] localization operators, Poisson-timed collapses and the master equation;
//! * [`bath`] the exactly solvable von-Neumann collision model and its estimates;
//! * [`com`] centre-of-mass coordinates, conditional centre-of-mass states and
//!   amplification;
//! * [`classical`] asymptotic Gaussian states, mean-trajectory SDEs and the Newton limit;
//! * [`checks`] the verification suite shared by the CLI and the acceptance tests.
//!
//! Ensemble work (trajectories, realizations, paths) goes through [`exec`], which runs on
//! rayon when the `parallel` feature is enabled and sequentially otherwise.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod bohmian;
pub mod checks;
pub mod classical;
pub mod com;
pub mod error;
pub mod exec;
pub mod grw;
pub mod io;
pub mod numerics;
pub mod rng;
pub mod stats;

pub use error::{Error, Result};
pub use exec::Execution;
pub use numerics::{
    ComplexField1D, Grid1D, JointField2D, PotentialSpec, RealField1D, UnitsContext,
};

pub use num_complex::Complex64;
