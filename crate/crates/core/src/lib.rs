//! Two-state transition probabilities for adiabatic passage.
//!
//! The crate computes the probability of a nonadiabatic transition in three
//! independent ways: direct integration of the Schrödinger equation, the
//! Dykhne–Davis–Pechukas (DDP) complex-time asymptotics for an arbitrary
//! analytic pulse, and closed forms for the constant-splitting Gaussian model.

pub mod basis;
pub mod branch;
pub mod ddp;
pub mod error;
pub mod families;
pub mod gaussian;
pub mod model;
pub mod ode;
pub mod propagator;
pub mod quadrature;
pub mod special;

pub use error::{Error, Result};
pub use model::{Pulse, PulseModel, Sample};
