//! Bound states of the D-dimensional Klein–Gordon equation with equal scalar and
//! vector pseudoharmonic plus ring-shaped potential.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod error;
pub mod model;
pub mod nucore;
pub mod oracle;
pub mod quad;
pub mod radial;
pub mod roots;
pub mod specfun;

pub use angular::{AngularShift, QuantumNumbers};
pub use error::{Error, Result};
pub use model::{DerivedCouplings, ModelParams, Regime};
pub use nucore::{HypergeometricForm, Linear, NuBranch, Quadratic};
pub use radial::{solve_energies, EnergyState, RadialWave, SpectrumRequest};
