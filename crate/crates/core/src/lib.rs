//! Power-law duality of the radial Schrödinger equation.
//!
//! The change of variable r = ρ^(2/(β+2)) maps a radial problem with
//! potential K r^β in d dimensions onto another power-law problem; the
//! flagship instance sends the d = 3 Coulomb problem to the D = 4 isotropic
//! oscillator. This crate implements the dictionary, the Gaussian-power
//! variational estimates on both sides, the Gamma/Wallis identities behind
//! their large-angular-momentum limits, and a radial bound-state eigensolver
//! used to verify that mapped eigenstates solve the dual equation.
//!
//! All types are immutable values and all operations are pure functions with
//! no shared state, so everything here can be driven from multiple threads
//! without synchronization.

pub mod error;
pub mod gamma;
pub mod limits;
pub mod minimize;
pub mod model;
pub mod quad;
pub mod spectral;
pub mod variational;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    DualityOutput, PhysicalConstants, PowerLawPotential, RadialProblem, RadialState,
};
pub use spectral::SolverConfig;
pub use variational::{TrialFunction, VariationalResult};
