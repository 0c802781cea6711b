//! Hamiltonian stationary Lagrangian tori in ℝ⁴ = ℍ: synthesis from lattice
//! data, multiplier spectra, Darboux and μ-Darboux transforms, finite
//! difference verification and mesh export.

pub mod cli;
pub mod config;
pub mod darboux;
mod error;
pub mod export;
pub mod lattice;
pub mod quaternion;
pub mod spectral;
pub mod torus;
pub mod verify;

pub use error::Error;
pub use quaternion::{Cx, Quaternion};
