//! Pseudo-spectral expansions of the generalised Dirichlet–Neumann operators for doubly periodic
//! steady water waves on Beltrami flows, with the associated dispersion and bifurcation theory.

pub mod bifurcation;
pub mod differentials;
pub mod dispersion;
pub mod error;
pub mod expansion_ops;
pub mod lattice_spectral;
pub mod residual;
pub mod symbols;

pub use error::{Error, Result};
