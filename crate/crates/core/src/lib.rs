//! Cayley-Dickson algebras and the octonionic Gauss map of hypersurfaces of
//! `S^7` and `CP^3`.
//!
//! The crate evaluates the Laplacian identities satisfied by these Gauss maps
//! point-wise with finite-difference stencils and reports residuals together
//! with observed convergence orders.

pub mod algebra;
pub mod cp3;
pub mod error;
pub mod geometry;
pub mod jet;
pub mod report;
pub mod s7;

pub use error::{Error, Result};
