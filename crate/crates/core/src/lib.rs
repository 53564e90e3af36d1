//! Exact Diophantine machinery on Markoff-type cubic surfaces
//!
//! `x² + y² + z² + ε·xyz = ax + by + cz + d`
//!
//! The crate covers the relative character varieties of the once-punctured
//! torus and the four-holed sphere: Vieta descent and orbit search, fiber
//! classification and twist dynamics, integral points on curves, simple
//! closed curve traces, translation lengths over discretely valued fields,
//! and the lattice-point dichotomy for curves in the two-dimensional torus.

pub mod cli;
pub mod curves;
pub mod error;
pub mod exactnum;
pub mod fibers;
pub mod slopes;
pub mod surface;
pub mod torus_lattice;

pub use error::{Error, Result};
