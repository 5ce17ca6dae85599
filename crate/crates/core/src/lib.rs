//! Symbolic resolution of singularities for affine hypersurfaces over the
//! rationals.

pub mod algebra;
pub mod blowup;
pub mod drivers;
pub mod error;
pub mod geometry;

pub use error::{Error, Result};
