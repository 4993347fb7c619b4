//! Restricted Lie algebras of Chevalley type over F_p, their restricted
//! enveloping algebras, truncated exponentials, pseudo-Chevalley groups and
//! the numerical bounds that govern over-restricted representations.

pub mod bounds;
pub mod error;
pub mod frobkernels;
pub mod groupgen;
pub mod liealgebra;
pub mod primefield;
pub mod repmod;
pub mod rootdata;
pub mod u0algebra;

pub use error::{Error, Result};
