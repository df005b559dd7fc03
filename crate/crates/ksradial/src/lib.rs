//! Radial steady states of the Keller-Segel system with quadratic diffusion.

// `!(x > 0.0)` style guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assembler;
pub mod compound;
pub mod energy;
pub mod error;
pub mod evolve;
pub mod numerics;
pub mod specfun;
pub mod supports;
pub mod thresholds;
pub mod verify;

pub use error::{Error, Result};
