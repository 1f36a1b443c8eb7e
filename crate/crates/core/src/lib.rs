//! Exact invariants of Dehn surgeries on torus knots and their cables:
//! lens space correction terms, knot Floer mapping-cone data, Casson–Walker
//! obstructions, and certificates for characterizing-slope regions.

pub mod arith;
pub mod certify;
pub mod cfk;
pub mod classify;
mod error;
pub mod knots;
pub mod lens;
pub mod search;
pub mod surgery;

pub use error::{Error, Result};
