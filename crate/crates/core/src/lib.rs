//! Exact computations for the cyclic group acting on the (-1)-skew polynomial
//! ring by permuting generators: residue arithmetic, the algebra and its smash
//! product, right-ideal echelon forms, Hilbert data and derivation replay.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod coeff;
pub mod derivations;
pub mod error;
pub mod ideal;
pub mod number_theory;

pub use coeff::Rational;
pub use error::{Error, Result};
