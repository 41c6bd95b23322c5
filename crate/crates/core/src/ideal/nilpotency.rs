use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::echelon::{BlockRunner, EchelonBasis, EchelonOptions, Sequential};
use crate::algebra::{AlgebraElement, Context};
use crate::error::Result;

/// Outcome of searching for the least `N` with `c_i^N ∈ B_j Ā`.
///
/// `NotFound` only says no exponent with `2N <= dmax` works.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Nilpotency {
    Found { exponent: u32 },
    NotFound { dmax: u32 },
}

impl Nilpotency {
    pub fn exponent(self) -> Option<u32> {
        match self {
            Nilpotency::Found { exponent } => Some(exponent),
            Nilpotency::NotFound { .. } => None,
        }
    }
}

/// Serializable witness `{n, i, j, phi, N}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotencyWitness {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub phi: Vec<usize>,
    #[serde(rename = "N")]
    pub exponent: u32,
}

/// Searches `N = 1, 2, ...` while `2N <= dmax`, growing `basis` as needed.
pub fn nilpotency_in(basis: &mut EchelonBasis, i: usize, dmax: u32, runner: &dyn BlockRunner) -> Result<Nilpotency> {
    let ctx = basis.context();
    let c = AlgebraElement::c(ctx, i);
    let mut power = c.clone();
    let mut exponent = 1u32;
    while 2 * exponent <= dmax {
        if basis.max_degree() < 2 * exponent {
            basis.extend_to_with(2 * exponent, runner)?;
        }
        if basis.contains(&power)? {
            return Ok(Nilpotency::Found { exponent });
        }
        power = power.mul(&c)?;
        exponent += 1;
    }
    Ok(Nilpotency::NotFound { dmax })
}

pub fn nilpotency_search(ctx: Context, i: usize, j: usize, dmax: u32, opts: EchelonOptions) -> Result<Nilpotency> {
    let mut basis = EchelonBasis::new(ctx, j, opts);
    nilpotency_in(&mut basis, i, dmax, &Sequential)
}

impl NilpotencyWitness {
    pub fn new(ctx: &Context, i: usize, j: usize, exponent: u32) -> Self {
        NilpotencyWitness { n: ctx.n(), i, j, phi: ctx.phi(), exponent }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic() {
        let opts = EchelonOptions::default();
        let free3 = Context::free(3).unwrap();
        assert_eq!(nilpotency_search(free3, 1, 1, 10, opts).unwrap(), Nilpotency::Found { exponent: 1 });
        assert_eq!(nilpotency_search(free3, 0, 1, 20, opts).unwrap(), Nilpotency::NotFound { dmax: 20 });
    }
}
