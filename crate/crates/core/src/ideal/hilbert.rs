//! Hilbert functions of `Ā / B_j Ā` and a growth classifier for truncated
//! sequences.
//!
//! The classifier looks at the last `w = max(2n, 8)` terms. Hilbert functions
//! here tend to alternate between two patterns by parity, so the even and odd
//! subsequences are tested separately: the smallest `D` for which both have
//! vanishing `(D + 1)`-th differences decides the class. Bounded tails give
//! GK estimate 1, degree-`D` polynomial tails give `D + 1`. Everything is an
//! estimate at the degree bound, never a proof.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use super::echelon::{BlockRunner, EchelonBasis, EchelonOptions, Sequential};
use crate::algebra::Context;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "class", content = "k")]
pub enum GrowthClass {
    FiniteDim,
    BoundedGrowth,
    /// Polynomial growth with GK estimate `k >= 2`.
    PolynomialGrowth(u32),
    Inconclusive,
}

impl GrowthClass {
    pub fn gk_estimate(self) -> Option<u32> {
        match self {
            GrowthClass::FiniteDim => Some(0),
            GrowthClass::BoundedGrowth => Some(1),
            GrowthClass::PolynomialGrowth(k) => Some(k),
            GrowthClass::Inconclusive => None,
        }
    }
}

impl fmt::Display for GrowthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthClass::FiniteDim => f.write_str("FiniteDim"),
            GrowthClass::BoundedGrowth => f.write_str("BoundedGrowth"),
            GrowthClass::PolynomialGrowth(k) => write!(f, "PolynomialGrowth({k})"),
            GrowthClass::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

pub fn classification_window(n: usize) -> usize {
    (2 * n).max(8)
}

fn differences_vanish(seq: &[i128], order: usize) -> bool {
    let mut v: Vec<i128> = seq.to_vec();
    for _ in 0..order {
        if v.len() <= 1 {
            return true;
        }
        v = v.windows(2).map(|p| p[1] - p[0]).collect();
    }
    v.iter().all(|&x| x == 0)
}

/// Classifies the tail of `dims` using a window of `w` terms.
pub fn gk_classify(dims: &[u128], w: usize) -> Result<GrowthClass> {
    if w < 4 || dims.len() < w {
        return Err(Error::Precondition(format!(
            "need at least {w} terms (window at least 4) to classify, got {}",
            dims.len()
        )));
    }
    let tail: Vec<i128> = dims[dims.len() - w..].iter().map(|&x| x as i128).collect();
    if tail.iter().all(|&x| x == 0) {
        return Ok(GrowthClass::FiniteDim);
    }
    let even: Vec<i128> = tail.iter().copied().step_by(2).collect();
    let odd: Vec<i128> = tail.iter().copied().skip(1).step_by(2).collect();
    // Each parity class needs at least two points beyond the fitted degree.
    let max_degree = even.len().min(odd.len()).saturating_sub(2);
    for d in 0..=max_degree {
        if differences_vanish(&even, d + 1) && differences_vanish(&odd, d + 1) {
            return Ok(if d == 0 { GrowthClass::BoundedGrowth } else { GrowthClass::PolynomialGrowth(d as u32 + 1) });
        }
    }
    Ok(GrowthClass::Inconclusive)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub context: Context,
    pub j: usize,
    pub max_degree: u32,
    /// `h(r)` for `r = 0..=max_degree`.
    pub dims: Vec<u128>,
    /// `dim Ā_r`.
    pub ambient: Vec<u128>,
    pub window: usize,
    pub classification: GrowthClass,
}

impl HilbertProfile {
    pub fn from_basis(basis: &EchelonBasis) -> Result<Self> {
        let ctx = basis.context();
        let d = basis.max_degree();
        let dims = basis.quotient_dims();
        let ambient = (0..=d).map(|r| basis.ambient(r).expect("computed degree")).collect();
        let window = classification_window(ctx.n());
        let classification = gk_classify(&dims, window)?;
        Ok(HilbertProfile { context: ctx, j: basis.j(), max_degree: d, dims, ambient, window, classification })
    }

    pub fn gk_estimate(&self) -> Option<u32> {
        self.classification.gk_estimate()
    }
}

/// Hilbert function of `Ā / B_j Ā` up to degree `d`, with a classification.
///
/// `d + 1` must be at least the classification window.
pub fn hilbert_quotient(ctx: Context, j: usize, d: u32, opts: EchelonOptions) -> Result<HilbertProfile> {
    hilbert_quotient_with(ctx, j, d, opts, &Sequential)
}

pub fn hilbert_quotient_with(
    ctx: Context,
    j: usize,
    d: u32,
    opts: EchelonOptions,
    runner: &dyn BlockRunner,
) -> Result<HilbertProfile> {
    let w = classification_window(ctx.n());
    if (d as usize) + 1 < w {
        return Err(Error::Precondition(format!("degree bound {d} is shorter than the window {w}")));
    }
    let mut basis = EchelonBasis::new(ctx, j, opts);
    basis.extend_to_with(d, runner)?;
    HilbertProfile::from_basis(&basis)
}
