//! Engine certificates that `c_k` is nilpotent modulo every `B_j Ā`.
//!
//! Working modulo `c_Φ` is sound whenever `Φ` is already known to consist of
//! such residues: the ideal `c_Φ` is generated by central elements that are
//! nilpotent modulo `(e_0)`, so a power of it lies in `(e_0)` and any
//! exponent found in `Ā` lifts to a larger one in `A`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::echelon::{BlockRunner, EchelonBasis, EchelonOptions, Sequential};
use super::nilpotency::{nilpotency_in, Nilpotency};
use crate::algebra::Context;
use crate::error::{Error, Result};
use crate::number_theory::arith::is_unit;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub j: usize,
    pub result: Nilpotency,
    /// Unit `λ` such that the entry was read off `(λk, λj)` through `f_λ`.
    pub via_lambda: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiCertificate {
    pub n: usize,
    pub k: usize,
    pub base_phi: Vec<usize>,
    pub dmax: u32,
    /// One entry per `j` in `1..n` until the first failure.
    pub entries: Vec<PhiEntry>,
    /// Largest per-`j` exponent when every `j` succeeded.
    pub exponent: Option<u32>,
}

impl PhiCertificate {
    pub fn is_certified(&self) -> bool {
        self.exponent.is_some()
    }
}

/// Smallest image of `(k, j)` under the units, with the unit used.
fn canonical_pair(n: usize, k: usize, j: usize) -> ((usize, usize), usize) {
    (1..n.max(2))
        .filter(|&l| is_unit(l as u64, n as u64))
        .map(|l| (((l * k) % n, (l * j) % n), l))
        .min()
        .unwrap_or(((k, j), 1))
}

/// Certifies `k ∈ Φ_n` relative to the quotient `base`, or reports where the
/// search stopped.
pub fn phi_n_certify(base: Context, k: usize, dmax: u32, opts: EchelonOptions) -> Result<PhiCertificate> {
    phi_n_certify_with(base, k, dmax, opts, &Sequential)
}

pub fn phi_n_certify_with(
    base: Context,
    k: usize,
    dmax: u32,
    opts: EchelonOptions,
    runner: &dyn BlockRunner,
) -> Result<PhiCertificate> {
    let n = base.n();
    if k >= n {
        return Err(Error::Precondition(format!("residue {k} out of range for n = {n}")));
    }
    let symmetric = base.is_special();
    let mut memo: BTreeMap<(usize, usize), Nilpotency> = BTreeMap::new();
    let mut entries = Vec::new();
    let mut exponent = Some(0u32);
    for j in 1..n {
        let ((ck, cj), lambda) = if symmetric { canonical_pair(n, k, j) } else { ((k, j), 1) };
        let via_lambda = if (ck, cj) == (k, j) { None } else { Some(lambda) };
        let result = match memo.get(&(ck, cj)) {
            Some(r) => *r,
            None => {
                let mut basis = EchelonBasis::new(base, cj, opts);
                let r = nilpotency_in(&mut basis, ck, dmax, runner)?;
                memo.insert((ck, cj), r);
                r
            }
        };
        entries.push(PhiEntry { j, result, via_lambda });
        match result {
            Nilpotency::Found { exponent: e } => exponent = exponent.map(|m| m.max(e)),
            Nilpotency::NotFound { .. } => {
                exponent = None;
                break;
            }
        }
    }
    Ok(PhiCertificate { n, k, base_phi: base.phi(), dmax, entries, exponent })
}
