//! Sound test for special residues.
//!
//! A residue is reported `Special` only when every condition is witnessed by
//! the certified closure. A failure that would disappear if some uncertified
//! `ξ` were added to `Ξ` is reported `Inconclusive`, never `NotSpecial`.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::arith::is_unit;
use super::lambda::{cond4, lambda_closure, xi_bound};
use super::sets::{in_phi2, odd_non_phi2, omega2, ResidueSet};

/// How a pair `(i, j)` was discharged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Discharge {
    /// `2j + (i0 - i)` lies in the 2-power-gcd set.
    Direct,
    /// Conditions `(4(ξ))` with a certified `ξ`.
    Xi(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialFailure {
    OutOfRange,
    NotInPhi2,
    /// `i0 - s` is not a unit for this odd `s`.
    NotInOmega2 {
        s: u64,
    },
    /// No `ξ` in the full range works for `(i, j)`.
    Condition {
        i: u64,
        j: u64,
    },
    /// Only `ξ` values outside the certified set would work for `(i, j)`.
    Uncertified {
        i: u64,
        j: u64,
        candidates: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpecialVerdict {
    Special,
    NotSpecial(SpecialFailure),
    Inconclusive(SpecialFailure),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub n: u64,
    pub i0: u64,
    pub verdict: SpecialVerdict,
    /// Certified `Ξ` for each qualifying odd `i`.
    pub xi_sets: Vec<(u64, Vec<u64>)>,
}

impl SpecialReport {
    pub fn is_special(&self) -> bool {
        self.verdict == SpecialVerdict::Special
    }
}

pub fn is_n_special(n: u64, i0: u64) -> SpecialReport {
    let mut report = SpecialReport { n, i0, verdict: SpecialVerdict::Special, xi_sets: Vec::new() };
    if n < 2 || i0 == 0 || i0 >= n {
        report.verdict = SpecialVerdict::NotSpecial(SpecialFailure::OutOfRange);
        return report;
    }
    if !in_phi2(i0, n) {
        report.verdict = SpecialVerdict::NotSpecial(SpecialFailure::NotInPhi2);
        return report;
    }
    let odd = odd_non_phi2(n);
    if let Some(&s) = odd.iter().find(|&&s| !is_unit((i0 + n - s) % n, n)) {
        let s = if s == 0 { n } else { s };
        report.verdict = SpecialVerdict::NotSpecial(SpecialFailure::NotInOmega2 { s });
        return report;
    }
    let xi_max = xi_bound(n).unwrap_or(0);
    for &i in &odd {
        let d = (i0 + n - i) % n;
        for j in 1..n {
            if !in_phi2((2 * j + d) % n, n) && !(0..=xi_max).any(|xi| cond4(n, i0, d, j, xi)) {
                let i = if i == 0 { n } else { i };
                report.verdict = SpecialVerdict::NotSpecial(SpecialFailure::Condition { i, j });
                return report;
            }
        }
    }
    let mut inconclusive = None;
    for &i in &odd {
        let closure = lambda_closure(n, i, i0).expect("hypotheses checked above");
        let d = (i0 + n - i) % n;
        let irep = if i == 0 { n } else { i };
        for j in 1..n {
            if in_phi2((2 * j + d) % n, n) {
                continue;
            }
            if closure.xi_set.iter().any(|&xi| cond4(n, i0, d, j, xi)) {
                continue;
            }
            let candidates: Vec<u64> = (0..=xi_max).filter(|&xi| cond4(n, i0, d, j, xi)).collect();
            inconclusive.get_or_insert(SpecialFailure::Uncertified { i: irep, j, candidates });
        }
        report.xi_sets.push((irep, closure.xi_set));
    }
    if let Some(f) = inconclusive {
        report.verdict = SpecialVerdict::Inconclusive(f);
    }
    report
}

/// How each `(i, j)` pair is discharged, for a residue already known special.
pub fn special_witness(n: u64, i0: u64) -> Option<Vec<(u64, u64, Discharge)>> {
    if !is_n_special(n, i0).is_special() {
        return None;
    }
    let mut out = Vec::new();
    for i in odd_non_phi2(n) {
        let closure = lambda_closure(n, i, i0).ok()?;
        let d = (i0 + n - i) % n;
        for j in 1..n {
            let how = if in_phi2((2 * j + d) % n, n) {
                Discharge::Direct
            } else {
                Discharge::Xi(*closure.xi_set.iter().find(|&&xi| cond4(n, i0, d, j, xi))?)
            };
            out.push((if i == 0 { n } else { i }, j, how));
        }
    }
    Some(out)
}

/// Residues certified special. Only candidates in `omega2(n)` are examined.
pub fn spl_certified(n: u64) -> ResidueSet {
    let cands = omega2(n);
    ResidueSet::from_iter_mod(n, cands.iter().filter(|&i0| i0 != 0 && is_n_special(n, i0).is_special()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!(is_n_special(14, 2).is_special());
        for k in 1..8 {
            assert!(is_n_special(8, k).is_special());
        }
        let r = is_n_special(6, 2);
        assert_eq!(r.verdict, SpecialVerdict::NotSpecial(SpecialFailure::Condition { i: 3, j: 2 }));
        assert!(spl_certified(49).contains(2));
        assert!(spl_certified(98).contains(2));
        assert!(spl_certified(15).is_empty());
        assert_eq!(spl_certified(8).to_vec(), (1..8).collect::<Vec<_>>());
    }
}
