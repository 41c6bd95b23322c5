//! Certified closure of the residue set `Λ` reachable from `i0` by the two
//! families of moves, together with the derived index set `Ξ`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::arith::{gcd, is_unit, mop, Mop};
use super::sets::{in_phi2, ResidueSet};
use crate::error::{Error, Result};

/// Which move produced a residue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LambdaRule {
    Seed,
    /// `j -> j + d`, allowed when `2j + d` is in the 2-power-gcd set.
    Omega0,
    /// `j -> j + (xi + 2) d` for a certified `xi`.
    OmegaXi(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaMove {
    pub from: u64,
    pub to: u64,
    pub rule: LambdaRule,
    /// Upper bound on `t` with `b_to c_i^t` in the ideal.
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaClosure {
    pub n: u64,
    pub i: u64,
    pub i0: u64,
    pub lambda_set: ResidueSet,
    pub xi_set: Vec<u64>,
    pub xi_max: u64,
    pub reached_target: bool,
    pub move_log: Vec<LambdaMove>,
}

impl LambdaClosure {
    /// Exponent bound recorded for a member of `Λ`.
    pub fn exponent(&self, j: u64) -> Option<u64> {
        self.move_log.iter().find(|m| m.to == j % self.n).map(|m| m.exponent)
    }

    /// Bound on `N` with `c_i^N` in the ideal, when the target was reached.
    pub fn nilpotency_bound(&self) -> Option<u64> {
        let target = (self.i + self.n - self.i0) % self.n;
        self.reached_target.then(|| self.exponent(target).map(|t| t + 1)).flatten()
    }
}

/// Integer representative of an odd residue taken from `[1, n]`.
pub(crate) fn odd_rep(i: u64, n: u64) -> u64 {
    if i.is_multiple_of(n) {
        n
    } else {
        i % n
    }
}

/// Largest admissible `ξ`, i.e. `(mop(n) - 3) / 2`.
pub fn xi_bound(n: u64) -> Option<u64> {
    match mop(n) {
        Mop::Prime(p) => Some((p - 3) / 2),
        Mop::Infinity => None,
    }
}

pub(crate) fn check_pair(n: u64, i: u64, i0: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} must be at least 2")));
    }
    let rep = odd_rep(i, n);
    if rep.is_multiple_of(2) {
        return Err(Error::Precondition(format!("i = {rep} is even")));
    }
    if in_phi2(rep, n) {
        return Err(Error::Precondition(format!("gcd({rep}, {n}) = {} is a power of two", gcd(rep, n))));
    }
    let d = (i0 % n + n - i % n) % n;
    if !is_unit(d, n) {
        return Err(Error::Precondition(format!("i0 - i = {d} is not a unit mod {n}")));
    }
    Ok(())
}

/// Conditions `(4(ξ)i–iii)` for `j`, with `d = i0 - i`.
pub(crate) fn cond4(n: u64, i0: u64, d: u64, j: u64, xi: u64) -> bool {
    let m = |k: u64| (k % n) * (d % n) % n;
    in_phi2((2 * j + m(xi + 2)) % n, n)
        && in_phi2((j + n - m(xi + 1)) % n, n)
        && in_phi2((j + i0 + 2 * m(xi + 1)) % n, n)
}

/// Least fixed point of the moves starting from `{i0}`.
pub fn lambda_closure(n: u64, i: u64, i0: u64) -> Result<LambdaClosure> {
    check_pair(n, i, i0)?;
    let (i, i0) = (i % n, i0 % n);
    let d = (i0 + n - i) % n;
    let xi_max = xi_bound(n).expect("an odd i outside the set forces an odd prime factor");

    let mut lambda = ResidueSet::empty(n);
    let mut exps: BTreeMap<u64, u64> = BTreeMap::new();
    let mut log = alloc::vec![LambdaMove { from: i0, to: i0, rule: LambdaRule::Seed, exponent: 0 }];
    lambda.insert(i0);
    exps.insert(i0, 0);
    let mut xi_set: Vec<u64> = alloc::vec![0];

    let i_xi = |xi: u64| (i0 + (xi % n) * d) % n;
    // A move tried once never yields anything new later.
    let stride = xi_max as usize + 2;
    let mut tried = alloc::vec![false; n as usize * stride];
    let mut changed = true;
    while changed {
        changed = false;
        let members: Vec<u64> = lambda.to_vec();
        for j in members {
            let t = exps[&j];
            let row = j as usize * stride;
            let mut found: Vec<(u64, LambdaRule, u64)> = Vec::new();
            if !core::mem::replace(&mut tried[row], true) && in_phi2((2 * j + d) % n, n) {
                found.push(((j + d) % n, LambdaRule::Omega0, t + 1));
            }
            for &xi in &xi_set {
                if core::mem::replace(&mut tried[row + 1 + xi as usize], true) {
                    continue;
                }
                if cond4(n, i0, d, j, xi) {
                    let to = (j + ((xi + 2) % n) * d) % n;
                    found.push((to, LambdaRule::OmegaXi(xi), t + exps[&i_xi(xi)] + 2));
                }
            }
            for (to, rule, exponent) in found {
                if lambda.insert(to) {
                    exps.insert(to, exponent);
                    log.push(LambdaMove { from: j, to, rule, exponent });
                    changed = true;
                }
            }
        }
        for xi in 0..=xi_max {
            if !xi_set.contains(&xi) && lambda.contains(i_xi(xi)) {
                xi_set.push(xi);
                changed = true;
            }
        }
        xi_set.sort_unstable();
    }

    let reached_target = lambda.contains((i + n - i0) % n);
    Ok(LambdaClosure { n, i, i0, lambda_set: lambda, xi_set, xi_max, reached_target, move_log: log })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_and_targets() {
        let c = lambda_closure(14, 7, 2).unwrap();
        assert!(c.lambda_set.contains(2));
        assert!(c.reached_target);
        assert!(c.nilpotency_bound().is_some());
        let c = lambda_closure(6, 3, 2).unwrap();
        assert!(!c.reached_target);
        assert_eq!(c.xi_set, alloc::vec![0]);
    }

    #[test]
    fn precondition_errors() {
        assert!(lambda_closure(14, 2, 1).is_err());
        assert!(lambda_closure(14, 1, 2).is_err());
        assert!(lambda_closure(14, 7, 0).is_err());
    }
}
