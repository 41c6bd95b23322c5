//! Residue sets attached to `n`: the 2-power-gcd set, orbit certificates and the
//! unit-translate intersection used by the special-residue test.

use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{gcd, is_power_of_two, is_unit};

/// A subset of `Z_n`, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    n: u64,
    words: Vec<u64>,
}

impl ResidueSet {
    pub fn empty(n: u64) -> Self {
        ResidueSet { n, words: alloc::vec![0; (n as usize).div_ceil(64)] }
    }

    pub fn full(n: u64) -> Self {
        let mut s = Self::empty(n);
        for k in 0..n {
            s.insert(k);
        }
        s
    }

    pub fn from_iter_mod(n: u64, it: impl IntoIterator<Item = u64>) -> Self {
        let mut s = Self::empty(n);
        for k in it {
            s.insert(k % n);
        }
        s
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn contains(&self, k: u64) -> bool {
        let k = k % self.n;
        self.words[(k / 64) as usize] >> (k % 64) & 1 == 1
    }

    /// Returns `true` when `k` was not already present.
    pub fn insert(&mut self, k: u64) -> bool {
        let k = k % self.n;
        let w = &mut self.words[(k / 64) as usize];
        let bit = 1u64 << (k % 64);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.n).filter(move |&k| self.contains(k))
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ResidueSet) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ResidueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[derive(Serialize, Deserialize)]
struct ResidueSetWire {
    n: u64,
    elements: Vec<u64>,
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ResidueSetWire { n: self.n, elements: self.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ResidueSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = ResidueSetWire::deserialize(d)?;
        if w.n == 0 || w.elements.iter().any(|&k| k >= w.n) {
            return Err(serde::de::Error::custom("residue out of range"));
        }
        Ok(ResidueSet::from_iter_mod(w.n, w.elements))
    }
}

/// `gcd(k, n)` is a power of two (with `gcd(0, n) = n`).
pub fn in_phi2(k: u64, n: u64) -> bool {
    is_power_of_two(gcd(k % n, n))
}

pub fn phi2(n: u64) -> ResidueSet {
    ResidueSet::from_iter_mod(n, (0..n).filter(|&k| in_phi2(k, n)))
}

/// Closure of `{alpha}` under `x -> x - k` and `x -> 2x - k` in `Z_n`.
pub fn orbit_semigroup(n: u64, k: u64, alpha: u64) -> ResidueSet {
    let k = k % n;
    let mut seen = ResidueSet::empty(n);
    let mut stack = alloc::vec![alpha % n];
    seen.insert(alpha % n);
    while let Some(x) = stack.pop() {
        for y in [(x + n - k) % n, (2 * x % n + n - k) % n] {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    seen
}

/// The residues `k` such that every `alpha` has `0` in its orbit semigroup.
///
/// For each `k` this runs one backward search from `0`: the predecessors of `y`
/// are `y + k` and the solutions of `2x = y + k`.
pub fn phi_orbit_certified(n: u64) -> ResidueSet {
    let mut out = ResidueSet::empty(n);
    for k in 0..n {
        let mut reach = ResidueSet::empty(n);
        reach.insert(0);
        let mut stack = alloc::vec![0u64];
        while let Some(y) = stack.pop() {
            let t = (y + k) % n;
            if reach.insert(t) {
                stack.push(t);
            }
            for x in half_solutions(t, n) {
                if reach.insert(x) {
                    stack.push(x);
                }
            }
        }
        if reach.len() as u64 == n {
            out.insert(k);
        }
    }
    out
}

/// Solutions of `2x = t` in `Z_n`.
fn half_solutions(t: u64, n: u64) -> impl Iterator<Item = u64> {
    let sols: [Option<u64>; 2] = if n % 2 == 1 {
        [Some(if t.is_multiple_of(2) { t / 2 } else { (t + n) / 2 }), None]
    } else if t.is_multiple_of(2) {
        [Some(t / 2), Some(t / 2 + n / 2)]
    } else {
        [None, None]
    };
    sols.into_iter().flatten()
}

/// Odd representatives `s` in `[1, n]` with `s` outside the 2-power-gcd set.
pub fn odd_non_phi2(n: u64) -> Vec<u64> {
    (1..=n).step_by(2).filter(|&s| !in_phi2(s, n)).map(|s| s % n).collect()
}

/// Residues `i0` with `i0 - s` a unit for every odd `s` outside the 2-power-gcd set.
pub fn omega2(n: u64) -> ResidueSet {
    let bad = odd_non_phi2(n);
    ResidueSet::from_iter_mod(n, (0..n).filter(|&i0| bad.iter().all(|&s| is_unit((i0 + n - s) % n, n))))
}
