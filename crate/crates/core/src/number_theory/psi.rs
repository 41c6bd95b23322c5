//! Rule-based certificates for `c_i^N ∈ B_j A`.
//!
//! Entries are saturated to a fixed point under the seeding, lifting and
//! shifting rules. Each certified entry carries an upper bound on `N` when the
//! rule chain provides one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::admissible::{admissible_with, LocalStore, Verdict, VerdictStore};
use super::arith::{divisors, gcd};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiEntry {
    Unknown,
    /// Certified; `bound` is an upper bound on the minimal exponent when known.
    Certified {
        bound: Option<u64>,
    },
}

impl PsiEntry {
    pub fn is_certified(self) -> bool {
        matches!(self, PsiEntry::Certified { .. })
    }

    fn improve(&mut self, bound: Option<u64>) -> bool {
        match *self {
            PsiEntry::Unknown => {
                *self = PsiEntry::Certified { bound };
                true
            }
            PsiEntry::Certified { bound: old } => {
                let better = match (old, bound) {
                    (None, Some(_)) => true,
                    (Some(a), Some(b)) => b < a,
                    _ => false,
                };
                if better {
                    *self = PsiEntry::Certified { bound };
                }
                better
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiTable {
    pub n: u64,
    /// Row-major, `entries[i * n + j]`.
    pub entries: Vec<PsiEntry>,
}

impl PsiTable {
    pub fn get(&self, i: u64, j: u64) -> PsiEntry {
        self.entries[((i % self.n) * self.n + j % self.n) as usize]
    }

    pub fn bound(&self, i: u64, j: u64) -> Option<u64> {
        match self.get(i, j) {
            PsiEntry::Certified { bound } => bound,
            PsiEntry::Unknown => None,
        }
    }

    pub fn is_full(&self) -> bool {
        self.entries.iter().all(|e| e.is_certified())
    }

    fn set(&mut self, i: u64, j: u64, bound: Option<u64>) -> bool {
        let n = self.n;
        self.entries[((i % n) * n + j % n) as usize].improve(bound)
    }
}

pub fn psi_saturate(n: u64) -> PsiTable {
    psi_saturate_with(n, &LocalStore::default(), &mut BTreeMap::new())
}

/// Saturates with a shared verdict store and a memo of divisor tables.
pub fn psi_saturate_with(n: u64, store: &dyn VerdictStore, memo: &mut BTreeMap<u64, PsiTable>) -> PsiTable {
    assert!(n >= 1);
    if let Some(t) = memo.get(&n) {
        return t.clone();
    }
    let mut t = PsiTable { n, entries: alloc::vec![PsiEntry::Unknown; (n * n) as usize] };
    for i in 0..n {
        t.set(i, 0, Some(1));
        let g = gcd(i, n);
        for j in 1..n {
            if j % g == 0 {
                let e = (1..=n).find(|&e| (i * e) % n == j);
                t.set(i, j, e);
            }
        }
    }

    let mut all_divisors_admissible = true;
    for m in divisors(n) {
        if m == 1 || m == n {
            continue;
        }
        let sub = psi_saturate_with(m, store, memo);
        let adm = admissible_with(m, store).verdict == Verdict::Admissible;
        all_divisors_admissible &= adm;
        let q = n / m;
        for i in 0..m {
            for j in 0..m {
                match sub.get(i, j) {
                    PsiEntry::Certified { bound } => {
                        t.set(i * q, j * q, bound);
                    }
                    PsiEntry::Unknown if adm => {
                        t.set(i * q, j * q, None);
                    }
                    PsiEntry::Unknown => {}
                }
            }
        }
    }

    if all_divisors_admissible {
        for i in (0..n).filter(|&i| gcd(i, n).is_multiple_of(2)) {
            for j in 0..n {
                t.set(i, j, None);
            }
        }
    }

    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                let from = [(2 * j + n - i) % n, (j + n - i) % n];
                for src in from {
                    if let PsiEntry::Certified { bound } = t.get(i, src) {
                        changed |= t.set(i, j, bound.map(|b| b + 1));
                    }
                }
            }
        }
    }
    memo.insert(n, t.clone());
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let t = psi_saturate(7);
        for i in 1..7 {
            for j in 0..7 {
                assert!(t.get(i, j).is_certified());
            }
        }
        assert!(psi_saturate(4).is_full());
        for n in 2..20 {
            let t = psi_saturate(n);
            for i in 0..n {
                assert!(t.get(i, 0).is_certified());
            }
        }
    }
}
