//! Admissibility verdicts with certificate trees.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cell::RefCell;

use serde::{Deserialize, Serialize};

use super::arith::{divisors, factor, is_prime, split_two};
use super::sets::omega2;
use super::special::is_n_special;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Admissible,
    NotAdmissible,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    /// `3 | n` or `5 | n`.
    Divisible35 {
        by: u64,
    },
    Base2Power,
    PrimeNot35,
    /// `n = 2^a p^b` with `p >= 7`.
    TwoAPB {
        a: u32,
        p: u64,
        b: u32,
    },
    /// `n = p1 p2` with both primes at least 17.
    TwoPrimes17 {
        p1: u64,
        p2: u64,
    },
    /// Every proper divisor is admissible and `special` is a special residue.
    Recursion {
        special: u64,
        spl_via_omega2: bool,
        divisors: Vec<Arc<AdmissibilityVerdict>>,
    },
    Undecided {
        reason: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict {
    pub n: u64,
    pub verdict: Verdict,
    pub certificate: Certificate,
}

/// Memo for verdicts, shared across recursive calls.
pub trait VerdictStore {
    fn get(&self, n: u64) -> Option<Arc<AdmissibilityVerdict>>;
    fn put(&self, v: Arc<AdmissibilityVerdict>);
}

/// Single-threaded store.
#[derive(Default)]
pub struct LocalStore(RefCell<BTreeMap<u64, Arc<AdmissibilityVerdict>>>);

impl VerdictStore for LocalStore {
    fn get(&self, n: u64) -> Option<Arc<AdmissibilityVerdict>> {
        self.0.borrow().get(&n).cloned()
    }
    fn put(&self, v: Arc<AdmissibilityVerdict>) {
        self.0.borrow_mut().insert(v.n, v);
    }
}

/// `n = 2^a p1^b p2^c` with two distinct odd primes, both at least 17.
pub fn two_large_odd_primes(n: u64) -> bool {
    let (_, odd) = split_two(n);
    let f = factor(odd);
    f.len() == 2 && f.iter().all(|&(p, _)| p >= 17)
}

pub fn admissible(n: u64) -> AdmissibilityVerdict {
    (*admissible_with(n, &LocalStore::default())).clone()
}

pub fn admissible_with(n: u64, store: &dyn VerdictStore) -> Arc<AdmissibilityVerdict> {
    assert!(n >= 2, "admissibility is defined for n >= 2");
    if let Some(v) = store.get(n) {
        return v;
    }
    let v = Arc::new(decide(n, store));
    store.put(v.clone());
    v
}

fn decide(n: u64, store: &dyn VerdictStore) -> AdmissibilityVerdict {
    let mk = |verdict, certificate| AdmissibilityVerdict { n, verdict, certificate };
    for by in [3, 5] {
        if n.is_multiple_of(by) {
            return mk(Verdict::NotAdmissible, Certificate::Divisible35 { by });
        }
    }
    let (a, odd) = split_two(n);
    if odd == 1 {
        return mk(Verdict::Admissible, Certificate::Base2Power);
    }
    if is_prime(n) {
        return mk(Verdict::Admissible, Certificate::PrimeNot35);
    }
    let f = factor(odd);
    if f.len() == 1 && f[0].0 >= 7 {
        return mk(Verdict::Admissible, Certificate::TwoAPB { a, p: f[0].0, b: f[0].1 });
    }
    if a == 0 && f.len() == 2 && f.iter().all(|&(p, e)| p >= 17 && e == 1) {
        return mk(Verdict::Admissible, Certificate::TwoPrimes17 { p1: f[0].0, p2: f[1].0 });
    }

    let mut children = Vec::new();
    for d in divisors(n) {
        if d == 1 || d == n {
            continue;
        }
        let v = admissible_with(d, store);
        if v.verdict != Verdict::Admissible {
            return mk(
                Verdict::Unknown,
                Certificate::Undecided { reason: alloc::format!("proper divisor {d} is not certified admissible") },
            );
        }
        children.push(v);
    }
    let via_omega2 = two_large_odd_primes(n);
    let cands = omega2(n);
    let special = if via_omega2 {
        cands.iter().find(|&k| k != 0)
    } else {
        cands.iter().find(|&k| k != 0 && is_n_special(n, k).is_special())
    };
    match special {
        Some(special) => {
            mk(Verdict::Admissible, Certificate::Recursion { special, spl_via_omega2: via_omega2, divisors: children })
        }
        None => mk(Verdict::Unknown, Certificate::Undecided { reason: String::from("no certified special residue") }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(admissible(6).verdict, Verdict::NotAdmissible);
        assert_eq!(admissible(8).certificate, Certificate::Base2Power);
        assert_eq!(admissible(7).certificate, Certificate::PrimeNot35);
        assert_eq!(admissible(98).certificate, Certificate::TwoAPB { a: 1, p: 7, b: 2 });
        assert_eq!(admissible(323).certificate, Certificate::TwoPrimes17 { p1: 17, p2: 19 });
        assert_eq!(admissible(45).verdict, Verdict::NotAdmissible);
    }

    #[test]
    fn no_unknowns_below_77() {
        for n in 2..77 {
            assert_ne!(admissible(n).verdict, Verdict::Unknown, "n = {n}");
        }
    }
}
