use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{self, Write};

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// A PBW monomial `b_{s1} ... b_{sk} c_0^{e0} ... c_{n-1}^{e_{n-1}}` with
/// `s1 < ... < sk`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    bmask: u64,
    cexp: SmallVec<[u16; 16]>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { bmask: 0, cexp: SmallVec::from_elem(0, n) }
    }

    pub fn from_parts(n: usize, bmask: u64, cexp: &[u16]) -> Self {
        debug_assert!(cexp.len() == n);
        debug_assert!(n == 64 || bmask >> n == 0);
        Monomial { bmask, cexp: SmallVec::from_slice(cexp) }
    }

    pub fn b(n: usize, k: usize) -> Self {
        let mut m = Self::one(n);
        m.bmask = 1 << (k % n);
        m
    }

    pub fn c(n: usize, k: usize, e: u16) -> Self {
        let mut m = Self::one(n);
        m.cexp[k % n] = e;
        m
    }

    pub fn n(&self) -> usize {
        self.cexp.len()
    }

    pub fn bmask(&self) -> u64 {
        self.bmask
    }

    pub fn cexp(&self) -> &[u16] {
        &self.cexp
    }

    pub fn has_b(&self, k: usize) -> bool {
        self.bmask >> k & 1 == 1
    }

    pub fn b_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut m = self.bmask;
        core::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let k = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(k)
            }
        })
    }

    pub fn b_count(&self) -> u32 {
        self.bmask.count_ones()
    }

    pub fn c_degree(&self) -> u32 {
        self.cexp.iter().map(|&e| e as u32).sum()
    }

    pub fn degree(&self) -> u32 {
        self.b_count() + 2 * self.c_degree()
    }

    /// Sum of indices, `c_k` counting `k`, modulo `n`.
    pub fn weight(&self) -> usize {
        let n = self.n() as u64;
        let mut w = 0u64;
        for k in self.b_indices() {
            w += k as u64;
        }
        for (k, &e) in self.cexp.iter().enumerate() {
            w += k as u64 * e as u64;
        }
        (w % n) as usize
    }

    pub fn is_central(&self) -> bool {
        self.bmask == 0
    }

    pub(crate) fn set_bmask(&mut self, m: u64) {
        self.bmask = m;
    }

    pub(crate) fn bump_c(&mut self, k: usize, by: u16) {
        self.cexp[k] += by;
    }

    /// `true` when some `c_k` with `k` in the mask divides the monomial.
    pub fn touches(&self, phi: u64) -> bool {
        self.cexp.iter().enumerate().any(|(k, &e)| e > 0 && phi >> k & 1 == 1)
    }

    /// Multiplies the central parts.
    pub fn times_central(&self, other: &Monomial) -> Monomial {
        let mut m = self.clone();
        for (a, b) in m.cexp.iter_mut().zip(other.cexp.iter()) {
            *a += *b;
        }
        m
    }

    pub fn write_factors(&self, out: &mut String) {
        let mut first = true;
        let mut sep = |out: &mut String| {
            if !first {
                out.push('*');
            }
            first = false;
        };
        for (k, &e) in self.cexp.iter().enumerate() {
            if e == 0 {
                continue;
            }
            sep(out);
            let _ = write!(out, "c{k}");
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
        for k in self.b_indices() {
            sep(out);
            let _ = write!(out, "b{k}");
        }
        if first {
            out.push('1');
        }
    }

    pub fn b_list(&self) -> Vec<usize> {
        self.b_indices().collect()
    }
}

/// Lexicographic order of the increasing index lists of two masks.
fn cmp_blists(a: u64, b: u64) -> Ordering {
    let x = a ^ b;
    if x == 0 {
        return Ordering::Equal;
    }
    let t = x.trailing_zeros();
    let above = |m: u64| if t == 63 { 0 } else { m >> (t + 1) };
    if a >> t & 1 == 1 {
        // `a` continues with `t`; `b` with something larger or nothing.
        if above(b) == 0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else if above(a) == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

impl Ord for Monomial {
    /// Degree descending, then the `b` index list, then the `c` exponent vector.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| cmp_blists(self.bmask, other.bmask))
            .then_with(|| self.cexp.cmp(&other.cexp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_factors(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
