use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::arith::gcd;

pub const MAX_N: usize = 64;

/// The ring `A/(c_k : k ∈ Φ)` for a fixed `n`. `Φ = ∅` is the ring itself.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "ContextRepr", try_from = "ContextRepr")]
pub struct Context {
    n: u8,
    phi: u64,
}

#[derive(Serialize, Deserialize)]
struct ContextRepr {
    n: usize,
    phi: Vec<usize>,
}

impl From<Context> for ContextRepr {
    fn from(c: Context) -> Self {
        ContextRepr { n: c.n(), phi: c.phi() }
    }
}

impl TryFrom<ContextRepr> for Context {
    type Error = Error;

    fn try_from(r: ContextRepr) -> Result<Self> {
        Context::new(r.n, r.phi)
    }
}

impl Context {
    pub fn new(n: usize, phi: impl IntoIterator<Item = usize>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::Context(format!("n = {n} outside 1..={MAX_N}")));
        }
        let mut mask = 0u64;
        for k in phi {
            if k >= n {
                return Err(Error::Context(format!("residue {k} outside 0..{n}")));
            }
            mask |= 1 << k;
        }
        Ok(Context { n: n as u8, phi: mask })
    }

    /// The ring with no quotient.
    pub fn free(n: usize) -> Result<Self> {
        Self::new(n, [])
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn phi_mask(&self) -> u64 {
        self.phi
    }

    pub fn in_phi(&self, k: usize) -> bool {
        self.phi >> (k % self.n()) & 1 == 1
    }

    pub fn phi(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.in_phi(k)).collect()
    }

    /// Number of central generators that survive the quotient.
    pub fn free_c_count(&self) -> usize {
        self.n() - self.phi.count_ones() as usize
    }

    /// `Φ` is stable under multiplication by units.
    pub fn is_special(&self) -> bool {
        let n = self.n();
        (1..n)
            .filter(|&l| gcd(l as u64, n as u64) == 1)
            .all(|l| (0..n).all(|k| self.in_phi(k) == self.in_phi(k * l % n)))
    }

    pub fn with_phi(&self, phi: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(self.n(), phi)
    }

    pub(crate) fn ensure_same(&self, other: &Context) -> Result<()> {
        if self != other {
            return Err(Error::Context(format!("context mismatch: {self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} phi={{", self.n)?;
        for (idx, k) in self.phi().into_iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
