//! Bounds on the pertinency from the number theory alone.

use serde::{Deserialize, Serialize};

use super::admissible::{admissible_with, LocalStore, Verdict, VerdictStore};
use super::sets::phi2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PertinencyBounds {
    pub n: u64,
    pub lower: u64,
    pub upper: u64,
    pub phi2_lower: u64,
    pub verdict: Verdict,
}

impl PertinencyBounds {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

pub fn pertinency_bounds(n: u64) -> PertinencyBounds {
    pertinency_bounds_with(n, &LocalStore::default())
}

pub fn pertinency_bounds_with(n: u64, store: &dyn VerdictStore) -> PertinencyBounds {
    let phi2_lower = phi2(n).len() as u64;
    let verdict = admissible_with(n, store).verdict;
    let lower = if verdict == Verdict::Admissible { n } else { phi2_lower };
    let upper = if n.is_multiple_of(3) || n.is_multiple_of(5) { n - 1 } else { n };
    PertinencyBounds { n, lower, upper, phi2_lower, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_is_an_interval() {
        let b = pertinency_bounds(12);
        assert_eq!((b.lower, b.upper), (8, 11));
        assert!(pertinency_bounds(14).is_exact());
    }
}
