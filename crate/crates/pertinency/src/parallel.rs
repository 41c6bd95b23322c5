use std::collections::BTreeMap;
use std::sync::{Arc, RwLock};

use pertinency_core::ideal::echelon::Block;
use pertinency_core::ideal::{BlockRunner, BlockTask, EchelonBasis};
use pertinency_core::number_theory::{AdmissibilityVerdict, VerdictStore};
use rayon::prelude::*;

/// Computes the blocks of a degree on the current rayon pool. Output order
/// follows the task order, so results match the sequential runner.
pub struct RayonRunner;

impl BlockRunner for RayonRunner {
    fn run(&self, basis: &EchelonBasis, tasks: Vec<BlockTask>) -> Vec<Block> {
        tasks.into_par_iter().map(|t| basis.compute_block(t)).collect()
    }
}

/// Verdict memo shared between threads.
#[derive(Default)]
pub struct SharedStore(RwLock<BTreeMap<u64, Arc<AdmissibilityVerdict>>>);

impl VerdictStore for SharedStore {
    fn get(&self, n: u64) -> Option<Arc<AdmissibilityVerdict>> {
        self.0.read().expect("verdict store poisoned").get(&n).cloned()
    }

    fn put(&self, v: Arc<AdmissibilityVerdict>) {
        self.0.write().expect("verdict store poisoned").insert(v.n, v);
    }
}
