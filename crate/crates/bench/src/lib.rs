//! Inputs shared by the benchmarks.

use cross5_core::corpus::{candidate, CorpusSpec};
use cross5_core::graph::Graph;

/// The first `count` corpus candidates for `seed`, without filtering.
pub fn candidates(seed: u64, count: u64, n_max: usize) -> Vec<Graph> {
    let spec = CorpusSpec::new(seed, count as usize, n_max, 3);
    (0..count).map(|i| candidate(&spec, i)).collect()
}
