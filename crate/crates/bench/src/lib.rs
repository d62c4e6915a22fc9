//! Shared fixtures for the criterion benches.

use qdistill_core::sampling::{sample_pure, sample_state};
use qdistill_core::{DensityMatrix, TripartitePureState};

/// `(d_A, d_B, d_E)` triples in the low-rank regime, smallest first.
pub const LOW_RANK_DIMS: [(usize, usize, usize); 3] = [(2, 3, 2), (2, 4, 3), (3, 4, 2)];

/// Bipartite states of total dimension `d * d` with full rank.
pub fn full_rank_state(d: usize, seed: u64) -> DensityMatrix {
    sample_state(d, d, d * d, seed).expect("valid dimensions")
}

pub fn low_rank_state((da, db, de): (usize, usize, usize), seed: u64) -> DensityMatrix {
    sample_state(da, db, de, seed).expect("valid dimensions")
}

pub fn tripartite(dims: [usize; 3], seed: u64) -> TripartitePureState {
    sample_pure(dims[0], dims[1], dims[2], seed).expect("valid dimensions")
}
