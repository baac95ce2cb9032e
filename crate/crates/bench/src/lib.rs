//! Seeded inputs for the benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniloc_core::{FieldSpec, Mat, Quiver, Rep, WellPlacedGen};

pub fn random_mat(field: FieldSpec, rows: usize, cols: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.random_range(-9..=9)).collect();
    Mat::from_ints(field, rows, cols, &entries)
}

/// A representation with the given dimension vector and random maps.
pub fn random_rep(q: &Arc<Quiver>, field: FieldSpec, dims: &[usize], seed: u64) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| random_mat(field, dims[j], dims[i], seed * 31 + a as u64))
        .collect();
    Rep::new(q.clone(), field, dims.to_vec(), maps).expect("dimensions match the quiver")
}

/// The Kronecker quiver localized at the regular simple `(k, k; 1, 0)`.
pub fn kronecker_regular(field: FieldSpec) -> WellPlacedGen {
    let q = Arc::new(Quiver::kronecker());
    let s0 = Rep::new(
        q.clone(),
        field,
        vec![1, 1],
        vec![Mat::from_ints(field, 1, 1, &[1]), Mat::from_ints(field, 1, 1, &[0])],
    )
    .expect("valid representation");
    uniloc_core::localise::check_hom_perp_set(&[s0]).expect("a bound brick")
}

/// `A_n` localized at the simple at vertex `v`.
pub fn linear_simple(n: usize, v: usize, field: FieldSpec) -> WellPlacedGen {
    let q = Arc::new(Quiver::linear(n));
    let s = Rep::simple(&q, field, v).expect("vertex in range");
    uniloc_core::localise::check_hom_perp_set(&[s]).expect("a non-sink simple is bound")
}
