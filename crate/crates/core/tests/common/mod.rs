#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use uniloc_core::{FieldSpec, Mat, Quiver, Rep};

pub fn a(n: usize) -> Arc<Quiver> {
    Arc::new(Quiver::linear(n))
}

pub fn kron() -> Arc<Quiver> {
    Arc::new(Quiver::kronecker())
}

pub fn fp(p: u32) -> FieldSpec {
    FieldSpec::Prime(p)
}

pub fn rep(q: &Arc<Quiver>, p: u32, dims: &[usize], maps: &[&[i64]]) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(&(i, j), e)| Mat::from_ints(fp(p), dims[j], dims[i], e))
        .collect();
    Rep::new(q.clone(), fp(p), dims.to_vec(), maps).unwrap()
}

/// The regular simple `(k, k; 1, 0)` of the Kronecker quiver.
pub fn s0(p: u32) -> Rep {
    rep(&kron(), p, &[1, 1], &[&[1], &[0]])
}

/// The interval module on vertices 1 and 2 of `A_3`.
pub fn m12(p: u32) -> Rep {
    rep(&a(3), p, &[1, 1, 0], &[&[1], &[]])
}

pub fn simple(q: &Arc<Quiver>, p: u32, v: usize) -> Rep {
    Rep::simple(q, fp(p), v).unwrap()
}

pub fn proj(q: &Arc<Quiver>, p: u32, v: usize) -> Rep {
    Rep::projective(q, fp(p), v).unwrap()
}

/// Representations of `q` over `F_p` with every vertex of dimension at most
/// `max_dim` and uniformly random arrow matrices.
pub fn arb_rep(q: Arc<Quiver>, p: u32, max_dim: usize) -> impl Strategy<Value = Rep> {
    let n = q.vertex_count();
    prop::collection::vec(0..=max_dim, n).prop_flat_map(move |dims| {
        let q = q.clone();
        let sizes: Vec<usize> = q.arrows().iter().map(|&(i, j)| dims[i] * dims[j]).collect();
        let total: usize = sizes.iter().sum();
        prop::collection::vec(0..p as i64, total).prop_map(move |entries| {
            let mut off = 0;
            let maps = q
                .arrows()
                .iter()
                .zip(&sizes)
                .map(|(&(i, j), &sz)| {
                    let m = Mat::from_ints(fp(p), dims[j], dims[i], &entries[off..off + sz]);
                    off += sz;
                    m
                })
                .collect();
            Rep::new(q.clone(), fp(p), dims.clone(), maps).unwrap()
        })
    })
}
