//! Searches over elements of a Hom space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactlin::subspaces::projective_points;
use crate::exactlin::{FieldSpec, Scalar};
use crate::homcalc::HomSpace;
use crate::quiverrep::RepMorphism;

const SEED: u64 = 0x10ca_11e5;

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    Found(RepMorphism),
    /// Every element (up to scalars) was inspected.
    Exhausted,
    /// The budget ran out first.
    GaveUp,
}

/// Looks for a nonzero element of `homs` accepted by `accept`. Over `F_p`
/// the search visits one element per line, exhaustively when there are at
/// most `budget` lines and at random otherwise; over `Q` it tries the basis
/// and then random small-integer combinations.
pub fn search_homs(
    homs: &HomSpace,
    budget: usize,
    mut accept: impl FnMut(&RepMorphism) -> Result<bool>,
) -> Result<SearchOutcome> {
    let k = homs.dim();
    if k == 0 {
        return Ok(SearchOutcome::Exhausted);
    }
    for b in homs.basis() {
        if accept(b)? {
            return Ok(SearchOutcome::Found(b.clone()));
        }
    }
    let f = homs.source().field();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    match f {
        FieldSpec::Prime(p) => {
            let lines = ((p as u128).pow(k.min(64) as u32) - 1) / (p as u128 - 1);
            if k < 64 && lines <= budget as u128 {
                for coeffs in projective_points(f, k, budget.saturating_mul(p as usize))? {
                    let h = homs.element(&coeffs);
                    if accept(&h)? {
                        return Ok(SearchOutcome::Found(h));
                    }
                }
                return Ok(SearchOutcome::Exhausted);
            }
            for _ in 0..budget {
                let coeffs: Vec<Scalar> = (0..k).map(|_| Scalar::Mod(rng.random_range(0..p))).collect();
                let h = homs.element(&coeffs);
                if !h.is_zero() && accept(&h)? {
                    return Ok(SearchOutcome::Found(h));
                }
            }
            Ok(SearchOutcome::GaveUp)
        }
        FieldSpec::Rationals => {
            for _ in 0..budget.min(256) {
                let coeffs: Vec<Scalar> = (0..k).map(|_| f.from_i64(rng.random_range(-20..=20))).collect();
                let h = homs.element(&coeffs);
                if !h.is_zero() && accept(&h)? {
                    return Ok(SearchOutcome::Found(h));
                }
            }
            Ok(SearchOutcome::GaveUp)
        }
    }
}
