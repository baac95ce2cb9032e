//! Exhaustive enumeration of subrepresentations and of small representations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::subspaces::{all_subspaces, all_vectors};
use crate::exactlin::{FieldSpec, Mat};
use crate::quiverrep::decompose::{is_indecomposable, is_isomorphic, IsoVerdict};
use crate::quiverrep::{Quiver, Rep, RepMorphism};

/// Every subrepresentation of `m` (as distinct families of vertex subspaces),
/// each with its inclusion. Includes `0` and `m`.
///
/// Vertices are visited in topological order; at each vertex the subspace must
/// contain the images of the subspaces already chosen at its predecessors.
pub fn submodule_enumerate(m: &Rep, budget: usize) -> Result<Vec<(Rep, RepMorphism)>> {
    if !m.field().is_finite() {
        return Err(Error::UnsupportedField {
            op: "submodule enumeration",
        });
    }
    let q = m.quiver().clone();
    let order = q.topological_order().to_vec();
    let mut chosen: Vec<Option<Mat>> = vec![None; q.vertex_count()];
    let mut out = Vec::new();
    walk(m, &order, 0, &mut chosen, &mut out, budget)?;
    Ok(out)
}

fn walk(
    m: &Rep,
    order: &[usize],
    depth: usize,
    chosen: &mut Vec<Option<Mat>>,
    out: &mut Vec<(Rep, RepMorphism)>,
    budget: usize,
) -> Result<()> {
    let f = m.field();
    if depth == order.len() {
        if out.len() >= budget {
            return Err(Error::BudgetExceeded {
                op: "submodule enumeration",
                budget,
            });
        }
        let bases: Vec<Mat> = chosen.iter().map(|b| b.clone().expect("all vertices chosen")).collect();
        out.push(m.subrepresentation(&bases)?);
        return Ok(());
    }
    let v = order[depth];
    let q = m.quiver();
    let images: Vec<Mat> = q
        .arrows_into(v)
        .map(|a| {
            let (s, _) = q.arrow(a);
            m.map(a).mul(chosen[s].as_ref().expect("predecessor chosen"))
        })
        .collect();
    let forced = Mat::hconcat(f, m.dim(v), &images).column_space_basis();
    let quot = forced.quotient();
    let free = quot.section.cols();
    let remaining = budget.saturating_sub(out.len()).max(1);
    for sub in all_subspaces(f, free, remaining)? {
        chosen[v] = Some(forced.hstack(&quot.section.mul(&sub)));
        walk(m, order, depth + 1, chosen, out, budget)?;
    }
    chosen[v] = None;
    Ok(())
}

/// Every dimension vector `d` with `0 <= d <= cap` other than zero, in
/// lexicographic order.
pub fn dimension_vectors_up_to(cap: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; cap.len()];
    loop {
        if cur.iter().any(|&x| x > 0) {
            out.push(cur.clone());
        }
        let mut i = cap.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < cap[i] {
                cur[i] += 1;
                for x in cur.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                break;
            }
        }
    }
}

/// Every representation with the given dimension vector, by enumerating all
/// arrow matrices.
pub fn all_reps_with_dims(q: &Arc<Quiver>, field: FieldSpec, dims: &[usize], budget: usize) -> Result<Vec<Rep>> {
    let sizes: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (dims[t], dims[s])).collect();
    let total: usize = sizes.iter().map(|(r, c)| r * c).sum();
    let mut out = Vec::new();
    for v in all_vectors(field, total, budget)? {
        let mut off = 0;
        let maps = sizes
            .iter()
            .map(|&(r, c)| {
                let m = Mat::unvectorize(field, r, c, &v[off..off + r * c]);
                off += r * c;
                m
            })
            .collect();
        out.push(Rep::new(q.clone(), field, dims.to_vec(), maps)?);
    }
    Ok(out)
}

/// Representatives of the isomorphism classes of indecomposables with
/// dimension vector at most `cap` that satisfy `keep`. `keep` runs before the
/// (more expensive) indecomposability test.
pub fn indecomposables_up_to(
    q: &Arc<Quiver>,
    field: FieldSpec,
    cap: &[usize],
    budget: usize,
    mut keep: impl FnMut(&Rep) -> Result<bool>,
) -> Result<Vec<Rep>> {
    if !field.is_finite() {
        return Err(Error::UnsupportedField {
            op: "indecomposable enumeration",
        });
    }
    if cap.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "bound {:?} on a quiver with {} vertices",
            cap,
            q.vertex_count()
        )));
    }
    let mut found: Vec<Rep> = Vec::new();
    for dims in dimension_vectors_up_to(cap) {
        for rep in all_reps_with_dims(q, field, &dims, budget)? {
            if !keep(&rep)? {
                continue;
            }
            match is_indecomposable(&rep, budget)? {
                Some(true) => {}
                Some(false) => continue,
                None => {
                    return Err(Error::BudgetExceeded {
                        op: "indecomposable enumeration",
                        budget,
                    })
                }
            }
            let mut duplicate = false;
            for other in found.iter().filter(|o| o.dims() == rep.dims()) {
                match is_isomorphic(&rep, other, budget)? {
                    IsoVerdict::Iso(_) => {
                        duplicate = true;
                        break;
                    }
                    IsoVerdict::NotIso => {}
                    IsoVerdict::Inconclusive => {
                        return Err(Error::BudgetExceeded {
                            op: "indecomposable enumeration",
                            budget,
                        })
                    }
                }
            }
            if !duplicate {
                found.push(rep);
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::Prime(2)
    }

    #[test]
    fn submodules_of_small_reps() {
        let a2 = Arc::new(Quiver::linear(2));
        assert_eq!(submodule_enumerate(&Rep::zero(&a2, f2()), 10).unwrap().len(), 1);
        let s1 = Rep::simple(&a2, f2(), 0).unwrap();
        let subs = submodule_enumerate(&s1, 10).unwrap();
        assert_eq!(subs.len(), 2);
        assert!(subs[0].0.is_zero());
        assert_eq!(subs[1].0, s1);
    }

    #[test]
    fn kronecker_s0_has_one_proper_submodule() {
        let k = Arc::new(Quiver::kronecker());
        let s0 = Rep::new(
            k,
            f2(),
            vec![1, 1],
            vec![Mat::from_ints(f2(), 1, 1, &[1]), Mat::from_ints(f2(), 1, 1, &[0])],
        )
        .unwrap();
        let subs = submodule_enumerate(&s0, 10).unwrap();
        let dims: Vec<Vec<usize>> = subs.iter().map(|(r, _)| r.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn submodule_count_matches_brute_force() {
        // oracle: every pair of subspaces closed under the arrow
        let a2 = Arc::new(Quiver::linear(2));
        for m in all_reps_with_dims(&a2, f2(), &[2, 2], 100).unwrap() {
            let subs = submodule_enumerate(&m, 1000).unwrap();
            let mut count = 0;
            for u in all_subspaces(f2(), 2, 100).unwrap() {
                for w in all_subspaces(f2(), 2, 100).unwrap() {
                    if w.span_contains(&m.map(0).mul(&u)) {
                        count += 1;
                    }
                }
            }
            assert_eq!(subs.len(), count);
        }
    }

    #[test]
    fn budget_error() {
        let a2 = Arc::new(Quiver::linear(2));
        let p = Rep::projective(&a2, f2(), 0).unwrap().power(2).unwrap();
        assert!(matches!(submodule_enumerate(&p, 3), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn indecomposables_of_a2_and_a3() {
        let a2 = Arc::new(Quiver::linear(2));
        let ind = indecomposables_up_to(&a2, f2(), &[2, 2], 10_000, |_| Ok(true)).unwrap();
        assert_eq!(ind.len(), 3);
        let a3 = Arc::new(Quiver::linear(3));
        let ind = indecomposables_up_to(&a3, f2(), &[1, 1, 1], 10_000, |_| Ok(true)).unwrap();
        assert_eq!(ind.len(), 6);
    }

    #[test]
    fn dimension_vector_listing() {
        assert_eq!(
            dimension_vectors_up_to(&[1, 1]),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }
}
