//! The localized algebra as the opposite endomorphism algebra of the
//! localized regular module.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, FiniteAlgebra, Mat, Scalar};
use crate::homcalc::{hom_space, is_bound, HomSpace};
use crate::localise::{endomorphism_algebra, localize, WellPlacedGen};
use crate::quiverrep::{
    decompose, direct_sum, indecomposables_up_to, is_isomorphic, DirectSum, IsoVerdict, Quiver, Rep,
};

/// `R_E = End(Y)^op` where `Y` is the sum of the stabilized localisations of
/// the indecomposable projectives.
#[derive(Clone, Debug)]
pub struct LocalizedAlgebra {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    /// The localisation of `P_v`, per vertex.
    pub values: Vec<Rep>,
    pub sum: DirectSum,
    /// A basis of `End(Y)`; basis element `i` of `algebra` is `basis[i]`.
    basis: HomSpace,
    /// Structure constants: `b_i * b_j = b_j ∘ b_i`.
    pub algebra: FiniteAlgebra,
    /// `e_v = ι_v π_v`, in coordinates.
    pub idempotents: Vec<Vec<Scalar>>,
    /// `hom_dims[v][w] = dim Hom(Y_v, Y_w)`.
    pub hom_dims: Vec<Vec<usize>>,
}

/// Builds the localized algebra. Fails with a non-stabilization report naming
/// the first vertex whose projective does not localize within `max_steps`.
pub fn localized_algebra(s: &WellPlacedGen, max_steps: usize) -> Result<LocalizedAlgebra> {
    let q = s.quiver().clone();
    let f = s.field();
    let mut values = Vec::new();
    for v in 0..q.vertex_count() {
        let p = Rep::projective(&q, f, v)?;
        let chain = localize(&p, s, max_steps)?;
        if !chain.stabilized {
            return Err(Error::NonStabilizing {
                what: format!("vertex {}", q.vertex_label(v)),
                steps: chain.steps.len(),
            });
        }
        values.push(chain.value().clone());
    }
    let sum = direct_sum(&q, f, &values)?;
    let basis = hom_space(&sum.rep, &sum.rep)?;
    let forward = endomorphism_algebra(&basis)?;
    let n = forward.dim();
    let table = (0..n)
        .map(|i| (0..n).map(|j| forward.structure_constants()[j][i].clone()).collect())
        .collect();
    let algebra = FiniteAlgebra::new(f, n, table)?;
    let mut idempotents = Vec::new();
    for (inj, proj) in sum.injections.iter().zip(&sum.projections) {
        let e = inj.compose(proj)?;
        idempotents.push(basis.coordinates(&e).expect("idempotent is an endomorphism"));
    }
    let mut hom_dims = Vec::new();
    for a in &values {
        let mut row = Vec::new();
        for b in &values {
            row.push(hom_space(a, b)?.dim());
        }
        hom_dims.push(row);
    }
    Ok(LocalizedAlgebra {
        quiver: q,
        field: f,
        values,
        sum,
        basis,
        algebra,
        idempotents,
        hom_dims,
    })
}

/// The Gabriel quiver of the basic algebra Morita equivalent to `R_E`, with
/// a representative `Y_k` of each indecomposable projective.
#[derive(Clone, Debug)]
pub struct GabrielQuiver {
    pub quiver: Arc<Quiver>,
    pub projectives: Vec<Rep>,
}

impl LocalizedAlgebra {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn radical_dim(&self) -> usize {
        self.algebra.radical_dim()
    }

    pub fn center_dim(&self) -> usize {
        self.algebra.center_dim()
    }

    pub fn is_associative(&self) -> bool {
        self.algebra.is_associative()
    }

    /// The identity exists and equals the sum of the vertex idempotents,
    /// which are pairwise orthogonal.
    pub fn is_unital(&self) -> bool {
        let f = self.field;
        let Some(one) = self.algebra.identity() else {
            return false;
        };
        let total = self.idempotents.iter().fold(vec![f.zero(); self.dim()], |acc, e| {
            acc.iter().zip(e).map(|(a, b)| f.add(a, b)).collect()
        });
        let zero = vec![f.zero(); self.dim()];
        let orthogonal = self.idempotents.iter().enumerate().all(|(i, ei)| {
            self.idempotents.iter().enumerate().all(|(j, ej)| {
                let prod = self.algebra.mul(ei, ej);
                if i == j {
                    prod == *ei
                } else {
                    prod == zero
                }
            })
        });
        total == one && orthogonal
    }

    /// The element of `R_E` with the given coordinates, as an endomorphism of `Y`.
    pub fn basis(&self) -> &HomSpace {
        &self.basis
    }

    /// Gabriel quiver of the basic version of `R_E`. Requires a prime field,
    /// split endomorphism rings, and that `R_E` be hereditary (the path
    /// algebra of the quiver has the dimension of the basic algebra); anything
    /// else is reported as a precondition failure.
    #[allow(clippy::needless_range_loop)]
    pub fn gabriel_quiver(&self, budget: usize) -> Result<GabrielQuiver> {
        let mut reps: Vec<Rep> = Vec::new();
        let mut labels: Vec<String> = Vec::new();
        for (v, value) in self.values.iter().enumerate() {
            let dec = decompose(value, budget)?;
            if !dec.certified {
                return Err(Error::BudgetExceeded {
                    op: "decomposition of a localized projective",
                    budget,
                });
            }
            for (k, y) in dec.reps().into_iter().enumerate() {
                let mut seen = false;
                for other in &reps {
                    match is_isomorphic(&y, other, budget)? {
                        IsoVerdict::Iso(_) => {
                            seen = true;
                            break;
                        }
                        IsoVerdict::NotIso => {}
                        IsoVerdict::Inconclusive => {
                            return Err(Error::BudgetExceeded {
                                op: "isomorphism of localized projectives",
                                budget,
                            })
                        }
                    }
                }
                if !seen {
                    let base = self.quiver.vertex_label(v);
                    labels.push(if k == 0 {
                        base.to_string()
                    } else {
                        format!("{base}.{k}")
                    });
                    reps.push(y);
                }
            }
        }
        let n = reps.len();
        let mut homs: Vec<Vec<HomSpace>> = Vec::new();
        for a in &reps {
            let mut row = Vec::new();
            for b in &reps {
                row.push(hom_space(a, b)?);
            }
            homs.push(row);
        }
        // rad(Y_k, Y_l) as a coordinate basis of Hom(Y_k, Y_l)
        let mut rad: Vec<Vec<Vec<Vec<Scalar>>>> = Vec::new();
        for k in 0..n {
            let mut row = Vec::new();
            for l in 0..n {
                let h = &homs[k][l];
                let vecs = if k == l {
                    let end = endomorphism_algebra(h)?;
                    let r = end.radical_basis();
                    if h.dim() - r.cols() != 1 {
                        return Err(Error::Precondition(format!(
                            "localized projective {} has a non-split endomorphism ring",
                            labels[k]
                        )));
                    }
                    (0..r.cols()).map(|c| r.col(c)).collect()
                } else {
                    (0..h.dim())
                        .map(|i| {
                            (0..h.dim())
                                .map(|j| if i == j { self.field.one() } else { self.field.zero() })
                                .collect()
                        })
                        .collect()
                };
                row.push(vecs);
            }
            rad.push(row);
        }
        let mut arrows = Vec::new();
        let mut arrow_labels = Vec::new();
        for k in 0..n {
            for l in 0..n {
                let target = &homs[k][l];
                let mut products: Vec<Vec<Scalar>> = Vec::new();
                for mid in 0..n {
                    for fc in &rad[k][mid] {
                        let fm = homs[k][mid].element(fc);
                        for gc in &rad[mid][l] {
                            let gm = homs[mid][l].element(gc);
                            products.push(target.coordinates(&gm.compose(&fm)?).expect("composite lies in Hom"));
                        }
                    }
                }
                let rad2 = Mat::from_fn(self.field, target.dim(), products.len(), |r, c| products[c][r].clone()).rank();
                let irreducible = rad[k][l].len() - rad2;
                for i in 0..irreducible {
                    arrows.push((l, k));
                    arrow_labels.push(format!(
                        "{}{}{}",
                        labels[l],
                        labels[k],
                        if irreducible > 1 {
                            format!("_{i}")
                        } else {
                            String::new()
                        }
                    ));
                }
            }
        }
        let gq = Quiver::with_labels(labels, arrows, arrow_labels)?;
        let basic_dim: usize = homs.iter().flatten().map(|h| h.dim()).sum();
        if gq.path_algebra_dim() != basic_dim {
            return Err(Error::Precondition(format!(
                "localized algebra has relations (path algebra dimension {} against {basic_dim})",
                gq.path_algebra_dim()
            )));
        }
        Ok(GabrielQuiver {
            quiver: Arc::new(gq),
            projectives: reps,
        })
    }

    /// Isomorphism classes of bound indecomposable modules over the localized
    /// algebra with dimension vector at most `cap` on its Gabriel quiver.
    pub fn bound_indecomposables(&self, cap: &[usize], budget: usize) -> Result<Vec<Rep>> {
        let gq = self.gabriel_quiver(budget)?;
        indecomposables_up_to(&gq.quiver, self.field, cap, budget, is_bound)
    }
}
