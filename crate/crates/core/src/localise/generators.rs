//! Validation of Hom-perpendicular generator sets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, FiniteAlgebra, Mat, Scalar};
use crate::homcalc::{hom_space, is_bound, HomSpace};
use crate::quiverrep::{Quiver, Rep};

/// Why a candidate generator set was refused. Indices refer to the candidate list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    ZeroModule { index: usize },
    NotBound { index: usize },
    DuplicateIsoClass { first: usize, second: usize },
    NonzeroHom { from: usize, to: usize },
    NotDivision { index: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::ZeroModule { index } => write!(f, "candidate {index} is the zero module"),
            Rejection::NotBound { index } => {
                write!(f, "candidate {index} is not bound (it maps nonzero to a projective)")
            }
            Rejection::DuplicateIsoClass { first, second } => {
                write!(f, "candidates {first} and {second} are isomorphic")
            }
            Rejection::NonzeroHom { from, to } => write!(
                f,
                "nonzero non-invertible morphism from candidate {from} to candidate {to}"
            ),
            Rejection::NotDivision { index } => {
                write!(f, "endomorphism algebra of candidate {index} is not a division algebra")
            }
        }
    }
}

/// What was checked when a generator set was accepted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// `dim End(S_i)` for each generator.
    pub endomorphism_dims: Vec<usize>,
    /// Ordered pairs `(i, j)`, `i != j`, whose Hom space was verified zero.
    pub vanishing_pairs: usize,
}

/// A validated set of pairwise Hom-perpendicular bound modules with division
/// endomorphism algebras: the simple objects of the well-placed category they
/// generate under extensions.
#[derive(Clone, Debug)]
pub struct WellPlacedGen {
    quiver: Arc<Quiver>,
    field: FieldSpec,
    simples: Vec<Rep>,
    labels: Vec<String>,
    certificate: Certificate,
}

impl WellPlacedGen {
    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn simples(&self) -> &[Rep] {
        &self.simples
    }

    pub fn simple(&self, i: usize) -> &Rep {
        &self.simples[i]
    }

    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    /// The empty generator set: localising at it changes nothing.
    pub fn empty(quiver: &Arc<Quiver>, field: FieldSpec) -> Self {
        WellPlacedGen {
            quiver: quiver.clone(),
            field,
            simples: Vec::new(),
            labels: Vec::new(),
            certificate: Certificate {
                endomorphism_dims: Vec::new(),
                vanishing_pairs: 0,
            },
        }
    }
}

/// The algebra `End(m)` with composition as multiplication, on the basis of `end`.
pub(crate) fn endomorphism_algebra(end: &HomSpace) -> Result<FiniteAlgebra> {
    let f = end.source().field();
    let basis = end.basis();
    let mut table = Vec::with_capacity(basis.len());
    for x in basis {
        let mut row = Vec::with_capacity(basis.len());
        for y in basis {
            let prod = x.compose(y)?;
            row.push(end.coordinates(&prod).expect("End is closed under composition"));
        }
        table.push(row);
    }
    FiniteAlgebra::new(f, basis.len(), table)
}

/// Whether a finite-dimensional algebra over `F_p` with identity is a field.
///
/// A division algebra over a finite field is commutative, so it must be
/// semisimple and commutative; such an algebra is a product of fields, and the
/// Frobenius-fixed subalgebra `{x : x^p = x}` counts the factors.
fn is_finite_division(alg: &FiniteAlgebra) -> bool {
    let f = alg.field();
    let FieldSpec::Prime(p) = f else {
        unreachable!("only called over prime fields")
    };
    let n = alg.dim();
    if alg.radical_dim() != 0 || alg.center_dim() != n {
        return false;
    }
    // x -> x^p is F_p-linear on a commutative algebra of characteristic p
    let frob_cols: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let b = alg.basis_vector(i);
            let mut acc = b.clone();
            for _ in 1..p {
                acc = alg.mul(&acc, &b);
            }
            acc
        })
        .collect();
    let frob = Mat::from_fn(f, n, n, |r, c| frob_cols[c][r].clone());
    frob.sub(&Mat::identity(f, n)).kernel_basis().cols() == 1
}

fn is_division(m: &Rep) -> Result<(bool, usize)> {
    let end = hom_space(m, m)?;
    let k = end.dim();
    if k == 1 {
        return Ok((true, 1));
    }
    if !m.field().is_finite() {
        return Err(Error::UnsupportedField {
            op: "division-algebra check of a non-scalar endomorphism algebra",
        });
    }
    Ok((is_finite_division(&endomorphism_algebra(&end)?), k))
}

/// Validates a candidate generator set, naming the first failure found.
pub fn check_hom_perp_set(candidates: &[Rep]) -> Result<WellPlacedGen> {
    let labels = (0..candidates.len()).map(|i| format!("S{i}")).collect();
    check_hom_perp_set_labelled(candidates, labels)
}

pub fn check_hom_perp_set_labelled(candidates: &[Rep], labels: Vec<String>) -> Result<WellPlacedGen> {
    let Some(first) = candidates.first() else {
        return Err(Error::Precondition(
            "an empty generator set needs a quiver; use WellPlacedGen::empty".into(),
        ));
    };
    if labels.len() != candidates.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} labels for {} candidates",
            labels.len(),
            candidates.len()
        )));
    }
    for c in candidates {
        first.check_compatible(c)?;
    }
    let mut endomorphism_dims = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if c.is_zero() {
            return Err(Error::NotWellPlaced(Rejection::ZeroModule { index: i }));
        }
        if !is_bound(c)? {
            return Err(Error::NotWellPlaced(Rejection::NotBound { index: i }));
        }
        let (division, k) = is_division(c)?;
        if !division {
            return Err(Error::NotWellPlaced(Rejection::NotDivision { index: i }));
        }
        endomorphism_dims.push(k);
    }
    let mut vanishing_pairs = 0;
    for i in 0..candidates.len() {
        for j in 0..candidates.len() {
            if i == j {
                continue;
            }
            let h = hom_space(&candidates[i], &candidates[j])?;
            if h.is_zero() {
                vanishing_pairs += 1;
                continue;
            }
            // both sides have division endomorphism algebras, so a nonzero
            // morphism between isomorphic ones shows up as an invertible basis element
            if h.basis().iter().any(|b| b.is_isomorphism()) {
                return Err(Error::NotWellPlaced(Rejection::DuplicateIsoClass {
                    first: i.min(j),
                    second: i.max(j),
                }));
            }
            return Err(Error::NotWellPlaced(Rejection::NonzeroHom { from: i, to: j }));
        }
    }
    Ok(WellPlacedGen {
        quiver: first.quiver().clone(),
        field: first.field(),
        simples: candidates.to_vec(),
        labels,
        certificate: Certificate {
            endomorphism_dims,
            vanishing_pairs,
        },
    })
}
