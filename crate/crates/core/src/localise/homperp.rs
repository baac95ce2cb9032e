//! The Hom-perpendicular category of the generators and the descent into it.

use crate::error::{Error, Result};
use crate::exactlin::subspaces::projective_points;
use crate::homcalc::{hom_space, is_bound, HomSpace};
use crate::localise::WellPlacedGen;
use crate::quiverrep::{kernel, Rep, RepMorphism};

/// Bound, with no nonzero maps to or from any generator.
pub fn homperp_membership(x: &Rep, s: &WellPlacedGen) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if !is_bound(x)? {
        return Ok(false);
    }
    for si in s.simples() {
        if !hom_space(x, si)?.is_zero() || !hom_space(si, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReductionStatus {
    /// Every nonzero map to a generator met on the way down was onto.
    BoundCompatible,
    /// A nonzero map to generator `simple` was not onto: the localisation of
    /// the input has a nonzero projective summand, so it is not bound.
    ProjectiveSummandDetected { simple: usize },
}

#[derive(Clone, Debug)]
pub struct HomperpReduction {
    /// `M'`, with its inclusion into the input.
    pub sub: Rep,
    pub inclusion: RepMorphism,
    /// Composition series of `m/M'`, bottom first.
    pub series: Vec<usize>,
    pub status: ReductionStatus,
    /// A generator mapping nonzero into the input, which violates the
    /// torsion-free precondition.
    pub incoming_hom: Option<usize>,
}

/// Whether every nonzero element of `homs` is onto. Returns a surjective
/// element when there is one and all are.
fn all_onto(homs: &HomSpace, budget: usize) -> Result<(bool, RepMorphism)> {
    let first = homs.basis()[0].clone();
    if !first.is_surjective() {
        return Ok((false, first));
    }
    if homs.dim() == 1 {
        return Ok((true, first));
    }
    let f = homs.source().field();
    if !f.is_finite() {
        return Err(Error::UnsupportedField {
            op: "surjectivity of every map to a generator",
        });
    }
    for coeffs in projective_points(f, homs.dim(), budget)? {
        let g = homs.element(&coeffs);
        if !g.is_surjective() {
            return Ok((false, g));
        }
    }
    Ok((true, first))
}

/// Passes to kernels of surjections onto generators until no generator
/// receives a nonzero map. The quotient `m/M'` is then in the well-placed
/// category and, in the bound-compatible case, `M'` has no outgoing maps to
/// generators. The descent stops at the first non-surjective map instead.
pub fn reduce_to_homperp(m: &Rep, s: &WellPlacedGen, budget: usize) -> Result<HomperpReduction> {
    let mut incoming_hom = None;
    for (i, si) in s.simples().iter().enumerate() {
        if !hom_space(si, m)?.is_zero() {
            incoming_hom = Some(i);
            break;
        }
    }
    let mut inclusion = RepMorphism::identity(m);
    let mut series = Vec::new();
    let mut status = ReductionStatus::BoundCompatible;
    'descend: loop {
        let cur = inclusion.source().clone();
        for (i, si) in s.simples().iter().enumerate() {
            let homs = hom_space(&cur, si)?;
            if homs.is_zero() {
                continue;
            }
            let (onto, g) = all_onto(&homs, budget)?;
            if !onto {
                status = ReductionStatus::ProjectiveSummandDetected { simple: i };
                break 'descend;
            }
            let (_, k) = kernel(&g)?;
            inclusion = inclusion.compose(&k)?;
            series.push(i);
            continue 'descend;
        }
        break;
    }
    series.reverse();
    Ok(HomperpReduction {
        sub: inclusion.source().clone(),
        inclusion,
        series,
        status,
        incoming_hom,
    })
}
