//! Deciding `M ⊗ R_E ≅ N ⊗ R_E` through a common overmodule.

use crate::error::Result;
use crate::homcalc::hom_space;
use crate::localise::{filt_membership, localize, search_homs, LocalizationChain, SearchOutcome, WellPlacedGen};
use crate::quiverrep::{cokernel, is_isomorphic, IsoVerdict, Rep, RepMorphism, ShortExactSeq};

/// A module `L` containing the torsion-free parts of both inputs with
/// quotients in the well-placed category.
#[derive(Clone, Debug)]
pub struct CommonOvermodule {
    pub common: Rep,
    /// `0 -> M/t(M) -> L -> E -> 0`.
    pub from_m: ShortExactSeq,
    /// `0 -> N/t(N) -> L -> F -> 0`.
    pub from_n: ShortExactSeq,
    /// Composition series of `E` and `F`.
    pub series_m: Vec<usize>,
    pub series_n: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum InducedIso {
    Iso(Box<CommonOvermodule>),
    NotIso,
    Inconclusive,
}

impl InducedIso {
    pub fn is_iso(&self) -> bool {
        matches!(self, InducedIso::Iso(_))
    }
}

fn witness(into_m: RepMorphism, into_n: RepMorphism, s: &WellPlacedGen) -> Result<Option<CommonOvermodule>> {
    let (_, pm) = cokernel(&into_m)?;
    let (_, pn) = cokernel(&into_n)?;
    let from_m = ShortExactSeq::new(into_m, pm)?;
    let from_n = ShortExactSeq::new(into_n, pn)?;
    let (Some(series_m), Some(series_n)) = (
        filt_membership(from_m.quotient(), s)?,
        filt_membership(from_n.quotient(), s)?,
    ) else {
        return Ok(None);
    };
    Ok(Some(CommonOvermodule {
        common: from_m.middle().clone(),
        from_m,
        from_n,
        series_m,
        series_n,
    }))
}

fn compare_values(
    cm: &LocalizationChain,
    cn: &LocalizationChain,
    s: &WellPlacedGen,
    budget: usize,
) -> Result<InducedIso> {
    match is_isomorphic(cn.value(), cm.value(), budget)? {
        IsoVerdict::Iso(phi) => {
            let into_m = cm.inclusion_into_value()?;
            let into_n = phi.compose(&cn.inclusion_into_value()?)?;
            Ok(match witness(into_m, into_n, s)? {
                Some(w) => InducedIso::Iso(Box::new(w)),
                None => InducedIso::Inconclusive,
            })
        }
        IsoVerdict::NotIso => Ok(InducedIso::NotIso),
        IsoVerdict::Inconclusive => Ok(InducedIso::Inconclusive),
    }
}

/// Grows `open` until it stabilizes or outgrows `done`'s value. Every term of
/// a chain embeds in the localisation, so outgrowing proves non-isomorphism.
fn chase(open: &mut LocalizationChain, bound: usize, s: &WellPlacedGen) -> Result<bool> {
    while !open.stabilized && open.value().total_dim() <= bound {
        let before = open.value().total_dim();
        open.extend(s, 1)?;
        if !open.stabilized && open.value().total_dim() == before {
            return Ok(false);
        }
    }
    Ok(open.stabilized)
}

/// Looks for an embedding of `src` into `dst` whose cokernel lies in the
/// well-placed category.
fn embed_with_trivial_cokernel(src: &Rep, dst: &Rep, s: &WellPlacedGen, budget: usize) -> Result<Option<RepMorphism>> {
    if !src.fits_in(dst.dims()) {
        return Ok(None);
    }
    let homs = hom_space(src, dst)?;
    if src.is_zero() {
        let zero = RepMorphism::zero(src, dst);
        return Ok(filt_membership(dst, s)?.map(|_| zero));
    }
    let out = search_homs(&homs, budget, |h| {
        Ok(h.is_injective() && filt_membership(&cokernel(h)?.0, s)?.is_some())
    })?;
    Ok(match out {
        SearchOutcome::Found(h) => Some(h),
        _ => None,
    })
}

/// Decides whether `m` and `n` induce isomorphic modules over the
/// localisation, returning a common overmodule as witness.
///
/// Both chains are run for `max_steps`. When both stabilize their values are
/// compared directly. When only one does, the other is extended until it
/// stabilizes or outgrows it, which is decisive. Otherwise the chains are
/// searched level by level for an embedding of one torsion-free part into a
/// term of the other chain with cokernel in the category.
pub fn induced_iso_test(m: &Rep, n: &Rep, s: &WellPlacedGen, max_steps: usize, budget: usize) -> Result<InducedIso> {
    m.check_compatible(n)?;
    let mut cm = localize(m, s, max_steps)?;
    let mut cn = localize(n, s, max_steps)?;
    if let IsoVerdict::Iso(phi) = is_isomorphic(&cn.base, &cm.base, budget)? {
        let into_m = RepMorphism::identity(&cm.base);
        if let Some(w) = witness(into_m, phi, s)? {
            return Ok(InducedIso::Iso(Box::new(w)));
        }
    }
    match (cm.stabilized, cn.stabilized) {
        (true, true) => compare_values(&cm, &cn, s, budget),
        (true, false) => {
            if chase(&mut cn, cm.value().total_dim(), s)? {
                compare_values(&cm, &cn, s, budget)
            } else {
                Ok(InducedIso::NotIso)
            }
        }
        (false, true) => {
            if chase(&mut cm, cn.value().total_dim(), s)? {
                compare_values(&cm, &cn, s, budget)
            } else {
                Ok(InducedIso::NotIso)
            }
        }
        (false, false) => {
            let levels = cm.steps.len().max(cn.steps.len());
            for level in 0..=levels {
                if level <= cm.steps.len() {
                    let term = cm.terms()[level].clone();
                    if let Some(h) = embed_with_trivial_cokernel(&cn.base, &term, s, budget)? {
                        if let Some(w) = witness(cm.inclusion_into_term(level)?, h, s)? {
                            return Ok(InducedIso::Iso(Box::new(w)));
                        }
                    }
                }
                if level <= cn.steps.len() {
                    let term = cn.terms()[level].clone();
                    if let Some(h) = embed_with_trivial_cokernel(&cm.base, &term, s, budget)? {
                        if let Some(w) = witness(h, cn.inclusion_into_term(level)?, s)? {
                            return Ok(InducedIso::Iso(Box::new(w)));
                        }
                    }
                }
            }
            Ok(InducedIso::Inconclusive)
        }
    }
}
