//! Torsion submodules and membership in the extension closure of the generators.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactlin::subspaces::projective_points;
use crate::exactlin::{FieldSpec, Mat};
use crate::homcalc::{difference_map, hom_space};
use crate::localise::WellPlacedGen;
use crate::quiverrep::{direct_sum, image, kernel, lift_through_mono, Rep, RepMorphism, ShortExactSeq};

/// One layer `T_k ⊂ T_{k+1}` of the trace filtration of `m`, where
/// `T_{k+1}/T_k` is the sum of the images of all maps from generators into
/// `m/T_k`.
#[derive(Clone, Debug)]
pub struct TraceStep {
    /// `T_{k+1}` with its inclusion into `m`.
    pub sub: Rep,
    pub inclusion: RepMorphism,
    /// `0 -> T_k -> T_{k+1} -> T_{k+1}/T_k -> 0`.
    pub seq: ShortExactSeq,
    /// A surjection from a direct sum of generators onto `T_{k+1}/T_k`.
    pub cover: RepMorphism,
    /// The generator index of each summand of the source of `cover`, in order.
    pub cover_labels: Vec<usize>,
}

pub fn trace_filtration(m: &Rep, s: &WellPlacedGen) -> Result<Vec<TraceStep>> {
    let f = m.field();
    let n = m.dims().len();
    let zero_bases: Vec<Mat> = (0..n).map(|v| Mat::zeros(f, m.dim(v), 0)).collect();
    let (_, mut ti) = m.subrepresentation(&zero_bases)?;
    let mut steps = Vec::new();
    loop {
        let (q, proj) = m.quotient_by(ti.maps())?;
        let mut sources = Vec::new();
        let mut labels = Vec::new();
        let mut homs = Vec::new();
        for (i, si) in s.simples().iter().enumerate() {
            for h in hom_space(si, &q)?.basis() {
                sources.push(si.clone());
                labels.push(i);
                homs.push(h.clone());
            }
        }
        if homs.is_empty() {
            return Ok(steps);
        }
        let sum = direct_sum(m.quiver(), f, &sources)?;
        let cover_maps: Vec<Mat> = (0..n)
            .map(|v| Mat::hconcat(f, q.dim(v), &homs.iter().map(|h| h.map(v).clone()).collect::<Vec<_>>()))
            .collect();
        let to_q = RepMorphism::new(sum.rep.clone(), q.clone(), cover_maps)?;
        let (img, img_inc, onto) = image(&to_q)?;
        let mut bases = Vec::new();
        for v in 0..n {
            let lift = proj
                .map(v)
                .solve(img_inc.map(v))?
                .expect("projection onto the quotient is surjective");
            bases.push(ti.map(v).hstack(&lift));
        }
        let (t_next, ti_next) = m.subrepresentation(&bases)?;
        let inc = lift_through_mono(&ti, &ti_next)?.expect("trace filtration is increasing");
        let down: Vec<Mat> = (0..n)
            .map(|v| {
                let imgs = proj.map(v).mul(ti_next.map(v));
                img_inc
                    .map(v)
                    .solve(&imgs)
                    .map(|x| x.expect("image contains the new layer"))
            })
            .collect::<Result<_>>()?;
        let down = RepMorphism::new(t_next.clone(), img.clone(), down)?;
        let seq = ShortExactSeq::new(inc, down)?;
        steps.push(TraceStep {
            sub: t_next.clone(),
            inclusion: ti_next.clone(),
            seq,
            cover: onto,
            cover_labels: labels,
        });
        ti = ti_next;
    }
}

/// The torsion submodule `t(m)`: the smallest submodule with
/// `Hom(S_i, m/t(m)) = 0` for every generator.
pub fn trace_torsion_submodule(m: &Rep, s: &WellPlacedGen) -> Result<(Rep, RepMorphism)> {
    let steps = trace_filtration(m, s)?;
    match steps.last() {
        Some(last) => Ok((last.sub.clone(), last.inclusion.clone())),
        None => {
            let zero: Vec<Mat> = m.dims().iter().map(|&d| Mat::zeros(m.field(), d, 0)).collect();
            m.subrepresentation(&zero)
        }
    }
}

/// `Hom(S_i, x) = 0 = Ext(S_i, x)` for every generator: `x` lies in the
/// perpendicular category.
pub fn is_perp(x: &Rep, s: &WellPlacedGen) -> Result<bool> {
    for si in s.simples() {
        let d = difference_map(si, x)?;
        if d.rows() != d.cols() || d.rank() != d.cols() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A composition series of `x` in the extension closure of the generators,
/// as generator indices from the bottom up; `None` if `x` has none.
///
/// The category is abelian with the generators as its simple objects, so for
/// a member `x` every nonzero map `x -> S_i` is onto with kernel again a
/// member. One map per layer therefore decides membership.
pub fn filt_membership(x: &Rep, s: &WellPlacedGen) -> Result<Option<Vec<usize>>> {
    let mut cur = x.clone();
    let mut series = Vec::new();
    while !cur.is_zero() {
        let mut next = None;
        for (i, si) in s.simples().iter().enumerate() {
            if let Some(h) = hom_space(&cur, si)?.basis().first() {
                next = Some((i, h.clone()));
                break;
            }
        }
        let Some((i, h)) = next else {
            return Ok(None);
        };
        if !h.is_surjective() {
            return Ok(None);
        }
        cur = kernel(&h)?.0;
        series.push(i);
    }
    series.reverse();
    Ok(Some(series))
}

/// Backtracking search over every surjection to every generator. Independent
/// of the abelian-category argument behind [`filt_membership`], and used to
/// check it. `budget` bounds the number of morphisms inspected.
pub fn filt_membership_exhaustive(x: &Rep, s: &WellPlacedGen, budget: usize) -> Result<Option<Vec<usize>>> {
    if !x.field().is_finite() {
        return Err(Error::UnsupportedField {
            op: "exhaustive filtration search",
        });
    }
    let mut spent = 0usize;
    let mut failed: HashSet<(Vec<usize>, Vec<Mat>)> = HashSet::new();
    search(x, s, budget, &mut spent, &mut failed)
}

fn search(
    x: &Rep,
    s: &WellPlacedGen,
    budget: usize,
    spent: &mut usize,
    failed: &mut HashSet<(Vec<usize>, Vec<Mat>)>,
) -> Result<Option<Vec<usize>>> {
    if x.is_zero() {
        return Ok(Some(Vec::new()));
    }
    if failed.contains(&(x.dims().to_vec(), x.maps().to_vec())) {
        return Ok(None);
    }
    let f: FieldSpec = x.field();
    for (i, si) in s.simples().iter().enumerate() {
        if !si.fits_in(x.dims()) {
            continue;
        }
        let h = hom_space(x, si)?;
        if h.is_zero() {
            continue;
        }
        for coeffs in projective_points(f, h.dim(), budget)? {
            *spent += 1;
            if *spent > budget {
                return Err(Error::BudgetExceeded {
                    op: "filtration search",
                    budget,
                });
            }
            let g = h.element(&coeffs);
            if !g.is_surjective() {
                continue;
            }
            let (k, _) = kernel(&g)?;
            if let Some(mut series) = search(&k, s, budget, spent, failed)? {
                series.push(i);
                return Ok(Some(series));
            }
        }
    }
    failed.insert((x.dims().to_vec(), x.maps().to_vec()));
    Ok(None)
}
