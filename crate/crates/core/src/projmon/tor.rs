//! `Tor_1(-, R_E)` on the torsion class, top-stripping, and the comparison of
//! torsion modules through common kernels and extensions.

use crate::error::{Error, Result};
use crate::exactlin::Mat;
use crate::homcalc::{flatten, hom_space, HomSpace};
use crate::localise::{
    filt_membership, induced_iso_test, localize, trace_torsion_submodule, InducedIso, WellPlacedGen,
};
use crate::projmon::membership::{fac_cover, fac_membership, free_cover};
use crate::quiverrep::{cokernel, is_isomorphic, kernel, pushout, IsoVerdict, Rep, RepMorphism, ShortExactSeq};

/// The unique `phi` in `homs` with `phi ∘ pre = target`, if any.
fn extend_along(homs: &HomSpace, pre: &RepMorphism, target: &RepMorphism) -> Result<Option<RepMorphism>> {
    let f = target.source().field();
    let rows = flatten(target.maps()).len();
    let mut cols = Vec::new();
    for b in homs.basis() {
        cols.push(Mat::column(f, flatten(b.compose(pre)?.maps())));
    }
    let sys = Mat::hconcat(f, rows, &cols);
    let rhs = Mat::column(f, flatten(target.maps()));
    Ok(sys.solve(&rhs)?.map(|c| homs.element(&c.col(0))))
}

fn stabilized_value(m: &Rep, s: &WellPlacedGen, max_steps: usize, what: &str) -> Result<(Rep, RepMorphism)> {
    let chain = localize(m, s, max_steps)?;
    if !chain.stabilized {
        return Err(Error::NonStabilizing {
            what: what.to_string(),
            steps: chain.steps.len(),
        });
    }
    Ok((chain.value().clone(), chain.unit()?))
}

/// `Tor_1(m, R_E)`, computed twice and cross-checked.
#[derive(Clone, Debug)]
pub struct Tor1 {
    /// `K ⊗ R_E` for `0 -> K -> E -> m -> 0` with `E` in the category.
    pub value: Rep,
    pub cover: ShortExactSeq,
    /// `ker(P ⊗ R_E -> Q ⊗ R_E)` for `0 -> P -> Q -> m -> 0` with `P, Q` projective.
    pub via_presentation: Rep,
    /// An isomorphism from `via_presentation` to `value`.
    pub agreement: RepMorphism,
}

pub fn tor1(m: &Rep, s: &WellPlacedGen, max_steps: usize, budget: usize) -> Result<Tor1> {
    let fc = fac_cover(m, s)?;
    let (_, k_inc) = kernel(&fc.surjection)?;
    let cover = ShortExactSeq::new(k_inc, fc.surjection)?;
    let (value, _) = stabilized_value(cover.sub(), s, max_steps, "kernel of the cover")?;

    let eps = free_cover(m)?;
    let (p, iota) = kernel(&eps)?;
    let (vp, up) = stabilized_value(&p, s, max_steps, "presentation kernel")?;
    let (_, uq) = stabilized_value(eps.source(), s, max_steps, "presentation")?;
    let target = uq.compose(&iota)?;
    let induced = extend_along(&hom_space(&vp, uq.target())?, &up, &target)?
        .ok_or_else(|| Error::CrossCheck("presentation map does not extend to the localisation".into()))?;
    let (via_presentation, _) = kernel(&induced)?;
    let agreement = match is_isomorphic(&via_presentation, &value, budget)? {
        IsoVerdict::Iso(w) => w,
        IsoVerdict::NotIso => {
            return Err(Error::CrossCheck(format!(
                "Tor_1 has dimension vector {:?} via a cover and {:?} via a presentation",
                value.dims(),
                via_presentation.dims()
            )))
        }
        IsoVerdict::Inconclusive => {
            return Err(Error::BudgetExceeded {
                op: "Tor_1 cross-check",
                budget,
            })
        }
    };
    Ok(Tor1 {
        value,
        cover,
        via_presentation,
        agreement,
    })
}

/// The submodule `T ⊆ m` with `m/T` in the category and no nonzero maps
/// from `T` to generators.
#[derive(Clone, Debug)]
pub struct StrippedTop {
    pub sub: Rep,
    pub inclusion: RepMorphism,
    /// Composition series of `m/T`, bottom first.
    pub series: Vec<usize>,
}

/// Repeatedly passes to the kernel of a nonzero map to a generator. On the
/// torsion class every such map is onto, because its image is a nonzero
/// subobject of a simple object of the category.
pub fn strip_top(m: &Rep, s: &WellPlacedGen) -> Result<StrippedTop> {
    if !fac_membership(m, s)? {
        return Err(Error::NotInFac);
    }
    let mut inclusion = RepMorphism::identity(m);
    let mut series = Vec::new();
    'descend: loop {
        let cur = inclusion.source().clone();
        for (i, si) in s.simples().iter().enumerate() {
            let homs = hom_space(&cur, si)?;
            if let Some(g) = homs.basis().first() {
                if !g.is_surjective() {
                    return Err(Error::Precondition(format!(
                        "a nonzero map to generator {i} is not onto; the generators are not simple in their category"
                    )));
                }
                let (_, k) = kernel(g)?;
                inclusion = inclusion.compose(&k)?;
                series.push(i);
                continue 'descend;
            }
        }
        break;
    }
    series.reverse();
    Ok(StrippedTop {
        sub: inclusion.source().clone(),
        inclusion,
        series,
    })
}

/// Witness that two torsion modules have isomorphic `Tor_1`.
#[derive(Clone, Debug)]
pub struct TorIsoWitness {
    /// `0 -> K -> E_1 -> m -> 0` and `0 -> K -> E_2 -> n -> 0`.
    pub kernel_m: ShortExactSeq,
    pub kernel_n: ShortExactSeq,
    /// `0 -> E_2 -> L -> m -> 0` and `0 -> E_1 -> L -> n -> 0`.
    pub common_m: ShortExactSeq,
    pub common_n: ShortExactSeq,
}

impl TorIsoWitness {
    pub fn common_kernel(&self) -> &Rep {
        self.kernel_m.sub()
    }

    pub fn common_extension(&self) -> &Rep {
        self.common_m.middle()
    }
}

#[derive(Clone, Debug)]
pub enum TorIso {
    Iso(Box<TorIsoWitness>),
    NotIso,
    Inconclusive,
}

impl TorIso {
    pub fn is_iso(&self) -> bool {
        matches!(self, TorIso::Iso(_))
    }
}

/// Replaces `0 -> A -> F -> M -> 0` by `0 -> A/t(A) -> F/t(A) -> M -> 0`;
/// `t(A)` lies in the category, so `F/t(A)` does too.
fn torsion_free_cover(seq: &ShortExactSeq, s: &WellPlacedGen) -> Result<ShortExactSeq> {
    let (t, ti) = trace_torsion_submodule(seq.sub(), s)?;
    if t.is_zero() {
        return Ok(seq.clone());
    }
    let into_f = seq.inclusion().compose(&ti)?;
    let (_, to_f) = cokernel(&into_f)?;
    let (_, to_a) = cokernel(&ti)?;
    let n = seq.middle().dims().len();
    let inc = (0..n)
        .map(|v| {
            // lift through the projection A -> A/t(A) and push down to F/t(A)
            let lift = to_a
                .map(v)
                .solve(&Mat::identity(to_a.source().field(), to_a.target().dim(v)))?;
            Ok(to_f
                .map(v)
                .mul(seq.inclusion().map(v))
                .mul(&lift.expect("projection is onto")))
        })
        .collect::<Result<Vec<_>>>()?;
    let inc = RepMorphism::new(to_a.target().clone(), to_f.target().clone(), inc)?;
    let proj = (0..n)
        .map(|v| {
            let lift = to_f
                .map(v)
                .solve(&Mat::identity(to_f.source().field(), to_f.target().dim(v)))?;
            Ok(seq.projection().map(v).mul(&lift.expect("projection is onto")))
        })
        .collect::<Result<Vec<_>>>()?;
    let proj = RepMorphism::new(to_f.target().clone(), seq.quotient().clone(), proj)?;
    ShortExactSeq::new(inc, proj)
}

/// Pushes `0 -> A -> F -> M -> 0` out along `g: A -> K`.
fn push_out(seq: &ShortExactSeq, g: &RepMorphism) -> Result<ShortExactSeq> {
    let (e, to_e, k_to_e) = pushout(seq.inclusion(), g)?;
    let n = e.dims().len();
    // the map E -> M is induced by F -> M and zero on K
    let maps = (0..n)
        .map(|v| {
            let both = to_e.map(v).hstack(k_to_e.map(v));
            let image =
                seq.projection()
                    .map(v)
                    .hstack(&Mat::zeros(e.field(), seq.quotient().dim(v), g.target().dim(v)));
            // solve X * both = image row by row via the transpose
            let xt = both
                .transpose()
                .solve(&image.transpose())?
                .expect("pushout is spanned by both images");
            Ok(xt.transpose())
        })
        .collect::<Result<Vec<_>>>()?;
    let proj = RepMorphism::new(e, seq.quotient().clone(), maps)?;
    ShortExactSeq::new(k_to_e, proj)
}

/// Given `0 -> K -> E_1 -> m` and `0 -> K -> E_2 -> n`, the pushout `L` of
/// `E_1 <- K -> E_2` with `0 -> E_2 -> L -> m -> 0` and `0 -> E_1 -> L -> n -> 0`.
fn common_extension(km: &ShortExactSeq, kn: &ShortExactSeq) -> Result<(ShortExactSeq, ShortExactSeq)> {
    let (_, e1_to_l, e2_to_l) = pushout(km.inclusion(), kn.inclusion())?;
    let (_, to_m) = cokernel(&e2_to_l)?;
    let (_, to_n) = cokernel(&e1_to_l)?;
    let common_m = ShortExactSeq::new(e2_to_l, to_m)?;
    let common_n = ShortExactSeq::new(e1_to_l, to_n)?;
    Ok((common_m, common_n))
}

/// Compares `Tor_1(m, R_E)` and `Tor_1(n, R_E)` using the given covers
/// `0 -> A -> F -> m -> 0`, `0 -> B -> F' -> n -> 0` by modules in the category.
pub fn tor_iso_with_covers(
    cover_m: &ShortExactSeq,
    cover_n: &ShortExactSeq,
    s: &WellPlacedGen,
    max_steps: usize,
    budget: usize,
) -> Result<TorIso> {
    for (name, x) in [("m", cover_m.quotient()), ("n", cover_n.quotient())] {
        if !fac_membership(x, s)? {
            return Err(Error::NotInFac);
        }
        for si in s.simples() {
            if !hom_space(x, si)?.is_zero() {
                return Err(Error::Precondition(format!(
                    "{name} maps nonzero to a generator; strip its top first"
                )));
            }
        }
    }
    for c in [cover_m, cover_n] {
        if filt_membership(c.middle(), s)?.is_none() {
            return Err(Error::Precondition("cover middle term is not in the category".into()));
        }
    }
    let am = torsion_free_cover(cover_m, s)?;
    let an = torsion_free_cover(cover_n, s)?;
    let w = match induced_iso_test(am.sub(), an.sub(), s, max_steps, budget)? {
        InducedIso::Iso(w) => w,
        InducedIso::NotIso => return Ok(TorIso::NotIso),
        InducedIso::Inconclusive => return Ok(TorIso::Inconclusive),
    };
    let kernel_m = push_out(&am, w.from_m.inclusion())?;
    let kernel_n = push_out(&an, w.from_n.inclusion())?;
    // both middles are extensions of modules in the category
    if filt_membership(kernel_m.middle(), s)?.is_none() || filt_membership(kernel_n.middle(), s)?.is_none() {
        return Ok(TorIso::Inconclusive);
    }
    let (common_m, common_n) = common_extension(&kernel_m, &kernel_n)?;
    Ok(TorIso::Iso(Box::new(TorIsoWitness {
        kernel_m,
        kernel_n,
        common_m,
        common_n,
    })))
}

/// [`tor_iso_with_covers`] on covers built from the trace filtration.
pub fn tor_iso_test(m: &Rep, n: &Rep, s: &WellPlacedGen, max_steps: usize, budget: usize) -> Result<TorIso> {
    let mut seqs = Vec::new();
    for x in [m, n] {
        if !fac_membership(x, s)? {
            return Err(Error::NotInFac);
        }
        let fc = fac_cover(x, s)?;
        let (_, k) = kernel(&fc.surjection)?;
        seqs.push(ShortExactSeq::new(k, fc.surjection)?);
    }
    tor_iso_with_covers(&seqs[0], &seqs[1], s, max_steps, budget)
}
