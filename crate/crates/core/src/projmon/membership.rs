//! Membership in the torsion class `Fac(E)` and in the category of modules
//! projective relative to `E^⊥`.

use crate::error::{Error, Result};
use crate::exactlin::{Mat, Scalar};
use crate::homcalc::{extension_from_cocycle, hom_space, is_projective};
use crate::localise::{
    filt_membership, localize, search_homs, trace_filtration, trace_torsion_submodule, SearchOutcome, WellPlacedGen,
};
use crate::quiverrep::{cokernel, decompose, direct_sum, is_isomorphic, IsoVerdict, Rep, RepMorphism};

/// `t(m) = m`: `m` is a factor of a module in the well-placed category.
pub fn fac_membership(m: &Rep, s: &WellPlacedGen) -> Result<bool> {
    let (t, _) = trace_torsion_submodule(m, s)?;
    Ok(t.total_dim() == m.total_dim())
}

/// A surjection onto `m` from a module in the well-placed category.
#[derive(Clone, Debug)]
pub struct FacCover {
    pub module: Rep,
    pub surjection: RepMorphism,
    /// Composition series of `module`, bottom first.
    pub series: Vec<usize>,
}

/// Solves `rho_j x_a - T_a h_i + h_j F_a = xi_a` for all arrows `a: i -> j`,
/// returning the cocycle `x` and the vertex maps `h`.
fn lift_cocycle(rho: &RepMorphism, fk: &Rep, xi: &[Mat]) -> Result<(Vec<Mat>, Vec<Mat>)> {
    let e = rho.source();
    let t = rho.target();
    let q = e.quiver().clone();
    let f = e.field();
    let arrows = q.arrows();
    let mut x_off = Vec::new();
    let mut col = 0;
    for &(i, j) in arrows {
        x_off.push(col);
        col += e.dim(j) * fk.dim(i);
    }
    let mut h_off = Vec::new();
    for v in 0..q.vertex_count() {
        h_off.push(col);
        col += t.dim(v) * fk.dim(v);
    }
    let mut row = 0;
    let mut row_off = Vec::new();
    for &(i, j) in arrows {
        row_off.push(row);
        row += t.dim(j) * fk.dim(i);
    }
    let mut sys = Mat::zeros(f, row, col);
    let mut rhs = Vec::with_capacity(row);
    for (a, &(i, j)) in arrows.iter().enumerate() {
        let id_fi = Mat::identity(f, fk.dim(i));
        sys.paste(row_off[a], x_off[a], &rho.map(j).kron(&id_fi));
        // h_i and h_j blocks may coincide only on loops, which acyclic quivers lack
        sys.paste(row_off[a], h_off[i], &t.map(a).kron(&id_fi).neg());
        sys.paste(
            row_off[a],
            h_off[j],
            &Mat::identity(f, t.dim(j)).kron(&fk.map(a).transpose()),
        );
        rhs.extend(xi[a].vectorize());
    }
    let sol = sys
        .solve(&Mat::column(f, rhs))?
        .expect("Ext(F, -) is right exact over a hereditary algebra")
        .col(0);
    let xs = arrows
        .iter()
        .enumerate()
        .map(|(a, &(i, j))| Mat::unvectorize(f, e.dim(j), fk.dim(i), &sol[x_off[a]..x_off[a] + e.dim(j) * fk.dim(i)]))
        .collect();
    let hs = (0..q.vertex_count())
        .map(|v| Mat::unvectorize(f, t.dim(v), fk.dim(v), &sol[h_off[v]..h_off[v] + t.dim(v) * fk.dim(v)]))
        .collect();
    Ok((xs, hs))
}

/// Builds a module in the well-placed category mapping onto `m`, layer by
/// layer along the trace filtration: each layer's cover by generators is
/// glued onto the previous cover by lifting the extension class.
pub fn fac_cover(m: &Rep, s: &WellPlacedGen) -> Result<FacCover> {
    let steps = trace_filtration(m, s)?;
    let q = m.quiver().clone();
    let f = m.field();
    let Some(last) = steps.last() else {
        if !m.is_zero() {
            return Err(Error::NotInFac);
        }
        return Ok(FacCover {
            module: m.clone(),
            surjection: RepMorphism::identity(m),
            series: Vec::new(),
        });
    };
    if last.sub.total_dim() != m.total_dim() {
        return Err(Error::NotInFac);
    }
    let mut e = Rep::zero(&q, f);
    let mut rho = RepMorphism::zero(&e, steps[0].seq.sub());
    let mut series = Vec::new();
    for st in &steps {
        let seq = &st.seq;
        let cover = &st.cover;
        let fk = cover.source();
        let c = seq.connecting_cocycle();
        let sp = seq.splitting();
        let xi: Vec<Mat> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(i, _))| c[a].mul(cover.map(i)))
            .collect();
        let (x, h) = lift_cocycle(&rho, fk, &xi)?;
        let next = extension_from_cocycle(fk, &e, &x)?;
        let maps = (0..q.vertex_count())
            .map(|v| {
                let inc = seq.inclusion().map(v);
                inc.mul(rho.map(v))
                    .hstack(&inc.mul(&h[v]).add(&sp.sections[v].mul(cover.map(v))))
            })
            .collect();
        rho = RepMorphism::new(next.middle().clone(), seq.middle().clone(), maps)?;
        e = next.middle().clone();
        series.extend(&st.cover_labels);
    }
    let surjection = last.inclusion.compose(&rho)?;
    debug_assert!(surjection.is_surjective());
    Ok(FacCover {
        module: e,
        surjection,
        series,
    })
}

/// The morphism `P_v -> m` sending the trivial path to `x ∈ m_v`.
pub(crate) fn from_projective(m: &Rep, v: usize, x: &[Scalar]) -> Result<RepMorphism> {
    let q = m.quiver();
    let f = m.field();
    let p = Rep::projective(q, f, v)?;
    let mut cols: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); q.vertex_count()];
    for path in q.paths_from(v) {
        let mut y = Mat::column(f, x.to_vec());
        for &a in &path {
            y = m.map(a).mul(&y);
        }
        cols[q.path_end(v, &path)].push(y.col(0));
    }
    let maps = (0..q.vertex_count())
        .map(|w| Mat::from_fn(f, m.dim(w), cols[w].len(), |r, c| cols[w][c][r].clone()))
        .collect();
    RepMorphism::new(p, m.clone(), maps)
}

/// `Q = (+)_v P_v^{dim m_v}` with the surjection onto `m` sending the
/// generators to the standard basis vectors.
pub(crate) fn free_cover(m: &Rep) -> Result<RepMorphism> {
    let q = m.quiver().clone();
    let f = m.field();
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    for v in 0..q.vertex_count() {
        for k in 0..m.dim(v) {
            let x: Vec<Scalar> = (0..m.dim(v)).map(|r| if r == k { f.one() } else { f.zero() }).collect();
            let g = from_projective(m, v, &x)?;
            parts.push(g.source().clone());
            maps.push(g);
        }
    }
    let sum = direct_sum(&q, f, &parts)?;
    let vertex_maps = (0..q.vertex_count())
        .map(|w| {
            let blocks: Vec<Mat> = maps.iter().map(|g| g.map(w).clone()).collect();
            Mat::hconcat(f, m.dim(w), &blocks)
        })
        .collect();
    RepMorphism::new(sum.rep, m.clone(), vertex_maps)
}

#[derive(Clone, Debug)]
pub enum RelprojCertificate {
    Projective,
    /// `m` lies in the well-placed category itself.
    InCategory {
        series: Vec<usize>,
    },
    /// `t(m)` lies in the category and `m/t(m)` embeds in the term `level` of
    /// the localisation chain of `R^copies`, an extension of `R^copies` by a
    /// module in the category.
    Embedding {
        torsion_series: Vec<usize>,
        copies: usize,
        level: usize,
        embedding: RepMorphism,
    },
}

#[derive(Clone, Debug)]
pub enum RelprojWitness {
    /// `t(m)` has no composition series in the category.
    TorsionNotInCategory { torsion: Rep },
    /// `m/t(m)` localizes to a module with an indecomposable summand that is
    /// not a summand of any localized projective.
    NotProjectiveAfterLocalizing { summand: Rep },
}

#[derive(Clone, Debug)]
pub enum RelprojVerdict {
    Member(RelprojCertificate),
    NonMember(RelprojWitness),
    Inconclusive,
}

impl RelprojVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, RelprojVerdict::Member(_))
    }
}

/// Decides whether `Ext(m, -)` vanishes on `E^⊥`. Members are certified by an
/// embedding of `m/t(m)` into an extension of a free module by a module in
/// the category; non-members by a torsion part outside the category, or by a
/// localization that is not projective.
pub fn relproj_membership(m: &Rep, s: &WellPlacedGen, max_steps: usize, budget: usize) -> Result<RelprojVerdict> {
    if is_projective(m) {
        return Ok(RelprojVerdict::Member(RelprojCertificate::Projective));
    }
    let (t, ti) = trace_torsion_submodule(m, s)?;
    let Some(torsion_series) = filt_membership(&t, s)? else {
        return Ok(RelprojVerdict::NonMember(RelprojWitness::TorsionNotInCategory {
            torsion: t,
        }));
    };
    if t.total_dim() == m.total_dim() {
        return Ok(RelprojVerdict::Member(RelprojCertificate::InCategory {
            series: torsion_series,
        }));
    }
    let (base, _) = cokernel(&ti)?;
    let q = m.quiver().clone();
    let f = m.field();
    let projectives: Vec<Rep> = (0..q.vertex_count())
        .map(|v| Rep::projective(&q, f, v))
        .collect::<Result<_>>()?;
    let regular = direct_sum(&q, f, &projectives)?.rep;
    let chain = localize(&regular, s, max_steps)?;
    let terms: Vec<Rep> = chain.terms().into_iter().cloned().collect();
    for copies in 1..=base.total_dim() {
        for (level, term) in terms.iter().enumerate() {
            let target = term.power(copies)?;
            if !base.fits_in(target.dims()) {
                continue;
            }
            let homs = hom_space(&base, &target)?;
            if let SearchOutcome::Found(embedding) = search_homs(&homs, budget, |h| Ok(h.is_injective()))? {
                return Ok(RelprojVerdict::Member(RelprojCertificate::Embedding {
                    torsion_series,
                    copies,
                    level,
                    embedding,
                }));
            }
        }
    }
    if !chain.stabilized || !f.is_finite() {
        return Ok(RelprojVerdict::Inconclusive);
    }
    let local = localize(&base, s, max_steps)?;
    if !local.stabilized {
        return Ok(RelprojVerdict::Inconclusive);
    }
    let mut projective_summands = Vec::new();
    for p in &projectives {
        let pv = localize(p, s, max_steps)?;
        let dec = decompose(pv.value(), budget)?;
        if !dec.certified {
            return Ok(RelprojVerdict::Inconclusive);
        }
        projective_summands.extend(dec.reps());
    }
    let dec = decompose(local.value(), budget)?;
    if !dec.certified {
        return Ok(RelprojVerdict::Inconclusive);
    }
    for y in dec.reps() {
        let mut found = false;
        let mut unsure = false;
        for p in &projective_summands {
            match is_isomorphic(&y, p, budget)? {
                IsoVerdict::Iso(_) => {
                    found = true;
                    break;
                }
                IsoVerdict::NotIso => {}
                IsoVerdict::Inconclusive => unsure = true,
            }
        }
        if !found {
            return Ok(if unsure {
                RelprojVerdict::Inconclusive
            } else {
                RelprojVerdict::NonMember(RelprojWitness::NotProjectiveAfterLocalizing { summand: y })
            });
        }
    }
    Ok(RelprojVerdict::Inconclusive)
}
