//! Generators and bounded presentations of the monoid of finitely generated
//! projectives over the localisation, and of its group completion.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::subspaces::projective_points;
use crate::exactlin::{quotient_structure, smith_invariants, FieldSpec, Scalar};
use crate::homcalc::{ext_space, extension_from_cocycle};
use crate::localise::{filt_membership, WellPlacedGen};
use crate::quiverrep::{decompose, direct_sum, is_isomorphic, submodule_enumerate, IsoVerdict, Rep};

/// Indecomposable projectives and the nonzero submodules of the generators,
/// one per isomorphism class. Their localisations generate every finitely
/// generated projective over the localized algebra.
pub fn generators_enumerate(s: &WellPlacedGen, budget: usize) -> Result<Vec<(String, Rep)>> {
    let q = s.quiver();
    let f = s.field();
    let mut out: Vec<(String, Rep)> = Vec::new();
    for v in 0..q.vertex_count() {
        out.push((format!("P{}", q.vertex_label(v)), Rep::projective(q, f, v)?));
    }
    for (i, si) in s.simples().iter().enumerate() {
        let mut proper = 0;
        for (u, _) in submodule_enumerate(si, budget)? {
            if u.is_zero() {
                continue;
            }
            if find_iso(&out.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(), &u, budget)?.is_some() {
                continue;
            }
            let label = if u.dims() == si.dims() {
                s.label(i).to_string()
            } else {
                proper += 1;
                format!("{}.{}", s.label(i), proper)
            };
            out.push((label, u));
        }
    }
    Ok(out)
}

fn find_iso(pool: &[Rep], x: &Rep, budget: usize) -> Result<Option<usize>> {
    for (k, y) in pool.iter().enumerate() {
        if y.dims() != x.dims() {
            continue;
        }
        match is_isomorphic(x, y, budget)? {
            IsoVerdict::Iso(_) => return Ok(Some(k)),
            IsoVerdict::NotIso => {}
            IsoVerdict::Inconclusive => {
                return Err(Error::BudgetExceeded {
                    op: "atom identification",
                    budget,
                })
            }
        }
    }
    Ok(None)
}

/// The class in `K_0(R)` of a module, in the basis of indecomposable
/// projectives: the coefficient of `P_w` is `x_w - sum_{a: y -> w} x_y`.
pub fn projective_class(x: &Rep) -> Vec<BigInt> {
    let q = x.quiver();
    (0..q.vertex_count())
        .map(|w| {
            let incoming: usize = q.arrows_into(w).map(|a| x.dim(q.arrow(a).0)).sum();
            BigInt::from(x.dim(w) as i64 - incoming as i64)
        })
        .collect()
}

/// `K_0(R_E) = Z^vertices / <[S_i]>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Presentation {
    pub ambient_rank: usize,
    /// One row per generator: its class in the projective basis.
    pub relation_lattice: Vec<Vec<BigInt>>,
    /// Nonzero Smith invariants of the relation lattice.
    pub smith_form: Vec<BigInt>,
    pub free_rank: usize,
    /// Invariants greater than one: the torsion of `K_0(R_E)`.
    pub torsion: Vec<BigInt>,
}

pub fn k0_presentation(s: &WellPlacedGen) -> K0Presentation {
    let ambient_rank = s.quiver().vertex_count();
    let relation_lattice: Vec<Vec<BigInt>> = s.simples().iter().map(projective_class).collect();
    let smith_form = smith_invariants(&relation_lattice);
    let (torsion, free_rank) = quotient_structure(ambient_rank, &relation_lattice);
    K0Presentation {
        ambient_rank,
        relation_lattice,
        smith_form,
        free_rank,
        torsion,
    }
}

#[derive(Clone, Debug)]
pub struct MonoidConfig {
    /// Only modules with dimension vector at most this are harvested.
    pub dim_bound: Vec<usize>,
    /// Total degree up to which the congruence is saturated.
    pub degree_bound: usize,
    pub budget: usize,
    pub seed: u64,
}

impl MonoidConfig {
    pub fn new(dim_bound: Vec<usize>) -> Self {
        MonoidConfig {
            dim_bound,
            degree_bound: 3,
            budget: 4096,
            seed: 11,
        }
    }
}

/// `lhs = rhs` as multiplicity vectors over the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    /// `Some((c, a))` for `[B] = [A] + [C]` from an extension of generator
    /// `c` by the sum `a`; `None` for `[E] = 0` with `E` in the category.
    pub extension: Option<(usize, Vec<usize>)>,
}

#[derive(Clone, Debug)]
pub struct MonoidPresentation {
    pub generators: Vec<(String, Rep)>,
    pub relations: Vec<Relation>,
    /// Normal form of each generator.
    pub identifications: Vec<Vec<usize>>,
    /// Generators whose classes are nonzero and not sums of two nonzero
    /// classes, one per class.
    pub irreducibles: Vec<usize>,
    /// The irreducibles are independent up to the degree bound.
    pub free: bool,
    /// Every extension space was enumerated exhaustively, every decomposition
    /// certified, and the harvest closed under extensions within the bound.
    pub complete: bool,
    pub degree_bound: usize,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    parent: Vec<usize>,
}

impl MonoidPresentation {
    pub fn rank(&self) -> usize {
        self.irreducibles.len()
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// The least word (by degree, then lexicographically) congruent to `x`;
    /// `None` past the degree bound.
    pub fn normal_form(&self, x: &[usize]) -> Option<Vec<usize>> {
        let root = self.find(*self.index.get(x)?);
        self.words
            .iter()
            .enumerate()
            .filter(|(k, _)| self.find(*k) == root)
            .map(|(_, w)| w.clone())
            .min_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)))
    }

    pub fn congruent(&self, x: &[usize], y: &[usize]) -> Option<bool> {
        Some(self.find(*self.index.get(x)?) == self.find(*self.index.get(y)?))
    }
}

/// Words of total degree at most `d` in `g` letters, in graded order.
fn words_up_to(g: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0; g]];
    let mut layer = vec![vec![0; g]];
    for _ in 0..d {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        for w in &layer {
            for k in 0..g {
                let mut x = w.clone();
                x[k] += 1;
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        next.sort_by(|a, b| b.cmp(a));
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

struct Congruence {
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    parent: Vec<usize>,
    degree: usize,
}

impl Congruence {
    fn new(g: usize, degree: usize) -> Self {
        let words = words_up_to(g, degree);
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let parent = (0..words.len()).collect();
        Congruence {
            words,
            index,
            parent,
            degree,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn implied(&mut self, lhs: &[usize], rhs: &[usize]) -> bool {
        match (self.index.get(lhs).copied(), self.index.get(rhs).copied()) {
            (Some(a), Some(b)) => self.find(a) == self.find(b),
            _ => false,
        }
    }

    /// Unions every translate `lhs + w ~ rhs + w` within the degree bound.
    fn add(&mut self, lhs: &[usize], rhs: &[usize]) {
        let dl: usize = lhs.iter().sum();
        let dr: usize = rhs.iter().sum();
        for k in 0..self.words.len() {
            let w = &self.words[k];
            let dw: usize = w.iter().sum();
            if dw + dl.max(dr) > self.degree {
                continue;
            }
            let a: Vec<usize> = w.iter().zip(lhs).map(|(x, y)| x + y).collect();
            let b: Vec<usize> = w.iter().zip(rhs).map(|(x, y)| x + y).collect();
            let (ia, ib) = (self.index[&a], self.index[&b]);
            let (ra, rb) = (self.find(ia), self.find(ib));
            if ra != rb {
                self.parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
}

struct Harvest<'a> {
    s: &'a WellPlacedGen,
    cfg: &'a MonoidConfig,
    atoms: Vec<(String, Rep)>,
    complete: bool,
    fresh: usize,
}

impl Harvest<'_> {
    /// Atom index of each indecomposable summand of `x`, adding new atoms.
    fn atoms_of(&mut self, x: &Rep) -> Result<Vec<usize>> {
        let dec = decompose(x, self.cfg.budget)?;
        self.complete &= dec.certified;
        let mut out = Vec::new();
        for y in dec.reps() {
            let pool: Vec<Rep> = self.atoms.iter().map(|(_, r)| r.clone()).collect();
            let k = match find_iso(&pool, &y, self.cfg.budget)? {
                Some(k) => k,
                None => {
                    self.fresh += 1;
                    self.atoms.push((format!("X{}", self.fresh), y));
                    self.atoms.len() - 1
                }
            };
            out.push(k);
        }
        Ok(out)
    }
}

fn fits(a: &[usize], b: &[usize], cap: &[usize]) -> bool {
    a.iter().zip(b).zip(cap).all(|((x, y), c)| x + y <= *c)
}

/// Lhs word as an atom list, rhs atom list, and the extension it came from.
type RawRelation = (Vec<usize>, Vec<usize>, Option<(usize, Vec<usize>)>);

/// A bounded presentation of the monoid of finitely generated projectives
/// over the localisation: generated by the classes of indecomposable modules
/// projective relative to `E^⊥`, subject to `[B] = [A] + [C]` for harvested
/// extensions and `[E] = 0` for members of the category.
///
/// The harvest starts from [`generators_enumerate`], decomposed, and adds the
/// indecomposable summands of every extension of an atom by a sum of at most
/// two atoms within `dim_bound` until nothing new appears.
pub fn monoid_presentation(s: &WellPlacedGen, cfg: &MonoidConfig) -> Result<MonoidPresentation> {
    let f = s.field();
    let FieldSpec::Prime(p) = f else {
        return Err(Error::UnsupportedField {
            op: "monoid presentation",
        });
    };
    let q = s.quiver().clone();
    let mut h = Harvest {
        s,
        cfg,
        atoms: Vec::new(),
        complete: true,
        fresh: 0,
    };
    for (label, g) in generators_enumerate(s, cfg.budget)? {
        if !g.fits_in(&cfg.dim_bound) {
            h.complete = false;
            continue;
        }
        let dec = decompose(&g, cfg.budget)?;
        h.complete &= dec.certified;
        let parts = dec.reps();
        if parts.len() == 1 {
            if find_iso(
                &h.atoms.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>(),
                &g,
                cfg.budget,
            )?
            .is_none()
            {
                h.atoms.push((label, g));
            }
        } else {
            h.atoms_of(&g)?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut raw: Vec<RawRelation> = Vec::new();
    let mut done: HashSet<(usize, Vec<usize>)> = HashSet::new();
    let mut zero_checked = 0;
    loop {
        let before = h.atoms.len();
        while zero_checked < h.atoms.len() {
            if filt_membership(&h.atoms[zero_checked].1, h.s)?.is_some() {
                raw.push((vec![zero_checked], Vec::new(), None));
            }
            zero_checked += 1;
        }
        let n = h.atoms.len();
        let mut pending = Vec::new();
        for c in 0..n {
            for a in 0..n {
                pending.push((c, vec![a]));
                for b in a..n {
                    pending.push((c, vec![a, b]));
                }
            }
        }
        for (c, sum) in pending {
            if !done.insert((c, sum.clone())) {
                continue;
            }
            let parts: Vec<Rep> = sum.iter().map(|&k| h.atoms[k].1.clone()).collect();
            let a_rep = direct_sum(&q, f, &parts)?.rep;
            let c_rep = h.atoms[c].1.clone();
            if !fits(a_rep.dims(), c_rep.dims(), &cfg.dim_bound) {
                continue;
            }
            let ext = ext_space(&c_rep, &a_rep)?;
            if ext.is_zero() {
                continue;
            }
            let lines = (p as u128).saturating_pow(ext.dim() as u32);
            let classes: Vec<Vec<Scalar>> = if lines <= cfg.budget as u128 {
                projective_points(f, ext.dim(), cfg.budget.saturating_mul(p as usize))?
            } else {
                h.complete = false;
                (0..8)
                    .map(|_| (0..ext.dim()).map(|_| Scalar::Mod(rng.random_range(0..p))).collect())
                    .filter(|v: &Vec<Scalar>| v.iter().any(|x| !f.is_zero(x)))
                    .collect()
            };
            for coeffs in classes {
                let seq = extension_from_cocycle(&c_rep, &a_rep, &ext.cocycle(&coeffs))?;
                let mid = h.atoms_of(seq.middle())?;
                let mut rhs = sum.clone();
                rhs.push(c);
                raw.push((mid, rhs, Some((c, sum.clone()))));
            }
        }
        if h.atoms.len() == before {
            break;
        }
    }
    let g = h.atoms.len();
    let to_vec = |xs: &[usize]| {
        let mut v = vec![0; g];
        for &x in xs {
            v[x] += 1;
        }
        v
    };
    let max_side = raw.iter().map(|(l, r, _)| l.len().max(r.len())).max().unwrap_or(1);
    let degree = cfg.degree_bound.max(max_side);
    let mut cong = Congruence::new(g, degree);
    let mut relations = Vec::new();
    // zero relations first, then extensions by increasing size, so that
    // larger relations are tested against the smaller ones
    raw.sort_by_key(|(l, r, origin)| (origin.is_some(), l.len().max(r.len())));
    for (l, r, origin) in raw {
        let (lhs, rhs) = (to_vec(&l), to_vec(&r));
        if lhs == rhs || cong.implied(&lhs, &rhs) {
            continue;
        }
        cong.add(&lhs, &rhs);
        relations.push(Relation {
            lhs,
            rhs,
            extension: origin,
        });
    }
    let mut pres = MonoidPresentation {
        generators: h.atoms,
        relations,
        identifications: Vec::new(),
        irreducibles: Vec::new(),
        free: false,
        complete: h.complete,
        degree_bound: degree,
        words: cong.words.clone(),
        index: cong.index.clone(),
        parent: (0..cong.words.len()).map(|k| cong.find(k)).collect(),
    };
    let unit = |k: usize| {
        let mut v = vec![0; g];
        v[k] = 1;
        v
    };
    let zero = vec![0; g];
    pres.identifications = (0..g)
        .map(|k| pres.normal_form(&unit(k)).expect("degree one"))
        .collect();
    let nonzero: Vec<bool> = (0..g).map(|k| pres.congruent(&unit(k), &zero) != Some(true)).collect();
    let mut irreducibles: Vec<usize> = Vec::new();
    for k in 0..g {
        if !nonzero[k] {
            continue;
        }
        let root = pres.find(pres.index[&unit(k)]);
        let splits = pres.words.iter().enumerate().any(|(i, w)| {
            pres.find(i) == root
                && w.iter()
                    .enumerate()
                    .map(|(j, &c)| if nonzero[j] { c } else { 0 })
                    .sum::<usize>()
                    >= 2
        });
        if splits {
            continue;
        }
        if irreducibles
            .iter()
            .any(|&j| pres.congruent(&unit(j), &unit(k)) == Some(true))
        {
            continue;
        }
        irreducibles.push(k);
    }
    // independence: distinct words in the irreducibles stay distinct
    let mut seen: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut free = true;
    for (i, w) in pres.words.iter().enumerate() {
        if w.iter().enumerate().any(|(j, &c)| c > 0 && !irreducibles.contains(&j)) {
            continue;
        }
        let root = pres.find(i);
        if seen.insert(root, w.clone()).is_some() {
            free = false;
            break;
        }
    }
    // and every nonzero generator is a sum of irreducibles
    for k in 0..g {
        let root = pres.find(pres.index[&unit(k)]);
        let reachable = pres.words.iter().enumerate().any(|(i, w)| {
            pres.find(i) == root && w.iter().enumerate().all(|(j, &c)| c == 0 || irreducibles.contains(&j))
        });
        free &= reachable;
    }
    pres.irreducibles = irreducibles;
    pres.free = free;
    Ok(pres)
}
