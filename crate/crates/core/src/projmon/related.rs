//! S-relatedness, late objects of the relatively projective category, early
//! objects of the torsion class, and the harness tying relatedness to
//! isomorphic localisations.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::localise::{induced_iso_test, localize, InducedIso, WellPlacedGen};
use crate::quiverrep::{
    cokernel, decompose, indecomposables_up_to, is_isomorphic, submodule_enumerate, IsoVerdict, Rep, RepMorphism,
    ShortExactSeq,
};

use super::membership::{fac_membership, relproj_membership, RelprojVerdict};

/// One direct relation `0 -> U -> S_i -> V -> 0`, walked from `U` to `V`
/// (`forward`) or from `V` to `U`.
#[derive(Clone, Debug)]
pub struct RelationStep {
    pub generator: usize,
    pub seq: ShortExactSeq,
    pub forward: bool,
}

impl RelationStep {
    pub fn from(&self) -> &Rep {
        if self.forward {
            self.seq.sub()
        } else {
            self.seq.quotient()
        }
    }

    pub fn to(&self) -> &Rep {
        if self.forward {
            self.seq.quotient()
        } else {
            self.seq.sub()
        }
    }
}

#[derive(Clone, Debug)]
pub enum SRelation {
    Related(Vec<RelationStep>),
    /// The finite graph of direct relations was exhausted.
    NotRelated,
}

impl SRelation {
    pub fn is_related(&self) -> bool {
        matches!(self, SRelation::Related(_))
    }
}

fn iso(a: &Rep, b: &Rep, budget: usize) -> Result<bool> {
    if a.dims() != b.dims() {
        return Ok(false);
    }
    match is_isomorphic(a, b, budget)? {
        IsoVerdict::Iso(_) => Ok(true),
        IsoVerdict::NotIso => Ok(false),
        IsoVerdict::Inconclusive => Err(Error::BudgetExceeded {
            op: "S-relatedness",
            budget,
        }),
    }
}

/// Breadth-first search through direct S-relations. Every node other than
/// `a` is a proper nonzero submodule or quotient of some generator, so the
/// graph is finite and a negative answer is definitive.
pub fn s_related(a: &Rep, b: &Rep, s: &WellPlacedGen, budget: usize) -> Result<SRelation> {
    a.check_compatible(b)?;
    if iso(a, b, budget)? {
        return Ok(SRelation::Related(Vec::new()));
    }
    // every direct relation, from the submodules of every generator
    let mut edges: Vec<RelationStep> = Vec::new();
    for (i, si) in s.simples().iter().enumerate() {
        for (u, inc) in submodule_enumerate(si, budget)? {
            if u.is_zero() || u.total_dim() == si.total_dim() {
                continue;
            }
            let (_, proj) = cokernel(&inc)?;
            let seq = ShortExactSeq::new(inc, proj)?;
            edges.push(RelationStep {
                generator: i,
                seq: seq.clone(),
                forward: true,
            });
            edges.push(RelationStep {
                generator: i,
                seq,
                forward: false,
            });
        }
    }
    let mut nodes: Vec<Rep> = vec![a.clone()];
    let mut back: Vec<Option<(usize, usize)>> = vec![None];
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (e, step) in edges.iter().enumerate() {
            if !iso(&nodes[k], step.from(), budget)? {
                continue;
            }
            let target = step.to();
            let mut known = false;
            for n in &nodes {
                if iso(n, target, budget)? {
                    known = true;
                    break;
                }
            }
            if known {
                continue;
            }
            nodes.push(target.clone());
            back.push(Some((k, e)));
            let here = nodes.len() - 1;
            if iso(target, b, budget)? {
                let mut path = Vec::new();
                let mut at = here;
                while let Some((prev, e)) = back[at] {
                    path.push(edges[e].clone());
                    at = prev;
                }
                path.reverse();
                return Ok(SRelation::Related(path));
            }
            queue.push_back(here);
        }
    }
    Ok(SRelation::NotRelated)
}

#[derive(Clone, Debug)]
pub enum ObjectVerdict {
    Holds,
    /// A morphism inside the category breaking the condition: a proper
    /// quotient map for lateness, a proper inclusion for earliness.
    Fails(RepMorphism),
    NotInCategory,
    Inconclusive,
}

impl ObjectVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ObjectVerdict::Holds)
    }
}

/// Whether every nonzero map from `m` into the relatively projective
/// category is injective. That category is closed under submodules, so the
/// images of such maps are exactly the quotients `m/U` lying in it, and the
/// check runs over the submodules of `m`.
pub fn is_late(m: &Rep, s: &WellPlacedGen, max_steps: usize, budget: usize) -> Result<ObjectVerdict> {
    match relproj_membership(m, s, max_steps, budget)? {
        RelprojVerdict::Member(_) => {}
        RelprojVerdict::NonMember(_) => return Ok(ObjectVerdict::NotInCategory),
        RelprojVerdict::Inconclusive => return Ok(ObjectVerdict::Inconclusive),
    }
    let mut unsure = false;
    for (u, inc) in submodule_enumerate(m, budget)? {
        if u.is_zero() || u.total_dim() == m.total_dim() {
            continue;
        }
        let (quot, proj) = cokernel(&inc)?;
        match relproj_membership(&quot, s, max_steps, budget)? {
            RelprojVerdict::Member(_) => return Ok(ObjectVerdict::Fails(proj)),
            RelprojVerdict::NonMember(_) => {}
            RelprojVerdict::Inconclusive => unsure = true,
        }
    }
    Ok(if unsure {
        ObjectVerdict::Inconclusive
    } else {
        ObjectVerdict::Holds
    })
}

/// Whether every nonzero map from the torsion class into `m` is surjective.
/// Images of such maps are the submodules of `m` in the class.
pub fn is_early(m: &Rep, s: &WellPlacedGen, budget: usize) -> Result<ObjectVerdict> {
    if !fac_membership(m, s)? {
        return Ok(ObjectVerdict::NotInCategory);
    }
    for (u, inc) in submodule_enumerate(m, budget)? {
        if u.is_zero() || u.total_dim() == m.total_dim() {
            continue;
        }
        if fac_membership(&u, s)? {
            return Ok(ObjectVerdict::Fails(inc));
        }
    }
    Ok(ObjectVerdict::Holds)
}

#[derive(Clone, Debug, Default)]
pub struct RelatednessReport {
    /// Late members with a stabilized indecomposable nonzero localisation.
    pub candidates: Vec<Rep>,
    pub pairs_checked: usize,
    pub iso_pairs: usize,
    pub related_pairs: usize,
    /// Isomorphic localisations but not S-related.
    pub violations: Vec<(usize, usize)>,
    /// S-related but with non-isomorphic localisations.
    pub converse_violations: Vec<(usize, usize)>,
    pub inconclusive: usize,
}

impl RelatednessReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.converse_violations.is_empty()
    }
}

/// Over all indecomposables up to `cap`: late relatively projective modules
/// whose localisations are isomorphic, stabilized and indecomposable must be
/// S-related, and S-related ones must have isomorphic localisations.
pub fn relatedness_harness(
    s: &WellPlacedGen,
    cap: &[usize],
    max_steps: usize,
    budget: usize,
) -> Result<RelatednessReport> {
    let mut report = RelatednessReport::default();
    let pool = indecomposables_up_to(s.quiver(), s.field(), cap, budget, |_| Ok(true))?;
    for x in pool {
        if !is_late(&x, s, max_steps, budget)?.holds() {
            continue;
        }
        let chain = localize(&x, s, max_steps)?;
        if !chain.stabilized || chain.value().is_zero() {
            continue;
        }
        let dec = decompose(chain.value(), budget)?;
        if !dec.certified || dec.summands.len() != 1 {
            continue;
        }
        report.candidates.push(x);
    }
    let c = &report.candidates;
    let mut violations = Vec::new();
    let mut converse = Vec::new();
    let (mut checked, mut isos, mut related, mut unsure) = (0, 0, 0, 0);
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            checked += 1;
            let rel = s_related(&c[i], &c[j], s, budget)?.is_related();
            related += rel as usize;
            match induced_iso_test(&c[i], &c[j], s, max_steps, budget)? {
                InducedIso::Iso(_) => {
                    isos += 1;
                    if !rel {
                        violations.push((i, j));
                    }
                }
                InducedIso::NotIso => {
                    if rel {
                        converse.push((i, j));
                    }
                }
                InducedIso::Inconclusive => unsure += 1,
            }
        }
    }
    report.pairs_checked = checked;
    report.iso_pairs = isos;
    report.related_pairs = related;
    report.violations = violations;
    report.converse_violations = converse;
    report.inconclusive = unsure;
    Ok(report)
}
