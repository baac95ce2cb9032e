//! The commands: each resolves its operands, calls the engine and builds a
//! JSON report.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use uniloc_core::homcalc::{ext_space, hom_space, is_bound};
use uniloc_core::localise::{
    check_hom_perp_set_labelled, filt_membership, induced_iso_test, localize, localized_algebra, reduce_to_homperp,
    trace_filtration, trace_torsion_submodule, verify_well_placed, ClosureConfig, InducedIso, ReductionStatus,
};
use uniloc_core::projmon::{
    fac_cover, fac_membership, generators_enumerate, is_early, is_late, k0_presentation, monoid_presentation,
    relproj_membership, s_related, strip_top, tor1, tor_iso_test, MonoidConfig, ObjectVerdict, RelprojCertificate,
    RelprojVerdict, RelprojWitness, SRelation, TorIso,
};
use uniloc_core::quiverrep::euler_form;
use uniloc_core::{Error as CoreError, Rep, WellPlacedGen};

use crate::problem::ProblemFile;
use crate::report::{labels, morphism, rep, scalar, seq};

pub const DEFAULT_BUDGET: usize = 4096;
pub const DEFAULT_MAX_STEPS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Hom,
    Ext,
    Bound,
    CheckSet,
    Torsion,
    Filt,
    Localize,
    InducedIso,
    ReduceHomperp,
    LocalizedAlgebra,
    VerifyWellPlaced,
    Fac,
    Relproj,
    Tor1,
    StripTop,
    TorIso,
    Generators,
    Monoid,
    SRelated,
    Late,
    Early,
    K0,
}

impl Command {
    pub const ALL: [Command; 22] = [
        Command::Hom,
        Command::Ext,
        Command::Bound,
        Command::CheckSet,
        Command::Torsion,
        Command::Filt,
        Command::Localize,
        Command::InducedIso,
        Command::ReduceHomperp,
        Command::LocalizedAlgebra,
        Command::VerifyWellPlaced,
        Command::Fac,
        Command::Relproj,
        Command::Tor1,
        Command::StripTop,
        Command::TorIso,
        Command::Generators,
        Command::Monoid,
        Command::SRelated,
        Command::Late,
        Command::Early,
        Command::K0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Hom => "hom",
            Command::Ext => "ext",
            Command::Bound => "bound",
            Command::CheckSet => "check-set",
            Command::Torsion => "torsion",
            Command::Filt => "filt",
            Command::Localize => "localize",
            Command::InducedIso => "induced-iso",
            Command::ReduceHomperp => "reduce-homperp",
            Command::LocalizedAlgebra => "localized-algebra",
            Command::VerifyWellPlaced => "verify-well-placed",
            Command::Fac => "fac",
            Command::Relproj => "relproj",
            Command::Tor1 => "tor1",
            Command::StripTop => "strip-top",
            Command::TorIso => "tor-iso",
            Command::Generators => "generators",
            Command::Monoid => "monoid",
            Command::SRelated => "s-related",
            Command::Late => "late",
            Command::Early => "early",
            Command::K0 => "k0",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Computed = 0,
    InputError = 1,
    Inconclusive = 2,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Value,
    pub exit: Exit,
}

impl Outcome {
    pub fn code(&self) -> i32 {
        self.exit as i32
    }

    /// Pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("reports are plain JSON");
        s.push('\n');
        s
    }
}

enum Failure {
    Input(String),
    Inconclusive(String),
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::BudgetExceeded { .. } | CoreError::NonStabilizing { .. } => Failure::Inconclusive(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Run = Result<(Value, Exit), Failure>;

struct Ctx<'a> {
    p: &'a ProblemFile,
    budget: usize,
    max_steps: usize,
}

impl Ctx<'_> {
    fn operand(&self, key: &str) -> Result<&Rep, Failure> {
        let name = self
            .p
            .operands
            .get(key)
            .ok_or_else(|| Failure::Input(format!("missing operand '{key}' (add 'set {key} = NAME')")))?;
        self.p
            .reps
            .get(name)
            .ok_or_else(|| Failure::Input(format!("operand '{key}' names '{name}', which is not a representation")))
    }

    fn gens(&self) -> Result<WellPlacedGen, Failure> {
        if self.p.generators.is_empty() {
            return Ok(WellPlacedGen::empty(&self.p.quiver, self.p.field));
        }
        let reps: Vec<Rep> = self.p.generators.iter().map(|n| self.p.reps[n].clone()).collect();
        Ok(check_hom_perp_set_labelled(&reps, self.p.generators.clone())?)
    }

    fn dim_bound(&self) -> Vec<usize> {
        self.p
            .params
            .dim_bound
            .clone()
            .unwrap_or_else(|| vec![2; self.p.quiver.vertex_count()])
    }
}

fn computed(v: Value) -> Run {
    Ok((v, Exit::Computed))
}

fn hom(c: &Ctx) -> Run {
    let (m, n) = (c.operand("m")?, c.operand("n")?);
    let h = hom_space(m, n)?;
    computed(json!({
        "dim": h.dim(),
        "basis": h.basis().iter().map(morphism).collect::<Vec<_>>(),
    }))
}

fn ext(c: &Ctx) -> Run {
    let (m, n) = (c.operand("m")?, c.operand("n")?);
    let e = ext_space(m, n)?;
    let h = hom_space(m, n)?;
    let q = m.quiver();
    let cocycles: Vec<Value> = e
        .cocycle_basis()
        .iter()
        .map(|cs| {
            let mut o = Map::new();
            for (a, x) in cs.iter().enumerate() {
                o.insert(q.arrow_label(a).to_string(), crate::report::matrix(x));
            }
            Value::Object(o)
        })
        .collect();
    computed(json!({
        "dim": e.dim(),
        "hom_dim": h.dim(),
        "euler_form": euler_form(q, &m.dimension_vector(), &n.dimension_vector())?,
        "cocycles": cocycles,
    }))
}

fn bound(c: &Ctx) -> Run {
    computed(json!({ "bound": is_bound(c.operand("m")?)? }))
}

fn check_set(c: &Ctx) -> Run {
    let reps: Vec<Rep> = c.p.generators.iter().map(|n| c.p.reps[n].clone()).collect();
    match check_hom_perp_set_labelled(&reps, c.p.generators.clone()) {
        Ok(s) => computed(json!({
            "accepted": true,
            "generators": s.labels(),
            "endomorphism_dims": s.certificate().endomorphism_dims,
            "vanishing_pairs": s.certificate().vanishing_pairs,
        })),
        Err(CoreError::NotWellPlaced(r)) => computed(json!({
            "accepted": false,
            "rejection": r.to_string(),
        })),
        Err(e) => Err(e.into()),
    }
}

fn torsion(c: &Ctx) -> Run {
    let s = c.gens()?;
    let m = c.operand("m")?;
    let (t, inc) = trace_torsion_submodule(m, &s)?;
    let layers: Vec<Value> = trace_filtration(m, &s)?
        .iter()
        .map(|st| json!({ "dims": st.sub.dims(), "cover": labels(&st.cover_labels, s.labels()) }))
        .collect();
    computed(json!({
        "torsion": rep(&t),
        "inclusion": morphism(&inc),
        "layers": layers,
        "torsion_free": t.is_zero(),
    }))
}

fn filt(c: &Ctx) -> Run {
    let s = c.gens()?;
    let series = filt_membership(c.operand("m")?, &s)?;
    computed(json!({
        "member": series.is_some(),
        "series": series.map(|x| labels(&x, s.labels())),
    }))
}

fn localize_cmd(c: &Ctx) -> Run {
    let s = c.gens()?;
    let chain = localize(c.operand("m")?, &s, c.max_steps)?;
    let steps: Vec<Value> = chain
        .steps
        .iter()
        .map(|st| {
            json!({
                "dims": st.seq.middle().dims(),
                "multiplicities": st.multiplicities,
                "quotient": st.seq.quotient().dims(),
                "torsion_removed": st.torsion_removed,
            })
        })
        .collect();
    let exit = if chain.stabilized {
        Exit::Computed
    } else {
        Exit::Inconclusive
    };
    Ok((
        json!({
            "kernel": chain.kernel.dims(),
            "steps": steps,
            "step_count": chain.steps.len(),
            "stabilized": chain.stabilized,
            "dimension_vectors": chain.dimension_vectors(),
            "value": rep(chain.value()),
            "unit": morphism(&chain.unit()?),
        }),
        exit,
    ))
}

fn induced_iso(c: &Ctx) -> Run {
    let s = c.gens()?;
    let (m, n) = (c.operand("m")?, c.operand("n")?);
    Ok(match induced_iso_test(m, n, &s, c.max_steps, c.budget)? {
        InducedIso::Iso(w) => (
            json!({
                "verdict": "iso",
                "common": rep(&w.common),
                "from_m": seq(&w.from_m),
                "from_n": seq(&w.from_n),
                "series_m": labels(&w.series_m, s.labels()),
                "series_n": labels(&w.series_n, s.labels()),
            }),
            Exit::Computed,
        ),
        InducedIso::NotIso => (json!({ "verdict": "not-iso" }), Exit::Computed),
        InducedIso::Inconclusive => (json!({ "verdict": "inconclusive" }), Exit::Inconclusive),
    })
}

fn reduce(c: &Ctx) -> Run {
    let s = c.gens()?;
    let r = reduce_to_homperp(c.operand("m")?, &s, c.budget)?;
    let status = match r.status {
        ReductionStatus::BoundCompatible => json!({ "kind": "bound-compatible" }),
        ReductionStatus::ProjectiveSummandDetected { simple } => {
            json!({ "kind": "projective-summand", "generator": s.label(simple) })
        }
    };
    computed(json!({
        "sub": rep(&r.sub),
        "inclusion": morphism(&r.inclusion),
        "series": labels(&r.series, s.labels()),
        "status": status,
        "incoming_hom": r.incoming_hom.map(|i| s.label(i).to_string()),
    }))
}

fn algebra(c: &Ctx) -> Run {
    let s = c.gens()?;
    let la = localized_algebra(&s, c.max_steps)?;
    let gabriel = match la.gabriel_quiver(c.budget) {
        Ok(g) => {
            let q = &g.quiver;
            json!({
                "vertices": q.vertex_count(),
                "arrows": q.arrows().iter().map(|&(i, j)| json!([q.vertex_label(i), q.vertex_label(j)])).collect::<Vec<_>>(),
                "projectives": g.projectives.iter().map(|p| p.dims().to_vec()).collect::<Vec<_>>(),
            })
        }
        Err(e @ CoreError::Precondition(_)) => json!({ "unavailable": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    computed(json!({
        "dim": la.dim(),
        "radical_dim": la.radical_dim(),
        "center_dim": la.center_dim(),
        "associative": la.is_associative(),
        "unital": la.is_unital(),
        "values": la.values.iter().map(|v| v.dims().to_vec()).collect::<Vec<_>>(),
        "hom_dims": la.hom_dims,
        "structure_constants": la.algebra.structure_constants().iter()
            .map(|row| row.iter().map(|v| v.iter().map(scalar).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "gabriel_quiver": gabriel,
    }))
}

fn verify(c: &Ctx) -> Run {
    let s = c.gens()?;
    let cfg = ClosureConfig {
        budget: c.budget,
        ..ClosureConfig::default()
    };
    let r = verify_well_placed(&s, &cfg)?;
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|k| json!({ "kind": k.kind, "checked": k.checked, "passed": k.passed, "budget_exhausted": k.budget_exhausted }))
        .collect();
    let counterexamples: Vec<Value> = r
        .counterexamples
        .iter()
        .map(|x| json!({ "kind": x.kind, "module": rep(&x.module), "detail": x.detail }))
        .collect();
    let exit = if r.budget_exhausted() && r.passed() {
        Exit::Inconclusive
    } else {
        Exit::Computed
    };
    Ok((
        json!({
            "passed": r.passed(),
            "samples": r.samples.len(),
            "checks": checks,
            "counterexamples": counterexamples,
        }),
        exit,
    ))
}

fn fac(c: &Ctx) -> Run {
    let s = c.gens()?;
    let m = c.operand("m")?;
    if !fac_membership(m, &s)? {
        return computed(json!({ "member": false }));
    }
    let fc = fac_cover(m, &s)?;
    computed(json!({
        "member": true,
        "cover": rep(&fc.module),
        "surjection": morphism(&fc.surjection),
        "series": labels(&fc.series, s.labels()),
    }))
}

fn relproj(c: &Ctx) -> Run {
    let s = c.gens()?;
    Ok(match relproj_membership(c.operand("m")?, &s, c.max_steps, c.budget)? {
        RelprojVerdict::Member(cert) => {
            let cert = match cert {
                RelprojCertificate::Projective => json!({ "kind": "projective" }),
                RelprojCertificate::InCategory { series } => {
                    json!({ "kind": "in-category", "series": labels(&series, s.labels()) })
                }
                RelprojCertificate::Embedding {
                    torsion_series,
                    copies,
                    level,
                    embedding,
                } => json!({
                    "kind": "embedding",
                    "torsion_series": labels(&torsion_series, s.labels()),
                    "copies": copies,
                    "level": level,
                    "embedding": morphism(&embedding),
                }),
            };
            (json!({ "verdict": "member", "certificate": cert }), Exit::Computed)
        }
        RelprojVerdict::NonMember(w) => {
            let w = match w {
                RelprojWitness::TorsionNotInCategory { torsion } => {
                    json!({ "kind": "torsion-not-in-category", "torsion": rep(&torsion) })
                }
                RelprojWitness::NotProjectiveAfterLocalizing { summand } => {
                    json!({ "kind": "not-projective-after-localizing", "summand": rep(&summand) })
                }
            };
            (json!({ "verdict": "non-member", "witness": w }), Exit::Computed)
        }
        RelprojVerdict::Inconclusive => (json!({ "verdict": "inconclusive" }), Exit::Inconclusive),
    })
}

fn tor1_cmd(c: &Ctx) -> Run {
    let s = c.gens()?;
    let t = tor1(c.operand("m")?, &s, c.max_steps, c.budget)?;
    computed(json!({
        "value": rep(&t.value),
        "via_presentation": rep(&t.via_presentation),
        "agreement": morphism(&t.agreement),
        "cover": seq(&t.cover),
    }))
}

fn strip(c: &Ctx) -> Run {
    let s = c.gens()?;
    let st = strip_top(c.operand("m")?, &s)?;
    computed(json!({
        "sub": rep(&st.sub),
        "inclusion": morphism(&st.inclusion),
        "series": labels(&st.series, s.labels()),
    }))
}

fn tor_iso(c: &Ctx) -> Run {
    let s = c.gens()?;
    let (m, n) = (c.operand("m")?, c.operand("n")?);
    Ok(match tor_iso_test(m, n, &s, c.max_steps, c.budget)? {
        TorIso::Iso(w) => (
            json!({
                "verdict": "iso",
                "kernel_m": seq(&w.kernel_m),
                "kernel_n": seq(&w.kernel_n),
                "common_m": seq(&w.common_m),
                "common_n": seq(&w.common_n),
            }),
            Exit::Computed,
        ),
        TorIso::NotIso => (json!({ "verdict": "not-iso" }), Exit::Computed),
        TorIso::Inconclusive => (json!({ "verdict": "inconclusive" }), Exit::Inconclusive),
    })
}

fn generators(c: &Ctx) -> Run {
    let s = c.gens()?;
    let g = generators_enumerate(&s, c.budget)?;
    computed(json!({
        "generators": g.iter().map(|(l, r)| json!({ "label": l, "rep": rep(r) })).collect::<Vec<_>>(),
    }))
}

fn word(w: &[usize], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, &c) in w.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(names[k].clone()),
            _ => parts.push(format!("{c}{}", names[k])),
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn monoid(c: &Ctx) -> Run {
    let s = c.gens()?;
    let cfg = MonoidConfig {
        budget: c.budget,
        ..MonoidConfig::new(c.dim_bound())
    };
    let m = monoid_presentation(&s, &cfg)?;
    let names: Vec<String> = m.generators.iter().map(|(l, _)| l.clone()).collect();
    let relations: Vec<Value> = m
        .relations
        .iter()
        .map(|r| {
            json!({
                "lhs": r.lhs,
                "rhs": r.rhs,
                "text": format!("{} = {}", word(&r.lhs, &names), word(&r.rhs, &names)),
                "source": if r.extension.is_some() { "extension" } else { "category" },
            })
        })
        .collect();
    let identifications: Map<String, Value> = names
        .iter()
        .zip(&m.identifications)
        .map(|(n, w)| (n.clone(), json!(word(w, &names))))
        .collect();
    computed(json!({
        "generators": m.generators.iter().map(|(l, r)| json!({ "label": l, "dims": r.dims() })).collect::<Vec<_>>(),
        "relations": relations,
        "identifications": identifications,
        "irreducibles": m.irreducibles.iter().map(|&k| names[k].clone()).collect::<Vec<_>>(),
        "rank": m.rank(),
        "free": m.free,
        "complete": m.complete,
        "dim_bound": cfg.dim_bound,
        "degree_bound": m.degree_bound,
    }))
}

fn related(c: &Ctx) -> Run {
    let s = c.gens()?;
    let (m, n) = (c.operand("m")?, c.operand("n")?);
    computed(match s_related(m, n, &s, c.budget)? {
        SRelation::Related(path) => json!({
            "related": true,
            "path": path.iter().map(|st| json!({
                "generator": s.label(st.generator),
                "from": st.from().dims(),
                "to": st.to().dims(),
                "direction": if st.forward { "sub-to-quotient" } else { "quotient-to-sub" },
                "sequence": seq(&st.seq),
            })).collect::<Vec<_>>(),
        }),
        SRelation::NotRelated => json!({ "related": false }),
    })
}

fn object_verdict(v: ObjectVerdict, broken_by: &str) -> (Value, Exit) {
    match v {
        ObjectVerdict::Holds => (json!({ "verdict": "holds" }), Exit::Computed),
        ObjectVerdict::Fails(w) => (json!({ "verdict": "fails", broken_by: morphism(&w) }), Exit::Computed),
        ObjectVerdict::NotInCategory => (json!({ "verdict": "not-in-category" }), Exit::Computed),
        ObjectVerdict::Inconclusive => (json!({ "verdict": "inconclusive" }), Exit::Inconclusive),
    }
}

fn late(c: &Ctx) -> Run {
    let s = c.gens()?;
    Ok(object_verdict(
        is_late(c.operand("m")?, &s, c.max_steps, c.budget)?,
        "non_injective_map",
    ))
}

fn early(c: &Ctx) -> Run {
    let s = c.gens()?;
    Ok(object_verdict(
        is_early(c.operand("m")?, &s, c.budget)?,
        "non_surjective_map",
    ))
}

fn show<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn k0(c: &Ctx) -> Run {
    let s = c.gens()?;
    let k = k0_presentation(&s);
    computed(json!({
        "ambient_rank": k.ambient_rank,
        "relation_lattice": k.relation_lattice.iter().map(|r| show(r)).collect::<Vec<_>>(),
        "smith_form": show(&k.smith_form),
        "free_rank": k.free_rank,
        "torsion": show(&k.torsion),
    }))
}

/// Runs one command on a parsed problem.
pub fn run_command(p: &ProblemFile, cmd: Command) -> Outcome {
    let c = Ctx {
        p,
        budget: p.params.budget.unwrap_or(DEFAULT_BUDGET),
        max_steps: p.params.max_steps.unwrap_or(DEFAULT_MAX_STEPS),
    };
    let run = match cmd {
        Command::Hom => hom(&c),
        Command::Ext => ext(&c),
        Command::Bound => bound(&c),
        Command::CheckSet => check_set(&c),
        Command::Torsion => torsion(&c),
        Command::Filt => filt(&c),
        Command::Localize => localize_cmd(&c),
        Command::InducedIso => induced_iso(&c),
        Command::ReduceHomperp => reduce(&c),
        Command::LocalizedAlgebra => algebra(&c),
        Command::VerifyWellPlaced => verify(&c),
        Command::Fac => fac(&c),
        Command::Relproj => relproj(&c),
        Command::Tor1 => tor1_cmd(&c),
        Command::StripTop => strip(&c),
        Command::TorIso => tor_iso(&c),
        Command::Generators => generators(&c),
        Command::Monoid => monoid(&c),
        Command::SRelated => related(&c),
        Command::Late => late(&c),
        Command::Early => early(&c),
        Command::K0 => k0(&c),
    };
    let (status, result, exit) = match run {
        Ok((v, Exit::Computed)) => ("computed", v, Exit::Computed),
        Ok((v, exit)) => ("inconclusive", v, exit),
        Err(Failure::Inconclusive(msg)) => ("inconclusive", json!({ "reason": msg }), Exit::Inconclusive),
        Err(Failure::Input(msg)) => ("error", json!({ "error": msg }), Exit::InputError),
    };
    Outcome {
        report: json!({ "command": cmd.name(), "status": status, "result": result }),
        exit,
    }
}
