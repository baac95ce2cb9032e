//! The acceptance suite: one PASS/FAIL line per criterion, nonzero exit if
//! any fails. Run with `cargo test -p uniloc-cli --test acceptance`.

mod common;

use std::process::Command as Process;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uniloc_cli::{parse_problem, serialize_problem};
use uniloc_core::homcalc::{ext_space, hom_space};
use uniloc_core::localise::{
    check_hom_perp_set, filt_membership, homperp_membership, induced_iso_test, localize, localized_algebra,
    trace_torsion_submodule, verify_well_placed, ClosureConfig, InducedIso,
};
use uniloc_core::projmon::{
    k0_presentation, monoid_presentation, relatedness_harness, s_related, tor1, MonoidConfig, SRelation,
};
use uniloc_core::quiverrep::{
    all_reps_with_dims, dimension_vectors_up_to, direct_sum, indecomposables_up_to, is_isomorphic, lift_through_mono,
    IsoVerdict,
};
use uniloc_core::{FieldSpec, Mat, Quiver, Rep, Result, Scalar};

const BUDGET: usize = 1 << 16;
const STEPS: usize = 10;

type Outcome = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fp(p: u32) -> FieldSpec {
    FieldSpec::Prime(p)
}

fn rep(q: &Arc<Quiver>, p: u32, dims: &[usize], maps: &[&[i64]]) -> Rep {
    let maps = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(&(i, j), e)| Mat::from_ints(fp(p), dims[j], dims[i], e))
        .collect();
    Rep::new(q.clone(), fp(p), dims.to_vec(), maps).unwrap()
}

fn random_rep(q: &Arc<Quiver>, p: u32, max_dim: usize, rng: &mut ChaCha8Rng) -> Rep {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.random_range(0..=max_dim)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(i, j)| {
            let e: Vec<i64> = (0..dims[i] * dims[j]).map(|_| rng.random_range(0..p as i64)).collect();
            Mat::from_ints(fp(p), dims[j], dims[i], &e)
        })
        .collect();
    Rep::new(q.clone(), fp(p), dims, maps).unwrap()
}

fn iso(a: &Rep, b: &Rep) -> Result<bool> {
    Ok(a.dims() == b.dims() && matches!(is_isomorphic(a, b, BUDGET)?, IsoVerdict::Iso(_)))
}

fn check(ok: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration) -> std::result::Result<Duration, String> {
    let t = start.elapsed();
    check(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// `sum d_M(v) d_N(v) - sum over arrows i -> j of d_M(i) d_N(j)`.
fn bilinear(q: &Quiver, m: &[usize], n: &[usize]) -> i64 {
    let diag: i64 = m.iter().zip(n).map(|(a, b)| (a * b) as i64).sum();
    let off: i64 = q.arrows().iter().map(|&(i, j)| (m[i] * n[j]) as i64).sum();
    diag - off
}

fn euler_identity() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let quivers = [
        Arc::new(Quiver::linear(2)),
        Arc::new(Quiver::linear(3)),
        Arc::new(Quiver::kronecker()),
    ];
    let mut pairs = 0;
    for q in &quivers {
        for p in [2, 5] {
            for _ in 0..40 {
                let m = random_rep(q, p, 4, &mut rng);
                let n = random_rep(q, p, 4, &mut rng);
                let lhs = hom_space(&m, &n).map_err(|e| e.to_string())?.dim() as i64
                    - ext_space(&m, &n).map_err(|e| e.to_string())?.dim() as i64;
                let rhs = bilinear(q, m.dims(), n.dims());
                check(
                    lhs == rhs,
                    format!("{:?} vs {:?} over F_{p}: {lhs} != {rhs}", m.dims(), n.dims()),
                )?;
                pairs += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("{pairs} pairs in {t:.2?}"))
}

/// Values of the entries of a matrix over `F_p`.
fn entries(m: &Mat) -> Vec<u32> {
    (0..m.rows())
        .flat_map(|r| {
            m.row(r).iter().map(|s| match s {
                Scalar::Mod(v) => *v,
                Scalar::Rat(_) => unreachable!(),
            })
        })
        .collect()
}

/// Number of tuples `(f_v)` of matrices over `F_p` with `N(a) f_i = f_j M(a)`
/// for every arrow `a : i -> j`, by listing all of them.
fn count_homs(m: &Rep, n: &Rep, p: u32) -> u64 {
    let q = m.quiver();
    let (dm, dn) = (m.dims(), n.dims());
    let offs: Vec<usize> = dm
        .iter()
        .zip(dn)
        .scan(0, |acc, (a, b)| {
            let o = *acc;
            *acc += a * b;
            Some(o)
        })
        .collect();
    let total: usize = dm.iter().zip(dn).map(|(a, b)| a * b).sum();
    let mmaps: Vec<Vec<u32>> = m.maps().iter().map(entries).collect();
    let nmaps: Vec<Vec<u32>> = n.maps().iter().map(entries).collect();
    let mut x = vec![0u32; total];
    let mut count = 0;
    loop {
        // f_v is dn[v] x dm[v], row-major at offs[v]
        let f = |v: usize, r: usize, c: usize| x[offs[v] + r * dm[v] + c];
        let ok = q.arrows().iter().enumerate().all(|(a, &(i, j))| {
            (0..dn[j]).all(|r| {
                (0..dm[i]).all(|c| {
                    let left: u32 = (0..dn[i]).map(|k| nmaps[a][r * dn[i] + k] * f(i, k, c)).sum();
                    let right: u32 = (0..dm[j]).map(|k| f(j, r, k) * mmaps[a][k * dm[i] + c]).sum();
                    left % p == right % p
                })
            })
        });
        count += ok as u64;
        let mut k = 0;
        while k < total && x[k] == p - 1 {
            x[k] = 0;
            k += 1;
        }
        if k == total {
            return count;
        }
        x[k] += 1;
    }
}

fn hom_oracle() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for q in [
        Arc::new(Quiver::linear(2)),
        Arc::new(Quiver::linear(3)),
        Arc::new(Quiver::kronecker()),
    ] {
        let cap = vec![3; q.vertex_count()];
        let mut reps = Vec::new();
        for d in dimension_vectors_up_to(&cap) {
            if d.iter().sum::<usize>() <= 3 {
                reps.extend(all_reps_with_dims(&q, fp(2), &d, BUDGET).map_err(|e| e.to_string())?);
            }
        }
        for m in &reps {
            for n in &reps {
                let dim = hom_space(m, n).map_err(|e| e.to_string())?.dim();
                let count = count_homs(m, n, 2);
                check(
                    count == 1 << dim,
                    format!("{:?} -> {:?}: dim {dim} but {count} maps", m.dims(), n.dims()),
                )?;
                pairs += 1;
            }
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{pairs} pairs in {t:.2?}"))
}

fn closure_harness() -> Outcome {
    let a2 = Arc::new(Quiver::linear(2));
    let kron = Arc::new(Quiver::kronecker());
    let mut lines = Vec::new();
    for (name, s) in [
        ("A2/{S1}", Rep::simple(&a2, fp(2), 0).unwrap()),
        ("Kronecker/{S0}", rep(&kron, 2, &[1, 1], &[&[1], &[0]])),
    ] {
        let s = check_hom_perp_set(&[s]).map_err(|e| e.to_string())?;
        let report = verify_well_placed(&s, &ClosureConfig::default()).map_err(|e| e.to_string())?;
        check(
            report.counterexamples.is_empty(),
            format!("{name}: {:?}", report.counterexamples),
        )?;
        let checked: usize = report.checks.iter().map(|c| c.checked).sum();
        lines.push(format!("{name}: {checked} checks"));
    }
    Ok(lines.join(", "))
}

fn kernel_is_torsion() -> Outcome {
    let q = Arc::new(Quiver::linear(2));
    let s = check_hom_perp_set(&[Rep::simple(&q, fp(2), 0).unwrap()]).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut quotients = 0;
    for _ in 0..100 {
        let m = random_rep(&q, 2, 3, &mut rng);
        let chain = localize(&m, &s, STEPS).map_err(|e| e.to_string())?;
        let (t, t_inc) = trace_torsion_submodule(&m, &s).map_err(|e| e.to_string())?;
        let inside = lift_through_mono(&chain.kernel_inclusion, &t_inc).map_err(|e| e.to_string())?;
        check(
            chain.kernel.dims() == t.dims() && inside.is_some(),
            format!(
                "{:?}: kernel {:?}, torsion {:?}",
                m.dims(),
                chain.kernel.dims(),
                t.dims()
            ),
        )?;
        for step in &chain.steps {
            let qt = step.seq.quotient();
            check(
                filt_membership(qt, &s).map_err(|e| e.to_string())?.is_some(),
                format!("quotient {:?} not in filt", qt.dims()),
            )?;
            quotients += 1;
        }
    }
    Ok(format!("100 modules, {quotients} chain quotients"))
}

fn flagship_a2() -> Outcome {
    let start = Instant::now();
    let q = Arc::new(Quiver::linear(2));
    let s = check_hom_perp_set(&[Rep::simple(&q, fp(2), 0).unwrap()]).map_err(|e| e.to_string())?;
    let alg = localized_algebra(&s, STEPS).map_err(|e| e.to_string())?;
    check(
        alg.dim() == 4 && alg.radical_dim() == 0,
        format!("dim {}, radical {}", alg.dim(), alg.radical_dim()),
    )?;
    let k0 = k0_presentation(&s);
    check(
        k0.free_rank == 1 && k0.torsion.is_empty(),
        format!("K0 rank {}, torsion {:?}", k0.free_rank, k0.torsion),
    )?;
    let mon = monoid_presentation(&s, &MonoidConfig::new(vec![2, 2])).map_err(|e| e.to_string())?;
    check(
        mon.free && mon.rank() == 1 && mon.complete,
        format!("free {}, rank {}, complete {}", mon.free, mon.rank(), mon.complete),
    )?;
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("dim 4, radical 0, K0 = Z, free monoid of rank 1, {t:.2?}"))
}

fn flagship_a3_middle() -> Outcome {
    let q = Arc::new(Quiver::linear(3));
    let s2 = Rep::simple(&q, fp(2), 1).unwrap();
    let s = check_hom_perp_set(&[s2]).map_err(|e| e.to_string())?;
    for v in 0..3 {
        let chain = localize(&Rep::projective(&q, fp(2), v).unwrap(), &s, STEPS).map_err(|e| e.to_string())?;
        check(chain.stabilized, format!("P{} does not stabilize", v + 1))?;
    }
    let perp = indecomposables_up_to(&q, fp(2), &[2, 2, 2], BUDGET, |x| homperp_membership(x, &s))
        .map_err(|e| e.to_string())?;
    let s1 = Rep::simple(&q, fp(2), 0).unwrap();
    check(
        perp.len() == 1,
        format!(
            "{} members: {:?}",
            perp.len(),
            perp.iter().map(|x| x.dims().to_vec()).collect::<Vec<_>>()
        ),
    )?;
    check(
        iso(&perp[0], &s1).map_err(|e| e.to_string())?,
        format!("member is {:?}, not S1", perp[0].dims()),
    )?;
    let local = localize(&s1, &s, STEPS).map_err(|e| e.to_string())?;
    let h1 = hom_space(&s1, &s1).map_err(|e| e.to_string())?.dim();
    let h2 = hom_space(&s1, local.value()).map_err(|e| e.to_string())?.dim();
    check(h1 == 1 && h2 == 1, format!("Hom dims {h1}, {h2}"))?;
    Ok("all P_v stabilize, homperp = {S1}, Hom dims 1 = 1".into())
}

fn flagship_a3_m12() -> Outcome {
    let q = Arc::new(Quiver::linear(3));
    let m12 = rep(&q, 2, &[1, 1, 0], &[&[1], &[]]);
    let s = check_hom_perp_set(&[m12]).map_err(|e| e.to_string())?;
    let s1 = Rep::simple(&q, fp(2), 0).unwrap();
    let t = tor1(&s1, &s, STEPS, BUDGET).map_err(|e| e.to_string())?;
    check(t.value.dims() == [0, 1, 0], format!("Tor1 dims {:?}", t.value.dims()))?;
    check(
        iso(&t.value, &t.via_presentation).map_err(|e| e.to_string())? && t.agreement.is_isomorphism(),
        "the two routes disagree",
    )?;
    let k0 = k0_presentation(&s);
    check(
        k0.free_rank == 2 && k0.torsion.is_empty(),
        format!("K0 rank {}, torsion {:?}", k0.free_rank, k0.torsion),
    )?;
    let mon = monoid_presentation(&s, &MonoidConfig::new(vec![2, 2, 2])).map_err(|e| e.to_string())?;
    let index = |label: &str| mon.generators.iter().position(|(l, _)| l == label);
    let (p1, p3) = (index("P1").ok_or("no P1")?, index("P3").ok_or("no P3")?);
    let mut x = vec![0; mon.generators.len()];
    let mut y = x.clone();
    x[p1] = 1;
    y[p3] = 1;
    check(mon.congruent(&x, &y) == Some(true), "[P1] != [P3]")?;
    Ok("Tor1(S1) has dims (0,1,0) by both routes, K0 = Z^2, [P1] = [P3]".into())
}

fn kronecker_non_stabilizing() -> Outcome {
    let q = Arc::new(Quiver::kronecker());
    let s0 = rep(&q, 2, &[1, 1], &[&[1], &[0]]);
    let s = check_hom_perp_set(std::slice::from_ref(&s0)).map_err(|e| e.to_string())?;
    let p2 = Rep::projective(&q, fp(2), 1).unwrap();
    let chain = localize(&p2, &s, STEPS).map_err(|e| e.to_string())?;
    check(!chain.stabilized, "reported stabilized")?;
    let expected: Vec<Vec<usize>> = (0..=STEPS).map(|m| vec![m, m + 1]).collect();
    check(
        chain.dimension_vectors() == expected,
        format!("dimension vectors {:?}", chain.dimension_vectors()),
    )?;
    for step in &chain.steps {
        check(
            iso(step.seq.quotient(), &s0).map_err(|e| e.to_string())?,
            "a chain quotient is not S0",
        )?;
    }
    let top = Rep::simple(&q, fp(2), 0).unwrap();
    match s_related(&p2, &top, &s, BUDGET).map_err(|e| e.to_string())? {
        SRelation::Related(path) => {
            check(path.len() == 1, format!("path of length {}", path.len()))?;
            check(
                path[0].forward && iso(path[0].seq.middle(), &s0).map_err(|e| e.to_string())?,
                "relation is not through S0",
            )?;
        }
        SRelation::NotRelated => return Err("P(2) and S(1) are not related".into()),
    }
    Ok("dims (m, m+1) for m = 0..10, quotients S0, P(2) ~ S(1) directly".into())
}

fn induced_iso() -> Outcome {
    let q = Arc::new(Quiver::linear(2));
    let s1 = Rep::simple(&q, fp(2), 0).unwrap();
    let s = check_hom_perp_set(&[s1]).map_err(|e| e.to_string())?;
    let p1 = Rep::projective(&q, fp(2), 0).unwrap();
    let p2 = Rep::projective(&q, fp(2), 1).unwrap();
    let InducedIso::Iso(w) = induced_iso_test(&p2, &p1, &s, STEPS, BUDGET).map_err(|e| e.to_string())? else {
        return Err("P2, P1 not iso".into());
    };
    check(
        iso(&w.common, &p1).map_err(|e| e.to_string())?,
        format!("L has dims {:?}", w.common.dims()),
    )?;
    for (seq, series) in [(&w.from_m, &w.series_m), (&w.from_n, &w.series_n)] {
        check(
            iso(seq.middle(), &w.common).map_err(|e| e.to_string())?,
            "witness middle is not L",
        )?;
        let cls = filt_membership(seq.quotient(), &s).map_err(|e| e.to_string())?;
        check(
            cls.as_ref().map(Vec::len) == Some(series.len()),
            "witness cokernel is not in filt",
        )?;
    }
    let sum = direct_sum(&q, fp(2), &[p1.clone(), p1.clone()])
        .map_err(|e| e.to_string())?
        .rep;
    let v = induced_iso_test(&p1, &sum, &s, STEPS, BUDGET).map_err(|e| e.to_string())?;
    check(
        matches!(v, InducedIso::NotIso),
        format!("(P1, P1+P1) gave {:?}", v.is_iso()),
    )?;
    Ok("P2 ~ P1 with L = P1, P1 !~ P1+P1".into())
}

fn relatedness() -> Outcome {
    let a2 = Arc::new(Quiver::linear(2));
    let a3 = Arc::new(Quiver::linear(3));
    let mut lines = Vec::new();
    for (name, gen, cap) in [
        ("A2/{S1}", Rep::simple(&a2, fp(2), 0).unwrap(), vec![2, 2]),
        ("A3/{M12}", rep(&a3, 2, &[1, 1, 0], &[&[1], &[]]), vec![2, 2, 2]),
    ] {
        let s = check_hom_perp_set(&[gen]).map_err(|e| e.to_string())?;
        let r = relatedness_harness(&s, &cap, STEPS, BUDGET).map_err(|e| e.to_string())?;
        check(
            r.passed(),
            format!(
                "{name}: violations {:?}, converse {:?}",
                r.violations, r.converse_violations
            ),
        )?;
        lines.push(format!(
            "{name}: {} candidates, {} pairs, {} iso, {} related, {} inconclusive",
            r.candidates.len(),
            r.pairs_checked,
            r.iso_pairs,
            r.related_pairs,
            r.inconclusive
        ));
    }
    Ok(lines.join("; "))
}

fn cli_round_trip() -> Outcome {
    let dir = common::fixtures();
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_none_or(|x| x != "uloc") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        let p = parse_problem(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        let back = parse_problem(&serialize_problem(&p)).map_err(|e| format!("{}: {e}", path.display()))?;
        check(back == p, format!("{} does not round-trip", path.display()))?;
        files += 1;
    }
    let exe = env!("CARGO_BIN_EXE_uniloc");
    let cases = common::cases();
    for case in &cases {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let mut cmd = Process::new(exe);
            cmd.arg(case.command.to_string())
                .arg("--input")
                .arg(common::fixture_path(case));
            for (k, v) in &case.operands {
                cmd.arg("--set").arg(format!("{k}={v}"));
            }
            let out = cmd.output().map_err(|e| e.to_string())?;
            check(
                out.status.code() == Some(case.exit),
                format!("{}: exit {:?}", case.name, out.status.code()),
            )?;
            outputs.push(out.stdout);
        }
        check(outputs[0] == outputs[1], format!("{}: runs differ", case.name))?;
        let golden = std::fs::read(common::golden_path(case)).map_err(|e| e.to_string())?;
        check(
            outputs[0] == golden,
            format!("{}: differs from its golden report", case.name),
        )?;
    }
    Ok(format!(
        "{files} fixtures round-trip, {} golden cases byte-identical over two runs",
        cases.len()
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("euler identity on random pairs", euler_identity),
        ("hom dimension against enumeration", hom_oracle),
        ("closure harness", closure_harness),
        ("chain kernel is the torsion submodule", kernel_is_torsion),
        ("A2 localized at S1", flagship_a2),
        ("A3 localized at S2", flagship_a3_middle),
        ("A3 localized at M12", flagship_a3_m12),
        ("Kronecker localized at S0", kronecker_non_stabilizing),
        ("induced isomorphism", induced_iso),
        ("isomorphism versus relatedness", relatedness),
        ("CLI round trip and golden stability", cli_round_trip),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
