//! Randomized closure checks on the well-placed category: kernels, images,
//! cokernels and extensions of members must again be members.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};
use crate::homcalc::{ext_space, extension_from_cocycle, hom_space};
use crate::localise::{filt_membership, filt_membership_exhaustive, WellPlacedGen};
use crate::quiverrep::{cokernel, image, kernel, Rep};

#[derive(Clone, Debug)]
pub struct ClosureConfig {
    /// Longest composition series among the sampled members.
    pub max_length: usize,
    /// Random morphisms per ordered pair of samples, on top of the Hom basis.
    pub morphisms_per_pair: usize,
    /// Cap on the number of sampled members.
    pub max_samples: usize,
    /// Budget handed to each exhaustive membership search.
    pub budget: usize,
    pub seed: u64,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            max_length: 3,
            morphisms_per_pair: 2,
            max_samples: 24,
            budget: 20_000,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureCheck {
    pub kind: &'static str,
    pub checked: usize,
    pub passed: usize,
    /// Checks skipped because the exhaustive search ran out of budget.
    pub budget_exhausted: usize,
}

#[derive(Clone, Debug)]
pub struct Counterexample {
    pub kind: &'static str,
    pub module: Rep,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Dimension vectors of the sampled members with their series lengths.
    pub samples: Vec<(Vec<usize>, usize)>,
    pub checks: Vec<ClosureCheck>,
    pub counterexamples: Vec<Counterexample>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn budget_exhausted(&self) -> bool {
        self.checks.iter().any(|c| c.budget_exhausted > 0)
    }
}

const KINDS: [&str; 5] = ["extension", "kernel", "image", "cokernel", "pruned-agrees"];

struct Tally {
    checks: Vec<ClosureCheck>,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    fn record(&mut self, kind: &'static str, x: &Rep, s: &WellPlacedGen, budget: usize) -> Result<()> {
        let slot = KINDS.iter().position(|k| *k == kind).expect("known kind");
        self.checks[slot].checked += 1;
        let exhaustive = match filt_membership_exhaustive(x, s, budget) {
            Ok(r) => r,
            Err(Error::BudgetExceeded { .. }) => {
                self.checks[slot].budget_exhausted += 1;
                return Ok(());
            }
            Err(e) => return Err(e),
        };
        if exhaustive.is_some() {
            self.checks[slot].passed += 1;
        } else {
            self.counterexamples.push(Counterexample {
                kind,
                module: x.clone(),
                detail: format!("{kind} with dimension vector {:?} has no composition series", x.dims()),
            });
        }
        // the pruned test must agree with the exhaustive one
        self.checks[4].checked += 1;
        if filt_membership(x, s)?.is_some() == exhaustive.is_some() {
            self.checks[4].passed += 1;
        } else {
            self.counterexamples.push(Counterexample {
                kind: "pruned-agrees",
                module: x.clone(),
                detail: format!("pruned and exhaustive membership disagree on {:?}", x.dims()),
            });
        }
        Ok(())
    }
}

fn random_coeffs(f: FieldSpec, k: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let FieldSpec::Prime(p) = f else {
        unreachable!("harness runs over prime fields")
    };
    loop {
        let c: Vec<Scalar> = (0..k).map(|_| Scalar::Mod(rng.random_range(0..p))).collect();
        if k == 0 || c.iter().any(|x| !f.is_zero(x)) {
            return c;
        }
    }
}

/// Samples members of the well-placed category by iterated random
/// extensions of generators and checks, with the exhaustive membership
/// search, that kernels, images and cokernels of random morphisms between
/// them (and the extensions themselves) stay inside. The pruned membership
/// test is compared against the exhaustive one on every module checked.
pub fn verify_well_placed(s: &WellPlacedGen, cfg: &ClosureConfig) -> Result<ClosureReport> {
    let f = s.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedField { op: "closure harness" });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tally = Tally {
        checks: KINDS
            .iter()
            .map(|&kind| ClosureCheck {
                kind,
                checked: 0,
                passed: 0,
                budget_exhausted: 0,
            })
            .collect(),
        counterexamples: Vec::new(),
    };
    let mut samples: Vec<(Rep, usize)> = s.simples().iter().map(|x| (x.clone(), 1)).collect();
    let mut frontier: Vec<Rep> = s.simples().to_vec();
    for len in 2..=cfg.max_length {
        let mut next = Vec::new();
        for x in &frontier {
            for si in s.simples() {
                // both orders: S_i below x and S_i on top of x
                for (top, bottom) in [(si, x), (x, si)] {
                    if samples.len() + next.len() >= cfg.max_samples {
                        break;
                    }
                    let ext = ext_space(top, bottom)?;
                    let coeffs = random_coeffs(f, ext.dim(), &mut rng);
                    let seq = extension_from_cocycle(top, bottom, &ext.cocycle(&coeffs))?;
                    let mid = seq.middle().clone();
                    tally.record("extension", &mid, s, cfg.budget)?;
                    next.push(mid);
                }
            }
        }
        samples.extend(next.iter().map(|x| (x.clone(), len)));
        frontier = next;
    }
    for (x, _) in &samples {
        for (y, _) in &samples {
            let homs = hom_space(x, y)?;
            if homs.is_zero() {
                continue;
            }
            let mut maps: Vec<_> = homs.basis().to_vec();
            for _ in 0..cfg.morphisms_per_pair {
                maps.push(homs.element(&random_coeffs(f, homs.dim(), &mut rng)));
            }
            for g in maps {
                tally.record("kernel", &kernel(&g)?.0, s, cfg.budget)?;
                tally.record("image", &image(&g)?.0, s, cfg.budget)?;
                tally.record("cokernel", &cokernel(&g)?.0, s, cfg.budget)?;
            }
        }
    }
    Ok(ClosureReport {
        samples: samples.iter().map(|(x, l)| (x.dims().to_vec(), *l)).collect(),
        checks: tally.checks,
        counterexamples: tally.counterexamples,
    })
}
