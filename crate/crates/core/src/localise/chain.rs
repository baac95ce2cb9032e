//! Localisation chains `M/t(M) = M_0 ⊂ M_1 ⊂ ...` built from universal extensions.

use crate::error::Result;
use crate::homcalc::universal_extension;
use crate::localise::{is_perp, trace_torsion_submodule, WellPlacedGen};
use crate::quiverrep::{cokernel, Rep, RepMorphism, ShortExactSeq};

#[derive(Clone, Debug)]
pub struct ChainStep {
    /// `0 -> M_n -> M_{n+1} -> E_n -> 0`.
    pub seq: ShortExactSeq,
    /// `dim Ext(S_i, M_n)` for each generator.
    pub multiplicities: Vec<usize>,
    /// Total dimension of the torsion that appeared in the universal extension
    /// and was factored out (nonzero only when some `End(S_i)` is larger than
    /// the ground field).
    pub torsion_removed: usize,
}

/// An initial segment of the directed system whose union is `M ⊗ R_E`.
#[derive(Clone, Debug)]
pub struct LocalizationChain {
    pub module: Rep,
    /// `t(M)`, the kernel of `M -> M ⊗ R_E`, with its inclusion.
    pub kernel: Rep,
    pub kernel_inclusion: RepMorphism,
    /// `M/t(M)` with the projection from `M`.
    pub base: Rep,
    pub base_projection: RepMorphism,
    pub steps: Vec<ChainStep>,
    /// The last term lies in the perpendicular category, so it is `M ⊗ R_E`.
    pub stabilized: bool,
}

impl LocalizationChain {
    /// The last computed term; equal to `M ⊗ R_E` when stabilized.
    pub fn value(&self) -> &Rep {
        self.steps.last().map_or(&self.base, |s| s.seq.middle())
    }

    /// `M_0, M_1, ...`.
    pub fn terms(&self) -> Vec<&Rep> {
        std::iter::once(&self.base)
            .chain(self.steps.iter().map(|s| s.seq.middle()))
            .collect()
    }

    pub fn dimension_vectors(&self) -> Vec<Vec<usize>> {
        self.terms().iter().map(|t| t.dims().to_vec()).collect()
    }

    /// The composite inclusion `M_0 -> M_k`.
    pub fn inclusion_into_term(&self, k: usize) -> Result<RepMorphism> {
        let mut acc = RepMorphism::identity(&self.base);
        for step in &self.steps[..k] {
            acc = step.seq.inclusion().compose(&acc)?;
        }
        Ok(acc)
    }

    /// The composite inclusion `M_0 -> value`.
    pub fn inclusion_into_value(&self) -> Result<RepMorphism> {
        self.inclusion_into_term(self.steps.len())
    }

    /// The map `M -> value`, with kernel `t(M)`.
    pub fn unit(&self) -> Result<RepMorphism> {
        self.inclusion_into_value()?.compose(&self.base_projection)
    }

    /// Runs up to `more` further steps, stopping early once stabilized.
    pub fn extend(&mut self, s: &WellPlacedGen, more: usize) -> Result<()> {
        for _ in 0..more {
            if is_perp(self.value(), s)? {
                self.stabilized = true;
                return Ok(());
            }
            let cur = self.value().clone();
            let ue = universal_extension(s.simples(), &cur)?;
            let mid = ue.seq.middle();
            let (t, ti) = trace_torsion_submodule(mid, s)?;
            let step = if t.is_zero() {
                ChainStep {
                    seq: ue.seq,
                    multiplicities: ue.multiplicities,
                    torsion_removed: 0,
                }
            } else {
                let (_, proj) = mid.quotient_by(ti.maps())?;
                let inc = proj.compose(ue.seq.inclusion())?;
                let (_, cp) = cokernel(&inc)?;
                ChainStep {
                    seq: ShortExactSeq::new(inc, cp)?,
                    multiplicities: ue.multiplicities,
                    torsion_removed: t.total_dim(),
                }
            };
            self.steps.push(step);
        }
        self.stabilized = is_perp(self.value(), s)?;
        Ok(())
    }
}

/// Localises `m`: factors out `t(m)`, then adjoins universal extensions by
/// the generators until the term is perpendicular to them or `max_steps`
/// steps have been taken. Non-stabilization is reported, not an error.
pub fn localize(m: &Rep, s: &WellPlacedGen, max_steps: usize) -> Result<LocalizationChain> {
    let (kernel, kernel_inclusion) = trace_torsion_submodule(m, s)?;
    let (base, base_projection) = m.quotient_by(kernel_inclusion.maps())?;
    let mut chain = LocalizationChain {
        module: m.clone(),
        kernel,
        kernel_inclusion,
        base,
        base_projection,
        steps: Vec::new(),
        stabilized: false,
    };
    chain.extend(s, max_steps)?;
    Ok(chain)
}
