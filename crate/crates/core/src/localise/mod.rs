//! Well-placed generator sets, torsion, localisation chains and the localized algebra.

mod algebra;
mod chain;
mod generators;
mod harness;
mod homperp;
mod iso;
mod search;
mod torsion;

pub use algebra::{localized_algebra, GabrielQuiver, LocalizedAlgebra};
pub use chain::{localize, ChainStep, LocalizationChain};
pub(crate) use generators::endomorphism_algebra;
pub use generators::{check_hom_perp_set, check_hom_perp_set_labelled, Certificate, Rejection, WellPlacedGen};
pub use harness::{verify_well_placed, ClosureCheck, ClosureConfig, ClosureReport, Counterexample};
pub use homperp::{homperp_membership, reduce_to_homperp, HomperpReduction, ReductionStatus};
pub use iso::{induced_iso_test, CommonOvermodule, InducedIso};
pub use search::{search_homs, SearchOutcome};
pub use torsion::{
    filt_membership, filt_membership_exhaustive, is_perp, trace_filtration, trace_torsion_submodule, TraceStep,
};
