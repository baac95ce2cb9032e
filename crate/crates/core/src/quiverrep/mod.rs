//! Quivers, their representations, and the exact-category constructions on them.

mod decompose;
mod enumerate;
mod ops;
mod quiver;
mod rep;

pub use decompose::{decompose, is_indecomposable, is_isomorphic, Decomposition, IsoVerdict, Summand};
pub use enumerate::{all_reps_with_dims, dimension_vectors_up_to, indecomposables_up_to, submodule_enumerate};
pub use ops::{cokernel, direct_sum, image, kernel, lift_through_mono, pushout, DirectSum};
pub use quiver::{euler_form, Quiver};
pub use rep::{Rep, RepMorphism, ShortExactSeq, Splitting};
