//! Universal localisation of path algebras of finite acyclic quivers.
//!
//! Modules are finite-dimensional quiver representations over `F_p` or `Q`.
//! A localisation is described by a Hom-perpendicular set of bound modules
//! ([`localise::WellPlacedGen`]); from it the crate computes torsion
//! submodules, localisation chains, induced-module isomorphism, the localized
//! algebra, and the monoid of projectives over it.

pub mod error;
pub mod exactlin;
pub mod homcalc;
pub mod localise;
pub mod projmon;
pub mod quiverrep;

pub use error::{Error, Result};
pub use exactlin::{FieldSpec, FiniteAlgebra, Mat, Scalar};
pub use localise::WellPlacedGen;
pub use quiverrep::{Quiver, Rep, RepMorphism, ShortExactSeq};
