//! Exact dense linear algebra over prime fields and the rationals.

mod algebra;
mod field;
mod mat;
mod smith;
pub mod subspaces;

pub use algebra::FiniteAlgebra;
pub use field::{FieldSpec, Scalar};
pub use mat::{Mat, Quotient, Rref};
pub use smith::{quotient_structure, smith_invariants};
