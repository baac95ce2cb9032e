//! Hom and Ext between representations, extensions, and maps between projectives.

mod extensions;
mod projective;
mod spaces;

pub use extensions::{extension_from_cocycle, universal_extension, UniversalExtension};
pub use projective::{is_bound, is_projective, sigma_to_generators, split_projective_map};
pub(crate) use spaces::flatten;
pub use spaces::{difference_map, euler_of, ext_space, hom_minus_ext, hom_space, ExtSpace, HomSpace};
