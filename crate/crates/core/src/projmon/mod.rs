//! Relatively projective modules, Tor, and the monoid of finitely generated
//! projectives over the localisation.

mod membership;
mod monoid;
mod related;
mod tor;

pub use membership::{
    fac_cover, fac_membership, relproj_membership, FacCover, RelprojCertificate, RelprojVerdict, RelprojWitness,
};
pub use monoid::{
    generators_enumerate, k0_presentation, monoid_presentation, projective_class, K0Presentation, MonoidConfig,
    MonoidPresentation, Relation,
};
pub use related::{
    is_early, is_late, relatedness_harness, s_related, ObjectVerdict, RelatednessReport, RelationStep, SRelation,
};
pub use tor::{strip_top, tor1, tor_iso_test, tor_iso_with_covers, StrippedTop, Tor1, TorIso, TorIsoWitness};
