mod common;

use common::*;
use proptest::prelude::*;
use uniloc_core::homcalc::{ext_space, extension_from_cocycle, hom_space};
use uniloc_core::quiverrep::{decompose, direct_sum, euler_form, is_isomorphic};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_identity_on_a3(m in arb_rep(a(3), 2, 2), n in arb_rep(a(3), 2, 2)) {
        let lhs = hom_space(&m, &n).unwrap().dim() as i64 - ext_space(&m, &n).unwrap().dim() as i64;
        prop_assert_eq!(lhs, euler_form(m.quiver(), &m.dimension_vector(), &n.dimension_vector()).unwrap());
    }

    #[test]
    fn euler_identity_on_kronecker_over_f5(m in arb_rep(kron(), 5, 2), n in arb_rep(kron(), 5, 2)) {
        let lhs = hom_space(&m, &n).unwrap().dim() as i64 - ext_space(&m, &n).unwrap().dim() as i64;
        prop_assert_eq!(lhs, euler_form(m.quiver(), &m.dimension_vector(), &n.dimension_vector()).unwrap());
    }

    #[test]
    fn hom_basis_elements_are_morphisms_and_independent(m in arb_rep(kron(), 2, 2), n in arb_rep(kron(), 2, 2)) {
        let h = hom_space(&m, &n).unwrap();
        for (k, g) in h.basis().iter().enumerate() {
            let mut e = vec![m.field().zero(); h.dim()];
            e[k] = m.field().one();
            prop_assert_eq!(h.coordinates(g), Some(e));
        }
    }

    #[test]
    fn extensions_realise_their_class(c in arb_rep(a(3), 2, 1), x in arb_rep(a(3), 2, 2)) {
        let ext = ext_space(&c, &x).unwrap();
        for cocycle in ext.cocycle_basis() {
            let seq = extension_from_cocycle(&c, &x, cocycle).unwrap();
            let class = ext.class_of(&seq.connecting_cocycle()).unwrap();
            prop_assert_eq!(ext.class_of(cocycle).unwrap(), class);
            prop_assert_eq!(seq.middle().total_dim(), c.total_dim() + x.total_dim());
        }
    }

    #[test]
    fn decomposition_reassembles(m in arb_rep(kron(), 2, 2)) {
        let dec = decompose(&m, 4096).unwrap();
        let sum = direct_sum(m.quiver(), m.field(), &dec.reps()).unwrap();
        prop_assert!(is_isomorphic(&sum.rep, &m, 4096).unwrap().is_iso());
    }
}
