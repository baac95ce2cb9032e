mod common;

use common::*;
use proptest::prelude::*;
use uniloc_core::homcalc::hom_space;
use uniloc_core::localise::{
    check_hom_perp_set, filt_membership, filt_membership_exhaustive, homperp_membership, is_perp, localize,
    reduce_to_homperp, trace_torsion_submodule, ReductionStatus,
};
use uniloc_core::quiverrep::{cokernel, is_isomorphic};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn chain_kernel_is_the_torsion_submodule(m in arb_rep(a(2), 2, 3)) {
        let s = check_hom_perp_set(&[simple(&a(2), 2, 0)]).unwrap();
        let chain = localize(&m, &s, 8).unwrap();
        let (t, _) = trace_torsion_submodule(&m, &s).unwrap();
        prop_assert_eq!(chain.kernel.dims(), t.dims());
        prop_assert!(filt_membership(&chain.kernel, &s).unwrap().is_some());
        for step in &chain.steps {
            prop_assert!(filt_membership(step.seq.quotient(), &s).unwrap().is_some());
        }
        prop_assert!(chain.stabilized);
        prop_assert!(is_perp(chain.value(), &s).unwrap());
        let unit = chain.unit().unwrap();
        prop_assert_eq!(unit.ranks().iter().sum::<usize>(), m.total_dim() - t.total_dim());
    }

    #[test]
    fn kronecker_chain_quotients_are_generators(m in arb_rep(kron(), 2, 2)) {
        let s = check_hom_perp_set(&[s0(2)]).unwrap();
        let chain = localize(&m, &s, 3).unwrap();
        for step in &chain.steps {
            prop_assert!(filt_membership(step.seq.quotient(), &s).unwrap().is_some());
            prop_assert_eq!(step.torsion_removed, 0);
        }
        if chain.stabilized {
            prop_assert!(is_perp(chain.value(), &s).unwrap());
        }
    }

    #[test]
    fn pruned_filt_agrees_with_search(m in arb_rep(kron(), 2, 2)) {
        let s = check_hom_perp_set(&[s0(2)]).unwrap();
        prop_assert_eq!(
            filt_membership(&m, &s).unwrap().is_some(),
            filt_membership_exhaustive(&m, &s, 1 << 14).unwrap().is_some()
        );
    }

    #[test]
    fn torsion_quotient_is_torsion_free(m in arb_rep(a(3), 2, 2)) {
        let s = check_hom_perp_set(&[m12(2)]).unwrap();
        let (_, inc) = trace_torsion_submodule(&m, &s).unwrap();
        let (quot, _) = cokernel(&inc).unwrap();
        prop_assert!(hom_space(&m12(2), &quot).unwrap().is_zero());
    }

    #[test]
    fn reduction_lands_in_homperp_when_bound_compatible(m in arb_rep(a(3), 2, 2)) {
        let s = check_hom_perp_set(&[simple(&a(3), 2, 1)]).unwrap();
        let r = reduce_to_homperp(&m, &s, 4096).unwrap();
        prop_assert!(r.inclusion.is_injective());
        let (quot, _) = cokernel(&r.inclusion).unwrap();
        prop_assert!(filt_membership(&quot, &s).unwrap().is_some());
        for si in s.simples() {
            prop_assert!(hom_space(&r.sub, si).unwrap().is_zero());
        }
        if matches!(r.status, ReductionStatus::BoundCompatible) && r.incoming_hom.is_none() {
            prop_assert!(homperp_membership(&r.sub, &s).unwrap() || !uniloc_core::homcalc::is_bound(&r.sub).unwrap());
        }
    }

    #[test]
    fn localizing_twice_changes_nothing(m in arb_rep(a(3), 2, 2)) {
        let s = check_hom_perp_set(&[m12(2)]).unwrap();
        let once = localize(&m, &s, 8).unwrap();
        prop_assume!(once.stabilized);
        let twice = localize(once.value(), &s, 8).unwrap();
        prop_assert!(twice.steps.is_empty());
        prop_assert!(is_isomorphic(twice.value(), once.value(), 4096).unwrap().is_iso());
    }
}
