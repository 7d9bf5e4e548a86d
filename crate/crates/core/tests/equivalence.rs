mod common;

use proptest::prelude::*;
use rand::Rng;
use ratsum::{equiv_test, group_classes, pfd, PolyK, RatNK};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn orbit_pairs_are_equivalent(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let dk = r.gen_range(1..=3);
        let b = common::random_irreducible(&mut r, dk);
        let m1 = common::random_map(&mut r);
        let m2 = common::random_map(&mut r);
        let b2 = m1.apply(&b).scale(&common::random_unit(&mut r));
        let b3 = m2.apply(&b2).scale(&common::random_unit(&mut r));

        let (f, u) = equiv_test(&b, &b2).expect("orbit member");
        prop_assert_eq!(f.apply(&b), b2.scale(&u));
        let (g, v) = equiv_test(&b2, &b).expect("symmetric");
        prop_assert_eq!(g.apply(&b2), b.scale(&v));
        // apply(b, f) ~ b2 and apply(b2, m2) ~ b3 give apply(b, f . m2) ~ b3
        let h = f.compose(&m2);
        let lhs = h.apply(&b);
        let (_, w) = equiv_test(&b, &b3).expect("transitive");
        prop_assert_eq!(lhs.monic(), b3.monic());
        prop_assert!(!w.is_zero());
        prop_assert_eq!(f.invert().apply(&b2.scale(&u)), b.clone());
    }

    #[test]
    fn orbit_terms_share_a_class(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let b = common::random_irreducible(&mut r, 2);
        let b2 = common::random_map(&mut r).apply(&b);
        let f = &RatNK::from_polyk_ratio(&PolyK::one(), &b)
            + &RatNK::from_polyk_ratio(&PolyK::one(), &b2);
        let classes = group_classes(&pfd(&f).terms);
        prop_assert_eq!(classes.len(), 1);
        prop_assert_eq!(classes[0].members.len(), if b.monic() == b2.monic() { 1 } else { 2 });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn distinct_cubics_are_not_equivalent(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let b1 = common::random_irreducible(&mut r, 3);
        let b2 = common::random_irreducible(&mut r, 3);
        prop_assume!(b1.monic() != b2.monic());
        prop_assert!(equiv_test(&b1, &b2).is_none());
        for n0 in [3, 7] {
            prop_assert!(!common::grid_equivalent_at(&b1, &b2, n0));
        }
    }
}
