use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_core::autgroup::{
    ad_composition_order, membership, random_member, witt_bracket, witt_p_map, AdOrder, CoeffElem, CoeffRing,
    CoeffRingKind, GroupElement,
};
use witt_core::FieldDescriptor;

fn dual(p: u64) -> Arc<CoeffRing> {
    CoeffRing::new(CoeffRingKind::Dual, &FieldDescriptor::prime(p).unwrap())
}

fn vector(r: &Arc<CoeffRing>, rng: &mut ChaCha8Rng) -> Vec<CoeffElem> {
    (0..r.p()).map(|_| r.random(rng)).collect()
}

fn is_member(g: &GroupElement) -> bool {
    membership(g.coeffs(), g.omega()).unwrap().member
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn group_laws_over_dual_numbers(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), w in 0i64..3) {
        let r = dual(p);
        let omega = r.from_int(w);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_member(&r, &omega, &mut rng).unwrap();
        let h = random_member(&r, &omega, &mut rng).unwrap();
        let k = random_member(&r, &omega, &mut rng).unwrap();
        let e = GroupElement::identity(&omega).unwrap();
        let gh = g.compose(&h).unwrap();
        prop_assert!(is_member(&gh));
        prop_assert!(gh.compose(&k).unwrap() == g.compose(&h.compose(&k).unwrap()).unwrap());
        prop_assert!(g.compose(&e).unwrap() == g && e.compose(&g).unwrap() == g);
        let gi = g.invert().unwrap();
        prop_assert!(is_member(&gi));
        prop_assert!(g.compose(&gi).unwrap().is_identity());
        prop_assert!(gi.compose(&g).unwrap().is_identity());
    }

    #[test]
    fn adjoint_is_a_restricted_anti_homomorphism(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5]), w in 0i64..3) {
        let r = dual(p);
        let omega = r.from_int(w);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_member(&r, &omega, &mut rng).unwrap();
        let h = random_member(&r, &omega, &mut rng).unwrap();
        let (f, u) = (vector(&r, &mut rng), vector(&r, &mut rng));
        let alg = g.algebra().clone();
        let order = ad_composition_order(&g, &h, &f).unwrap();
        prop_assert!(matches!(order, AdOrder::HThenG | AdOrder::Both), "{:?}", order);
        let (af, au) = (g.adjoint(&f).unwrap(), g.adjoint(&u).unwrap());
        prop_assert_eq!(g.adjoint(&witt_bracket(&alg, &f, &u).unwrap()).unwrap(), witt_bracket(&alg, &af, &au).unwrap());
        prop_assert_eq!(g.adjoint(&witt_p_map(&alg, &f).unwrap()).unwrap(), witt_p_map(&alg, &af).unwrap());
    }
}
