use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_core::reslie::{
    add_vec, automorphism_points, scale_vec, semidirect_product, standard_algebra, toral_rank_lower_bound,
    ResLieAlgebra, StandardAlgebra,
};
use witt_core::{FieldDescriptor, Matrix, Ring};

fn algebras(p: u64) -> Vec<Arc<ResLieAlgebra>> {
    let f = FieldDescriptor::prime(p).unwrap();
    [
        StandardAlgebra::Gl(2),
        StandardAlgebra::Sl(2),
        StandardAlgebra::SemidirectKnGl1(2),
        StandardAlgebra::Witt(f.from_int(1)),
    ]
    .iter()
    .map(|a| standard_algebra(a, &f).unwrap())
    .collect()
}

fn p_closed_on_all(g: &ResLieAlgebra) {
    let p = g.p();
    for x in g.all_vectors().unwrap() {
        let xp = g.p_map(&x);
        assert_eq!(xp, g.p_map_descending(&x));
        assert_eq!(g.ad(&xp), g.ad(&x).pow(p));
    }
}

#[test]
fn jacobson_identity_and_fold_order_exhaustive_p3() {
    for g in algebras(3) {
        p_closed_on_all(&g);
    }
}

#[test]
fn direct_sums_add_toral_ranks() {
    for p in [2u64, 3] {
        let f = FieldDescriptor::prime(p).unwrap();
        let gl1 = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let triv = standard_algebra(&StandardAlgebra::Trivial(1), &f).unwrap();
        let zero = Matrix::zeros(1, 1, &f.zero());
        let cases = [(&gl1, &gl1, 2), (&triv, &gl1, 1), (&triv, &triv, 0)];
        for (a, h, expected) in cases {
            let sum = semidirect_product(a, h, std::slice::from_ref(&zero)).unwrap();
            let ra = toral_rank_lower_bound(a, 1).unwrap();
            let rh = toral_rank_lower_bound(h, 1).unwrap();
            assert_eq!(ra + rh, expected);
            assert_eq!(toral_rank_lower_bound(&sum, 1).unwrap(), expected, "p = {p}");
        }
    }
}

#[test]
fn automorphisms_of_one_dimensional_algebras() {
    for (p, k) in [(2u64, 2usize), (3, 1), (3, 2), (5, 1)] {
        let f = FieldDescriptor::prime(p).unwrap();
        let target = FieldDescriptor::extension(p, k).unwrap();
        let q = target.order().unwrap();
        let gl1 = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let triv = standard_algebra(&StandardAlgebra::Trivial(1), &f).unwrap();
        // t -> ct preserves t^[p] = t exactly when c^p = c
        assert_eq!(automorphism_points(&gl1, &target).unwrap().count, p - 1);
        assert_eq!(automorphism_points(&triv, &target).unwrap().count, q - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn restricted_axioms_hold_p5(seed in any::<u64>(), which in 0usize..4) {
        let g = algebras(5).swap_remove(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.random_vector(&mut rng);
        let y = g.random_vector(&mut rng);
        let c = g.field().random(&mut rng);
        let xp = g.p_map(&x);
        prop_assert_eq!(&xp, &g.p_map_descending(&x));
        prop_assert_eq!(g.p_map(&scale_vec(&x, &c)), scale_vec(&xp, &c.pow(5)));
        let sum = add_vec(&add_vec(&xp, &g.p_map(&y)), &g.s_sum(&x, &y));
        prop_assert_eq!(g.p_map(&add_vec(&x, &y)), sum);
        prop_assert_eq!(g.ad(&xp), g.ad(&x).pow(5));
    }
}
