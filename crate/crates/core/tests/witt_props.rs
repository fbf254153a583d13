use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_core::reslie::fingerprint;
use witt_core::witt::build_witt;
use witt_core::{FieldDescriptor, Ring};

#[test]
fn fingerprint_does_not_depend_on_omega_over_prime_fields() {
    for p in [3u64, 5] {
        let f = FieldDescriptor::prime(p).unwrap();
        let prints: Vec<_> = (0..p as i64)
            .map(|w| fingerprint(build_witt(&f.from_int(w)).unwrap().algebra(), 1).unwrap())
            .collect();
        assert!(prints.windows(2).all(|w| w[0] == w[1]), "p = {p}: {prints:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn three_p_maps_agree_over_rational_functions(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = FieldDescriptor::rational(p).unwrap();
        let w = build_witt(&f.generator()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = w.algebra().random_vector(&mut rng);
        prop_assert!(w.p_map_three_way(&v).is_ok());
    }

    #[test]
    fn bracket_matches_commutator_of_derivations(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let f = FieldDescriptor::rational(p).unwrap();
        let w = build_witt(&f.generator().add(&f.one())).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = w.algebra().random_vector(&mut rng);
        let y = w.algebra().random_vector(&mut rng);
        let lhs = w.derivation(&w.algebra().bracket_vec(&x, &y)).unwrap();
        let rhs = w.derivation(&x).unwrap().bracket(&w.derivation(&y).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn c_formula_matches_operator_power_over_finite_fields(seed in any::<u64>(), omega in 0u32..9) {
        let f = FieldDescriptor::extension(3, 2).unwrap();
        let w = build_witt(&f.from_code(omega)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = w.algebra().random_vector(&mut rng);
        let by_c = w.witt_p_map(&w.polynomial(&v)).unwrap();
        let by_op = w.derivation(&v).unwrap().operator_p_power().unwrap().values()[0].to_vector();
        prop_assert_eq!(by_c, by_op);
    }
}
