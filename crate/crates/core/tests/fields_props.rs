use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use witt_core::fields::linalg::solve_linear;
use witt_core::{Field, FieldDescriptor, Matrix, Ring};

fn small_fields() -> Vec<std::sync::Arc<FieldDescriptor>> {
    vec![
        FieldDescriptor::prime(2).unwrap(),
        FieldDescriptor::prime(3).unwrap(),
        FieldDescriptor::prime(5).unwrap(),
        FieldDescriptor::extension(2, 2).unwrap(),
        FieldDescriptor::extension(2, 3).unwrap(),
        FieldDescriptor::extension(3, 2).unwrap(),
    ]
}

#[test]
fn finite_field_axioms_exhaustive() {
    for f in small_fields() {
        let els = f.elements().unwrap();
        assert_eq!(els.len() as u64, f.order().unwrap());
        let (zero, one) = (f.zero(), f.one());
        for a in &els {
            assert_eq!(a.add(&zero), *a);
            assert_eq!(a.mul(&one), *a);
            assert!(a.add(&a.neg()).is_zero());
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one(), "{} in {}", a, f.name());
            }
            for b in &els {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in &els {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
            }
        }
    }
}

#[test]
fn p_power_detection_matches_exhaustive_search() {
    for f in small_fields() {
        let els = f.elements().unwrap();
        for a in &els {
            let root = a.is_p_power().expect("perfect field");
            assert_eq!(root.frobenius(), *a);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn frobenius_is_additive_and_multiplicative(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = FieldDescriptor::rational(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = f.random(&mut rng);
        let b = f.random(&mut rng);
        prop_assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
        prop_assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
    }

    #[test]
    fn p_power_roots_over_rational_functions(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let f = FieldDescriptor::rational(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = f.random(&mut rng);
        let root = a.frobenius().is_p_power();
        prop_assert_eq!(root, Some(a.clone()));
        if !a.is_zero() {
            // theta times a nonzero p-th power never is one
            prop_assert!(f.generator().mul(&a.frobenius()).is_p_power().is_none());
        }
    }

    #[test]
    fn solutions_and_kernels_check_out(codes in prop::collection::vec(0u32..5, 12), rhs in prop::collection::vec(0u32..5, 3)) {
        let f = FieldDescriptor::prime(5).unwrap();
        let zero = f.zero();
        let m = Matrix::from_vec(3, 4, codes.iter().map(|&c| f.from_code(c)).collect(), &zero);
        let b = Matrix::from_vec(3, 1, rhs.iter().map(|&c| f.from_code(c)).collect(), &zero);
        let sol = solve_linear(&m, &b).unwrap();
        prop_assert_eq!(sol.kernel.len(), 4 - m.rank());
        for v in &sol.kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        match sol.particular {
            Some(x) => prop_assert_eq!(m.mul(&x), b),
            None => {
                let mut aug = codes.clone();
                for (r, c) in rhs.iter().enumerate() {
                    aug.insert(r * 5 + 4, *c);
                }
                let a = Matrix::from_vec(3, 5, aug.iter().map(|&c| f.from_code(c)).collect(), &zero);
                prop_assert!(a.rank() > m.rank());
            }
        }
    }
}
