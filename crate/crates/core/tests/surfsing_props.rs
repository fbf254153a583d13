use proptest::prelude::*;
use witt_core::surfsing::{
    a_type_recognition, ekedahl_h0, embedding_power, example1_invariants, hessian_criterion, phi_bound,
    raynaud_invariants, PowerSeries3,
};
use witt_core::{FieldDescriptor, Ring};

const PRECISION: u32 = 12;

#[test]
fn raynaud_lattice_and_closed_forms_agree() {
    for p in [3i64, 5, 7, 11, 13] {
        for n in 2..=6 {
            for d in 1..=5 {
                let r = raynaud_invariants(p, n, d).unwrap();
                assert!(r.routes_agree, "({p}, {n}, {d})");
            }
        }
    }
}

#[test]
fn fermat_cubic_has_no_hessian_pair() {
    for p in [5u64, 7] {
        let f = FieldDescriptor::prime(p).unwrap();
        let g = PowerSeries3::from_ints(&f, PRECISION, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        let rep = hessian_criterion(&g).unwrap();
        assert!(rep.form.is_none(), "p = {p}");
        assert!(a_type_recognition(&g).is_err());
    }
}

#[test]
fn example_surfaces_stay_below_the_bound() {
    for p in [2u64, 5, 7, 11] {
        for d in 4..=10 {
            let e = example1_invariants(p, d).unwrap();
            let phi = phi_bound(e.chern()).unwrap();
            let h0 = ekedahl_h0(embedding_power(e.c1sq), (e.chi as i128).into(), e.c1sq);
            assert!(phi >= (e.n as i128 + 1).into(), "p = {p}, d = {d}");
            assert_eq!(phi, h0 * h0 - 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn a_type_survives_coordinate_changes_and_units(
        m in prop::collection::vec(0i64..5, 4),
        gamma in 1i64..5,
        unit in prop::collection::vec(0i64..5, 4),
    ) {
        let det = (m[0] * m[3] - m[1] * m[2]).rem_euclid(5);
        prop_assume!(det != 0 && unit[0] != 0);
        let f = FieldDescriptor::prime(5).unwrap();
        let e = |n: i64| f.from_int(n);
        let base = PowerSeries3::from_ints(&f, PRECISION, &[([1, 1, 0], 1), ([0, 0, 4], 1)]);
        let a = [[e(m[0]), e(m[1]), e(0)], [e(m[2]), e(m[3]), e(0)], [e(0), e(0), e(gamma)]];
        let u = PowerSeries3::from_ints(
            &f,
            PRECISION,
            &[([0, 0, 0], unit[0]), ([1, 0, 0], unit[1]), ([0, 1, 0], unit[2]), ([0, 0, 1], unit[3])],
        );
        let g = base.linear_change(&a).unwrap().mul(&u).unwrap();
        let rec = a_type_recognition(&g).unwrap();
        prop_assert_eq!(rec.n, 4);
        prop_assert!(rec.verified);
        prop_assert!(!rec.unit.constant_term().is_zero());
    }
}
