use std::sync::Arc;

use proptest::prelude::*;
use witt_core::truncalg::{c_polynomial_symbolic, DerivationMatrix, TruncAlgebra, TruncElement};
use witt_core::{FieldDescriptor, FieldElement, Ring};

type Alg = Arc<TruncAlgebra<FieldElement>>;

fn alg(p: u64, w: i64) -> Alg {
    TruncAlgebra::univariate(FieldDescriptor::prime(p).unwrap().from_int(w))
}

fn element(a: &Alg, codes: &[u32]) -> TruncElement<FieldElement> {
    let f = a.coeff_zero().descriptor().clone();
    a.from_univariate(&codes.iter().map(|&c| f.from_code(c)).collect::<Vec<_>>())
}

/// Every coefficient vector of length `p` over `F_p`.
fn all_codes(p: u64) -> Vec<Vec<u32>> {
    let n = (p as usize).pow(p as u32);
    (0..n)
        .map(|mut i| {
            (0..p)
                .map(|_| {
                    let c = (i % p as usize) as u32;
                    i /= p as usize;
                    c
                })
                .collect()
        })
        .collect()
}

fn codes(p: u64) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0..p as u32, p as usize)
}

#[test]
fn multiplication_laws_exhaustive_small() {
    for (p, w) in [(2, 0), (2, 1), (3, 0), (3, 2)] {
        let a = alg(p, w);
        let els: Vec<_> = all_codes(p).iter().map(|c| element(&a, c)).collect();
        for x in &els {
            for y in &els {
                let xy = x.trunc_mul(y).unwrap();
                assert_eq!(xy, y.trunc_mul(x).unwrap());
                for z in &els {
                    assert_eq!(xy.trunc_mul(z).unwrap(), x.trunc_mul(&y.trunc_mul(z).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn c_coefficient_routes_agree_exhaustive_p3() {
    for w in 0..3 {
        let a = alg(3, w);
        for c in all_codes(3) {
            let f = element(&a, &c);
            let cc = f.c_coefficient().unwrap();
            assert_eq!(cc, f.evans_fuchs().unwrap(), "f = {f}");
            assert_eq!(cc, f.c_coefficient_reduced().unwrap(), "f = {f}");
        }
    }
}

#[test]
fn p_power_of_f_d_is_c_times_f_d_exhaustive() {
    for p in [3u64, 5] {
        for w in 0..3 {
            let a = alg(p, w);
            for c in all_codes(p) {
                let f = element(&a, &c);
                let d = DerivationMatrix::from_values(&a, std::slice::from_ref(&f)).unwrap();
                let cc = f.c_coefficient().unwrap();
                assert_eq!(d.operator_p_power().unwrap(), d.scale(&cc), "p = {p}, w = {w}, f = {f}");
            }
        }
    }
}

#[test]
fn symbolic_c_specialises_to_numeric_c() {
    for p in [3u64, 5] {
        let sym = c_polynomial_symbolic(p).unwrap();
        for w in 0..p as i64 {
            let a = alg(p, w);
            for c in all_codes(p).into_iter().step_by(7) {
                let f = element(&a, &c);
                let mut point: Vec<u64> = c.iter().map(|&x| x as u64).collect();
                point.push(w as u64);
                assert_eq!(sym.eval_mod(&point), f.c_coefficient().unwrap().code().unwrap() as u64);
            }
        }
    }
}

#[test]
fn symbolic_c_is_homogeneous_in_l() {
    for p in [2u64, 3, 5, 7] {
        let c = c_polynomial_symbolic(p).unwrap();
        let idx: Vec<usize> = (0..p as usize).collect();
        assert!(c.is_homogeneous_in(&idx, p as u32 - 1), "p = {p}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn c_coefficient_routes_agree_p5(c in codes(5), w in 0i64..5) {
        let f = element(&alg(5, w), &c);
        let cc = f.c_coefficient().unwrap();
        prop_assert_eq!(&cc, &f.evans_fuchs().unwrap());
        prop_assert_eq!(&cc, &f.c_coefficient_reduced().unwrap());
    }

    #[test]
    fn multiplication_laws_p5(x in codes(5), y in codes(5), z in codes(5), w in 0i64..5) {
        let a = alg(5, w);
        let (x, y, z) = (element(&a, &x), element(&a, &y), element(&a, &z));
        prop_assert_eq!(x.trunc_mul(&y).unwrap(), y.trunc_mul(&x).unwrap());
        prop_assert_eq!(
            x.trunc_mul(&y).unwrap().trunc_mul(&z).unwrap(),
            x.trunc_mul(&y.trunc_mul(&z).unwrap()).unwrap()
        );
        prop_assert_eq!(
            x.trunc_mul(&y.checked_add(&z).unwrap()).unwrap(),
            x.trunc_mul(&y).unwrap().checked_add(&x.trunc_mul(&z).unwrap()).unwrap()
        );
    }

    #[test]
    fn substitution_into_maximal_ideal_is_associative(
        f in codes(5),
        mut g in codes(5),
        mut h in codes(5),
    ) {
        // g, h in (t) over k[t]/(t^5), so both substitutions are ring maps
        g[0] = 0;
        h[0] = 0;
        let a = alg(5, 0);
        let (f, g, h) = (element(&a, &f), element(&a, &g), element(&a, &h));
        let left = f.substitute(&g.substitute(&h).unwrap()).unwrap();
        let right = f.substitute(&g).unwrap().substitute(&h).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn c_scales_by_p_minus_one_power(c in codes(5), s in 1u32..5, w in 0i64..5) {
        let a = alg(5, w);
        let f = element(&a, &c);
        let k = a.coeff_zero().descriptor().from_code(s);
        let lhs = f.scale(&k).c_coefficient().unwrap();
        prop_assert_eq!(lhs, k.pow(4).mul(&f.c_coefficient().unwrap()));
    }
}
