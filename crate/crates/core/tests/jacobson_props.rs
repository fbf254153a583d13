use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use witt_core::fields::parse::parse_element;
use witt_core::jacobson::{fixed_subring, p_closed_scalar, DerivationSet, InsepExtension};
use witt_core::truncalg::TruncElement;
use witt_core::{FieldDescriptor, FieldElement, Ring};

/// A sum of at most two monomials in `T_1..T_r` with coefficients in `F_p`.
fn random_element(ext: &InsepExtension, rng: &mut ChaCha8Rng) -> TruncElement<FieldElement> {
    let base = ext.base();
    let mut v = vec![base.zero(); ext.dim()];
    for _ in 0..2 {
        v[rng.gen_range(0..ext.dim())] = base.from_int(rng.gen_range(0..ext.p() as i64));
    }
    ext.algebra().from_vector(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn every_derivation_of_a_simple_extension_is_p_closed(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let base = FieldDescriptor::rational(p).unwrap();
        let ext = InsepExtension::new(&base, vec![parse_element(&base, "theta+1").unwrap()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_element(&ext, &mut rng);
        prop_assume!(!f.is_zero());
        let h = DerivationSet::from_values(&ext, vec![vec![f]]).unwrap();
        prop_assert!(p_closed_scalar(&ext, &h.generators()[0]).unwrap().is_some());
    }

    #[test]
    fn fixed_subring_is_a_subfield_containing_the_base(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3])) {
        let base = FieldDescriptor::rational_multi(p, 2).unwrap();
        let mus = ["theta1", "theta2+1"].iter().map(|s| parse_element(&base, s).unwrap()).collect();
        let ext = InsepExtension::new(&base, mus).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (0..2)
            .map(|_| vec![random_element(&ext, &mut rng), random_element(&ext, &mut rng)])
            .collect();
        let h = DerivationSet::from_values(&ext, values).unwrap();
        let fixed = fixed_subring(&h);
        prop_assert!(fixed.multiplicatively_closed);
        prop_assert!(fixed.contains_base);
        prop_assert!(fixed.dim() >= 1);
    }
}
