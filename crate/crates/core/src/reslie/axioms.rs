use rand::Rng;
use serde::Serialize;

use crate::ring::Ring;

use super::{add_vec, ResLieAlgebra, Vector};

/// Above this many points the vector and pair sweeps fall back to sampling.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub passed: bool,
    /// Whether every vector of the algebra was checked for (R1), (R2) and fold order.
    pub vectors_exhaustive: bool,
    pub vectors_checked: u64,
    /// Whether every pair of vectors was checked for (R3).
    pub pairs_exhaustive: bool,
    pub pairs_checked: u64,
    pub failure: Option<String>,
}

fn show(g: &ResLieAlgebra, v: &[crate::fields::FieldElement]) -> String {
    let parts: Vec<String> = v
        .iter()
        .zip(g.labels())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, l)| format!("{c}*{l}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Check antisymmetry and Jacobi on basis triples, then (R1), (R2), fold-order
/// independence and (R3), exhaustively when the algebra has at most
/// [`EXHAUSTIVE_LIMIT`] vectors (pairs), otherwise on `sample_budget` samples.
pub fn verify_axioms<G: Rng + ?Sized>(g: &ResLieAlgebra, sample_budget: usize, rng: &mut G) -> AxiomReport {
    let mut report = AxiomReport {
        passed: false,
        vectors_exhaustive: false,
        vectors_checked: 0,
        pairs_exhaustive: false,
        pairs_checked: 0,
        failure: None,
    };
    let n = g.dim();
    let l = g.labels();
    for i in 0..n {
        for j in 0..n {
            let s = add_vec(&g.bracket_constants()[i][j], &g.bracket_constants()[j][i]);
            if s.iter().any(|x| !x.is_zero()) {
                report.failure = Some(format!("antisymmetry fails on ({}, {})", l[i], l[j]));
                return report;
            }
        }
    }
    if let Some((i, j, k)) = g.jacobi_failure() {
        report.failure = Some(format!("Jacobi fails on ({}, {}, {})", l[i], l[j], l[k]));
        return report;
    }
    let p = g.p();
    for i in 0..n {
        if g.ad(&g.pmap_constants()[i]) != g.ad_basis(i).pow(p) {
            report.failure = Some(format!("(R1) fails on basis vector {}", l[i]));
            return report;
        }
    }

    let field = g.field();
    let size = field.order().and_then(|q| q.checked_pow(n as u32));
    let vectors: Vec<Vector> = match size {
        Some(s) if s <= EXHAUSTIVE_LIMIT => {
            report.vectors_exhaustive = true;
            g.all_vectors().expect("finite field below the limit")
        }
        _ => (0..sample_budget).map(|_| g.random_vector(rng)).collect(),
    };
    for x in &vectors {
        let xp = g.p_map(x);
        if g.ad(&xp) != g.ad(x).pow(p) {
            report.failure = Some(format!("(R1) fails at x = {}", show(g, x)));
            return report;
        }
        if g.p_map_descending(x) != xp {
            report.failure = Some(format!("fold order changes the p-map at x = {}", show(g, x)));
            return report;
        }
        let c = field.random(rng);
        let cx: Vector = x.iter().map(|a| a.mul(&c)).collect();
        let cp = c.pow(p);
        if g.p_map(&cx) != xp.iter().map(|a| a.mul(&cp)).collect::<Vector>() {
            report.failure = Some(format!("(R2) fails at x = {}, scalar {c}", show(g, x)));
            return report;
        }
        report.vectors_checked += 1;
    }

    let pair_size = field.order().and_then(|q| q.checked_pow(2 * n as u32));
    let pairs: Vec<(Vector, Vector)> = match pair_size {
        Some(s) if s <= EXHAUSTIVE_LIMIT => {
            report.pairs_exhaustive = true;
            let all = g.all_vectors().expect("finite field below the limit");
            all.iter().flat_map(|x| all.iter().map(move |y| (x.clone(), y.clone()))).collect()
        }
        _ => (0..sample_budget).map(|_| (g.random_vector(rng), g.random_vector(rng))).collect(),
    };
    for (x, y) in &pairs {
        let lhs = g.p_map(&add_vec(x, y));
        let rhs = add_vec(&add_vec(&g.p_map(x), &g.p_map(y)), &g.s_sum(x, y));
        if lhs != rhs {
            report.failure = Some(format!("(R3) fails at x = {}, y = {}", show(g, x), show(g, y)));
            return report;
        }
        report.pairs_checked += 1;
    }
    report.passed = true;
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDescriptor;
    use crate::reslie::{standard_algebra, StandardAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn standard_algebras_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3] {
            let f = FieldDescriptor::prime(p).unwrap();
            for name in [
                StandardAlgebra::Trivial(3),
                StandardAlgebra::Gl(2),
                StandardAlgebra::Sl(2),
                StandardAlgebra::Gl1,
                StandardAlgebra::SemidirectKnGl1(2),
            ] {
                let g = standard_algebra(&name, &f).unwrap();
                let r = verify_axioms(&g, 100, &mut rng);
                assert!(r.passed, "{name:?} over F_{p}: {:?}", r.failure);
                assert!(r.vectors_exhaustive);
            }
        }
    }

    #[test]
    fn tampered_sl2_fails_with_triple() {
        let f = FieldDescriptor::prime(3).unwrap();
        let g = standard_algebra(&StandardAlgebra::Sl(2), &f).unwrap();
        let mut bracket = g.bracket_constants().to_vec();
        // [h, x] = 2x  ->  [h, x] = x, kept antisymmetric
        bracket[0][1] = g.vector_from_ints(&[0, 1, 0]);
        bracket[1][0] = g.vector_from_ints(&[0, -1, 0]);
        let t = ResLieAlgebra::new_unchecked(
            f.clone(),
            g.labels().to_vec(),
            bracket,
            g.pmap_constants().to_vec(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let r = verify_axioms(&t, 10, &mut rng);
        assert!(!r.passed);
        assert!(r.failure.unwrap().starts_with("Jacobi fails on"));
    }
}
