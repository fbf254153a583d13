use std::sync::Arc;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::Ring;

use super::structure::is_restricted_derivation;
use super::{LieError, ResLieAlgebra, Subspace, Vector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardAlgebra {
    Trivial(usize),
    Gl(usize),
    Sl(usize),
    Gl1,
    SemidirectKnGl1(usize),
    /// `sl_2` with basis `(h, x, y)` read off explicit 2x2 matrices.
    Sl2Matrix,
    Witt(FieldElement),
}

pub fn standard_algebra(
    name: &StandardAlgebra,
    field: &Arc<FieldDescriptor>,
) -> Result<Arc<ResLieAlgebra>, LieError> {
    match name {
        StandardAlgebra::Trivial(n) => {
            let z = vec![field.zero(); *n];
            let labels = (0..*n).map(|i| format!("v{i}")).collect();
            ResLieAlgebra::new(field.clone(), labels, vec![vec![z.clone(); *n]; *n], vec![z; *n])
        }
        StandardAlgebra::Gl1 => ResLieAlgebra::new(
            field.clone(),
            vec!["e".into()],
            vec![vec![vec![field.zero()]]],
            vec![vec![field.one()]],
        ),
        StandardAlgebra::Gl(n) => {
            check_n(*n)?;
            let mut basis = Vec::new();
            let mut labels = Vec::new();
            for i in 0..*n {
                for j in 0..*n {
                    basis.push(unit(field, *n, i, j));
                    labels.push(format!("E{}{}", i + 1, j + 1));
                }
            }
            from_matrix_basis(field, labels, basis)
        }
        StandardAlgebra::Sl(n) => {
            check_n(*n)?;
            sl(field, *n)
        }
        StandardAlgebra::Sl2Matrix => sl(field, 2),
        StandardAlgebra::SemidirectKnGl1(n) => semidirect_kn_gl1(field, *n),
        StandardAlgebra::Witt(omega) => {
            if **omega.descriptor() != **field {
                return Err(LieError::BadParams("omega lies in a different field".into()));
            }
            crate::witt::build_witt(omega)
                .map(|w| w.algebra().clone())
                .map_err(|e| LieError::BadParams(e.to_string()))
        }
    }
}

fn check_n(n: usize) -> Result<(), LieError> {
    if n == 0 || n > 4 {
        return Err(LieError::BadParams(format!("matrix size {n} outside 1..=4")));
    }
    Ok(())
}

fn unit(field: &Arc<FieldDescriptor>, n: usize, i: usize, j: usize) -> Matrix<FieldElement> {
    let mut m = Matrix::zeros(n, n, &field.zero());
    m.set(i, j, field.one());
    m
}

fn sl(field: &Arc<FieldDescriptor>, n: usize) -> Result<Arc<ResLieAlgebra>, LieError> {
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n - 1 {
        basis.push(unit(field, n, i, i).sub(&unit(field, n, i + 1, i + 1)));
        labels.push(if n == 2 { "h".to_string() } else { format!("H{}", i + 1) });
    }
    for upper in [true, false] {
        for i in 0..n {
            for j in 0..n {
                if (upper && i < j) || (!upper && i > j) {
                    basis.push(unit(field, n, i, j));
                    labels.push(match (n, upper) {
                        (2, true) => "x".to_string(),
                        (2, false) => "y".to_string(),
                        _ => format!("E{}{}", i + 1, j + 1),
                    });
                }
            }
        }
    }
    from_matrix_basis(field, labels, basis)
}

/// The restricted Lie algebra spanned by matrices closed under commutators and
/// `p`-th powers, with constants read off by solving in the matrix coordinates.
pub fn from_matrix_basis(
    field: &Arc<FieldDescriptor>,
    labels: Vec<String>,
    basis: Vec<Matrix<FieldElement>>,
) -> Result<Arc<ResLieAlgebra>, LieError> {
    let flat: Vec<Vector> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let len = flat.first().map_or(0, |v| v.len());
    let coords_of = |m: &Matrix<FieldElement>| -> Result<Vector, LieError> {
        let a = Matrix::from_cols(&flat, len, &field.zero());
        let rhs = Matrix::from_cols(&[m.entries().to_vec()], len, &field.zero());
        let sol = a.solve(&rhs).map_err(|e| LieError::BadParams(e.to_string()))?;
        if !sol.kernel.is_empty() {
            return Err(LieError::BadParams("matrices are dependent".into()));
        }
        sol.particular
            .map(|x| x.col(0))
            .ok_or_else(|| LieError::BadParams("matrix span is not closed".into()))
    };
    let n = basis.len();
    let mut bracket = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            bracket[i][j] = coords_of(&basis[i].commutator(&basis[j]))?;
        }
    }
    let pmap = basis.iter().map(|m| coords_of(&m.pow(field.p()))).collect::<Result<_, _>>()?;
    ResLieAlgebra::new(field.clone(), labels, bracket, pmap)
}

/// `k^n x| gl_1` with basis `v_1..v_n, e`: `[e, v] = v`, `v^{[p]} = 0`, `e^{[p]} = e`.
fn semidirect_kn_gl1(field: &Arc<FieldDescriptor>, n: usize) -> Result<Arc<ResLieAlgebra>, LieError> {
    if n == 0 {
        return Err(LieError::BadParams("n must be positive".into()));
    }
    let d = n + 1;
    let mut bracket = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..n {
        bracket[n][i][i] = field.one();
        bracket[i][n][i] = field.from_int(-1);
    }
    let mut pmap = vec![vec![field.zero(); d]; d];
    pmap[n][n] = field.one();
    let mut labels: Vec<String> = (0..n).map(|i| format!("v{}", i + 1)).collect();
    labels.push("e".into());
    ResLieAlgebra::new(field.clone(), labels, bracket, pmap)
}

/// `a x|_phi h`, with `phi[k]` the matrix by which `h_k` acts on `a`. The basis
/// is that of `a` followed by that of `h`.
pub fn semidirect_product(
    a: &Arc<ResLieAlgebra>,
    h: &Arc<ResLieAlgebra>,
    phi: &[Matrix<FieldElement>],
) -> Result<Arc<ResLieAlgebra>, LieError> {
    let field = a.field();
    if h.field() != field {
        return Err(LieError::BadParams("a and h live over different fields".into()));
    }
    let (na, nh) = (a.dim(), h.dim());
    if phi.len() != nh || phi.iter().any(|m| m.rows() != na || m.cols() != na) {
        return Err(LieError::BadParams("phi needs one dim(a) x dim(a) matrix per basis vector of h".into()));
    }
    let full = Subspace::full(field, na);
    for (k, m) in phi.iter().enumerate() {
        match is_restricted_derivation(a, m, &full) {
            Ok(true) => {}
            Ok(false) => {
                return Err(LieError::PhiNotRestricted(format!("phi({})", h.labels()[k])))
            }
            Err(e) => return Err(LieError::PhiNotRestricted(format!("phi({}): {e}", h.labels()[k]))),
        }
    }
    let phi_of = |v: &[FieldElement]| -> Matrix<FieldElement> {
        v.iter()
            .zip(phi)
            .fold(Matrix::zeros(na, na, &field.zero()), |acc, (c, m)| acc.add(&m.scale(c)))
    };
    for k in 0..nh {
        for l in 0..nh {
            if phi_of(&h.bracket_constants()[k][l]) != phi[k].commutator(&phi[l]) {
                return Err(LieError::PhiNotHomomorphism(format!(
                    "bracket of ({}, {})",
                    h.labels()[k],
                    h.labels()[l]
                )));
            }
        }
        if phi_of(&h.pmap_constants()[k]) != phi[k].pow(field.p()) {
            return Err(LieError::PhiNotHomomorphism(format!("p-map of {}", h.labels()[k])));
        }
    }

    let d = na + nh;
    let zero = field.zero();
    let embed_a = |v: &[FieldElement]| -> Vector {
        let mut out = vec![zero.clone(); d];
        out[..na].clone_from_slice(v);
        out
    };
    let embed_h = |v: &[FieldElement]| -> Vector {
        let mut out = vec![zero.clone(); d];
        out[na..].clone_from_slice(v);
        out
    };
    let mut bracket = vec![vec![vec![zero.clone(); d]; d]; d];
    for i in 0..na {
        for j in 0..na {
            bracket[i][j] = embed_a(&a.bracket_constants()[i][j]);
        }
    }
    for k in 0..nh {
        for l in 0..nh {
            bracket[na + k][na + l] = embed_h(&h.bracket_constants()[k][l]);
        }
        for i in 0..na {
            let img = embed_a(&phi[k].col(i));
            bracket[i][na + k] = img.iter().map(|x| x.neg()).collect();
            bracket[na + k][i] = img;
        }
    }
    let mut pmap: Vec<Vector> = a.pmap_constants().iter().map(|v| embed_a(v)).collect();
    pmap.extend(h.pmap_constants().iter().map(|v| embed_h(v)));
    let mut labels: Vec<String> = a.labels().to_vec();
    labels.extend(h.labels().iter().cloned());
    ResLieAlgebra::new(field.clone(), labels, bracket, pmap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reslie::verify_axioms;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sl2_relations_from_matrices() {
        let f = FieldDescriptor::prime(3).unwrap();
        let g = standard_algebra(&StandardAlgebra::Sl(2), &f).unwrap();
        assert_eq!(g.labels(), ["h", "x", "y"]);
        let (h, x, y) = (g.basis_vector(0), g.basis_vector(1), g.basis_vector(2));
        assert_eq!(g.bracket_vec(&h, &x), g.vector_from_ints(&[0, 2, 0]));
        assert_eq!(g.bracket_vec(&h, &y), g.vector_from_ints(&[0, 0, -2]));
        assert_eq!(g.bracket_vec(&x, &y), h);
        assert_eq!(g.p_map(&h), h);
        assert!(crate::reslie::is_zero_vec(&g.p_map(&x)));
    }

    #[test]
    fn semidirect_special_formula() {
        let f = FieldDescriptor::prime(5).unwrap();
        let g = standard_algebra(&StandardAlgebra::SemidirectKnGl1(2), &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let x = g.random_vector(&mut rng);
            let l4 = x[2].pow(4);
            assert_eq!(g.p_map(&x), x.iter().map(|c| c.mul(&l4)).collect::<Vector>());
        }
    }

    #[test]
    fn semidirect_construction_matches_special_case() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = standard_algebra(&StandardAlgebra::Trivial(2), &f).unwrap();
        let h = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let s = semidirect_product(&a, &h, &[Matrix::identity(2, &f.zero())]).unwrap();
        let t = standard_algebra(&StandardAlgebra::SemidirectKnGl1(2), &f).unwrap();
        assert_eq!(s.bracket_constants(), t.bracket_constants());
        assert_eq!(s.pmap_constants(), t.pmap_constants());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(verify_axioms(&s, 200, &mut rng).passed);
    }

    #[test]
    fn semidirect_rejects_non_restricted_action() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let h = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let m = Matrix::identity(1, &f.zero());
        assert!(matches!(semidirect_product(&a, &h, &[m]), Err(LieError::PhiNotRestricted(_))));
    }

    #[test]
    fn semidirect_rejects_non_homomorphism() {
        let f = FieldDescriptor::extension(3, 2).unwrap();
        let a = standard_algebra(&StandardAlgebra::Trivial(1), &f).unwrap();
        let h = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let m = Matrix::identity(1, &f.zero()).scale(&f.generator());
        assert!(matches!(semidirect_product(&a, &h, &[m]), Err(LieError::PhiNotHomomorphism(_))));
    }

    #[test]
    fn gl_rejects_bad_size() {
        let f = FieldDescriptor::prime(3).unwrap();
        assert!(matches!(standard_algebra(&StandardAlgebra::Gl(0), &f), Err(LieError::BadParams(_))));
    }
}
