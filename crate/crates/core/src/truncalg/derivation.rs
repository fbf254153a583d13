//! Derivations of truncated algebras as matrices, and the symbolic Witt `C`.

use std::sync::Arc;

use super::{MultiPoly, TruncAlgebra, TruncElement, TruncError};
use crate::fields::linalg::Matrix;
use crate::ring::Ring;

/// A coefficient-linear derivation, stored as its matrix on the monomial basis
/// (column `j` holds the image of basis vector `j`).
#[derive(Clone)]
pub struct DerivationMatrix<R> {
    alg: Arc<TruncAlgebra<R>>,
    matrix: Matrix<R>,
}

impl<R: Ring> PartialEq for DerivationMatrix<R> {
    fn eq(&self, o: &Self) -> bool {
        *self.alg == *o.alg && self.matrix == o.matrix
    }
}

impl<R: Ring> std::fmt::Debug for DerivationMatrix<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let vals: Vec<String> = self.values().iter().map(|v| v.to_string()).collect();
        write!(f, "Derivation{vals:?}")
    }
}

impl<R: Ring> DerivationMatrix<R> {
    /// The derivation `sum_i a_i d/dx_i`.
    pub fn from_values(
        alg: &Arc<TruncAlgebra<R>>,
        values: &[TruncElement<R>],
    ) -> Result<Self, TruncError> {
        if values.len() != alg.m() {
            return Err(TruncError::BadInput("one value per variable".into()));
        }
        if values.iter().any(|v| !Arc::ptr_eq(v.algebra(), alg) && **v.algebra() != **alg) {
            return Err(TruncError::MixedAlgebras);
        }
        let n = alg.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let b = alg.monomial(alg.exp_of(j), alg.coeff_zero().one_like());
            let mut img = alg.zero();
            for (i, a) in values.iter().enumerate() {
                let d = b.partial_derivative(i);
                if !d.is_zero() {
                    img = img.checked_add(&d.trunc_mul(a)?)?;
                }
            }
            cols.push(img.to_vector());
        }
        Self::from_matrix(alg, Matrix::from_cols(&cols, n, alg.coeff_zero()))
    }

    /// Wrap a matrix after checking the Leibniz rule.
    pub fn from_matrix(alg: &Arc<TruncAlgebra<R>>, matrix: Matrix<R>) -> Result<Self, TruncError> {
        let n = alg.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(TruncError::BadInput("matrix size must equal the algebra dimension".into()));
        }
        let d = DerivationMatrix { alg: alg.clone(), matrix };
        d.check_leibniz()?;
        Ok(d)
    }

    /// Leibniz on (generator, basis) pairs, which implies it on all pairs.
    pub fn check_leibniz(&self) -> Result<(), TruncError> {
        let alg = &self.alg;
        let one = alg.coeff_zero().one_like();
        for i in 0..alg.m() {
            let x = alg.var(i);
            let dx = self.apply(&x);
            for j in 0..alg.dim() {
                let b = alg.monomial(alg.exp_of(j), one.clone());
                let lhs = self.apply(&x.trunc_mul(&b)?);
                let rhs = dx.trunc_mul(&b)?.checked_add(&x.trunc_mul(&self.apply(&b))?)?;
                if lhs != rhs {
                    return Err(TruncError::LeibnizViolation(x.to_string(), b.to_string()));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<TruncAlgebra<R>> {
        &self.alg
    }

    pub fn matrix(&self) -> &Matrix<R> {
        &self.matrix
    }

    pub fn apply(&self, f: &TruncElement<R>) -> TruncElement<R> {
        self.alg.from_vector(&self.matrix.mul_vec(&f.to_vector()))
    }

    /// `D(x_i)` for every variable.
    pub fn values(&self) -> Vec<TruncElement<R>> {
        (0..self.alg.m()).map(|i| self.apply(&self.alg.var(i))).collect()
    }

    /// `D^p` by matrix power, certified to be a derivation.
    pub fn operator_p_power(&self) -> Result<Self, TruncError> {
        let m = self.matrix.pow(self.alg.p());
        Self::from_matrix(&self.alg, m)
    }

    /// Commutator `[D, E] = DE - ED`.
    pub fn bracket(&self, o: &Self) -> Self {
        DerivationMatrix { alg: self.alg.clone(), matrix: self.matrix.commutator(&o.matrix) }
    }

    pub fn add(&self, o: &Self) -> Self {
        DerivationMatrix { alg: self.alg.clone(), matrix: self.matrix.add(&o.matrix) }
    }

    /// `f * D` for an algebra element `f`.
    pub fn left_mul(&self, f: &TruncElement<R>) -> Self {
        let m = f.multiplication_matrix().mul(&self.matrix);
        DerivationMatrix { alg: self.alg.clone(), matrix: m }
    }

    pub fn scale(&self, c: &R) -> Self {
        DerivationMatrix { alg: self.alg.clone(), matrix: self.matrix.scale(c) }
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

fn symbolic_vars(p: u64) -> Arc<Vec<String>> {
    let mut v: Vec<String> = (0..p).map(|i| format!("l{i}")).collect();
    v.push("w".into());
    Arc::new(v)
}

/// `C(l_0, .., l_{p-1}, w)` as a polynomial over `F_p`, variables `l0..l{p-1}, w`.
pub fn c_polynomial_symbolic(p: u64) -> Result<MultiPoly, TruncError> {
    if p > 7 {
        return Err(TruncError::PTooLarge(p));
    }
    if !matches!(p, 2 | 3 | 5 | 7) {
        return Err(TruncError::BadInput(format!("{p} is not prime")));
    }
    let vars = symbolic_vars(p);
    let w = MultiPoly::var(p, vars.clone(), p as usize);
    let alg = TruncAlgebra::univariate(w);
    let coeffs: Vec<MultiPoly> = (0..p as usize).map(|i| MultiPoly::var(p, vars.clone(), i)).collect();
    alg.from_univariate(&coeffs).c_coefficient()
}

/// Text form of `C`: compact for `p <= 3`, grouped by powers of `w` otherwise.
pub fn c_polynomial_text(p: u64) -> Result<String, TruncError> {
    let c = c_polynomial_symbolic(p)?;
    Ok(if p <= 3 { c.render_compact() } else { c.render_grouped(p as usize) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FieldDescriptor, FieldElement};

    fn alg(p: u64, w: i64) -> Arc<TruncAlgebra<FieldElement>> {
        TruncAlgebra::univariate(FieldDescriptor::prime(p).unwrap().from_int(w))
    }

    #[test]
    fn d_to_the_p_vanishes() {
        for w in 0..5 {
            let a = alg(5, w);
            let d = DerivationMatrix::from_values(&a, &[a.one()]).unwrap();
            assert!(d.operator_p_power().unwrap().is_zero());
        }
    }

    #[test]
    fn t_d_is_toral() {
        let a = alg(3, 0);
        let d = DerivationMatrix::from_values(&a, &[a.var(0)]).unwrap();
        for i in 0..3 {
            assert_eq!(d.matrix().get(i, i), &a.coeff_zero().from_int_like(i as i64));
        }
        assert_eq!(d.operator_p_power().unwrap(), d);
    }

    #[test]
    fn two_variable_derivation() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = TruncAlgebra::new(3, vec![f.zero(), f.zero()]).unwrap();
        let d = DerivationMatrix::from_values(&a, &[a.var(1), a.zero()]).unwrap();
        assert_eq!(d.apply(&a.var(0)), a.var(1));
        assert!(d.apply(&a.var(1)).is_zero());
    }

    #[test]
    fn non_derivation_rejected() {
        let a = alg(3, 0);
        let m = Matrix::identity(3, a.coeff_zero());
        assert!(matches!(
            DerivationMatrix::from_matrix(&a, m),
            Err(TruncError::LeibnizViolation(..))
        ));
    }

    #[test]
    fn symbolic_c_small_primes() {
        assert_eq!(c_polynomial_text(2).unwrap(), "l1");
        assert_eq!(c_polynomial_text(3).unwrap(), "l1^2 - l0*l2");
        assert!(matches!(c_polynomial_symbolic(11), Err(TruncError::PTooLarge(11))));
    }

    #[test]
    fn symbolic_c_is_homogeneous() {
        for p in [2u64, 3, 5, 7] {
            let c = c_polynomial_symbolic(p).unwrap();
            let idx: Vec<usize> = (0..p as usize).collect();
            assert!(c.is_homogeneous_in(&idx, p as u32 - 1), "p = {p}");
        }
    }
}
