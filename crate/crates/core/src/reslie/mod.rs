//! Finite-dimensional restricted Lie algebras given by structure constants.
//!
//! Vectors are plain coefficient slices in the algebra's basis; [`LieVector`]
//! wraps one together with its algebra for a checked API.

mod axioms;
mod json;
mod standard;
mod structure;
mod subspace;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::{Field, Ring};

pub use axioms::{verify_axioms, AxiomReport};
pub use standard::{semidirect_product, standard_algebra, StandardAlgebra};
pub use structure::{
    automorphism_points, fingerprint, is_restricted_derivation, is_unipotent,
    subalgebra_enumeration, toral_rank_lower_bound, AutomorphismReport, Fingerprint, PClosed,
    SubalgebraRecord,
};
pub use subspace::Subspace;

pub type Vector = Vec<FieldElement>;

/// Exhaustive sweeps refuse to run past this many points unless stated otherwise.
pub const SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("vectors belong to different algebras")]
    MixedAlgebras,
    #[error("r = {r} is outside 1..={max}")]
    BadR { r: u64, max: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("map is not a derivation: {0}")]
    NotADerivation(String),
    #[error("action is not by restricted derivations: {0}")]
    PhiNotRestricted(String),
    #[error("action is not a homomorphism of restricted Lie algebras: {0}")]
    PhiNotHomomorphism(String),
    #[error("search space of {size} points exceeds the cap {cap}")]
    SearchSpaceTooLarge { size: u64, cap: u64 },
    #[error("the field is infinite")]
    InfiniteField,
    #[error("structure constants violate an axiom: {0}")]
    AxiomViolation(String),
    #[error("json error: {0}")]
    Json(String),
}

pub struct ResLieAlgebra {
    field: Arc<FieldDescriptor>,
    labels: Vec<String>,
    /// `bracket[i][j]` = coordinates of `[e_i, e_j]`.
    bracket: Vec<Vec<Vector>>,
    /// `pmap[i]` = coordinates of `e_i^{[p]}`.
    pmap: Vec<Vector>,
    /// `ad(e_i)` as matrices acting on column vectors.
    ad_basis: Vec<Matrix<FieldElement>>,
}

impl fmt::Debug for ResLieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResLieAlgebra(dim {} over {}, basis {:?})", self.dim(), self.field.name(), self.labels)
    }
}

impl PartialEq for ResLieAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.bracket == o.bracket && self.pmap == o.pmap
    }
}

impl ResLieAlgebra {
    /// Build from structure constants, checking antisymmetry, Jacobi and
    /// `ad(e_i^{[p]}) = ad(e_i)^p` on the basis.
    pub fn new(
        field: Arc<FieldDescriptor>,
        labels: Vec<String>,
        bracket: Vec<Vec<Vector>>,
        pmap: Vec<Vector>,
    ) -> Result<Arc<Self>, LieError> {
        let g = Self::new_unchecked(field, labels, bracket, pmap)?;
        g.check_basis_axioms()?;
        Ok(g)
    }

    /// Build without axiom checks (shapes are still validated).
    pub fn new_unchecked(
        field: Arc<FieldDescriptor>,
        labels: Vec<String>,
        bracket: Vec<Vec<Vector>>,
        pmap: Vec<Vector>,
    ) -> Result<Arc<Self>, LieError> {
        let n = labels.len();
        let shape_ok = bracket.len() == n
            && bracket.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && pmap.len() == n
            && pmap.iter().all(|v| v.len() == n);
        if !shape_ok {
            return Err(LieError::BadParams("structure constant shapes".into()));
        }
        let all_in_field = bracket
            .iter()
            .flatten()
            .flatten()
            .chain(pmap.iter().flatten())
            .all(|x| **x.descriptor() == *field);
        if !all_in_field {
            return Err(LieError::BadParams("coefficients outside the field".into()));
        }
        let zero = field.zero();
        let ad_basis = (0..n)
            .map(|i| {
                let cols: Vec<Vector> = (0..n).map(|j| bracket[i][j].clone()).collect();
                Matrix::from_cols(&cols, n, &zero)
            })
            .collect();
        Ok(Arc::new(ResLieAlgebra { field, labels, bracket, pmap, ad_basis }))
    }

    fn check_basis_axioms(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            if self.bracket[i][i].iter().any(|x| !x.is_zero()) {
                return Err(LieError::AxiomViolation(format!("[{0},{0}] != 0", self.labels[i])));
            }
            for j in 0..n {
                let s: Vector =
                    self.bracket[i][j].iter().zip(&self.bracket[j][i]).map(|(a, b)| a.add(b)).collect();
                if s.iter().any(|x| !x.is_zero()) {
                    return Err(LieError::AxiomViolation(format!(
                        "antisymmetry fails on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_failure() {
            return Err(LieError::AxiomViolation(format!(
                "Jacobi fails on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            )));
        }
        for i in 0..n {
            if self.ad(&self.pmap[i]) != self.ad_basis[i].pow(self.p()) {
                return Err(LieError::AxiomViolation(format!(
                    "ad({0}^[p]) != ad({0})^p",
                    self.labels[i]
                )));
            }
        }
        Ok(())
    }

    pub(crate) fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let a = self.bracket_vec(&self.basis_vector(i), &self.bracket[j][k]);
                    let b = self.bracket_vec(&self.basis_vector(j), &self.bracket[k][i]);
                    let c = self.bracket_vec(&self.basis_vector(k), &self.bracket[i][j]);
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !x.add(y).add(z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn bracket_constants(&self) -> &[Vec<Vector>] {
        &self.bracket
    }

    pub fn pmap_constants(&self) -> &[Vector] {
        &self.pmap
    }

    pub fn zero_vector(&self) -> Vector {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero_vector();
        v[i] = self.field.one();
        v
    }

    pub fn vector_from_ints(&self, c: &[i64]) -> Vector {
        assert_eq!(c.len(), self.dim(), "coordinate count");
        c.iter().map(|&x| self.field.from_int(x)).collect()
    }

    pub fn random_vector<G: Rng + ?Sized>(&self, rng: &mut G) -> Vector {
        (0..self.dim()).map(|_| self.field.random(rng)).collect()
    }

    /// `ad(x)` as a matrix.
    pub fn ad(&self, x: &[FieldElement]) -> Matrix<FieldElement> {
        let n = self.dim();
        let zero = self.field.zero();
        let mut m = Matrix::zeros(n, n, &zero);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.ad_basis[i].scale(c));
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> &Matrix<FieldElement> {
        &self.ad_basis[i]
    }

    pub fn bracket_vec(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        let mut out = self.zero_vector();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let c = a.mul(b);
                for (k, s) in self.bracket[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = out[k].add(&c.mul(s));
                    }
                }
            }
        }
        out
    }

    /// All `s_r(x, y)` for `r = 1..p-1` (index `r-1`).
    ///
    /// `s_r = -(1/r) * sum_u ad_{t_u(1)} ... ad_{t_u(p-1)} (t_1)` over maps `u`
    /// taking the value 0 exactly `r` times, with `t_0 = x`, `t_1 = y`.
    pub fn s_all(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<Vector> {
        let p = self.p() as usize;
        let adx = self.ad(x);
        let ady = self.ad(y);
        // w[z] = sum over operator words of the current length with z copies of ad_x
        let mut w: Vec<Vector> = vec![y.to_vec()];
        for _ in 0..p - 1 {
            let mut next = vec![self.zero_vector(); w.len() + 1];
            for (z, v) in w.iter().enumerate() {
                let a = ady.mul_vec(v);
                let b = adx.mul_vec(v);
                next[z] = add_vec(&next[z], &a);
                next[z + 1] = add_vec(&next[z + 1], &b);
            }
            w = next;
        }
        (1..p)
            .map(|r| {
                let c = self.field.from_int(r as i64).inv().unwrap().neg();
                w[r].iter().map(|a| a.mul(&c)).collect()
            })
            .collect()
    }

    pub fn s_r(&self, x: &[FieldElement], y: &[FieldElement], r: u64) -> Result<Vector, LieError> {
        let p = self.p();
        if r == 0 || r >= p {
            return Err(LieError::BadR { r, max: p - 1 });
        }
        Ok(self.s_all(x, y).swap_remove(r as usize - 1))
    }

    /// `sum_r s_r(x, y)`.
    pub fn s_sum(&self, x: &[FieldElement], y: &[FieldElement]) -> Vector {
        self.s_all(x, y).iter().fold(self.zero_vector(), |acc, v| add_vec(&acc, v))
    }

    /// `x^{[p]}`, folding the basis terms in ascending order through (R2), (R3).
    pub fn p_map(&self, x: &[FieldElement]) -> Vector {
        self.p_map_ordered(x, (0..self.dim()).collect::<Vec<_>>())
    }

    /// The same fold over basis terms in descending order.
    pub fn p_map_descending(&self, x: &[FieldElement]) -> Vector {
        self.p_map_ordered(x, (0..self.dim()).rev().collect::<Vec<_>>())
    }

    fn p_map_ordered(&self, x: &[FieldElement], order: Vec<usize>) -> Vector {
        let p = self.p();
        let mut acc = self.zero_vector();
        let mut acc_p = self.zero_vector();
        let mut started = false;
        for i in order {
            let l = &x[i];
            if l.is_zero() {
                continue;
            }
            let mut term = self.zero_vector();
            term[i] = l.clone();
            let lp = l.pow(p);
            let term_p: Vector = self.pmap[i].iter().map(|a| a.mul(&lp)).collect();
            acc_p = add_vec(&acc_p, &term_p);
            if started {
                acc_p = add_vec(&acc_p, &self.s_sum(&acc, &term));
            }
            acc = add_vec(&acc, &term);
            started = true;
        }
        acc_p
    }

    /// Classify `x` as additive, multiplicative (with the scalar), or not `p`-closed.
    pub fn is_p_closed(&self, x: &[FieldElement]) -> PClosed {
        let xp = self.p_map(x);
        if xp.iter().all(|a| a.is_zero()) {
            return PClosed::Additive;
        }
        match collinear_scalar(x, &xp) {
            Some(c) => PClosed::Multiplicative(c),
            None => PClosed::NotClosed,
        }
    }

    /// Every vector over a finite field in code order.
    pub fn all_vectors(&self) -> Result<Vec<Vector>, LieError> {
        enumerate_vectors(&self.field, self.dim(), SEARCH_CAP)
    }

    /// Same structure constants over a larger field of the same characteristic.
    pub fn base_change(&self, target: &Arc<FieldDescriptor>) -> Result<Arc<Self>, LieError> {
        if **target == *self.field {
            return Self::new_unchecked(
                target.clone(),
                self.labels.clone(),
                self.bracket.clone(),
                self.pmap.clone(),
            );
        }
        if !matches!(self.field.kind(), crate::fields::FieldKind::Prime) || target.p() != self.p() {
            return Err(LieError::BadParams("base change is supported from F_p only".into()));
        }
        let emb = |v: &Vector| -> Vector {
            v.iter().map(|a| target.from_int(a.code().unwrap() as i64)).collect()
        };
        Self::new_unchecked(
            target.clone(),
            self.labels.clone(),
            self.bracket.iter().map(|r| r.iter().map(emb).collect()).collect(),
            self.pmap.iter().map(emb).collect(),
        )
    }

    /// Restricted subalgebra spanned by an RREF basis `s`, in that basis.
    pub fn restrict_to(&self, s: &Subspace) -> Result<Arc<Self>, LieError> {
        let d = s.dim();
        let coords = |v: &Vector| -> Result<Vector, LieError> {
            s.coordinates(v).ok_or_else(|| LieError::BadParams("subspace is not closed".into()))
        };
        let mut bracket = vec![vec![vec![self.field.zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                bracket[i][j] = coords(&self.bracket_vec(&s.basis()[i], &s.basis()[j]))?;
            }
        }
        let pmap = s.basis().iter().map(|b| coords(&self.p_map(b))).collect::<Result<_, _>>()?;
        let labels = (0..d).map(|i| format!("s{i}")).collect();
        Self::new_unchecked(self.field.clone(), labels, bracket, pmap)
    }
}

pub fn add_vec(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn sub_vec(a: &[FieldElement], b: &[FieldElement]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn scale_vec(a: &[FieldElement], c: &FieldElement) -> Vector {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn is_zero_vec(a: &[FieldElement]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// `Some(c)` with `y = c x` when `x != 0` and `y` is a multiple of `x`.
pub(crate) fn collinear_scalar(x: &[FieldElement], y: &[FieldElement]) -> Option<FieldElement> {
    let i = x.iter().position(|a| !a.is_zero())?;
    let c = y[i].checked_div(&x[i]).ok()?;
    x.iter().zip(y).all(|(a, b)| a.mul(&c) == *b).then_some(c)
}

/// All length-`n` vectors over a finite field, in mixed-radix code order.
pub fn enumerate_vectors(
    field: &Arc<FieldDescriptor>,
    n: usize,
    cap: u64,
) -> Result<Vec<Vector>, LieError> {
    let q = field.order().ok_or(LieError::InfiniteField)?;
    let size = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    if size > cap {
        return Err(LieError::SearchSpaceTooLarge { size, cap });
    }
    let elems = field.elements().map_err(|_| LieError::InfiniteField)?;
    let mut out = Vec::with_capacity(size as usize);
    for code in 0..size {
        let mut c = code;
        let v: Vector = (0..n)
            .map(|_| {
                let e = elems[(c % q) as usize].clone();
                c /= q;
                e
            })
            .collect();
        out.push(v);
    }
    Ok(out)
}

/// A vector tied to its algebra.
#[derive(Clone, Debug)]
pub struct LieVector {
    alg: Arc<ResLieAlgebra>,
    coeffs: Vector,
}

impl PartialEq for LieVector {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.alg, &o.alg) || *self.alg == *o.alg) && self.coeffs == o.coeffs
    }
}

impl LieVector {
    pub fn new(alg: &Arc<ResLieAlgebra>, coeffs: Vector) -> Result<Self, LieError> {
        if coeffs.len() != alg.dim() || coeffs.iter().any(|c| **c.descriptor() != **alg.field()) {
            return Err(LieError::BadParams("vector does not fit the algebra".into()));
        }
        Ok(LieVector { alg: alg.clone(), coeffs })
    }

    pub fn algebra(&self) -> &Arc<ResLieAlgebra> {
        &self.alg
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    fn check(&self, o: &Self) -> Result<(), LieError> {
        if Arc::ptr_eq(&self.alg, &o.alg) || *self.alg == *o.alg {
            Ok(())
        } else {
            Err(LieError::MixedAlgebras)
        }
    }

    pub fn bracket(&self, o: &Self) -> Result<Self, LieError> {
        self.check(o)?;
        Ok(LieVector { alg: self.alg.clone(), coeffs: self.alg.bracket_vec(&self.coeffs, &o.coeffs) })
    }

    pub fn s_r(&self, o: &Self, r: u64) -> Result<Self, LieError> {
        self.check(o)?;
        Ok(LieVector { alg: self.alg.clone(), coeffs: self.alg.s_r(&self.coeffs, &o.coeffs, r)? })
    }

    pub fn p_map(&self) -> Self {
        LieVector { alg: self.alg.clone(), coeffs: self.alg.p_map(&self.coeffs) }
    }

    pub fn add(&self, o: &Self) -> Result<Self, LieError> {
        self.check(o)?;
        Ok(LieVector { alg: self.alg.clone(), coeffs: add_vec(&self.coeffs, &o.coeffs) })
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        LieVector { alg: self.alg.clone(), coeffs: scale_vec(&self.coeffs, c) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }
}

impl fmt::Display for LieVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.alg.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, l)| if c.is_one() { l.clone() } else { format!("{c}*{l}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s1_at_p2_is_the_bracket() {
        let g = standard_algebra(&StandardAlgebra::Gl(2), &FieldDescriptor::prime(2).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = g.random_vector(&mut rng);
            let y = g.random_vector(&mut rng);
            assert_eq!(g.s_r(&x, &y, 1).unwrap(), g.bracket_vec(&x, &y));
        }
    }

    #[test]
    fn s_r_with_zero_vanishes() {
        let g = standard_algebra(&StandardAlgebra::Gl(2), &FieldDescriptor::prime(5).unwrap()).unwrap();
        let x = g.vector_from_ints(&[1, 2, 3, 4]);
        for r in 1..5 {
            assert!(is_zero_vec(&g.s_r(&x, &g.zero_vector(), r).unwrap()));
        }
        assert!(matches!(g.s_r(&x, &x, 5), Err(LieError::BadR { .. })));
    }

    #[test]
    fn gl1_basis_is_toral() {
        let f = FieldDescriptor::prime(7).unwrap();
        let g = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        assert_eq!(g.p_map(&g.basis_vector(0)), g.basis_vector(0));
    }

    #[test]
    fn mixed_vectors_rejected() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = standard_algebra(&StandardAlgebra::Gl1, &f).unwrap();
        let b = standard_algebra(&StandardAlgebra::Trivial(1), &f).unwrap();
        let x = LieVector::new(&a, a.basis_vector(0)).unwrap();
        let y = LieVector::new(&b, b.basis_vector(0)).unwrap();
        assert_eq!(x.bracket(&y).unwrap_err(), LieError::MixedAlgebras);
    }
}
