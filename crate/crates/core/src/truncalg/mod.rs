//! Truncated polynomial algebras `R[x_1..x_m]/(x_i^p - w_i)` for `m <= 3`,
//! their derivations, and the coefficient `C` of the Witt `p`-map.

mod derivation;
mod multipoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::{Field, Ring};

pub use derivation::{c_polynomial_symbolic, c_polynomial_text, DerivationMatrix};
pub use multipoly::MultiPoly;

/// Exponent vector; unused trailing slots are zero.
pub type Exp = [u8; 3];

pub const MAX_VARS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruncError {
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("coefficient rings differ")]
    MixedCoefficients,
    #[error("operation needs a univariate algebra")]
    Multivariate,
    #[error("coefficient ring is not a field")]
    NotAField,
    #[error("at most {MAX_VARS} variables are supported")]
    TooManyVariables,
    #[error("map violates the Leibniz rule on ({0}, {1})")]
    LeibnizViolation(String, String),
    #[error("p = {0} is too large for this operation")]
    PTooLarge(u64),
    #[error("bad input: {0}")]
    BadInput(String),
}

pub struct TruncAlgebra<R> {
    p: u64,
    omegas: Vec<R>,
    names: Vec<String>,
    zero: R,
}

impl<R: Ring> PartialEq for TruncAlgebra<R> {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.omegas == o.omegas && self.names == o.names
    }
}

impl<R: Ring> fmt::Debug for TruncAlgebra<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> =
            self.names.iter().zip(&self.omegas).map(|(n, w)| format!("{n}^{}={w:?}", self.p)).collect();
        write!(f, "TruncAlgebra[{}]", rels.join(", "))
    }
}

fn default_names(m: usize) -> Vec<String> {
    match m {
        1 => vec!["t".into()],
        _ => (1..=m).map(|i| format!("T{i}")).collect(),
    }
}

impl<R: Ring> TruncAlgebra<R> {
    pub fn new(p: u64, omegas: Vec<R>) -> Result<Arc<Self>, TruncError> {
        let names = default_names(omegas.len());
        Self::with_names(p, omegas, names)
    }

    pub fn with_names(p: u64, omegas: Vec<R>, names: Vec<String>) -> Result<Arc<Self>, TruncError> {
        if omegas.is_empty() || omegas.len() > MAX_VARS {
            return Err(TruncError::TooManyVariables);
        }
        if names.len() != omegas.len() {
            return Err(TruncError::BadInput("one name per variable".into()));
        }
        if omegas[0].characteristic() != p {
            return Err(TruncError::BadInput("characteristic mismatch".into()));
        }
        let zero = omegas[0].zero_like();
        Ok(Arc::new(TruncAlgebra { p, omegas, names, zero }))
    }

    /// `R[t]/(t^p - w)`.
    pub fn univariate(omega: R) -> Arc<Self> {
        let p = omega.characteristic();
        Self::new(p, vec![omega]).expect("one variable")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.omegas.len()
    }

    pub fn omegas(&self) -> &[R] {
        &self.omegas
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn coeff_zero(&self) -> &R {
        &self.zero
    }

    pub fn dim(&self) -> usize {
        (self.p as usize).pow(self.m() as u32)
    }

    /// Basis index of an exponent vector (first variable least significant).
    pub fn index(&self, e: &Exp) -> usize {
        let p = self.p as usize;
        (0..self.m()).rev().fold(0, |acc, i| acc * p + e[i] as usize)
    }

    pub fn exp_of(&self, mut idx: usize) -> Exp {
        let p = self.p as usize;
        let mut e = [0u8; 3];
        for slot in e.iter_mut().take(self.m()) {
            *slot = (idx % p) as u8;
            idx /= p;
        }
        e
    }

    pub fn basis_exps(&self) -> Vec<Exp> {
        (0..self.dim()).map(|i| self.exp_of(i)).collect()
    }

    pub fn zero(self: &Arc<Self>) -> TruncElement<R> {
        TruncElement { alg: self.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(self: &Arc<Self>, c: R) -> TruncElement<R> {
        self.monomial([0; 3], c)
    }

    pub fn one(self: &Arc<Self>) -> TruncElement<R> {
        self.constant(self.zero.one_like())
    }

    pub fn var(self: &Arc<Self>, i: usize) -> TruncElement<R> {
        assert!(i < self.m(), "variable index");
        let mut e = [0u8; 3];
        e[i] = 1;
        self.monomial(e, self.zero.one_like())
    }

    pub fn monomial(self: &Arc<Self>, e: Exp, c: R) -> TruncElement<R> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        TruncElement { alg: self.clone(), terms }
    }

    /// `sum c_i t^i` in a univariate algebra.
    pub fn from_univariate(self: &Arc<Self>, c: &[R]) -> TruncElement<R> {
        assert!(c.len() <= self.p as usize, "too many coefficients");
        let mut terms = BTreeMap::new();
        for (i, x) in c.iter().enumerate() {
            if !x.is_zero() {
                terms.insert([i as u8, 0, 0], x.clone());
            }
        }
        TruncElement { alg: self.clone(), terms }
    }

    /// Element from basis coordinates.
    pub fn from_vector(self: &Arc<Self>, v: &[R]) -> TruncElement<R> {
        assert_eq!(v.len(), self.dim(), "coordinate vector length");
        let mut terms = BTreeMap::new();
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                terms.insert(self.exp_of(i), x.clone());
            }
        }
        TruncElement { alg: self.clone(), terms }
    }

    fn same(self: &Arc<Self>, o: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, o) || **self == **o
    }
}

/// Element of a truncated algebra: sparse exponent -> coefficient, no zero entries.
#[derive(Clone)]
pub struct TruncElement<R> {
    alg: Arc<TruncAlgebra<R>>,
    terms: BTreeMap<Exp, R>,
}

impl<R: Ring> PartialEq for TruncElement<R> {
    fn eq(&self, o: &Self) -> bool {
        self.alg.same(&o.alg) && self.terms == o.terms
    }
}

impl<R: Ring> TruncElement<R> {
    pub fn algebra(&self) -> &Arc<TruncAlgebra<R>> {
        &self.alg
    }

    pub fn terms(&self) -> &BTreeMap<Exp, R> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exp) -> R {
        self.terms.get(e).cloned().unwrap_or_else(|| self.alg.zero.clone())
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&[0; 3])
    }

    pub fn to_vector(&self) -> Vec<R> {
        let mut v = vec![self.alg.zero.clone(); self.alg.dim()];
        for (e, c) in &self.terms {
            v[self.alg.index(e)] = c.clone();
        }
        v
    }

    /// Coefficients `l_0..l_{p-1}` of a univariate element.
    pub fn univariate_coeffs(&self) -> Result<Vec<R>, TruncError> {
        if self.alg.m() != 1 {
            return Err(TruncError::Multivariate);
        }
        Ok(self.to_vector())
    }

    fn insert_add(terms: &mut BTreeMap<Exp, R>, e: Exp, c: R) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, TruncError> {
        if !self.alg.same(&o.alg) {
            return Err(TruncError::MixedAlgebras);
        }
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            Self::insert_add(&mut terms, *e, c.clone());
        }
        Ok(TruncElement { alg: self.alg.clone(), terms })
    }

    /// Product with every `x_i^{p+s}` rewritten as `w_i x_i^s`.
    pub fn trunc_mul(&self, o: &Self) -> Result<Self, TruncError> {
        if !self.alg.same(&o.alg) {
            return Err(TruncError::MixedAlgebras);
        }
        let p = self.alg.p as u8;
        let m = self.alg.m();
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let mut c = ca.mul(cb);
                let mut e = [0u8; 3];
                for i in 0..m {
                    let s = ea[i] + eb[i];
                    if s >= p {
                        e[i] = s - p;
                        c = c.mul(&self.alg.omegas[i]);
                    } else {
                        e[i] = s;
                    }
                }
                Self::insert_add(&mut terms, e, c);
            }
        }
        Ok(TruncElement { alg: self.alg.clone(), terms })
    }

    pub fn scale(&self, c: &R) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, x)| (*e, x.mul(c)))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        TruncElement { alg: self.alg.clone(), terms }
    }

    /// `sum l_i a^i` for univariate `self = sum l_i t^i`; `a` may live in any
    /// algebra over the same coefficient ring.
    pub fn substitute(&self, a: &TruncElement<R>) -> Result<TruncElement<R>, TruncError> {
        let c = self.univariate_coeffs()?;
        if self.alg.zero != a.alg.zero {
            return Err(TruncError::MixedCoefficients);
        }
        let mut acc = a.alg.zero();
        for x in c.iter().rev() {
            acc = acc.trunc_mul(a)?;
            acc = acc.checked_add(&a.alg.constant(x.clone()))?;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[i] -= 1;
            Self::insert_add(&mut terms, ne, c.scale_int(e[i] as i64));
        }
        TruncElement { alg: self.alg.clone(), terms }
    }

    /// Matrix of multiplication by `self` on the monomial basis.
    pub fn multiplication_matrix(&self) -> Matrix<R> {
        let alg = &self.alg;
        let n = alg.dim();
        let cols: Vec<Vec<R>> = (0..n)
            .map(|j| {
                let b = alg.monomial(alg.exp_of(j), alg.zero.one_like());
                self.trunc_mul(&b).expect("same algebra").to_vector()
            })
            .collect();
        Matrix::from_cols(&cols, n, &alg.zero)
    }

    /// Coefficient of `t^{p-1}` in `f^{p-1}`, expanded in `R[t]` before reducing
    /// `t^{p+s} -> w t^s`.
    pub fn c_coefficient(&self) -> Result<R, TruncError> {
        let c = self.univariate_coeffs()?;
        let p = self.alg.p as usize;
        let zero = self.alg.zero.clone();
        let mut pw = vec![zero.one_like()];
        for _ in 0..p - 1 {
            let mut next = vec![zero.clone(); pw.len() + p - 1];
            for (i, a) in pw.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in c.iter().enumerate() {
                    if !b.is_zero() {
                        next[i + j] = next[i + j].add(&a.mul(b));
                    }
                }
            }
            pw = next;
        }
        let omega = &self.alg.omegas[0];
        let mut out = zero.clone();
        let mut k = 0;
        while p - 1 + k * p < pw.len() {
            out = out.add(&pw[p - 1 + k * p].mul(&omega.pow(k as u64)));
            k += 1;
        }
        Ok(out)
    }

    /// The same coefficient with reduction applied at every multiplication.
    pub fn c_coefficient_reduced(&self) -> Result<R, TruncError> {
        if self.alg.m() != 1 {
            return Err(TruncError::Multivariate);
        }
        let p = self.alg.p;
        let mut acc = self.alg.one();
        for _ in 0..p - 1 {
            acc = acc.trunc_mul(self)?;
        }
        Ok(acc.coeff(&[(p - 1) as u8, 0, 0]))
    }

    /// `-d^{p-1}(f^{p-1})`, a constant.
    pub fn evans_fuchs(&self) -> Result<R, TruncError> {
        if self.alg.m() != 1 {
            return Err(TruncError::Multivariate);
        }
        let p = self.alg.p;
        let mut g = self.alg.one();
        for _ in 0..p - 1 {
            g = g.trunc_mul(self)?;
        }
        for _ in 0..p - 1 {
            g = g.partial_derivative(0);
        }
        Ok(g.constant_term().neg())
    }

    /// Inverse by solving `M_f g = 1` with unit pivots; exact when the
    /// coefficients form a field or a local ring.
    pub fn inverse(&self) -> Option<Self> {
        let m = self.multiplication_matrix();
        let n = self.alg.dim();
        let mut rhs = Matrix::zeros(n, 1, &self.alg.zero);
        rhs.set(0, 0, self.alg.zero.one_like());
        let x = m.solve_unit_pivot(&rhs)?;
        let g = self.alg.from_vector(&x.col(0));
        (self.trunc_mul(&g).ok()? == self.alg.one()).then_some(g)
    }
}

impl<R: Field> TruncElement<R> {
    /// Unit test by invertibility of the multiplication matrix, with the inverse.
    pub fn is_unit(&self) -> Option<Self> {
        let m = self.multiplication_matrix();
        let n = self.alg.dim();
        let mut rhs = Matrix::zeros(n, 1, &self.alg.zero);
        rhs.set(0, 0, self.alg.zero.one_like());
        let sol = m.solve(&rhs).ok()?;
        if !sol.kernel.is_empty() {
            return None;
        }
        Some(self.alg.from_vector(&sol.particular?.col(0)))
    }
}

impl TruncElement<FieldElement> {
    pub fn to_json(&self) -> Json {
        let alg = &self.alg;
        let desc = alg.zero.descriptor();
        json!({
            "alg": {
                "field": desc.to_json(),
                "p": alg.p,
                "omegas": alg.omegas.iter().map(|w| w.to_json()).collect::<Vec<_>>(),
            },
            "terms": self.terms.iter().map(|(e, c)| json!({
                "exp": e[..alg.m()].to_vec(),
                "coef": c.to_json(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Json) -> Result<Self, TruncError> {
        let bad = |s: &str| TruncError::BadInput(s.to_string());
        let alg = v.get("alg").ok_or_else(|| bad("missing alg"))?;
        let desc = FieldDescriptor::from_json(alg.get("field").ok_or_else(|| bad("missing field"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let omegas = alg
            .get("omegas")
            .and_then(|o| o.as_array())
            .ok_or_else(|| bad("missing omegas"))?
            .iter()
            .map(|w| FieldElement::from_json(&desc, w))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        let a = TruncAlgebra::new(desc.p(), omegas)?;
        let mut out = a.zero();
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("missing terms"))? {
            let exp = t.get("exp").and_then(|e| e.as_array()).ok_or_else(|| bad("missing exp"))?;
            let mut e = [0u8; 3];
            for (i, x) in exp.iter().enumerate() {
                let k = x.as_u64().ok_or_else(|| bad("bad exponent"))?;
                if i >= a.m() || k >= a.p() {
                    return Err(bad("exponent out of range"));
                }
                e[i] = k as u8;
            }
            let c = FieldElement::from_json(&desc, t.get("coef").ok_or_else(|| bad("missing coef"))?)
                .map_err(|e| bad(&e.to_string()))?;
            out = out.checked_add(&a.monomial(e, c))?;
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Debug for TruncElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<R: Ring> fmt::Display for TruncElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = (0..self.alg.m())
                .filter(|&i| e[i] > 0)
                .map(|i| match e[i] {
                    1 => self.alg.names[i].clone(),
                    k => format!("{}^{k}", self.alg.names[i]),
                })
                .collect();
            let mono = mono.join("*");
            let cs = format!("{c:?}");
            let cs = if cs.contains(['+', ' ']) || cs[1..].contains('-') {
                format!("({cs})")
            } else {
                cs
            };
            parts.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => cs,
                (false, "1") => mono,
                _ => format!("{cs}*{mono}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn fail(e: TruncError) -> ! {
    panic!("truncated algebra operation failed: {e}")
}

impl<R: Ring> Ring for TruncElement<R> {
    fn zero_like(&self) -> Self {
        self.alg.zero()
    }

    fn one_like(&self) -> Self {
        self.alg.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.alg.constant(self.alg.zero.from_int_like(n))
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| fail(e))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.trunc_mul(rhs).unwrap_or_else(|e| fail(e))
    }

    fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(e, c)| (*e, c.neg())).collect();
        TruncElement { alg: self.alg.clone(), terms }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.alg.p
    }

    fn try_inv(&self) -> Option<Self> {
        self.inverse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::FieldDescriptor;

    fn alg(p: u64, w: i64) -> Arc<TruncAlgebra<FieldElement>> {
        let f = FieldDescriptor::prime(p).unwrap();
        TruncAlgebra::univariate(f.from_int(w))
    }

    fn el(a: &Arc<TruncAlgebra<FieldElement>>, c: &[i64]) -> TruncElement<FieldElement> {
        let z = a.coeff_zero();
        a.from_univariate(&c.iter().map(|&x| z.from_int_like(x)).collect::<Vec<_>>())
    }

    #[test]
    fn wraparound_multiplies_by_omega() {
        let a = alg(5, 3);
        let t4 = el(&a, &[0, 0, 0, 0, 1]);
        let t2 = el(&a, &[0, 0, 1]);
        assert_eq!(t4.mul(&t2), el(&a, &[0, 3]));
        let a2 = alg(2, 0);
        let t = el(&a2, &[0, 1]);
        assert!(t.mul(&t).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let a = alg(3, 0);
        let t2 = el(&a, &[0, 0, 1]);
        let shift = el(&a, &[1, 1]);
        assert_eq!(t2.substitute(&shift).unwrap(), el(&a, &[1, 2, 1]));
        let t = el(&a, &[0, 1]);
        assert_eq!(t.substitute(&shift).unwrap(), shift);
    }

    #[test]
    fn derivatives() {
        let a = alg(5, 2);
        assert_eq!(el(&a, &[0, 0, 0, 0, 1]).partial_derivative(0), el(&a, &[0, 0, 0, 4]));
        assert!(el(&a, &[2]).partial_derivative(0).is_zero());
    }

    #[test]
    fn units() {
        let a = alg(3, 0);
        let f = el(&a, &[1, 1]);
        let inv = f.is_unit().unwrap();
        assert_eq!(inv, el(&a, &[1, -1, 1]));
        assert_eq!(f.inverse().unwrap(), inv);
        assert!(el(&a, &[0, 1]).is_unit().is_none());

        let e = FieldDescriptor::rational(3).unwrap();
        let th = e.generator();
        let b = TruncAlgebra::univariate(th.clone());
        let t = b.var(0);
        let inv = t.is_unit().unwrap();
        assert_eq!(inv, b.monomial([2, 0, 0], th.inv().unwrap()));
    }

    #[test]
    fn c_coefficient_small_primes() {
        let a = alg(5, 0);
        assert!(el(&a, &[0, 1]).c_coefficient().unwrap().is_one());
        let a = alg(3, 1);
        let f = el(&a, &[1, 2, 2]);
        // l1^2 - l0 l2 = 4 - 2 = 2
        assert_eq!(f.c_coefficient().unwrap(), a.coeff_zero().from_int_like(2));
    }

    #[test]
    fn json_round_trip() {
        let a = alg(5, 2);
        let f = el(&a, &[1, 0, 3, 4]);
        assert_eq!(TruncElement::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn multivariate_wrap() {
        let f = FieldDescriptor::prime(3).unwrap();
        let a = TruncAlgebra::new(3, vec![f.from_int(2), f.from_int(1)]).unwrap();
        let x = a.var(0);
        let y = a.var(1);
        assert_eq!(x.pow(3), a.constant(f.from_int(2)));
        assert_eq!(x.mul(&y).pow(3), a.constant(f.from_int(2)));
        assert_eq!(a.index(&[1, 2, 0]), 7);
        assert_eq!(a.exp_of(7), [1, 2, 0]);
    }
}
