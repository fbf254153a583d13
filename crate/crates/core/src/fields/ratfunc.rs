//! Univariate polynomials over a field element type and reduced fractions of
//! them. A rational-function field is a tower level over any base field.

use std::sync::Arc;

use super::{FieldDescriptor, FieldElement, FieldError};
use crate::ring::{Field, Ring};

/// Dense univariate polynomial, low degree first, never with a zero leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    pub(crate) c: Vec<FieldElement>,
}

impl std::fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.c.iter()).finish()
    }
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn constant(a: FieldElement) -> Self {
        Self::from_coeffs(vec![a])
    }

    pub fn from_coeffs(mut c: Vec<FieldElement>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UniPoly { c }
    }

    /// `a * x^n`
    pub fn monomial(a: FieldElement, n: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut c = vec![a.zero_like(); n + 1];
        c[n] = a;
        UniPoly { c }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.c.last()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => out.push(a.add(b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        UniPoly { c: self.c.iter().map(|a| a.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let zero = self.c[0].zero_like();
        let mut out = vec![zero; self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, a: &FieldElement) -> Self {
        Self::from_coeffs(self.c.iter().map(|x| x.mul(a)).collect())
    }

    /// Quotient and remainder; `d` must be non-zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.c[dd].inv().expect("leading coefficient is a unit");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let zero = d.c[0].zero_like();
        let mut q = vec![zero; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = r[top].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dd;
            for (i, di) in d.c.iter().enumerate() {
                r[shift + i] = r[shift + i].sub(&c.mul(di));
            }
            q[shift] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv().expect("non-zero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.monic();
        let mut b = o.monic();
        while !b.is_zero() {
            let r = a.divrem(&b).1.monic();
            a = b;
            b = r;
        }
        a
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = x.zero_like();
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Coefficient-wise Frobenius followed by `x -> x^p`.
    pub fn frobenius(&self, p: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let zero = self.c[0].zero_like();
        let mut out = vec![zero; (self.c.len() - 1) * p + 1];
        for (i, a) in self.c.iter().enumerate() {
            out[i * p] = a.frobenius();
        }
        Self::from_coeffs(out)
    }
}

/// Reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    pub(crate) num: UniPoly,
    pub(crate) den: UniPoly,
}

impl RatFunc {
    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    /// Bring `num/den` to lowest terms with monic denominator, enforcing the degree cap.
    pub(crate) fn reduce(
        num: UniPoly,
        den: UniPoly,
        desc: &Arc<FieldDescriptor>,
    ) -> Result<RatFunc, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let one = UniPoly::constant(desc.base().one());
        if num.is_zero() {
            return Ok(RatFunc { num, den: one });
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.divrem(&g).0, den.divrem(&g).0)
            }
        };
        let lead = den.leading().unwrap().clone();
        let (num, den) = if lead.is_one() {
            (num, den)
        } else {
            let inv = lead.inv().unwrap();
            (num.scale(&inv), den.scale(&inv))
        };
        let cap = desc.max_degree();
        let deg = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if deg > cap {
            return Err(FieldError::DegreeOverflow { degree: deg, cap });
        }
        Ok(RatFunc { num, den })
    }
}
