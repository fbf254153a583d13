use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value as Json};

use super::SurfError;
use crate::fields::{Embedding, FieldDescriptor, FieldElement};
use crate::ring::Ring;

pub type Exp3 = [u32; 3];

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Truncated power series in `x, y, z`: only monomials of total degree below
/// the precision are stored.
#[derive(Clone, PartialEq)]
pub struct PowerSeries3 {
    field: Arc<FieldDescriptor>,
    precision: u32,
    terms: BTreeMap<Exp3, FieldElement>,
}

fn degree(e: &Exp3) -> u32 {
    e[0] + e[1] + e[2]
}

impl PowerSeries3 {
    pub fn zero(field: &Arc<FieldDescriptor>, precision: u32) -> Self {
        PowerSeries3 { field: field.clone(), precision, terms: BTreeMap::new() }
    }

    pub fn constant(field: &Arc<FieldDescriptor>, precision: u32, c: FieldElement) -> Self {
        Self::from_terms(field, precision, [([0, 0, 0], c)])
    }

    pub fn var(field: &Arc<FieldDescriptor>, precision: u32, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::from_terms(field, precision, [(e, field.one())])
    }

    pub fn from_terms(
        field: &Arc<FieldDescriptor>,
        precision: u32,
        terms: impl IntoIterator<Item = (Exp3, FieldElement)>,
    ) -> Self {
        let mut s = Self::zero(field, precision);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// From integer coefficients, e.g. `&[([1, 1, 0], 1), ([0, 0, 3], 1)]` for `xy + z^3`.
    pub fn from_ints(field: &Arc<FieldDescriptor>, precision: u32, terms: &[(Exp3, i64)]) -> Self {
        Self::from_terms(field, precision, terms.iter().map(|(e, c)| (*e, field.from_int(*c))))
    }

    fn add_term(&mut self, e: Exp3, c: FieldElement) {
        if degree(&e) >= self.precision || c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(|| self.field.zero());
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn terms(&self) -> &BTreeMap<Exp3, FieldElement> {
        &self.terms
    }

    pub fn coeff(&self, e: &Exp3) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&[0, 0, 0])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest total degree present.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(degree).min()
    }

    pub fn with_precision(&self, precision: u32) -> Self {
        Self::from_terms(&self.field, precision, self.terms.clone())
    }

    pub fn homogeneous(&self, d: u32) -> Self {
        let t = self.terms.iter().filter(|(e, _)| degree(e) == d).map(|(e, c)| (*e, c.clone()));
        Self::from_terms(&self.field, self.precision, t)
    }

    /// Terms satisfying a predicate on the exponent.
    pub fn filter(&self, keep: impl Fn(&Exp3) -> bool) -> Self {
        let t = self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (*e, c.clone()));
        Self::from_terms(&self.field, self.precision, t)
    }

    fn check(&self, o: &Self) -> Result<u32, SurfError> {
        if self.field != o.field {
            return Err(SurfError::MixedFields);
        }
        Ok(self.precision.min(o.precision))
    }

    pub fn add(&self, o: &Self) -> Result<Self, SurfError> {
        let n = self.check(o)?;
        let mut s = self.with_precision(n);
        for (e, c) in &o.terms {
            s.add_term(*e, c.clone());
        }
        Ok(s)
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SurfError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.field.from_int(-1))
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_terms(&self.field, self.precision, self.terms.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SurfError> {
        let n = self.check(o)?;
        let mut out = Self::zero(&self.field, n);
        for (ea, ca) in &self.terms {
            let da = degree(ea);
            if da >= n {
                continue;
            }
            for (eb, cb) in &o.terms {
                if da + degree(eb) < n {
                    out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca.mul(cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self, SurfError> {
        let mut acc = Self::constant(&self.field, self.precision, self.field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn partial(&self, i: usize) -> Self {
        let t = self.terms.iter().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e2 = *e;
            e2[i] -= 1;
            (e2, c.mul(&self.field.from_int(e[i] as i64)))
        });
        Self::from_terms(&self.field, self.precision, t)
    }

    /// Inverse of a unit, by `u^{-1} = c^{-1} sum (1 - u/c)^k`.
    pub fn inverse(&self) -> Result<Self, SurfError> {
        let c = self.constant_term();
        let ci = c.try_inv().ok_or(SurfError::NotUnit)?;
        let one = Self::constant(&self.field, self.precision, self.field.one());
        let nil = one.sub(&self.scale(&ci))?;
        let mut acc = one.clone();
        let mut pw = one;
        for _ in 1..self.precision {
            pw = pw.mul(&nil)?;
            if pw.is_zero() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        Ok(acc.scale(&ci))
    }

    /// `self(s_0, s_1, s_2)` for substitutions without constant term.
    pub fn compose(&self, s: &[PowerSeries3; 3]) -> Result<Self, SurfError> {
        let n = s.iter().try_fold(self.precision, |acc, x| self.check(x).map(|m| acc.min(m)))?;
        if s.iter().any(|x| !x.constant_term().is_zero()) {
            return Err(SurfError::NotInMaximalIdeal);
        }
        // powers are cached per variable; orders keep the products short
        let mut cache: [Vec<PowerSeries3>; 3] = Default::default();
        for (i, c) in cache.iter_mut().enumerate() {
            c.push(Self::constant(&self.field, n, self.field.one()));
            let top = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
            for k in 1..=top.min(n) as usize {
                let next = c[k - 1].mul(&s[i].with_precision(n))?;
                c.push(next);
            }
        }
        let mut out = Self::zero(&self.field, n);
        for (e, c) in &self.terms {
            if degree(e) >= n {
                continue;
            }
            let m = cache[0][e[0] as usize].mul(&cache[1][e[1] as usize])?.mul(&cache[2][e[2] as usize])?;
            for (e2, c2) in m.terms {
                out.add_term(e2, c2.mul(c));
            }
        }
        Ok(out)
    }

    /// Linear substitution `u_m = sum_n a_mn X_n`.
    pub fn linear_change(&self, a: &[[FieldElement; 3]; 3]) -> Result<Self, SurfError> {
        let args: Vec<PowerSeries3> = (0..3)
            .map(|m| {
                Self::from_terms(
                    &self.field,
                    self.precision,
                    (0..3).map(|n| {
                        let mut e = [0; 3];
                        e[n] = 1;
                        (e, a[m][n].clone())
                    }),
                )
            })
            .collect();
        self.compose(&[args[0].clone(), args[1].clone(), args[2].clone()])
    }

    /// Push coefficients through a field embedding.
    pub fn map_field(&self, emb: &Embedding) -> Self {
        Self::from_terms(emb.target(), self.precision, self.terms.iter().map(|(e, c)| (*e, emb.apply(c))))
    }

    pub fn to_json(&self) -> Json {
        let terms: Vec<Json> = self
            .terms
            .iter()
            .map(|(e, c)| json!([e[0], e[1], e[2], c.to_json()]))
            .collect();
        json!({ "field": self.field.to_json(), "precision": self.precision, "terms": terms })
    }

    pub fn from_json(v: &Json) -> Result<Self, SurfError> {
        let bad = |m: &str| SurfError::Json(m.to_string());
        let field = FieldDescriptor::from_json(&v["field"])?;
        let precision = v["precision"].as_u64().ok_or_else(|| bad("precision"))? as u32;
        let mut s = Self::zero(&field, precision);
        for t in v["terms"].as_array().ok_or_else(|| bad("terms"))? {
            let a = t.as_array().filter(|a| a.len() == 4).ok_or_else(|| bad("term"))?;
            let mut e = [0u32; 3];
            for (i, slot) in e.iter_mut().enumerate() {
                *slot = a[i].as_u64().ok_or_else(|| bad("exponent"))? as u32;
            }
            s.add_term(e, FieldElement::from_json(&field, &a[3])?);
        }
        Ok(s)
    }
}

impl fmt::Display for PowerSeries3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.precision);
        }
        let mut keys: Vec<&Exp3> = self.terms.keys().collect();
        keys.sort_by_key(|e| (degree(e), std::cmp::Reverse(**e)));
        let parts: Vec<String> = keys
            .into_iter()
            .map(|e| {
                let mono: Vec<String> = (0..3)
                    .filter(|&i| e[i] > 0)
                    .map(|i| if e[i] == 1 { NAMES[i].to_string() } else { format!("{}^{}", NAMES[i], e[i]) })
                    .collect();
                let c = &self.terms[e];
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono.join("*"),
                    (false, false) => format!("{}*{}", c, mono.join("*")),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PowerSeries3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [prec {} over {}]", self.precision, self.field.name())
    }
}
