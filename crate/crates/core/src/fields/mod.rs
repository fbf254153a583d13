//! Exact arithmetic for `F_p`, `F_{p^k}` and rational function fields.
//!
//! A [`FieldDescriptor`] is shared behind an `Arc`; every [`FieldElement`]
//! carries a reference to it. Elements are kept in canonical form, so equality
//! and hashing are structural.

pub mod linalg;
mod modulus;
pub mod parse;
pub mod ratfunc;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::ring::{Field, Ring};
pub use modulus::default_modulus;
use modulus::{build_tables, digits, from_digits, is_irreducible, is_prime, pow_mod, ExtTables};
pub use ratfunc::{RatFunc, UniPoly};

pub const DEFAULT_P_CAP: u64 = 13;
pub const DEFAULT_MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("the field is infinite and cannot be enumerated")]
    InfiniteField,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p = {p} exceeds the cap {cap}")]
    PrimeTooLarge { p: u64, cap: u64 },
    #[error("modulus is not irreducible")]
    NotIrreducible,
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("field of order {order} is too large to tabulate")]
    FieldTooLarge { order: u64 },
    #[error("rational function degree {degree} exceeds the cap {cap}")]
    DegreeOverflow { degree: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
    #[error("no embedding of {from} into {to}")]
    NoEmbedding { from: String, to: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime,
    /// `F_p[a]/(modulus)`, modulus monic and stored low degree first.
    Extension { k: usize, modulus: Vec<u64> },
    /// `base(var)`.
    RationalFunction { base: Arc<FieldDescriptor>, var: String },
}

pub struct FieldDescriptor {
    p: u64,
    kind: FieldKind,
    tables: Option<ExtTables>,
    max_degree: usize,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.kind == o.kind
    }
}

impl Eq for FieldDescriptor {}

impl Hash for FieldDescriptor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.kind.hash(state);
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// JSON shape of a descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum DescriptorShape {
    #[serde(rename = "prime")]
    Prime { p: u64 },
    #[serde(rename = "ext")]
    Ext {
        p: u64,
        k: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    #[serde(rename = "ratfunc")]
    RatFunc {
        p: u64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<usize>,
    },
}

impl FieldDescriptor {
    pub fn prime(p: u64) -> Result<Arc<Self>, FieldError> {
        Self::prime_with_cap(p, DEFAULT_P_CAP)
    }

    pub fn prime_with_cap(p: u64, cap: u64) -> Result<Arc<Self>, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p > cap {
            return Err(FieldError::PrimeTooLarge { p, cap });
        }
        Ok(Arc::new(FieldDescriptor {
            p,
            kind: FieldKind::Prime,
            tables: None,
            max_degree: DEFAULT_MAX_DEGREE,
        }))
    }

    /// `F_{p^k}` with the built-in modulus. `k = 1` returns the prime field.
    pub fn extension(p: u64, k: usize) -> Result<Arc<Self>, FieldError> {
        if k == 0 {
            return Err(FieldError::BadModulus("degree 0".into()));
        }
        if k == 1 {
            return Self::prime(p);
        }
        Self::prime(p)?;
        Self::extension_with_modulus(p, default_modulus(p, k))
    }

    /// `F_p[a]/(modulus)` for a user-supplied monic modulus, low degree first.
    pub fn extension_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<Self>, FieldError> {
        Self::prime(p)?;
        if modulus.len() < 2 {
            return Err(FieldError::BadModulus("degree must be at least 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus("coefficient out of range".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(FieldError::BadModulus("modulus must be monic".into()));
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::NotIrreducible);
        }
        let tables = build_tables(p, &modulus)?;
        Ok(Arc::new(FieldDescriptor {
            p,
            kind: FieldKind::Extension { k: modulus.len() - 1, modulus },
            tables: Some(tables),
            max_degree: DEFAULT_MAX_DEGREE,
        }))
    }

    pub fn ratfunc(base: Arc<Self>, var: &str) -> Arc<Self> {
        Self::ratfunc_with_cap(base, var, DEFAULT_MAX_DEGREE)
    }

    pub fn ratfunc_with_cap(base: Arc<Self>, var: &str, max_degree: usize) -> Arc<Self> {
        Arc::new(FieldDescriptor {
            p: base.p,
            kind: FieldKind::RationalFunction { base, var: var.to_string() },
            tables: None,
            max_degree,
        })
    }

    /// `F_p(theta)`.
    pub fn rational(p: u64) -> Result<Arc<Self>, FieldError> {
        Ok(Self::ratfunc(Self::prime(p)?, "theta"))
    }

    /// `F_p(theta1, ..., thetaN)` as a tower, `theta1` innermost.
    pub fn rational_multi(p: u64, vars: usize) -> Result<Arc<Self>, FieldError> {
        if vars == 1 {
            return Self::rational(p);
        }
        let mut d = Self::prime(p)?;
        for i in 1..=vars {
            d = Self::ratfunc(d, &format!("theta{i}"));
        }
        Ok(d)
    }

    pub fn from_shape(shape: &DescriptorShape) -> Result<Arc<Self>, FieldError> {
        match shape {
            DescriptorShape::Prime { p } => Self::prime(*p),
            DescriptorShape::Ext { p, k, modulus } => match modulus {
                Some(m) => {
                    if m.len() != k + 1 {
                        return Err(FieldError::BadModulus("length must be k+1".into()));
                    }
                    Self::extension_with_modulus(*p, m.clone())
                }
                None => Self::extension(*p, *k),
            },
            DescriptorShape::RatFunc { p, vars } => Self::rational_multi(*p, vars.unwrap_or(1)),
        }
    }

    pub fn to_spec(&self) -> DescriptorShape {
        match &self.kind {
            FieldKind::Prime => DescriptorShape::Prime { p: self.p },
            FieldKind::Extension { k, modulus } => DescriptorShape::Ext {
                p: self.p,
                k: *k,
                modulus: Some(modulus.clone()),
            },
            FieldKind::RationalFunction { .. } => {
                let n = self.tower_height();
                DescriptorShape::RatFunc { p: self.p, vars: (n > 1).then_some(n) }
            }
        }
    }

    pub fn to_json(&self) -> Json {
        serde_json::to_value(self.to_spec()).expect("descriptor serializes")
    }

    pub fn from_json(v: &Json) -> Result<Arc<Self>, FieldError> {
        let shape: DescriptorShape =
            serde_json::from_value(v.clone()).map_err(|e| FieldError::Json(e.to_string()))?;
        Self::from_shape(&shape)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> &FieldKind {
        &self.kind
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Number of rational-function levels above the finite base.
    pub fn tower_height(&self) -> usize {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => 1 + base.tower_height(),
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.kind, FieldKind::RationalFunction { .. })
    }

    /// Extension degree over `F_p` for finite fields.
    pub fn degree(&self) -> Option<usize> {
        match &self.kind {
            FieldKind::Prime => Some(1),
            FieldKind::Extension { k, .. } => Some(*k),
            FieldKind::RationalFunction { .. } => None,
        }
    }

    pub fn order(&self) -> Option<u64> {
        self.degree().map(|k| self.p.pow(k as u32))
    }

    pub fn base_field(&self) -> Option<&Arc<FieldDescriptor>> {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => Some(base),
            _ => None,
        }
    }

    pub(crate) fn base(&self) -> &Arc<FieldDescriptor> {
        self.base_field().expect("rational function field")
    }

    /// The finite field at the bottom of the tower.
    pub fn ground(self: &Arc<Self>) -> Arc<FieldDescriptor> {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => base.ground(),
            _ => self.clone(),
        }
    }

    /// Human-readable name, e.g. `F_5`, `F_3^2`, `F_2(theta)`.
    pub fn name(&self) -> String {
        match &self.kind {
            FieldKind::Prime => format!("F_{}", self.p),
            FieldKind::Extension { k, .. } => format!("F_{}^{}", self.p, k),
            FieldKind::RationalFunction { .. } => {
                let mut vars = Vec::new();
                let mut d = self;
                while let FieldKind::RationalFunction { base, var } = &d.kind {
                    vars.push(var.clone());
                    d = base;
                }
                vars.reverse();
                format!("{}({})", d.name(), vars.join(","))
            }
        }
    }

    /// Variable names of the tower, innermost first.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut d = self;
        while let FieldKind::RationalFunction { base, var } = &d.kind {
            out.push(var.clone());
            d = base;
        }
        out.reverse();
        out
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => FieldElement {
                desc: self.clone(),
                val: Value::Frac(Arc::new(RatFunc {
                    num: UniPoly::zero(),
                    den: UniPoly::constant(base.one()),
                })),
            },
            _ => FieldElement { desc: self.clone(), val: Value::Int(0) },
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FieldElement {
        let r = n.rem_euclid(self.p as i64) as u32;
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => FieldElement {
                desc: self.clone(),
                val: Value::Frac(Arc::new(RatFunc {
                    num: UniPoly::constant(base.from_int(r as i64)),
                    den: UniPoly::constant(base.one()),
                })),
            },
            _ => FieldElement { desc: self.clone(), val: Value::Int(r) },
        }
    }

    /// Embed an element of the base field of a rational function field.
    pub fn from_base(self: &Arc<Self>, a: FieldElement) -> FieldElement {
        let base = self.base();
        assert_eq!(**base, *a.desc, "element of the wrong base field");
        FieldElement {
            desc: self.clone(),
            val: Value::Frac(Arc::new(RatFunc {
                num: UniPoly::constant(a),
                den: UniPoly::constant(base.one()),
            })),
        }
    }

    /// The generator: `a` of an extension, the top variable of a rational function field.
    pub fn generator(self: &Arc<Self>) -> FieldElement {
        match &self.kind {
            FieldKind::Prime => self.zero(),
            FieldKind::Extension { .. } => self.from_code(self.p as u32),
            FieldKind::RationalFunction { base, .. } => FieldElement {
                desc: self.clone(),
                val: Value::Frac(Arc::new(RatFunc {
                    num: UniPoly::monomial(base.one(), 1),
                    den: UniPoly::constant(base.one()),
                })),
            },
        }
    }

    /// Named tower variable (`theta`, `theta1`, ...) as an element of this field.
    pub fn variable(self: &Arc<Self>, name: &str) -> Option<FieldElement> {
        match &self.kind {
            FieldKind::RationalFunction { base, var } => {
                if var == name {
                    Some(self.generator())
                } else {
                    base.variable(name).map(|b| self.from_base(b))
                }
            }
            _ => None,
        }
    }

    /// Finite-field element from its integer code (base-`p` digits of the coefficient vector).
    pub fn from_code(self: &Arc<Self>, code: u32) -> FieldElement {
        let q = self.order().expect("finite field");
        assert!((code as u64) < q, "code out of range");
        FieldElement { desc: self.clone(), val: Value::Int(code) }
    }

    /// Extension element from coefficients of `1, a, a^2, ...`.
    pub fn from_coeffs(self: &Arc<Self>, c: &[i64]) -> FieldElement {
        let k = self.degree().expect("finite field");
        let p = self.p as i64;
        let mut d = vec![0u64; k];
        for (i, &x) in c.iter().enumerate() {
            assert!(i < k, "too many coefficients");
            d[i] = x.rem_euclid(p) as u64;
        }
        self.from_code(from_digits(&d, self.p) as u32)
    }

    /// Fraction `num/den` in a rational function field.
    pub fn fraction(
        self: &Arc<Self>,
        num: UniPoly,
        den: UniPoly,
    ) -> Result<FieldElement, FieldError> {
        let r = RatFunc::reduce(num, den, self)?;
        Ok(FieldElement { desc: self.clone(), val: Value::Frac(Arc::new(r)) })
    }

    /// All elements in code order.
    pub fn elements(self: &Arc<Self>) -> Result<Vec<FieldElement>, FieldError> {
        let q = self.order().ok_or(FieldError::InfiniteField)?;
        Ok((0..q as u32).map(|c| self.from_code(c)).collect())
    }

    /// Uniform element for finite fields; a small random fraction otherwise.
    pub fn random<G: Rng + ?Sized>(self: &Arc<Self>, rng: &mut G) -> FieldElement {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => loop {
                let nd = rng.gen_range(0..=3);
                let dd = rng.gen_range(0..=2);
                let num = UniPoly::from_coeffs((0..=nd).map(|_| base.random_integral(rng)).collect());
                let den = UniPoly::from_coeffs((0..=dd).map(|_| base.random_integral(rng)).collect());
                if den.is_zero() {
                    continue;
                }
                if let Ok(x) = self.fraction(num, den) {
                    return x;
                }
            },
            _ => {
                let q = self.order().unwrap();
                self.from_code(rng.gen_range(0..q) as u32)
            }
        }
    }

    /// Like [`Self::random`], but with denominator 1 at every tower level.
    fn random_integral<G: Rng + ?Sized>(self: &Arc<Self>, rng: &mut G) -> FieldElement {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => {
                let nd = rng.gen_range(0..=2);
                let num = UniPoly::from_coeffs((0..=nd).map(|_| base.random_integral(rng)).collect());
                self.fraction(num, UniPoly::constant(base.one())).expect("small degree")
            }
            _ => self.random(rng),
        }
    }

    pub fn random_nonzero<G: Rng + ?Sized>(self: &Arc<Self>, rng: &mut G) -> FieldElement {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Size of a basis of this field over its subfield of `p`-th powers.
    pub fn p_basis_size(&self) -> usize {
        match &self.kind {
            FieldKind::RationalFunction { base, .. } => self.p as usize * base.p_basis_size(),
            _ => 1,
        }
    }

    fn ext_tables(&self) -> &ExtTables {
        self.tables.as_ref().expect("extension tables")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Int(u32),
    Frac(Arc<RatFunc>),
}

#[derive(Clone)]
pub struct FieldElement {
    desc: Arc<FieldDescriptor>,
    val: Value,
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.val == o.val && (Arc::ptr_eq(&self.desc, &o.desc) || self.desc == o.desc)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.val.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.val.cmp(&o.val)
    }
}

impl FieldElement {
    pub fn descriptor(&self) -> &Arc<FieldDescriptor> {
        &self.desc
    }

    pub fn p(&self) -> u64 {
        self.desc.p
    }

    /// Integer code for finite-field elements.
    pub fn code(&self) -> Option<u32> {
        match self.val {
            Value::Int(c) => Some(c),
            Value::Frac(_) => None,
        }
    }

    /// Coefficients over `F_p` of an extension element (length `k`).
    pub fn ext_coeffs(&self) -> Option<Vec<u64>> {
        let k = self.desc.degree()?;
        Some(digits(self.code()? as u64, self.desc.p, k))
    }

    pub fn as_ratfunc(&self) -> Option<&RatFunc> {
        match &self.val {
            Value::Frac(r) => Some(r),
            Value::Int(_) => None,
        }
    }

    fn same_field(&self, o: &Self) -> Result<(), FieldError> {
        if Arc::ptr_eq(&self.desc, &o.desc) || self.desc == o.desc {
            Ok(())
        } else {
            Err(FieldError::MixedFields)
        }
    }

    fn with(&self, val: Value) -> FieldElement {
        FieldElement { desc: self.desc.clone(), val }
    }

    fn frac_parts(&self) -> &RatFunc {
        match &self.val {
            Value::Frac(r) => r,
            Value::Int(_) => unreachable!("rational function payload"),
        }
    }

    fn make_frac(&self, num: UniPoly, den: UniPoly) -> Result<FieldElement, FieldError> {
        self.desc.fraction(num, den)
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        let p = self.desc.p;
        match (&self.val, &o.val) {
            (Value::Int(a), Value::Int(b)) => Ok(match &self.desc.kind {
                FieldKind::Prime => self.with(Value::Int(((*a as u64 + *b as u64) % p) as u32)),
                FieldKind::Extension { .. } => self.with(Value::Int(ext_add(*a, *b, p, false))),
                FieldKind::RationalFunction { .. } => unreachable!(),
            }),
            (Value::Frac(x), Value::Frac(y)) => {
                if x.den == y.den {
                    return self.make_frac(x.num.add(&y.num), x.den.clone());
                }
                let num = x.num.mul(&y.den).add(&y.num.mul(&x.den));
                self.make_frac(num, x.den.mul(&y.den))
            }
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self, FieldError> {
        self.checked_add(&o.neg())
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        let p = self.desc.p;
        match (&self.val, &o.val) {
            (Value::Int(a), Value::Int(b)) => Ok(match &self.desc.kind {
                FieldKind::Prime => self.with(Value::Int(((*a as u64 * *b as u64) % p) as u32)),
                FieldKind::Extension { .. } => {
                    if *a == 0 || *b == 0 {
                        self.with(Value::Int(0))
                    } else {
                        let t = self.desc.ext_tables();
                        let n = t.exp.len();
                        let l = (t.log[*a as usize] as usize + t.log[*b as usize] as usize) % n;
                        self.with(Value::Int(t.exp[l]))
                    }
                }
                FieldKind::RationalFunction { .. } => unreachable!(),
            }),
            (Value::Frac(x), Value::Frac(y)) => {
                if x.num.is_zero() || y.num.is_zero() {
                    return Ok(self.desc.zero());
                }
                self.make_frac(x.num.mul(&y.num), x.den.mul(&y.den))
            }
            _ => Err(FieldError::MixedFields),
        }
    }

    pub fn checked_inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let p = self.desc.p;
        match &self.val {
            Value::Int(a) => Ok(match &self.desc.kind {
                FieldKind::Prime => self.with(Value::Int(pow_mod(*a as u64, p - 2, p) as u32)),
                _ => {
                    let t = self.desc.ext_tables();
                    let n = t.exp.len();
                    let l = (n - t.log[*a as usize] as usize) % n;
                    self.with(Value::Int(t.exp[l]))
                }
            }),
            Value::Frac(x) => self.make_frac(x.den.clone(), x.num.clone()),
        }
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self, FieldError> {
        self.same_field(o)?;
        self.checked_mul(&o.checked_inv()?)
    }

    pub fn checked_pow(&self, mut e: u64) -> Result<Self, FieldError> {
        let mut base = self.clone();
        let mut acc = self.desc.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `a^p`.
    pub fn checked_frobenius(&self) -> Result<Self, FieldError> {
        match &self.val {
            Value::Int(_) => self.checked_pow(self.desc.p),
            Value::Frac(x) => {
                let p = self.desc.p as usize;
                self.make_frac(x.num.frobenius(p), x.den.frobenius(p))
            }
        }
    }

    pub fn frobenius(&self) -> Self {
        self.checked_frobenius().unwrap_or_else(|e| panic!("{e}"))
    }

    /// Coordinates `c` with `self = sum_b c_b^p * basis_b`, where the basis of the field
    /// over its `p`-th powers is `theta^j * (base basis)`, top variable outermost.
    pub fn p_coordinates(&self) -> Result<Vec<FieldElement>, FieldError> {
        let p = self.desc.p;
        match &self.desc.kind {
            FieldKind::Prime => Ok(vec![self.clone()]),
            FieldKind::Extension { k, .. } => {
                Ok(vec![self.checked_pow(p.pow(*k as u32 - 1))?])
            }
            FieldKind::RationalFunction { base, .. } => {
                let x = self.frac_parts();
                let pp = p as usize;
                // self = N * D^{p-1} / D^p
                let mut n = x.num.clone();
                for _ in 1..pp {
                    n = n.mul(&x.den);
                }
                let bsize = base.p_basis_size();
                let mut out = Vec::with_capacity(pp * bsize);
                for j in 0..pp {
                    // coefficients of theta^{j + p*m}, each split over the base
                    let mut per_beta: Vec<Vec<FieldElement>> = vec![Vec::new(); bsize];
                    let mut m = 0;
                    while j + pp * m < n.c.len() {
                        let coords = n.c[j + pp * m].p_coordinates()?;
                        for (b, c) in coords.into_iter().enumerate() {
                            per_beta[b].push(c);
                        }
                        m += 1;
                    }
                    for coeffs in per_beta {
                        let num = UniPoly::from_coeffs(coeffs);
                        out.push(self.make_frac(num, x.den.clone())?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// `Some(b)` with `b^p = self` when `self` is a `p`-th power.
    pub fn is_p_power(&self) -> Option<FieldElement> {
        let coords = self.p_coordinates().ok()?;
        if coords[1..].iter().all(|c| c.is_zero()) {
            Some(coords[0].clone())
        } else {
            None
        }
    }

    pub fn to_json(&self) -> Json {
        match &self.val {
            Value::Int(c) => match &self.desc.kind {
                FieldKind::Prime => json!(c),
                _ => json!(self.ext_coeffs().unwrap()),
            },
            Value::Frac(x) => json!({
                "num": x.num.c.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
                "den": x.den.c.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            }),
        }
    }

    pub fn from_json(desc: &Arc<FieldDescriptor>, v: &Json) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::Json(format!("bad element {v} for {}", desc.name()));
        match &desc.kind {
            FieldKind::Prime => {
                let n = v.as_i64().ok_or_else(bad)?;
                Ok(desc.from_int(n))
            }
            FieldKind::Extension { k, .. } => {
                let arr = v.as_array().ok_or_else(bad)?;
                if arr.len() != *k {
                    return Err(bad());
                }
                let c: Option<Vec<i64>> = arr.iter().map(|x| x.as_i64()).collect();
                Ok(desc.from_coeffs(&c.ok_or_else(bad)?))
            }
            FieldKind::RationalFunction { base, .. } => {
                let side = |key: &str| -> Result<UniPoly, FieldError> {
                    let arr = v.get(key).and_then(|a| a.as_array()).ok_or_else(bad)?;
                    let c: Result<Vec<_>, _> =
                        arr.iter().map(|x| FieldElement::from_json(base, x)).collect();
                    Ok(UniPoly::from_coeffs(c?))
                };
                desc.fraction(side("num")?, side("den")?)
            }
        }
    }

    fn fmt_poly(poly: &UniPoly, var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in poly.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = c.to_string();
            let compound = cs.contains(['+', '/']);
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            match (i, cs.as_str()) {
                (0, _) => write!(f, "{cs}")?,
                (_, "1") => write!(f, "{mono}")?,
                _ if compound => write!(f, "({cs})*{mono}")?,
                _ => write!(f, "{cs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn ext_add(a: u32, b: u32, p: u64, negate_b: bool) -> u32 {
    let (mut a, mut b) = (a as u64, b as u64);
    let mut out = 0u64;
    let mut place = 1u64;
    while a > 0 || b > 0 {
        let da = a % p;
        let db = b % p;
        let s = if negate_b { (da + p - db) % p } else { (da + db) % p };
        out += s * place;
        place *= p;
        a /= p;
        b /= p;
    }
    out as u32
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.val, &self.desc.kind) {
            (Value::Int(c), FieldKind::Prime) => write!(f, "{c}"),
            (Value::Int(_), FieldKind::Extension { .. }) => {
                let c: Vec<FieldElement> = self
                    .ext_coeffs()
                    .unwrap()
                    .iter()
                    .map(|&d| FieldElement { desc: self.desc.ground_prime(), val: Value::Int(d as u32) })
                    .collect();
                Self::fmt_poly(&UniPoly::from_coeffs(c), "a", f)
            }
            (Value::Frac(x), FieldKind::RationalFunction { var, .. }) => {
                let paren = |p: &UniPoly| p.c.iter().filter(|c| !c.is_zero()).count() > 1;
                if x.den.is_one() {
                    return Self::fmt_poly(&x.num, var, f);
                }
                if paren(&x.num) {
                    write!(f, "(")?;
                    Self::fmt_poly(&x.num, var, f)?;
                    write!(f, ")")?;
                } else {
                    Self::fmt_poly(&x.num, var, f)?;
                }
                write!(f, "/")?;
                if paren(&x.den) || x.den.degree() == Some(1) && !x.den.c[0].is_zero() {
                    write!(f, "(")?;
                    Self::fmt_poly(&x.den, var, f)?;
                    write!(f, ")")
                } else {
                    Self::fmt_poly(&x.den, var, f)
                }
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FieldDescriptor {
    fn ground_prime(&self) -> Arc<FieldDescriptor> {
        Arc::new(FieldDescriptor {
            p: self.p,
            kind: FieldKind::Prime,
            tables: None,
            max_degree: self.max_degree,
        })
    }
}

fn fail(e: FieldError) -> ! {
    panic!("field arithmetic failed: {e}")
}

impl Ring for FieldElement {
    fn zero_like(&self) -> Self {
        self.desc.zero()
    }

    fn one_like(&self) -> Self {
        self.desc.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.desc.from_int(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).unwrap_or_else(|e| fail(e))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).unwrap_or_else(|e| fail(e))
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).unwrap_or_else(|e| fail(e))
    }

    fn neg(&self) -> Self {
        let p = self.desc.p;
        match &self.val {
            Value::Int(a) => match &self.desc.kind {
                FieldKind::Prime => self.with(Value::Int(((p - *a as u64) % p) as u32)),
                _ => self.with(Value::Int(ext_add(0, *a, p, true))),
            },
            Value::Frac(x) => self.with(Value::Frac(Arc::new(RatFunc {
                num: x.num.neg(),
                den: x.den.clone(),
            }))),
        }
    }

    fn is_zero(&self) -> bool {
        match &self.val {
            Value::Int(a) => *a == 0,
            Value::Frac(x) => x.num.is_zero(),
        }
    }

    fn characteristic(&self) -> u64 {
        self.desc.p
    }

    fn try_inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }

    fn is_one(&self) -> bool {
        match &self.val {
            Value::Int(a) => *a == 1,
            Value::Frac(x) => x.den.is_one() && x.num.is_one(),
        }
    }

    fn pow(&self, e: u64) -> Self {
        self.checked_pow(e).unwrap_or_else(|e| fail(e))
    }
}

impl Field for FieldElement {}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_product() {
        let f = FieldDescriptor::prime(5).unwrap();
        assert_eq!(f.from_int(3).mul(&f.from_int(4)), f.from_int(2));
    }

    #[test]
    fn f9_generator_squares_to_minus_one() {
        let f = FieldDescriptor::extension_with_modulus(3, vec![1, 0, 1]).unwrap();
        let a = f.generator();
        assert_eq!(a.mul(&a), f.from_int(2));
        assert_eq!(a.frobenius(), a.neg());
    }

    #[test]
    fn ratfunc_sum_reduces_to_one() {
        let f = FieldDescriptor::rational(2).unwrap();
        let th = f.generator();
        let one = f.one();
        let a = th.add(&one).checked_div(&th).unwrap();
        let b = one.checked_div(&th).unwrap();
        assert_eq!(a.add(&b), one);
    }

    #[test]
    fn ratfunc_frobenius() {
        let f = FieldDescriptor::rational(3).unwrap();
        let th = f.generator();
        let x = th.add(&f.one());
        assert_eq!(x.frobenius(), th.pow(3).add(&f.one()));
    }

    #[test]
    fn p_power_detection() {
        let f = FieldDescriptor::rational(5).unwrap();
        let th = f.generator();
        assert!(th.is_p_power().is_none());
        assert_eq!(th.pow(5).is_p_power(), Some(th.clone()));
        let f4 = FieldDescriptor::extension(2, 2).unwrap();
        for x in f4.elements().unwrap() {
            let r = x.is_p_power().unwrap();
            assert_eq!(r.pow(2), x);
        }
    }

    #[test]
    fn p_coordinates_reconstruct() {
        let f = FieldDescriptor::rational_multi(3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let basis: Vec<FieldElement> = {
            let t1 = f.variable("theta1").unwrap();
            let t2 = f.variable("theta2").unwrap();
            let mut b = Vec::new();
            for j in 0..3 {
                for i in 0..3 {
                    b.push(t2.pow(j).mul(&t1.pow(i)));
                }
            }
            b
        };
        let t1 = f.variable("theta1").unwrap();
        let t2 = f.variable("theta2").unwrap();
        for _ in 0..20 {
            let mut x = f.zero();
            for b in &basis {
                x = x.add(&b.mul(&f.from_int(rng.gen_range(0..3))));
            }
            let den = t2.add(&t1.mul(&f.from_int(rng.gen_range(0..3)))).add(&f.one());
            let x = x.mul(&t1.add(&t2)).checked_div(&den).unwrap();
            let c = x.p_coordinates().unwrap();
            assert_eq!(c.len(), 9);
            let back = c
                .iter()
                .zip(&basis)
                .fold(f.zero(), |acc, (ci, bi)| acc.add(&ci.frobenius().mul(bi)));
            assert_eq!(back, x);
        }
    }

    #[test]
    fn enumeration_and_errors() {
        assert_eq!(FieldDescriptor::prime(2).unwrap().elements().unwrap().len(), 2);
        assert_eq!(FieldDescriptor::extension(2, 2).unwrap().elements().unwrap().len(), 4);
        assert_eq!(
            FieldDescriptor::rational(3).unwrap().elements().unwrap_err(),
            FieldError::InfiniteField
        );
        assert_eq!(FieldDescriptor::prime(9).unwrap_err(), FieldError::NotPrime(9));
        assert!(matches!(
            FieldDescriptor::prime(17),
            Err(FieldError::PrimeTooLarge { .. })
        ));
        assert!(FieldDescriptor::prime_with_cap(17, 20).is_ok());
        assert_eq!(
            FieldDescriptor::extension_with_modulus(5, vec![1, 0, 1]).unwrap_err(),
            FieldError::NotIrreducible
        );
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = FieldDescriptor::prime(3).unwrap().one();
        let b = FieldDescriptor::prime(5).unwrap().one();
        assert_eq!(a.checked_add(&b).unwrap_err(), FieldError::MixedFields);
        let z = FieldDescriptor::prime(5).unwrap().zero();
        assert_eq!(b.checked_div(&z).unwrap_err(), FieldError::DivisionByZero);
    }

    #[test]
    fn degree_cap_is_enforced() {
        let f = FieldDescriptor::ratfunc_with_cap(FieldDescriptor::prime(2).unwrap(), "theta", 8);
        let th = f.generator();
        assert!(matches!(
            th.checked_pow(9),
            Err(FieldError::DegreeOverflow { degree: 9, cap: 8 })
        ));
    }

    #[test]
    fn json_round_trip() {
        for d in [
            FieldDescriptor::prime(5).unwrap(),
            FieldDescriptor::extension(3, 2).unwrap(),
            FieldDescriptor::rational(2).unwrap(),
            FieldDescriptor::rational_multi(3, 2).unwrap(),
        ] {
            let back = FieldDescriptor::from_json(&d.to_json()).unwrap();
            assert_eq!(back, d);
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            for _ in 0..10 {
                let x = d.random(&mut rng);
                assert_eq!(FieldElement::from_json(&back, &x.to_json()).unwrap(), x);
            }
        }
        assert_eq!(
            FieldDescriptor::extension(3, 2).unwrap().to_json(),
            json!({"kind":"ext","p":3,"k":2,"modulus":[1,0,1]})
        );
        assert_eq!(
            FieldDescriptor::rational(2).unwrap().to_json(),
            json!({"kind":"ratfunc","p":2})
        );
    }

    #[test]
    fn display_forms() {
        let f = FieldDescriptor::rational(3).unwrap();
        let th = f.generator();
        let x = th.add(&f.one()).checked_div(&th).unwrap();
        assert_eq!(x.to_string(), "(theta+1)/theta");
        let f9 = FieldDescriptor::extension(3, 2).unwrap();
        assert_eq!(f9.from_coeffs(&[1, 2]).to_string(), "2*a+1");
    }
}

/// Rank of `xs` over the subfield of `p`-th powers, via their `p`-coordinates.
pub fn p_independence_rank(xs: &[FieldElement]) -> Result<usize, FieldError> {
    let Some(first) = xs.first() else { return Ok(0) };
    let zero = first.descriptor().zero();
    let rows = xs.iter().map(|x| x.p_coordinates()).collect::<Result<Vec<_>, _>>()?;
    Ok(linalg::Matrix::from_rows(rows, &zero).rank())
}

/// Embedding `F_{p^k} -> F_{p^m}` for `k | m`, sending the generator to a root of its modulus.
#[derive(Debug, Clone)]
pub struct Embedding {
    src: Arc<FieldDescriptor>,
    dst: Arc<FieldDescriptor>,
    gen_image: FieldElement,
}

impl Embedding {
    pub fn new(src: &Arc<FieldDescriptor>, dst: &Arc<FieldDescriptor>) -> Result<Self, FieldError> {
        let none = || FieldError::NoEmbedding { from: src.name(), to: dst.name() };
        let (Some(k), Some(m)) = (src.degree(), dst.degree()) else { return Err(none()) };
        if src.p() != dst.p() || m % k != 0 {
            return Err(none());
        }
        let gen_image = match src.kind() {
            FieldKind::Extension { modulus, .. } => {
                let root = dst.elements()?.into_iter().find(|x| {
                    let v = modulus.iter().rev().fold(dst.zero(), |acc, &c| acc.mul(x).add(&dst.from_int(c as i64)));
                    v.is_zero()
                });
                root.ok_or_else(none)?
            }
            _ => dst.zero(),
        };
        Ok(Embedding { src: src.clone(), dst: dst.clone(), gen_image })
    }

    pub fn source(&self) -> &Arc<FieldDescriptor> {
        &self.src
    }

    pub fn target(&self) -> &Arc<FieldDescriptor> {
        &self.dst
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        match a.ext_coeffs() {
            Some(c) => c.iter().rev().fold(self.dst.zero(), |acc, &x| acc.mul(&self.gen_image).add(&self.dst.from_int(x as i64))),
            None => self.dst.from_int(a.code().unwrap_or(0) as i64),
        }
    }
}
