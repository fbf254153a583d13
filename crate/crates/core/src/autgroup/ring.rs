//! The four coefficient rings used for points of `G_w`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::{Field, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffRingKind {
    /// The base field itself.
    Field,
    /// `k[e]/(e^2)`.
    Dual,
    /// `k[u]/(u^p)`.
    TruncU,
    /// `k[u, u^-1, e]/(e^2)`.
    LaurentEps,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffRing {
    kind: CoeffRingKind,
    base: Arc<FieldDescriptor>,
}

/// Laurent polynomial in `u` over the base field.
type Laurent = BTreeMap<i64, FieldElement>;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Data {
    Field(FieldElement),
    Dual(FieldElement, FieldElement),
    TruncU(Vec<FieldElement>),
    /// `a(u) + b(u) e`
    LaurentEps(Laurent, Laurent),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffElem {
    ring: Arc<CoeffRing>,
    data: Data,
}

impl CoeffRing {
    pub fn new(kind: CoeffRingKind, base: &Arc<FieldDescriptor>) -> Arc<Self> {
        Arc::new(CoeffRing { kind, base: base.clone() })
    }

    pub fn kind(&self) -> CoeffRingKind {
        self.kind
    }

    pub fn base(&self) -> &Arc<FieldDescriptor> {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn name(&self) -> String {
        let k = self.base.name();
        match self.kind {
            CoeffRingKind::Field => k,
            CoeffRingKind::Dual => format!("{k}[e]/(e^2)"),
            CoeffRingKind::TruncU => format!("{k}[u]/(u^{})", self.p()),
            CoeffRingKind::LaurentEps => format!("{k}[u,u^-1,e]/(e^2)"),
        }
    }

    pub fn from_base(self: &Arc<Self>, a: FieldElement) -> CoeffElem {
        let z = self.base.zero();
        let data = match self.kind {
            CoeffRingKind::Field => Data::Field(a),
            CoeffRingKind::Dual => Data::Dual(a, z),
            CoeffRingKind::TruncU => {
                let mut v = vec![z; self.p() as usize];
                v[0] = a;
                Data::TruncU(v)
            }
            CoeffRingKind::LaurentEps => Data::LaurentEps(mono(0, a), Laurent::new()),
        };
        CoeffElem { ring: self.clone(), data }
    }

    pub fn zero(self: &Arc<Self>) -> CoeffElem {
        self.from_base(self.base.zero())
    }

    pub fn one(self: &Arc<Self>) -> CoeffElem {
        self.from_base(self.base.one())
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> CoeffElem {
        self.from_base(self.base.from_int(n))
    }

    /// `e` in the dual or Laurent rings.
    pub fn eps(self: &Arc<Self>) -> Option<CoeffElem> {
        let one = self.base.one();
        let data = match self.kind {
            CoeffRingKind::Dual => Data::Dual(self.base.zero(), one),
            CoeffRingKind::LaurentEps => Data::LaurentEps(Laurent::new(), mono(0, one)),
            _ => return None,
        };
        Some(CoeffElem { ring: self.clone(), data })
    }

    /// `u^n` (any integer `n` in the Laurent ring, `0 <= n` in the truncated one).
    pub fn u_pow(self: &Arc<Self>, n: i64) -> Option<CoeffElem> {
        let one = self.base.one();
        let data = match self.kind {
            CoeffRingKind::TruncU => {
                let p = self.p() as i64;
                let mut v = vec![self.base.zero(); p as usize];
                if (0..p).contains(&n) {
                    v[n as usize] = one;
                } else if n < 0 {
                    return None;
                }
                Data::TruncU(v)
            }
            CoeffRingKind::LaurentEps => Data::LaurentEps(mono(n, one), Laurent::new()),
            _ => return None,
        };
        Some(CoeffElem { ring: self.clone(), data })
    }

    /// `a + b e` in the dual numbers.
    pub fn dual(self: &Arc<Self>, a: FieldElement, b: FieldElement) -> Option<CoeffElem> {
        (self.kind == CoeffRingKind::Dual).then(|| CoeffElem { ring: self.clone(), data: Data::Dual(a, b) })
    }

    /// Uniform random element (Laurent elements use exponents in `-2..=2`).
    pub fn random<G: Rng + ?Sized>(self: &Arc<Self>, rng: &mut G) -> CoeffElem {
        let b = &self.base;
        let data = match self.kind {
            CoeffRingKind::Field => Data::Field(b.random(rng)),
            CoeffRingKind::Dual => Data::Dual(b.random(rng), b.random(rng)),
            CoeffRingKind::TruncU => Data::TruncU((0..self.p()).map(|_| b.random(rng)).collect()),
            CoeffRingKind::LaurentEps => {
                let mut pick = || {
                    let mut l = Laurent::new();
                    for e in -2..=2 {
                        add_into(&mut l, e, b.random(rng));
                    }
                    l
                };
                let a = pick();
                Data::LaurentEps(a, pick())
            }
        };
        CoeffElem { ring: self.clone(), data }
    }
}

fn mono(e: i64, c: FieldElement) -> Laurent {
    let mut l = Laurent::new();
    add_into(&mut l, e, c);
    l
}

fn add_into(l: &mut Laurent, e: i64, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let v = match l.remove(&e) {
        Some(x) => x.add(&c),
        None => c,
    };
    if !v.is_zero() {
        l.insert(e, v);
    }
}

fn l_add(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = a.clone();
    for (e, c) in b {
        add_into(&mut out, *e, c.clone());
    }
    out
}

fn l_neg(a: &Laurent) -> Laurent {
    a.iter().map(|(e, c)| (*e, c.neg())).collect()
}

fn l_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            add_into(&mut out, ea + eb, ca.mul(cb));
        }
    }
    out
}

/// Inverse of a Laurent polynomial, which exists only for monomials.
fn l_inv(a: &Laurent) -> Option<Laurent> {
    if a.len() != 1 {
        return None;
    }
    let (e, c) = a.iter().next()?;
    Some(mono(-e, c.inv()?))
}

impl CoeffElem {
    pub fn ring(&self) -> &Arc<CoeffRing> {
        &self.ring
    }

    /// The element when it lies in the base field.
    pub fn as_base(&self) -> Option<FieldElement> {
        let z = self.ring.base.zero();
        match &self.data {
            Data::Field(a) => Some(a.clone()),
            Data::Dual(a, b) => b.is_zero().then(|| a.clone()),
            Data::TruncU(v) => v[1..].iter().all(|x| x.is_zero()).then(|| v[0].clone()),
            Data::LaurentEps(a, b) => {
                if !b.is_empty() || a.keys().any(|&e| e != 0) {
                    return None;
                }
                Some(a.get(&0).cloned().unwrap_or(z))
            }
        }
    }

    /// Image in the residue field (drop `e` and `u`); `None` for the Laurent ring.
    pub fn residue(&self) -> Option<FieldElement> {
        match &self.data {
            Data::Field(a) => Some(a.clone()),
            Data::Dual(a, _) => Some(a.clone()),
            Data::TruncU(v) => Some(v[0].clone()),
            Data::LaurentEps(..) => None,
        }
    }

    fn with(&self, data: Data) -> Self {
        CoeffElem { ring: self.ring.clone(), data }
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring,
            "coefficients from different rings"
        );
    }

    /// Text with Unicode minus and superscript exponents, e.g. `ε(u−1)`, `u⁻¹`.
    pub fn pretty(&self) -> String {
        match &self.data {
            Data::Field(a) => field_text(a),
            Data::Dual(a, b) => {
                let mut l0 = Laurent::new();
                add_into(&mut l0, 0, a.clone());
                let mut l1 = Laurent::new();
                add_into(&mut l1, 0, b.clone());
                combine_eps(&laurent_text(&l0), &laurent_text(&l1), &l1)
            }
            Data::TruncU(v) => {
                let mut l = Laurent::new();
                for (i, c) in v.iter().enumerate() {
                    add_into(&mut l, i as i64, c.clone());
                }
                laurent_text(&l)
            }
            Data::LaurentEps(a, b) => combine_eps(&laurent_text(a), &laurent_text(b), b),
        }
    }

    /// True when the text needs parentheses as a multiplicand.
    pub fn is_compound(&self) -> bool {
        let mut depth = 0;
        for (i, c) in self.pretty().chars().enumerate() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '−' if depth == 0 && i > 0 => return true,
                _ => {}
            }
        }
        false
    }
}

fn field_text(a: &FieldElement) -> String {
    let s = a.to_string();
    // symmetric residue for prime fields
    if let (Some(c), crate::fields::FieldKind::Prime) = (a.code(), a.descriptor().kind()) {
        let p = a.p() as i64;
        let c = c as i64;
        if c > p / 2 {
            return format!("−{}", p - c);
        }
    }
    s
}

fn superscript(n: i64) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    let mut s = String::new();
    if n < 0 {
        s.push('⁻');
    }
    for d in n.unsigned_abs().to_string().chars() {
        s.push(DIGITS[d.to_digit(10).unwrap() as usize]);
    }
    s
}

/// Terms in descending degree. In characteristic 2 the non-leading terms are
/// written with a minus sign, so `u + 1` reads `u−1`.
fn laurent_text(l: &Laurent) -> String {
    if l.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (e, c)) in l.iter().rev().enumerate() {
        let cs = if n > 0 && c.p() == 2 && c.is_one() { "−1".to_string() } else { field_text(c) };
        let (neg, mag) = match cs.strip_prefix('−') {
            Some(m) => (true, m.to_string()),
            None => (false, cs),
        };
        let var = match e {
            0 => String::new(),
            1 => "u".into(),
            _ => format!("u{}", superscript(*e)),
        };
        let body = match (var.is_empty(), mag.as_str()) {
            (true, _) => mag.clone(),
            (false, "1") => var,
            (false, _) if mag.contains(['+', '*']) => format!("({mag}){var}"),
            (false, _) => format!("{mag}{var}"),
        };
        match (n, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => out.push_str(&format!("−{body}")),
            (_, false) => out.push_str(&format!("+{body}")),
            (_, true) => out.push_str(&format!("−{body}")),
        }
    }
    out
}

fn combine_eps(a: &str, b: &str, bl: &Laurent) -> String {
    let eps = if bl.is_empty() {
        None
    } else if b == "1" {
        Some("ε".to_string())
    } else if b == "−1" {
        Some("−ε".to_string())
    } else if bl.len() == 1 {
        Some(match b.strip_prefix('−') {
            Some(m) => format!("−ε{m}"),
            None => format!("ε{b}"),
        })
    } else {
        Some(format!("ε({b})"))
    };
    match (a, eps) {
        (_, None) => a.to_string(),
        ("0", Some(e)) => e,
        (_, Some(e)) if e.starts_with('−') => format!("{a}{e}"),
        (_, Some(e)) => format!("{a}+{e}"),
    }
}

impl fmt::Debug for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl fmt::Display for CoeffElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Ring for CoeffElem {
    fn zero_like(&self) -> Self {
        self.ring.zero()
    }

    fn one_like(&self) -> Self {
        self.ring.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.ring.from_int(n)
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.with(match (&self.data, &o.data) {
            (Data::Field(a), Data::Field(b)) => Data::Field(a.add(b)),
            (Data::Dual(a, b), Data::Dual(c, d)) => Data::Dual(a.add(c), b.add(d)),
            (Data::TruncU(a), Data::TruncU(b)) => Data::TruncU(a.iter().zip(b).map(|(x, y)| x.add(y)).collect()),
            (Data::LaurentEps(a, b), Data::LaurentEps(c, d)) => Data::LaurentEps(l_add(a, c), l_add(b, d)),
            _ => unreachable!("checked ring"),
        })
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        self.with(match (&self.data, &o.data) {
            (Data::Field(a), Data::Field(b)) => Data::Field(a.mul(b)),
            (Data::Dual(a, b), Data::Dual(c, d)) => Data::Dual(a.mul(c), a.mul(d).add(&b.mul(c))),
            (Data::TruncU(a), Data::TruncU(b)) => {
                let n = a.len();
                let mut out = vec![self.ring.base.zero(); n];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate().take(n - i) {
                        out[i + j] = out[i + j].add(&x.mul(y));
                    }
                }
                Data::TruncU(out)
            }
            (Data::LaurentEps(a, b), Data::LaurentEps(c, d)) => {
                Data::LaurentEps(l_mul(a, c), l_add(&l_mul(a, d), &l_mul(b, c)))
            }
            _ => unreachable!("checked ring"),
        })
    }

    fn neg(&self) -> Self {
        self.with(match &self.data {
            Data::Field(a) => Data::Field(a.neg()),
            Data::Dual(a, b) => Data::Dual(a.neg(), b.neg()),
            Data::TruncU(a) => Data::TruncU(a.iter().map(|x| x.neg()).collect()),
            Data::LaurentEps(a, b) => Data::LaurentEps(l_neg(a), l_neg(b)),
        })
    }

    fn is_zero(&self) -> bool {
        match &self.data {
            Data::Field(a) => a.is_zero(),
            Data::Dual(a, b) => a.is_zero() && b.is_zero(),
            Data::TruncU(a) => a.iter().all(|x| x.is_zero()),
            Data::LaurentEps(a, b) => a.is_empty() && b.is_empty(),
        }
    }

    fn characteristic(&self) -> u64 {
        self.ring.p()
    }

    fn try_inv(&self) -> Option<Self> {
        match &self.data {
            Data::Field(a) => a.inv().map(|x| self.with(Data::Field(x))),
            Data::Dual(a, b) => {
                let ai = a.inv()?;
                Some(self.with(Data::Dual(ai.clone(), b.mul(&ai).mul(&ai).neg())))
            }
            Data::TruncU(a) => {
                // solve (a0 + n) x = 1 with n nilpotent, term by term
                let n = a.len();
                let a0i = a[0].inv()?;
                let mut x = vec![self.ring.base.zero(); n];
                x[0] = a0i.clone();
                for k in 1..n {
                    let mut s = self.ring.base.zero();
                    for j in 1..=k {
                        s = s.add(&a[j].mul(&x[k - j]));
                    }
                    x[k] = s.mul(&a0i).neg();
                }
                Some(self.with(Data::TruncU(x)))
            }
            Data::LaurentEps(a, b) => {
                let ai = l_inv(a)?;
                let corr = l_neg(&l_mul(&l_mul(b, &ai), &ai));
                Some(self.with(Data::LaurentEps(ai, corr)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_inverse() {
        let f = FieldDescriptor::prime(5).unwrap();
        let r = CoeffRing::new(CoeffRingKind::Dual, &f);
        let x = r.dual(f.from_int(2), f.from_int(3)).unwrap();
        assert!(x.mul(&x.try_inv().unwrap()).is_one());
        assert!(r.eps().unwrap().try_inv().is_none());
    }

    #[test]
    fn truncated_inverse() {
        let f = FieldDescriptor::prime(3).unwrap();
        let r = CoeffRing::new(CoeffRingKind::TruncU, &f);
        let x = r.one().add(&r.u_pow(1).unwrap());
        assert!(x.mul(&x.try_inv().unwrap()).is_one());
        assert!(r.u_pow(3).unwrap().is_zero());
    }

    #[test]
    fn laurent_units_and_text() {
        let f = FieldDescriptor::prime(2).unwrap();
        let r = CoeffRing::new(CoeffRingKind::LaurentEps, &f);
        let u = r.u_pow(1).unwrap();
        let e = r.eps().unwrap();
        assert!(u.mul(&r.u_pow(-1).unwrap()).is_one());
        assert!(e.mul(&e).is_zero());
        let x = u.add(&e);
        assert!(x.mul(&x.try_inv().unwrap()).is_one());
        assert!(u.add(&r.one()).try_inv().is_none());
        assert_eq!(e.mul(&u.sub(&r.one())).pretty(), "ε(u−1)");
        let f3 = FieldDescriptor::prime(3).unwrap();
        let r3 = CoeffRing::new(CoeffRingKind::LaurentEps, &f3);
        let w = r3.eps().unwrap().mul(&r3.u_pow(1).unwrap().sub(&r3.one()));
        assert_eq!(w.pretty(), "ε(u−1)");
        assert_eq!(r3.u_pow(-1).unwrap().pretty(), "u⁻¹");
    }
}
