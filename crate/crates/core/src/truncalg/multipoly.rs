//! Sparse multivariate polynomials over `F_p`, used as a symbolic coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    p: u64,
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u16>, u32>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_compact())
    }
}

impl MultiPoly {
    pub fn zero(p: u64, vars: Arc<Vec<String>>) -> Self {
        MultiPoly { p, vars, terms: BTreeMap::new() }
    }

    pub fn constant(p: u64, vars: Arc<Vec<String>>, c: i64) -> Self {
        let mut z = Self::zero(p, vars);
        z.add_term(vec![0; z.vars.len()], c.rem_euclid(p as i64) as u32);
        z
    }

    pub fn var(p: u64, vars: Arc<Vec<String>>, i: usize) -> Self {
        let mut z = Self::zero(p, vars);
        let mut e = vec![0; z.vars.len()];
        e[i] = 1;
        z.add_term(e, 1);
        z
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u16>, u32> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[u16]) -> u32 {
        self.terms.get(exp).copied().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u16>, c: u32) {
        if c == 0 {
            return;
        }
        let p = self.p as u32;
        let v = (self.terms.get(&e).copied().unwrap_or(0) + c) % p;
        if v == 0 {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, v);
        }
    }

    fn compatible(&self, o: &Self) {
        assert!(
            self.p == o.p && (Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars),
            "polynomials over different rings"
        );
    }

    /// True when every term has the same total degree in the variables `idx`.
    pub fn is_homogeneous_in(&self, idx: &[usize], degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| idx.iter().map(|&i| e[i] as u32).sum::<u32>() == degree)
    }

    /// Evaluate at a point of `F_p` (values as residues).
    pub fn eval_mod(&self, point: &[u64]) -> u64 {
        let p = self.p;
        self.terms.iter().fold(0, |acc, (e, &c)| {
            let mut t = c as u64;
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t = t * x % p;
                }
            }
            (acc + t) % p
        })
    }

    /// Evaluate with arbitrary ring values for the variables.
    pub fn eval<R: Ring>(&self, point: &[R]) -> R {
        let zero = point[0].zero_like();
        self.terms.iter().fold(zero, |acc, (e, &c)| {
            let mut t = point[0].from_int_like(c as i64);
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t = t.mul(&x.pow(k as u64));
                }
            }
            acc.add(&t)
        })
    }

    fn monomial_str(&self, e: &[u16]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| {
                if k == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], k)
                }
            })
            .collect();
        parts.join("*")
    }

    /// Graded reverse-lexicographic descending order with symmetric residues,
    /// e.g. `l1^2 - l0*l2`.
    pub fn render_compact(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by(|a, b| grevlex(b, a));
        let p = self.p as i64;
        let mut out = String::new();
        for (n, e) in keys.into_iter().enumerate() {
            let c = self.terms[e] as i64;
            let sc = if c > p / 2 { c - p } else { c };
            let mono = self.monomial_str(e);
            let mag = sc.abs();
            let body = match (mono.is_empty(), mag) {
                (true, _) => mag.to_string(),
                (false, 1) => mono,
                (false, _) => format!("{mag}*{mono}"),
            };
            match (n, sc < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }

    /// Grouped by powers of the variable `group_var` (ascending), each group in
    /// lexicographic descending order with residues `0..p-1`:
    /// `(l0^3*l4 + ...) + w*(...) + w^2*(...)`.
    pub fn render_grouped(&self, group_var: usize) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut groups: BTreeMap<u16, Vec<(Vec<u16>, u32)>> = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[group_var];
            rest[group_var] = 0;
            groups.entry(k).or_default().push((rest, c));
        }
        let w = &self.vars[group_var];
        let mut parts = Vec::new();
        for (k, mut terms) in groups {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            let body: Vec<String> = terms
                .iter()
                .map(|(e, c)| {
                    let mono = self.monomial_str(e);
                    match (mono.is_empty(), *c) {
                        (true, c) => c.to_string(),
                        (false, 1) => mono,
                        (false, c) => format!("{c}*{mono}"),
                    }
                })
                .collect();
            let body = format!("({})", body.join(" + "));
            parts.push(match k {
                0 => body,
                1 => format!("{w}*{body}"),
                _ => format!("{w}^{k}*{body}"),
            });
        }
        parts.join(" + ")
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> std::cmp::Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        std::cmp::Ordering::Equal
    })
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        Self::zero(self.p, self.vars.clone())
    }

    fn one_like(&self) -> Self {
        Self::constant(self.p, self.vars.clone(), 1)
    }

    fn from_int_like(&self, n: i64) -> Self {
        Self::constant(self.p, self.vars.clone(), n)
    }

    fn add(&self, o: &Self) -> Self {
        self.compatible(o);
        let p = self.p as u32;
        let mut out = self.clone();
        for (e, &c) in &o.terms {
            let entry = out.terms.entry(e.clone()).or_insert(0);
            *entry = (*entry + c) % p;
        }
        out.terms.retain(|_, v| *v != 0);
        out
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        self.compatible(o);
        let p = self.p;
        let mut acc: BTreeMap<Vec<u16>, u64> = BTreeMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &o.terms {
                let e: Vec<u16> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = acc.entry(e).or_insert(0);
                *entry = (*entry + ca as u64 * cb as u64) % p;
            }
        }
        MultiPoly {
            p,
            vars: self.vars.clone(),
            terms: acc.into_iter().filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as u32)).collect(),
        }
    }

    fn neg(&self) -> Self {
        let p = self.p as u32;
        MultiPoly {
            p: self.p,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), (p - c) % p)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, &c) = self.terms.iter().next()?;
        if e.iter().any(|&k| k > 0) {
            return None;
        }
        let p = self.p;
        let mut inv = 1u64;
        for _ in 0..p - 2 {
            inv = inv * c as u64 % p;
        }
        Some(Self::constant(p, self.vars.clone(), inv as i64))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize) -> Arc<Vec<String>> {
        Arc::new((0..n).map(|i| format!("l{i}")).collect())
    }

    #[test]
    fn compact_rendering_uses_symmetric_residues() {
        let v = vars(3);
        let l0 = MultiPoly::var(3, v.clone(), 0);
        let l1 = MultiPoly::var(3, v.clone(), 1);
        let l2 = MultiPoly::var(3, v.clone(), 2);
        let c = l1.mul(&l1).sub(&l0.mul(&l2));
        assert_eq!(c.render_compact(), "l1^2 - l0*l2");
    }

    #[test]
    fn grouped_rendering() {
        let v = Arc::new(vec!["l0".to_string(), "l1".to_string(), "w".to_string()]);
        let l0 = MultiPoly::var(5, v.clone(), 0);
        let l1 = MultiPoly::var(5, v.clone(), 1);
        let w = MultiPoly::var(5, v.clone(), 2);
        let c = l1.mul(&l1).add(&l0.mul(&l1)).add(&w.mul(&l0).scale_int(3));
        assert_eq!(c.render_grouped(2), "(l0*l1 + l1^2) + w*(3*l0)");
    }

    #[test]
    fn arithmetic_cancels() {
        let v = vars(2);
        let a = MultiPoly::var(5, v.clone(), 0).add(&MultiPoly::var(5, v.clone(), 1));
        let sq = a.mul(&a);
        let back = sq.sub(&a.mul(&a));
        assert!(back.is_zero());
        assert_eq!(a.pow(5).len(), 2);
    }
}
