//! Purely inseparable extensions `F = E[T_1..T_r]/(T_i^p - mu_i)` and fixed
//! subrings of sets of derivations.
//!
//! `F` is handled as a `p^r`-dimensional `E`-vector space. Linear algebra over
//! `F` itself goes through `E`: the `F`-span of vectors `v_1..v_n` in `F^m` is
//! the `E`-span of all `T^a v_i`, whose `E`-dimension is `p^r` times the `F`-rank.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::parse::parse_expr;
use crate::fields::{p_independence_rank, FieldDescriptor, FieldElement, FieldError};
use crate::reslie::Subspace;
use crate::ring::Ring;
use crate::truncalg::{DerivationMatrix, TruncAlgebra, TruncElement, TruncError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobsonError {
    #[error("the extension is not a field")]
    NotAField,
    #[error("p = {0} is too large for this computation")]
    PTooLarge(u64),
    #[error("r = {0} variables; only 1 or 2 are supported")]
    BadRank(usize),
    #[error("cannot parse derivation {0:?}: {1}")]
    Parse(String, String),
    #[error("empty derivation set")]
    Empty,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Trunc(#[from] TruncError),
}

type F = TruncElement<FieldElement>;

#[derive(Debug)]
pub struct InsepExtension {
    base: Arc<FieldDescriptor>,
    mus: Vec<FieldElement>,
    alg: Arc<TruncAlgebra<FieldElement>>,
    is_field: bool,
}

impl InsepExtension {
    pub fn new(base: &Arc<FieldDescriptor>, mus: Vec<FieldElement>) -> Result<Arc<Self>, JacobsonError> {
        let r = mus.len();
        if !(1..=2).contains(&r) {
            return Err(JacobsonError::BadRank(r));
        }
        let p = base.p();
        let names = (1..=r).map(|i| format!("T{i}")).collect();
        let alg = TruncAlgebra::with_names(p, mus.clone(), names)?;
        // field iff the monomials mu^a (a < p) are independent over E^p
        let mut monos = Vec::new();
        for idx in 0..alg.dim() {
            let e = alg.exp_of(idx);
            let mut m = base.one();
            for (mu, &k) in mus.iter().zip(e.iter()) {
                m = m.mul(&mu.pow(k as u64));
            }
            monos.push(m);
        }
        let is_field = p_independence_rank(&monos)? == monos.len();
        Ok(Arc::new(InsepExtension { base: base.clone(), mus, alg, is_field }))
    }

    pub fn base(&self) -> &Arc<FieldDescriptor> {
        &self.base
    }

    pub fn mus(&self) -> &[FieldElement] {
        &self.mus
    }

    pub fn p(&self) -> u64 {
        self.base.p()
    }

    pub fn r(&self) -> usize {
        self.mus.len()
    }

    /// `dim_E F = p^r`.
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn algebra(&self) -> &Arc<TruncAlgebra<FieldElement>> {
        &self.alg
    }

    pub fn is_field(&self) -> bool {
        self.is_field
    }

    /// `d/dT_k`.
    pub fn partial(&self, k: usize) -> Result<DerivationMatrix<FieldElement>, JacobsonError> {
        let values: Vec<F> = (0..self.r())
            .map(|i| if i == k { self.alg.one() } else { self.alg.zero() })
            .collect();
        Ok(DerivationMatrix::from_values(&self.alg, &values)?)
    }

    fn monomial_basis(&self) -> Vec<F> {
        let one = self.base.one();
        (0..self.dim()).map(|i| self.alg.monomial(self.alg.exp_of(i), one.clone())).collect()
    }

    /// `F`-rank of vectors in `F^m`.
    pub fn f_rank(&self, vectors: &[Vec<F>]) -> usize {
        if vectors.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<FieldElement>> = self
            .monomial_basis()
            .iter()
            .flat_map(|t| vectors.iter().map(move |v| flatten(&scale_f(t, v))))
            .collect();
        Matrix::from_rows(rows, &self.base.zero()).rank() / self.dim()
    }

    fn require_field(&self) -> Result<(), JacobsonError> {
        if self.is_field {
            Ok(())
        } else {
            Err(JacobsonError::NotAField)
        }
    }
}

fn scale_f(t: &F, v: &[F]) -> Vec<F> {
    v.iter().map(|x| t.mul(x)).collect()
}

fn flatten(v: &[F]) -> Vec<FieldElement> {
    v.iter().flat_map(|x| x.to_vector()).collect()
}

/// Generators over `F_p` of a restricted Lie algebra acting on `F`.
#[derive(Debug, Clone)]
pub struct DerivationSet {
    ext: Arc<InsepExtension>,
    gens: Vec<DerivationMatrix<FieldElement>>,
}

impl DerivationSet {
    /// Each generator is given by its values on `T_1..T_r`.
    pub fn from_values(ext: &Arc<InsepExtension>, values: Vec<Vec<F>>) -> Result<Self, JacobsonError> {
        if values.is_empty() {
            return Err(JacobsonError::Empty);
        }
        let gens = values
            .iter()
            .map(|v| DerivationMatrix::from_values(ext.algebra(), v))
            .collect::<Result<_, _>>()?;
        Ok(DerivationSet { ext: ext.clone(), gens })
    }

    /// Parse `"d1; T1*d1; d1+T2*d2"`: generators separated by `;`, each linear in
    /// the symbols `d1..dr` with coefficients in `F`.
    pub fn parse(ext: &Arc<InsepExtension>, s: &str) -> Result<Self, JacobsonError> {
        let r = ext.r();
        let alg = ext.algebra();
        let base = ext.base().clone();
        let lift = |x: F| Linear { scalar: x, d: vec![alg.zero(); r], nonlinear: false };
        let mut values = Vec::new();
        for part in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
            let ident = |name: &str| -> Option<Linear> {
                let idx = |prefix: &str| {
                    name.strip_prefix(prefix)
                        .and_then(|k| k.parse::<usize>().ok())
                        .filter(|k| (1..=r).contains(k))
                };
                if let Some(k) = idx("T") {
                    return Some(lift(alg.var(k - 1)));
                }
                if let Some(k) = idx("d") {
                    let mut l = lift(alg.zero());
                    l.d[k - 1] = alg.one();
                    return Some(l);
                }
                let name = if name == "θ" { "theta" } else { name };
                base.variable(name).map(|c| lift(alg.constant(c)))
            };
            let el = parse_expr(part, ident, |n| lift(alg.constant(base.from_int(n))), |a, b| {
                b.try_inv().map(|bi| a.mul(&bi))
            })
            .map_err(|e| JacobsonError::Parse(part.into(), e))?;
            if el.nonlinear || !el.scalar.is_zero() {
                return Err(JacobsonError::Parse(part.into(), "not linear in d1..dr".into()));
            }
            values.push(el.d);
        }
        Self::from_values(ext, values)
    }

    pub fn extension(&self) -> &Arc<InsepExtension> {
        &self.ext
    }

    pub fn generators(&self) -> &[DerivationMatrix<FieldElement>] {
        &self.gens
    }

    /// Rows `(D_i(T_1), .., D_i(T_r))`.
    pub fn value_rows(&self) -> Vec<Vec<F>> {
        self.gens.iter().map(|d| values_of(&self.ext, d)).collect()
    }
}

/// `a + sum v_k d_k` with `d_i d_j = 0`; products of two `d`s set `nonlinear`.
#[derive(Debug, Clone, PartialEq)]
struct Linear {
    scalar: F,
    d: Vec<F>,
    nonlinear: bool,
}

impl Linear {
    fn map(&self, scalar: F, f: impl Fn(&F) -> F) -> Self {
        Linear { scalar, d: self.d.iter().map(f).collect(), nonlinear: self.nonlinear }
    }

    fn has_d(&self) -> bool {
        self.d.iter().any(|x| !x.is_zero())
    }
}

impl Ring for Linear {
    fn zero_like(&self) -> Self {
        self.map(self.scalar.zero_like(), |x| x.zero_like())
    }
    fn one_like(&self) -> Self {
        self.map(self.scalar.one_like(), |x| x.zero_like())
    }
    fn from_int_like(&self, n: i64) -> Self {
        self.map(self.scalar.from_int_like(n), |x| x.zero_like())
    }
    fn add(&self, o: &Self) -> Self {
        Linear {
            scalar: self.scalar.add(&o.scalar),
            d: self.d.iter().zip(&o.d).map(|(a, b)| a.add(b)).collect(),
            nonlinear: self.nonlinear || o.nonlinear,
        }
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        Linear {
            scalar: self.scalar.mul(&o.scalar),
            d: self.d.iter().zip(&o.d).map(|(a, b)| a.mul(&o.scalar).add(&b.mul(&self.scalar))).collect(),
            nonlinear: self.nonlinear || o.nonlinear || (self.has_d() && o.has_d()),
        }
    }
    fn neg(&self) -> Self {
        self.map(self.scalar.neg(), |x| x.neg())
    }
    fn is_zero(&self) -> bool {
        self.scalar.is_zero() && !self.has_d() && !self.nonlinear
    }
    fn characteristic(&self) -> u64 {
        self.scalar.characteristic()
    }
    fn try_inv(&self) -> Option<Self> {
        let a = self.scalar.try_inv()?;
        let a2 = a.mul(&a).neg();
        Some(self.map(a, |x| x.mul(&a2)))
    }
}

fn values_of(ext: &InsepExtension, d: &DerivationMatrix<FieldElement>) -> Vec<F> {
    (0..ext.r()).map(|k| d.apply(&ext.algebra().var(k))).collect()
}

/// Joint kernel of the generators, with its multiplicative closure certified.
#[derive(Debug, Clone)]
pub struct FixedSubring {
    pub subspace: Subspace,
    pub multiplicatively_closed: bool,
    pub contains_base: bool,
}

impl FixedSubring {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

pub fn fixed_subring(h: &DerivationSet) -> FixedSubring {
    let ext = &h.ext;
    let n = ext.dim();
    let zero = ext.base().zero();
    let rows: Vec<Vec<FieldElement>> =
        h.gens.iter().flat_map(|d| (0..n).map(move |i| d.matrix().row(i).to_vec())).collect();
    let kernel = Matrix::from_rows(rows, &zero).kernel();
    let subspace = Subspace::span(ext.base(), n, &kernel);
    let alg = ext.algebra();
    let basis: Vec<F> = subspace.basis().iter().map(|v| alg.from_vector(v)).collect();
    let multiplicatively_closed = basis.iter().all(|a| {
        basis.iter().all(|b| a.trunc_mul(b).map(|c| subspace.contains(&c.to_vector())).unwrap_or(false))
    });
    let contains_base = subspace.contains(&alg.one().to_vector());
    FixedSubring { subspace, multiplicatively_closed, contains_base }
}

/// `F`-rank of the matrix of values `D_i(T_k)`.
pub fn foliation_rank(h: &DerivationSet) -> Result<usize, JacobsonError> {
    h.ext.require_field()?;
    Ok(h.ext.f_rank(&h.value_rows()))
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeReport {
    pub ext_dim: usize,
    pub fixed_dim: usize,
    pub rank: usize,
    pub holds: bool,
}

/// `[F : F^h] = p^rank`.
pub fn degree_identity_check(h: &DerivationSet) -> Result<DegreeReport, JacobsonError> {
    let rank = foliation_rank(h)?;
    let fixed_dim = fixed_subring(h).dim();
    let ext_dim = h.ext.dim();
    let holds = fixed_dim > 0
        && ext_dim.is_multiple_of(fixed_dim)
        && (ext_dim / fixed_dim) as u64 == h.ext.p().pow(rank as u32);
    Ok(DegreeReport { ext_dim, fixed_dim, rank, holds })
}

/// Kernel of `h (x) F -> Der_E(F)`, as an `F`-basis of vectors in `F^n`.
#[derive(Debug, Clone)]
pub struct InertiaKernel {
    pub basis: Vec<Vec<F>>,
    pub codim: usize,
    pub codim_matches_rank: bool,
}

impl InertiaKernel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn inertia_kernel(h: &DerivationSet) -> Result<InertiaKernel, JacobsonError> {
    let ext = &h.ext;
    ext.require_field()?;
    let rows = h.value_rows();
    let n = rows.len();
    let d = ext.dim();
    let alg = ext.algebra();
    let monos = ext.monomial_basis();
    // columns indexed by (generator i, monomial a): the image T^a D_i
    let mut cols = Vec::with_capacity(n * d);
    for row in &rows {
        for t in &monos {
            cols.push(flatten(&scale_f(t, row)));
        }
    }
    let m = Matrix::from_cols(&cols, ext.r() * d, &ext.base().zero());
    let mut basis: Vec<Vec<F>> = Vec::new();
    for k in m.kernel() {
        let v: Vec<F> = k.chunks(d).map(|c| alg.from_vector(c)).collect();
        let mut trial = basis.clone();
        trial.push(v.clone());
        if ext.f_rank(&trial) > basis.len() {
            basis = trial;
        }
    }
    let codim = n - basis.len();
    let rank = ext.f_rank(&rows);
    Ok(InertiaKernel { basis, codim, codim_matches_rank: codim == rank })
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub bracket_closed: bool,
    pub p_power_closed: bool,
    /// `F`-dimension of `Der_{F^h}(F)`.
    pub der_fixed_dim: usize,
    pub rank: usize,
    pub round_trip: bool,
}

/// Closure of the `F`-span of `h` under brackets and `p`-th powers, and the
/// round trip `dim_F Der_{F^h}(F) = rank`.
pub fn closure_check(h: &DerivationSet) -> Result<ClosureReport, JacobsonError> {
    let ext = &h.ext;
    let rank = foliation_rank(h)?;
    let span = h.value_rows();
    let in_span = |d: &DerivationMatrix<FieldElement>| {
        let mut t = span.clone();
        t.push(values_of(ext, d));
        ext.f_rank(&t) == rank
    };
    let gens = &h.gens;
    let mut bracket_closed = true;
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            bracket_closed &= in_span(&a.bracket(b));
        }
    }
    // p-th powers of the E-basis T^a D_i and of sums of generators
    let alg = ext.algebra();
    let mut probes: Vec<DerivationMatrix<FieldElement>> = Vec::new();
    for g in gens {
        for t in ext.monomial_basis() {
            probes.push(g.left_mul(&t));
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            probes.push(a.add(b));
            probes.push(a.add(&b.left_mul(&alg.var(0))));
        }
    }
    let mut p_power_closed = true;
    for d in &probes {
        p_power_closed &= in_span(&d.operator_p_power()?);
    }
    let fixed = fixed_subring(h);
    let partials: Vec<DerivationMatrix<FieldElement>> =
        (0..ext.r()).map(|k| ext.partial(k)).collect::<Result<_, _>>()?;
    // D = sum c_k d_k kills F^h iff (c_k) is orthogonal to every (d_k f)_k, f in F^h
    let conditions: Vec<Vec<F>> = fixed
        .subspace
        .basis()
        .iter()
        .map(|v| {
            let f = alg.from_vector(v);
            partials.iter().map(|d| d.apply(&f)).collect()
        })
        .collect();
    let der_fixed_dim = ext.r() - ext.f_rank(&conditions);
    Ok(ClosureReport { bracket_closed, p_power_closed, der_fixed_dim, rank, round_trip: der_fixed_dim == rank })
}

/// Scalar `a` in `F` with `D^[p] = a D`, if any.
pub fn p_closed_scalar(ext: &InsepExtension, d: &DerivationMatrix<FieldElement>) -> Result<Option<F>, JacobsonError> {
    let v = values_of(ext, d);
    let w = values_of(ext, &d.operator_p_power()?);
    let Some(k) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(None);
    };
    let Some(inv) = v[k].inverse() else { return Ok(None) };
    let a = w[k].mul(&inv);
    Ok(v.iter().zip(&w).all(|(x, y)| a.mul(x) == *y).then_some(a))
}

/// Every vector of the `F_p`-span of `h` is `p`-closed with a scalar in `F_p`.
pub fn prime_span_p_closed(h: &DerivationSet) -> Result<bool, JacobsonError> {
    let p = h.ext.p();
    let n = h.gens.len();
    let base = h.ext.base();
    let alg = h.ext.algebra();
    let total = p.pow(n as u32);
    for code in 1..total {
        let mut c = code;
        let mut d: Option<DerivationMatrix<FieldElement>> = None;
        for g in &h.gens {
            let s = g.scale(&base.from_int((c % p) as i64));
            c /= p;
            d = Some(match d {
                None => s,
                Some(x) => x.add(&s),
            });
        }
        let d = d.expect("n >= 1");
        if d.is_zero() {
            continue;
        }
        let Some(a) = p_closed_scalar(&h.ext, &d)? else { return Ok(false) };
        let a0 = a.constant_term();
        let is_prime_constant = a == alg.constant(a0.clone()) && (0..p).any(|i| base.from_int(i as i64) == a0);
        if !is_prime_constant {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Dimension of the space of `(l_ij)`, `1 <= i < p`, `0 <= j < p`, with
/// `sum l_ij (s+u)^j (t+u)^i = sum l_ij s^j t^i` in `E[t,s,u]/(t^p, s^p - w, u^p)`.
pub fn no_subspace_kernel(omega: &FieldElement) -> Result<usize, JacobsonError> {
    let base = omega.descriptor().clone();
    let p = base.p();
    if p > 5 {
        return Err(JacobsonError::PTooLarge(p));
    }
    let alg = TruncAlgebra::with_names(
        p,
        vec![base.zero(), omega.clone(), base.zero()],
        vec!["t".into(), "s".into(), "u".into()],
    )?;
    let (t, s, u) = (alg.var(0), alg.var(1), alg.var(2));
    let tu = t.checked_add(&u)?;
    let su = s.checked_add(&u)?;
    let mut cols = Vec::new();
    for i in 1..p {
        for j in 0..p {
            let shifted = su.pow(j).trunc_mul(&tu.pow(i))?;
            let plain = s.pow(j).trunc_mul(&t.pow(i))?;
            cols.push(shifted.sub(&plain).to_vector());
        }
    }
    let m = Matrix::from_cols(&cols, alg.dim(), &base.zero());
    Ok(cols.len() - m.rank())
}

#[derive(Debug, Clone, Serialize)]
pub struct JacobsonReport {
    pub base: String,
    pub mu: Vec<String>,
    pub derivations: String,
    pub is_field: bool,
    pub fixed_dim: usize,
    pub fixed_multiplicatively_closed: bool,
    pub rank: Option<usize>,
    pub inertia_dim: Option<usize>,
    pub degree_check: Option<bool>,
    pub closure: Option<ClosureReport>,
}

pub fn jacobson_report(h: &DerivationSet, text: &str) -> Result<JacobsonReport, JacobsonError> {
    let ext = &h.ext;
    let fixed = fixed_subring(h);
    let (rank, inertia_dim, degree_check, closure) = if ext.is_field() {
        let inert = inertia_kernel(h)?;
        (
            Some(foliation_rank(h)?),
            Some(inert.dim()),
            Some(degree_identity_check(h)?.holds && inert.codim_matches_rank),
            Some(closure_check(h)?),
        )
    } else {
        (None, None, None, None)
    };
    Ok(JacobsonReport {
        base: ext.base().name(),
        mu: ext.mus().iter().map(|m| m.to_string()).collect(),
        derivations: text.into(),
        is_field: ext.is_field(),
        fixed_dim: fixed.dim(),
        fixed_multiplicatively_closed: fixed.multiplicatively_closed && fixed.contains_base,
        rank,
        inertia_dim,
        degree_check,
        closure,
    })
}

/// One battery entry: base field, constants and derivations as text.
#[derive(Debug, Clone, Serialize)]
pub struct BatteryCase {
    pub p: u64,
    pub mu: Vec<String>,
    pub derivations: String,
    pub report: JacobsonReport,
}

/// Twelve structured examples over `F_p(theta)` (`r = 1`) and
/// `F_p(theta1, theta2)` (`r = 2`) for `p` in `{2, 3, 5}`.
pub fn battery() -> Result<Vec<BatteryCase>, JacobsonError> {
    let mut out = Vec::new();
    let one_var = [("theta", "d1"), ("theta+1", "T1*d1"), ("theta*(theta+1)", "d1; T1*d1")];
    for p in [2u64, 3, 5] {
        let base = FieldDescriptor::rational(p)?;
        for (mu, ders) in one_var {
            let m = crate::fields::parse::parse_element(&base, mu)?;
            out.push(case(&base, vec![m], ders)?);
        }
    }
    let two_var = [
        (2u64, ["theta1", "theta2"], "d1; d2"),
        (3, ["theta1+1", "theta2"], "d1; T1*d1"),
        (5, ["theta1*(theta1+1)", "theta2+1"], "d1; d2; T1*d1+T2*d2"),
    ];
    for (p, mus, ders) in two_var {
        let base = FieldDescriptor::rational_multi(p, 2)?;
        let m = mus
            .iter()
            .map(|s| crate::fields::parse::parse_element(&base, s))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(case(&base, m, ders)?);
    }
    Ok(out)
}

fn case(base: &Arc<FieldDescriptor>, mus: Vec<FieldElement>, ders: &str) -> Result<BatteryCase, JacobsonError> {
    let ext = InsepExtension::new(base, mus)?;
    let h = DerivationSet::parse(&ext, ders)?;
    let report = jacobson_report(&h, ders)?;
    Ok(BatteryCase { p: base.p(), mu: report.mu.clone(), derivations: ders.into(), report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::parse::parse_element;

    fn ext(p: u64, mus: &[&str]) -> Arc<InsepExtension> {
        let base = if mus.len() == 1 {
            FieldDescriptor::rational(p).unwrap()
        } else {
            FieldDescriptor::rational_multi(p, 2).unwrap()
        };
        let m = mus.iter().map(|s| parse_element(&base, s).unwrap()).collect();
        InsepExtension::new(&base, m).unwrap()
    }

    #[test]
    fn field_criterion() {
        assert!(ext(2, &["theta"]).is_field());
        let base = FieldDescriptor::rational(3).unwrap();
        let cube = parse_element(&base, "theta^3").unwrap();
        assert!(!InsepExtension::new(&base, vec![cube]).unwrap().is_field());
        let th = base.variable("theta").unwrap();
        let two = InsepExtension::new(&base, vec![th.clone(), th.add(&base.one())]).unwrap();
        assert!(!two.is_field());
        assert!(ext(3, &["theta1", "theta2+1"]).is_field());
    }

    #[test]
    fn fixed_subrings() {
        let e = ext(3, &["theta"]);
        for s in ["d1", "T1*d1"] {
            let f = fixed_subring(&DerivationSet::parse(&e, s).unwrap());
            assert_eq!(f.dim(), 1);
            assert!(f.multiplicatively_closed && f.contains_base);
        }
        let e2 = ext(3, &["theta1", "theta2"]);
        assert_eq!(fixed_subring(&DerivationSet::parse(&e2, "d1").unwrap()).dim(), 3);
    }

    #[test]
    fn ranks_and_degrees() {
        let e2 = ext(3, &["theta1", "theta2+1"]);
        let cases = [("d1", 1, 3), ("d1; T1*d1", 1, 3), ("d1; d2", 2, 1)];
        for (s, rank, fixed) in cases {
            let h = DerivationSet::parse(&e2, s).unwrap();
            let rep = degree_identity_check(&h).unwrap();
            assert_eq!((rep.rank, rep.fixed_dim), (rank, fixed), "{s}");
            assert!(rep.holds);
        }
        let e1 = ext(2, &["theta"]);
        let rep = degree_identity_check(&DerivationSet::parse(&e1, "d1").unwrap()).unwrap();
        assert_eq!((rep.ext_dim, rep.fixed_dim, rep.rank), (2, 1, 1));
    }

    #[test]
    fn inertia() {
        let e1 = ext(3, &["theta"]);
        let k = inertia_kernel(&DerivationSet::parse(&e1, "d1; T1*d1").unwrap()).unwrap();
        assert_eq!(k.dim(), 1);
        let v = &k.basis[0];
        // proportional to (T1, -1)
        let alg = e1.algebra();
        let t = alg.var(0);
        assert_eq!(v[0], t.mul(&v[1]).neg());
        let e2 = ext(5, &["theta1", "theta2"]);
        let k = inertia_kernel(&DerivationSet::parse(&e2, "d1; d2; T1*d1+T2*d2").unwrap()).unwrap();
        assert_eq!((k.dim(), k.codim), (1, 2));
        assert!(k.codim_matches_rank);
        assert_eq!(inertia_kernel(&DerivationSet::parse(&e1, "d1").unwrap()).unwrap().dim(), 0);
    }

    #[test]
    fn closure() {
        let e2 = ext(3, &["theta1", "theta2"]);
        for s in ["d1", "d1; d2", "T1*d1; d2"] {
            let c = closure_check(&DerivationSet::parse(&e2, s).unwrap()).unwrap();
            assert!(c.bracket_closed && c.p_power_closed && c.round_trip, "{s}: {c:?}");
        }
        // (d1 + T2 d2)^p = T2 d2 leaves the F-line, so its fixed field is E
        let h = DerivationSet::parse(&e2, "d1+T2*d2").unwrap();
        let c = closure_check(&h).unwrap();
        assert!(c.bracket_closed && !c.p_power_closed);
        assert_eq!((c.rank, c.der_fixed_dim), (1, 2));
        let pw = h.generators()[0].operator_p_power().unwrap();
        assert_eq!(pw, DerivationSet::parse(&e2, "T2*d2").unwrap().generators()[0]);
    }

    #[test]
    fn not_a_field_is_reported() {
        let base = FieldDescriptor::rational(2).unwrap();
        let e = InsepExtension::new(&base, vec![base.one()]).unwrap();
        let h = DerivationSet::parse(&e, "d1").unwrap();
        assert_eq!(foliation_rank(&h), Err(JacobsonError::NotAField));
    }

    #[test]
    fn parse_rejects_nonlinear() {
        let e = ext(3, &["theta"]);
        assert!(DerivationSet::parse(&e, "d1*d1").is_err());
        assert!(DerivationSet::parse(&e, "T1").is_err());
    }

    #[test]
    fn no_subspace_small_primes() {
        for p in [2u64, 3, 5] {
            let base = FieldDescriptor::rational(p).unwrap();
            let th = base.variable("theta").unwrap();
            assert_eq!(no_subspace_kernel(&th).unwrap(), 0, "p = {p}");
        }
    }

    #[test]
    fn rank_one_spans_are_p_closed() {
        let e = ext(3, &["theta"]);
        assert!(prime_span_p_closed(&DerivationSet::parse(&e, "d1; T1*d1").unwrap()).unwrap());
    }

    #[test]
    fn battery_degree_identity() {
        let cases = battery().unwrap();
        assert_eq!(cases.len(), 12);
        for c in &cases {
            let r = &c.report;
            assert!(r.is_field, "{:?}", c.mu);
            assert_eq!(r.degree_check, Some(true), "{:?} {}", c.mu, c.derivations);
            assert!(r.fixed_multiplicatively_closed);
        }
    }
}
