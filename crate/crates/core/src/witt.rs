//! Witt algebras `g_w = Der_k(k[t]/(t^p - w))` with basis `t^0 d, .., t^{p-1} d`.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement, FieldKind};
use crate::reslie::{
    fingerprint, is_zero_vec, standard_algebra, subalgebra_enumeration, Fingerprint, LieError, PClosed, ResLieAlgebra, StandardAlgebra, Subspace,
    Vector, SEARCH_CAP,
};
use crate::ring::Ring;
use crate::truncalg::{DerivationMatrix, TruncAlgebra, TruncElement, TruncError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error(transparent)]
    Trunc(#[from] TruncError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("p-map routes disagree at {0}")]
    ThreeWayMismatch(String),
    #[error("map fails to intertwine: {0}")]
    IntertwineFailure(String),
    #[error("this needs w = 0")]
    OmegaNonzero,
    #[error("p = {0} is not supported here")]
    UnsupportedPrime(u64),
}

#[derive(Debug, Clone)]
pub struct WittAlgebra {
    alg: Arc<ResLieAlgebra>,
    omega: FieldElement,
    trunc: Arc<TruncAlgebra<FieldElement>>,
}

fn witt_label(i: usize) -> String {
    match i {
        0 => "d".into(),
        1 => "t*d".into(),
        _ => format!("t^{i}*d"),
    }
}

/// Structure constants of the Witt algebra, checked against the derivation
/// matrices: brackets by commutators and `p`-map images by operator powers.
pub fn build_witt(omega: &FieldElement) -> Result<WittAlgebra, WittError> {
    let field = omega.descriptor().clone();
    let p = field.p() as usize;
    let trunc = TruncAlgebra::univariate(omega.clone());
    let zero = field.zero();
    // t^k d for 0 <= k <= 2p - 2, reduced by t^p = w
    let reduce = |k: usize| -> Vector {
        let mut v = vec![zero.clone(); p];
        if k < p {
            v[k] = field.one();
        } else {
            v[k - p] = omega.clone();
        }
        v
    };
    let mut bracket = vec![vec![vec![zero.clone(); p]; p]; p];
    for i in 0..p {
        for j in 0..p {
            if i == j || i + j == 0 {
                continue;
            }
            let c = field.from_int(j as i64 - i as i64);
            bracket[i][j] = reduce(i + j - 1).iter().map(|x| x.mul(&c)).collect();
        }
    }
    let derivs: Vec<DerivationMatrix<FieldElement>> = (0..p)
        .map(|i| {
            let mut c = vec![zero.clone(); p];
            c[i] = field.one();
            DerivationMatrix::from_values(&trunc, &[trunc.from_univariate(&c)])
        })
        .collect::<Result<_, _>>()?;
    let pmap: Vec<Vector> = derivs
        .iter()
        .map(|d| Ok(d.operator_p_power()?.values()[0].to_vector()))
        .collect::<Result<_, TruncError>>()?;
    for i in 0..p {
        for j in 0..p {
            let comm = derivs[i].bracket(&derivs[j]).values()[0].to_vector();
            if comm != bracket[i][j] {
                return Err(WittError::ThreeWayMismatch(format!(
                    "bracket of ({}, {})",
                    witt_label(i),
                    witt_label(j)
                )));
            }
        }
        let f = trunc.from_univariate(&derivs[i].values()[0].to_vector());
        let c = f.c_coefficient()?;
        let closed: Vector = f.to_vector().iter().map(|x| x.mul(&c)).collect();
        if closed != pmap[i] {
            return Err(WittError::ThreeWayMismatch(witt_label(i)));
        }
    }
    let labels = (0..p).map(witt_label).collect();
    let alg = ResLieAlgebra::new(field, labels, bracket, pmap)?;
    Ok(WittAlgebra { alg, omega: omega.clone(), trunc })
}

impl WittAlgebra {
    pub fn algebra(&self) -> &Arc<ResLieAlgebra> {
        &self.alg
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    pub fn trunc(&self) -> &Arc<TruncAlgebra<FieldElement>> {
        &self.trunc
    }

    pub fn p(&self) -> u64 {
        self.alg.p()
    }

    pub fn field(&self) -> &Arc<FieldDescriptor> {
        self.alg.field()
    }

    /// The truncated polynomial `f` of the vector `f d`.
    pub fn polynomial(&self, v: &[FieldElement]) -> TruncElement<FieldElement> {
        self.trunc.from_univariate(v)
    }

    pub fn derivation(&self, v: &[FieldElement]) -> Result<DerivationMatrix<FieldElement>, WittError> {
        Ok(DerivationMatrix::from_values(&self.trunc, &[self.polynomial(v)])?)
    }

    /// `(f d)^{[p]} = C(f) f d`.
    pub fn witt_p_map(&self, f: &TruncElement<FieldElement>) -> Result<Vector, WittError> {
        if f.algebra().m() != 1 {
            return Err(TruncError::Multivariate.into());
        }
        let c = f.c_coefficient()?;
        Ok(f.univariate_coeffs()?.iter().map(|x| x.mul(&c)).collect())
    }

    /// The `p`-map of `f d` by the `C` formula, the `s_r` fold and the
    /// operator power; an error names the vector if they differ.
    pub fn p_map_three_way(&self, v: &[FieldElement]) -> Result<Vector, WittError> {
        let by_c = self.witt_p_map(&self.polynomial(v))?;
        let by_fold = self.alg.p_map(v);
        let by_op = self.derivation(v)?.operator_p_power()?.values()[0].to_vector();
        if by_c != by_fold || by_c != by_op {
            let f = self.polynomial(v);
            return Err(WittError::ThreeWayMismatch(format!("({f})*d")));
        }
        Ok(by_c)
    }

    /// The span of `t d, .., t^{p-1} d` together with a pair showing it is not an ideal.
    pub fn reduced_subalgebra(&self) -> Result<(Subspace, (Vector, Vector)), WittError> {
        if !self.omega.is_zero() {
            return Err(WittError::OmegaNonzero);
        }
        let p = self.p() as usize;
        let axes: Vec<usize> = (1..p).collect();
        let s = Subspace::coordinate(self.field(), p, &axes);
        debug_assert!(self.alg.is_subalgebra(&s));
        let (i, b) = self
            .alg
            .ideal_witness(&s)
            .expect("the reduced subalgebra is never an ideal");
        Ok((s, (self.alg.basis_vector(i), b)))
    }

    /// True when `s` is not contained in the reduced subalgebra.
    pub fn transitivity_test(&self, s: &Subspace) -> Result<bool, WittError> {
        let (red, _) = self.reduced_subalgebra()?;
        Ok(!s.is_subset_of(&red))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCounts {
    /// Non-zero vectors examined.
    pub vectors: u64,
    pub additive: u64,
    pub multiplicative: u64,
    pub not_closed: u64,
}

/// Classify every non-zero vector over the (finite) field; additivity is
/// cross-checked against the operator `p`-th power being zero.
pub fn p_closed_sweep(w: &WittAlgebra) -> Result<SweepCounts, WittError> {
    let g = w.algebra();
    let mut out = SweepCounts { vectors: 0, additive: 0, multiplicative: 0, not_closed: 0 };
    for v in g.all_vectors()? {
        if is_zero_vec(&v) {
            continue;
        }
        out.vectors += 1;
        let state = g.is_p_closed(&v);
        let op_zero = w.derivation(&v)?.operator_p_power()?.is_zero();
        if op_zero != (state == PClosed::Additive) {
            return Err(WittError::ThreeWayMismatch(format!("({})*d", w.polynomial(&v))));
        }
        match state {
            PClosed::Additive => out.additive += 1,
            PClosed::Multiplicative(_) => out.multiplicative += 1,
            PClosed::NotClosed => out.not_closed += 1,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SimplicityReport {
    pub simple: bool,
    /// A proper non-zero ideal when one exists.
    pub ideal: Option<Subspace>,
    pub field: String,
}

/// Simplicity over the given finite field: every non-zero vector generates the
/// whole algebra as an ideal (checked on vectors with leading coefficient 1).
pub fn is_simple(w: &WittAlgebra) -> Result<SimplicityReport, WittError> {
    let g = w.algebra();
    if w.p() > 7 {
        return Err(WittError::UnsupportedPrime(w.p()));
    }
    let n = g.dim();
    let mut ideal = None;
    for v in g.all_vectors()? {
        let lead = v.iter().rev().find(|x| !x.is_zero());
        if !lead.is_some_and(|x| x.is_one()) {
            continue;
        }
        let s = g.ideal_generated_by(&v);
        if s.dim() < n {
            ideal = Some(s);
            break;
        }
    }
    Ok(SimplicityReport { simple: ideal.is_none(), ideal, field: g.field().name() })
}

#[derive(Debug, Clone)]
pub struct IsomorphismReport {
    /// Columns are the images of `t^i d`.
    pub matrix: Matrix<FieldElement>,
    pub target: Arc<ResLieAlgebra>,
    pub fields_checked: Vec<String>,
}

/// The explicit isomorphisms for `p = 2` (onto `k x| gl_1`, `(a + bt)d -> a v + b e`)
/// and `p = 3` (onto `sl_2`, `(a + bt + ct^2)d -> [[b, a], [-c, -b]]`), checked
/// on all vectors over `F_p` and `F_{p^2}`.
pub fn small_prime_isomorphism(w: &WittAlgebra) -> Result<IsomorphismReport, WittError> {
    let p = w.p();
    if !matches!(w.field().kind(), FieldKind::Prime) {
        return Err(WittError::Lie(LieError::BadParams("expects a Witt algebra over F_p".into())));
    }
    let mut fields_checked = Vec::new();
    let mut result = None;
    for k in [1usize, 2] {
        let f = FieldDescriptor::extension(p, k).map_err(|e| LieError::BadParams(e.to_string()))?;
        let omega = f.from_int(w.omega().code().unwrap_or(0) as i64);
        let src = build_witt(&omega)?;
        let g = src.algebra();
        let (target, cols) = match p {
            2 => (
                standard_algebra(&StandardAlgebra::SemidirectKnGl1(1), &f)?,
                vec![vec![f.one(), f.zero()], vec![f.zero(), f.one()]],
            ),
            3 => (
                standard_algebra(&StandardAlgebra::Sl2Matrix, &f)?,
                // coordinates in (h, x, y): d -> x, t d -> h, t^2 d -> -y
                vec![
                    vec![f.zero(), f.one(), f.zero()],
                    vec![f.one(), f.zero(), f.zero()],
                    vec![f.zero(), f.zero(), f.from_int(-1)],
                ],
            ),
            _ => return Err(WittError::UnsupportedPrime(p)),
        };
        let m = Matrix::from_cols(&cols, target.dim(), &f.zero());
        let all = g.all_vectors()?;
        for x in &all {
            let (fx, fxp) = (m.mul_vec(x), m.mul_vec(&g.p_map(x)));
            if target.p_map(&fx) != fxp {
                return Err(WittError::IntertwineFailure(format!(
                    "p-map at ({})*d over {}",
                    src.polynomial(x),
                    f.name()
                )));
            }
        }
        let pairs: Vec<&Vector> = if k == 1 { all.iter().collect() } else { Vec::new() };
        let basis: Vec<Vector> = (0..g.dim()).map(|i| g.basis_vector(i)).collect();
        let pair_source: Vec<&Vector> = if k == 1 { pairs } else { basis.iter().collect() };
        for x in &pair_source {
            for y in &pair_source {
                if m.mul_vec(&g.bracket_vec(x, y)) != target.bracket_vec(&m.mul_vec(x), &m.mul_vec(y)) {
                    return Err(WittError::IntertwineFailure(format!(
                        "bracket at (({})*d, ({})*d) over {}",
                        src.polynomial(x),
                        src.polynomial(y),
                        f.name()
                    )));
                }
            }
        }
        fields_checked.push(f.name());
        if k == 1 {
            result = Some((m, target));
        }
    }
    let (matrix, target) = result.expect("prime field pass");
    Ok(IsomorphismReport { matrix, target, fields_checked })
}

/// A transitive subalgebra and the reference algebras sharing its fingerprint.
#[derive(Debug, Clone)]
pub struct ClassifiedSubalgebra {
    pub subspace: Subspace,
    pub fingerprint: Fingerprint,
    pub matches: Vec<&'static str>,
}

/// Fingerprints over `F_{p^k}` of `k`, `gl_1`, `k x| gl_1` and `sl_2`.
pub fn reference_fingerprints(field: &Arc<FieldDescriptor>, k: usize) -> Result<Vec<(&'static str, Fingerprint)>, WittError> {
    let refs = [
        ("k", StandardAlgebra::Trivial(1)),
        ("gl1", StandardAlgebra::Gl1),
        ("k x| gl1", StandardAlgebra::SemidirectKnGl1(1)),
        ("sl2", StandardAlgebra::Sl(2)),
    ];
    refs.iter()
        .map(|(name, a)| Ok((*name, fingerprint(&*standard_algebra(a, field)?, k)?)))
        .collect()
}

/// Every transitive proper non-zero restricted subalgebra, matched against the
/// reference fingerprints.
pub fn classify_transitive_subalgebras(w: &WittAlgebra, k: usize) -> Result<Vec<ClassifiedSubalgebra>, WittError> {
    let g = w.algebra();
    let (red, _) = w.reduced_subalgebra()?;
    let refs = reference_fingerprints(g.field(), k)?;
    let records = subalgebra_enumeration(g, Some(&red), k)?;
    Ok(records
        .into_iter()
        .filter(|r| r.transitive == Some(true) && r.subspace.dim() > 0 && r.subspace.dim() < g.dim())
        .map(|r| {
            let matches = refs.iter().filter(|(_, f)| *f == r.fingerprint).map(|(n, _)| *n).collect();
            ClassifiedSubalgebra { subspace: r.subspace, fingerprint: r.fingerprint, matches }
        })
        .collect())
}

/// Guard for exhaustive sweeps over `p`-dimensional Witt algebras.
pub fn sweep_size(field: &Arc<FieldDescriptor>) -> Result<u64, WittError> {
    let q = field.order().ok_or(LieError::InfiniteField)?;
    let size = q.checked_pow(field.p() as u32).unwrap_or(u64::MAX);
    if size > SEARCH_CAP {
        return Err(LieError::SearchSpaceTooLarge { size, cap: SEARCH_CAP }.into());
    }
    Ok(size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witt(p: u64, w: i64) -> WittAlgebra {
        build_witt(&FieldDescriptor::prime(p).unwrap().from_int(w)).unwrap()
    }

    #[test]
    fn brackets_at_p5() {
        let w = witt(5, 1);
        let g = w.algebra();
        assert_eq!(g.bracket_vec(&g.basis_vector(0), &g.basis_vector(2)), g.vector_from_ints(&[0, 2, 0, 0, 0]));
        assert_eq!(g.bracket_vec(&g.basis_vector(4), &g.basis_vector(2)), g.vector_from_ints(&[3, 0, 0, 0, 0]));
    }

    #[test]
    fn t_d_is_toral_at_p3() {
        let g = witt(3, 0);
        let v = g.algebra().basis_vector(1);
        assert_eq!(g.algebra().p_map(&v), v);
    }

    #[test]
    fn three_way_on_sample() {
        let w = witt(5, 1);
        let v = w.algebra().vector_from_ints(&[1, 1, 1, 0, 0]);
        w.p_map_three_way(&v).unwrap();
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&witt(3, 0)).unwrap().simple);
        let r = is_simple(&witt(2, 0)).unwrap();
        assert!(!r.simple);
        assert_eq!(r.ideal.unwrap().dim(), 1);
    }

    #[test]
    fn reduced_part_is_not_an_ideal() {
        let w = witt(3, 0);
        let (s, (x, y)) = w.reduced_subalgebra().unwrap();
        assert_eq!(s.dim(), 2);
        assert!(!s.contains(&w.algebra().bracket_vec(&x, &y)));
        assert!(matches!(witt(3, 1).reduced_subalgebra(), Err(WittError::OmegaNonzero)));
    }

    #[test]
    fn transitive_subalgebras_at_p3() {
        let found = classify_transitive_subalgebras(&witt(3, 0), 2).unwrap();
        assert!(!found.is_empty());
        for c in &found {
            assert_eq!(c.matches.len(), 1, "{:?}", c.fingerprint);
        }
    }

    #[test]
    fn small_primes() {
        small_prime_isomorphism(&witt(2, 0)).unwrap();
        let r = small_prime_isomorphism(&witt(3, 0)).unwrap();
        assert_eq!(r.fields_checked.len(), 2);
    }
}
