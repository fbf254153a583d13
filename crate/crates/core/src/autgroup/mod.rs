//! Points of the automorphism group functor `G_w` of `k[t]/(t^p - w)`.
//!
//! A point over a ring `R` is a truncated polynomial `phi_g(t) = sum l_i t^i`
//! defining an `R`-algebra automorphism `t -> phi_g(t)`. The product `gh` is the
//! substitution `phi_h(phi_g(t))`.

mod ring;

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement};
use crate::ring::Ring;
use crate::truncalg::{TruncAlgebra, TruncElement, TruncError};

pub use ring::{CoeffElem, CoeffRing, CoeffRingKind};

/// Largest `p` handled; the determinant test expands over `p!` permutations.
pub const MAX_P: u64 = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("not a point of the group: {0}")]
    NotMember(String),
    #[error("points over different rings or constants")]
    Mismatch,
    #[error("linear solve failed for a member")]
    SolveFailure,
    #[error("derivative of the substitution is not a unit")]
    UnitFailure,
    #[error("p = {0} exceeds the supported maximum {MAX_P}")]
    PTooLarge(u64),
    #[error("need {0} coefficients")]
    BadLength(usize),
    #[error(transparent)]
    Trunc(#[from] TruncError),
}

/// Result of the two membership conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub fermat: bool,
    pub alpha_invertible: bool,
    pub reason: Option<String>,
}

#[derive(Clone)]
pub struct GroupElement {
    alg: Arc<TruncAlgebra<CoeffElem>>,
    coeffs: Vec<CoeffElem>,
}

impl PartialEq for GroupElement {
    fn eq(&self, o: &Self) -> bool {
        *self.alg == *o.alg && self.coeffs == o.coeffs
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "phi = {}", self)
    }
}

/// `phi` written like `ε(u−1)+ut`: ascending powers of `t`, juxtaposed coefficients.
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_phi(&self.coeffs))
    }
}

pub fn render_phi(coeffs: &[CoeffElem]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let cs = c.pretty();
        let term = if var.is_empty() {
            cs
        } else if cs == "1" {
            var
        } else if cs == "−1" {
            format!("−{var}")
        } else if c.is_compound() {
            format!("({cs}){var}")
        } else {
            format!("{cs}{var}")
        };
        if !out.is_empty() && !term.starts_with('−') {
            out.push('+');
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// The algebra `R[t]/(t^p - w)` over the coefficient ring of `w`.
pub fn point_algebra(omega: &CoeffElem) -> Result<Arc<TruncAlgebra<CoeffElem>>, AutError> {
    let p = omega.ring().p();
    if p > MAX_P {
        return Err(AutError::PTooLarge(p));
    }
    Ok(TruncAlgebra::univariate(omega.clone()))
}

fn alpha_matrix(phi: &TruncElement<CoeffElem>) -> Result<Matrix<CoeffElem>, AutError> {
    let alg = phi.algebra();
    let p = alg.p() as usize;
    let mut cols = Vec::with_capacity(p);
    let mut pw = alg.one();
    for _ in 0..p {
        cols.push(pw.to_vector());
        pw = pw.trunc_mul(phi)?;
    }
    Ok(Matrix::from_cols(&cols, p, alg.coeff_zero()))
}

/// Check `l_0^p + (l_1 - 1)^p w + l_2^p w^2 + .. = 0` and invertibility of the
/// matrix of `1, phi, .., phi^{p-1}`.
pub fn membership(coeffs: &[CoeffElem], omega: &CoeffElem) -> Result<Membership, AutError> {
    let alg = point_algebra(omega)?;
    let p = alg.p();
    if coeffs.len() != p as usize {
        return Err(AutError::BadLength(p as usize));
    }
    let one = omega.one_like();
    let mut fermat_sum = omega.zero_like();
    for (i, l) in coeffs.iter().enumerate() {
        let base = if i == 1 { l.sub(&one) } else { l.clone() };
        fermat_sum = fermat_sum.add(&base.pow(p).mul(&omega.pow(i as u64)));
    }
    let fermat = fermat_sum.is_zero();
    let phi = alg.from_univariate(coeffs);
    let alpha = alpha_matrix(&phi)?;
    let det = alpha.det_expansion().map_err(|_| AutError::PTooLarge(p))?;
    let alpha_invertible = det.try_inv().is_some();
    let reason = match (fermat, alpha_invertible) {
        (true, true) => None,
        (false, _) => Some(format!("Fermat sum is {fermat_sum}, not 0")),
        (true, false) => Some(format!("det(alpha) = {det} is not a unit")),
    };
    Ok(Membership { member: fermat && alpha_invertible, fermat, alpha_invertible, reason })
}

impl GroupElement {
    pub fn new(coeffs: Vec<CoeffElem>, omega: &CoeffElem) -> Result<Self, AutError> {
        let m = membership(&coeffs, omega)?;
        if let Some(r) = m.reason {
            return Err(AutError::NotMember(r));
        }
        Ok(GroupElement { alg: point_algebra(omega)?, coeffs })
    }

    pub fn identity(omega: &CoeffElem) -> Result<Self, AutError> {
        let p = omega.ring().p() as usize;
        let mut c = vec![omega.zero_like(); p];
        c[1] = omega.one_like();
        Self::new(c, omega)
    }

    pub fn coeffs(&self) -> &[CoeffElem] {
        &self.coeffs
    }

    pub fn omega(&self) -> &CoeffElem {
        &self.alg.omegas()[0]
    }

    pub fn ring(&self) -> &Arc<CoeffRing> {
        self.omega().ring()
    }

    pub fn algebra(&self) -> &Arc<TruncAlgebra<CoeffElem>> {
        &self.alg
    }

    pub fn phi(&self) -> TruncElement<CoeffElem> {
        self.alg.from_univariate(&self.coeffs)
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().enumerate().all(|(i, c)| if i == 1 { c.is_one() } else { c.is_zero() })
    }

    /// `gh`, with `phi_{gh} = phi_h(phi_g(t))`.
    pub fn compose(&self, h: &GroupElement) -> Result<GroupElement, AutError> {
        if *self.alg != *h.alg {
            return Err(AutError::Mismatch);
        }
        let phi = h.phi().substitute(&self.phi())?;
        let out = GroupElement { alg: self.alg.clone(), coeffs: phi.to_vector() };
        let m = membership(&out.coeffs, self.omega())?;
        if !m.member {
            return Err(AutError::NotMember(m.reason.unwrap_or_default()));
        }
        Ok(out)
    }

    /// Solve `sum b_i phi_g^i = t` linearly, then confirm both products are `e`.
    pub fn invert(&self) -> Result<GroupElement, AutError> {
        let alpha = alpha_matrix(&self.phi())?;
        let p = self.coeffs.len();
        let zero = self.alg.coeff_zero().clone();
        let mut rhs = Matrix::zeros(p, 1, &zero);
        rhs.set(1, 0, zero.one_like());
        let beta = match alpha.solve_unit_pivot(&rhs) {
            Some(b) => b,
            None => alpha.inverse_over_ring().map_err(|_| AutError::SolveFailure)?.mul(&rhs),
        };
        let inv = GroupElement { alg: self.alg.clone(), coeffs: beta.col(0) };
        if !self.compose(&inv)?.is_identity() || !inv.compose(self)?.is_identity() {
            return Err(AutError::SolveFailure);
        }
        Ok(inv)
    }

    /// Frobenius kernel test: `l_0^p = 0`, `l_1^p = 1`, `l_i^p = 0` for `i >= 2`.
    pub fn in_frobenius_kernel(&self) -> bool {
        let p = self.alg.p();
        self.coeffs.iter().enumerate().all(|(i, c)| {
            let x = c.pow(p);
            if i == 1 {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    /// `Ad_g(f d) = f(psi) / psi' d` with `psi = phi_{g^{-1}}`, for `f` given by
    /// its coefficients. `1/psi'` is taken as `phi_g'(psi(t))` and checked.
    pub fn adjoint(&self, f: &[CoeffElem]) -> Result<Vec<CoeffElem>, AutError> {
        let psi = self.invert()?.phi();
        let f = self.alg.from_univariate(f);
        let f_of_psi = f.substitute(&psi)?;
        let dpsi = psi.partial_derivative(0);
        let dphi_at_psi = self.phi().partial_derivative(0).substitute(&psi)?;
        if dpsi.trunc_mul(&dphi_at_psi)? != self.alg.one() {
            return Err(AutError::UnitFailure);
        }
        if let Some(inv) = dpsi.inverse() {
            if inv != dphi_at_psi {
                return Err(AutError::UnitFailure);
            }
        }
        Ok(f_of_psi.trunc_mul(&dphi_at_psi)?.to_vector())
    }
}

/// `[f d, g d] = (f g' - f' g) d` in `R[t]/(t^p - w)`, on coefficient vectors.
pub fn witt_bracket(
    alg: &Arc<TruncAlgebra<CoeffElem>>,
    f: &[CoeffElem],
    g: &[CoeffElem],
) -> Result<Vec<CoeffElem>, AutError> {
    let (f, g) = (alg.from_univariate(f), alg.from_univariate(g));
    let a = f.trunc_mul(&g.partial_derivative(0))?;
    let b = f.partial_derivative(0).trunc_mul(&g)?;
    Ok(a.checked_add(&b.scale(&alg.coeff_zero().from_int_like(-1)))?.to_vector())
}

/// `(f d)^[p] = D^p(t) d` where `D = f d`.
pub fn witt_p_map(alg: &Arc<TruncAlgebra<CoeffElem>>, f: &[CoeffElem]) -> Result<Vec<CoeffElem>, AutError> {
    let f = alg.from_univariate(f);
    let mut h = alg.var(0);
    for _ in 0..alg.p() {
        h = f.trunc_mul(&h.partial_derivative(0))?;
    }
    Ok(h.to_vector())
}

/// Which composite of adjoints agrees with `Ad_{gh}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AdOrder {
    /// `Ad_{gh} = Ad_g . Ad_h`
    GThenH,
    /// `Ad_{gh} = Ad_h . Ad_g`
    HThenG,
    Both,
    Neither,
}

pub fn ad_composition_order(g: &GroupElement, h: &GroupElement, f: &[CoeffElem]) -> Result<AdOrder, AutError> {
    let gh = g.compose(h)?.adjoint(f)?;
    let a = gh == g.adjoint(&h.adjoint(f)?)?;
    let b = gh == h.adjoint(&g.adjoint(f)?)?;
    Ok(match (a, b) {
        (true, true) => AdOrder::Both,
        (true, false) => AdOrder::GThenH,
        (false, true) => AdOrder::HThenG,
        (false, false) => AdOrder::Neither,
    })
}

/// Whether `(l_0, l_1, 0, .., 0)` is a point, i.e. lies in the Borel subgroup.
/// Cross-checks the direct criterion `l_0^p + (l_1 - 1)^p w = 0`, `l_1` a unit.
pub fn borel_membership(l0: &CoeffElem, l1: &CoeffElem, omega: &CoeffElem) -> Result<bool, AutError> {
    let p = omega.ring().p();
    let mut c = vec![omega.zero_like(); p as usize];
    c[0] = l0.clone();
    c[1] = l1.clone();
    let general = membership(&c, omega)?.member;
    let direct = l0.pow(p).add(&l1.sub(&omega.one_like()).pow(p).mul(omega)).is_zero()
        && l1.try_inv().is_some();
    debug_assert_eq!(general, direct);
    Ok(general && direct)
}

/// The conjugate `phi_{g^{-1}}(phi_h(phi_g(t)))` for `phi_g = e + t`, `phi_h = ut`
/// over `k[u, u^-1, e]/(e^2)` with `w = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct NonNormalityReport {
    pub p: u64,
    pub conjugate: String,
    pub matches_expected: bool,
    /// The conjugate has a non-zero constant term, so it leaves the reduced subgroup.
    pub leaves_reduced_subgroup: bool,
    /// Conjugating by the identity instead.
    pub control: String,
    pub control_stays_reduced: bool,
}

pub fn non_normality_witness(p: u64) -> Result<NonNormalityReport, AutError> {
    let field = FieldDescriptor::prime(p).map_err(|_| AutError::PTooLarge(p))?;
    let r = CoeffRing::new(CoeffRingKind::LaurentEps, &field);
    let omega = r.zero();
    let eps = r.eps().expect("Laurent ring has e");
    let u = r.u_pow(1).expect("Laurent ring has u");
    let mut cg = vec![r.zero(); p as usize];
    cg[0] = eps.clone();
    cg[1] = r.one();
    let g = GroupElement::new(cg, &omega)?;
    let mut ch = vec![r.zero(); p as usize];
    ch[1] = u.clone();
    let h = GroupElement::new(ch, &omega)?;
    let conj = g.compose(&h)?.compose(&g.invert()?)?;
    let mut expected = vec![r.zero(); p as usize];
    expected[0] = eps.mul(&u.sub(&r.one()));
    expected[1] = u;
    let e = GroupElement::identity(&omega)?;
    let control = e.compose(&h)?.compose(&e.invert()?)?;
    Ok(NonNormalityReport {
        p,
        conjugate: conj.to_string(),
        matches_expected: conj.coeffs == expected,
        leaves_reduced_subgroup: !conj.coeffs[0].is_zero(),
        control: control.to_string(),
        control_stays_reduced: control.coeffs[0].is_zero(),
    })
}

/// A random point over a dual-number or field ring: `l_1, l_2, ..` uniform, then
/// `l_0` solves the Fermat equation (whose right side lies in the base field).
pub fn random_member<G: Rng + ?Sized>(
    ring: &Arc<CoeffRing>,
    omega: &CoeffElem,
    rng: &mut G,
) -> Result<GroupElement, AutError> {
    let p = ring.p();
    let q = ring.base().order().ok_or(AutError::SolveFailure)?;
    for _ in 0..1000 {
        let mut c: Vec<CoeffElem> = (0..p).map(|_| ring.random(rng)).collect();
        let mut rhs = omega.zero_like();
        for (i, l) in c.iter().enumerate().skip(1) {
            let base = if i == 1 { l.sub(&omega.one_like()) } else { l.clone() };
            rhs = rhs.sub(&base.pow(p).mul(&omega.pow(i as u64)));
        }
        let Some(r) = rhs.as_base() else { continue };
        let root = r.pow(q / p);
        let nil = match ring.kind() {
            CoeffRingKind::Dual => ring.eps().unwrap().mul(&ring.random(rng)),
            _ => ring.zero(),
        };
        c[0] = ring.from_base(root).add(&nil);
        if let Ok(g) = GroupElement::new(c, omega) {
            return Ok(g);
        }
    }
    Err(AutError::SolveFailure)
}

/// Every point over a finite field (at most `cap` candidate vectors).
pub fn enumerate_members(omega: &CoeffElem, cap: u64) -> Result<Vec<GroupElement>, AutError> {
    let ring = omega.ring().clone();
    if ring.kind() != CoeffRingKind::Field {
        return Err(AutError::Mismatch);
    }
    let p = ring.p() as usize;
    let vs = crate::reslie::enumerate_vectors(ring.base(), p, cap).map_err(|_| AutError::SolveFailure)?;
    let mut out = Vec::new();
    for v in vs {
        let c: Vec<CoeffElem> = v.into_iter().map(|x| ring.from_base(x)).collect();
        if membership(&c, omega)?.member {
            out.push(GroupElement::new(c, omega)?);
        }
    }
    Ok(out)
}

/// Rational points over a field `E` via independence of `1, w, .., w^{p-1}`
/// over `E^p`: when independent, the Fermat equation forces `g = e`.
#[derive(Debug, Clone, Serialize)]
pub struct RationalPointsReport {
    pub field: String,
    pub omega: String,
    /// Rank of `1, w, .., w^{p-1}` over `E^p`.
    pub rank: usize,
    pub independent: bool,
    /// True when the argument shows `G(E) = {e}`.
    pub only_identity: bool,
    /// A non-identity point when `w` is a `p`-th power.
    pub witness: Option<String>,
}

pub fn rational_points_test(omega: &FieldElement) -> Result<RationalPointsReport, AutError> {
    let field = omega.descriptor().clone();
    let p = field.p();
    if p > MAX_P {
        return Err(AutError::PTooLarge(p));
    }
    let powers: Vec<FieldElement> = (0..p).map(|i| omega.pow(i)).collect();
    let rank = crate::fields::p_independence_rank(&powers).map_err(|_| AutError::SolveFailure)?;
    let independent = rank == p as usize;
    let ring = CoeffRing::new(CoeffRingKind::Field, &field);
    let w = ring.from_base(omega.clone());
    // w = b^p gives the points l_0 = -b (l_1 - 1), phi = l_0 + l_1 t
    let witness = omega.is_p_power().and_then(|b| {
        let candidates = [ring.from_int(2), w.add(&ring.one()), w.clone()];
        candidates.into_iter().find_map(|l1| {
            let mut c = vec![ring.zero(); p as usize];
            c[0] = ring.from_base(b.clone()).mul(&l1.sub(&ring.one())).neg();
            c[1] = l1;
            GroupElement::new(c, &w).ok().filter(|g| !g.is_identity()).map(|g| g.to_string())
        })
    });
    Ok(RationalPointsReport {
        field: field.name(),
        omega: omega.to_string(),
        rank,
        independent,
        only_identity: independent,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand::rngs::StdRng;

    fn dual(p: u64) -> Arc<CoeffRing> {
        CoeffRing::new(CoeffRingKind::Dual, &FieldDescriptor::prime(p).unwrap())
    }

    #[test]
    fn identity_is_member_everywhere() {
        for kind in [CoeffRingKind::Field, CoeffRingKind::Dual, CoeffRingKind::TruncU, CoeffRingKind::LaurentEps] {
            let r = CoeffRing::new(kind, &FieldDescriptor::prime(3).unwrap());
            for w in 0..3 {
                assert!(GroupElement::identity(&r.from_int(w)).is_ok());
            }
        }
    }

    #[test]
    fn p2_composition_formula() {
        let f = FieldDescriptor::extension(2, 2).unwrap();
        let r = CoeffRing::new(CoeffRingKind::Field, &f);
        let w = r.zero();
        let a = f.generator();
        let g = GroupElement::new(vec![r.zero(), r.from_base(a.clone())], &w).unwrap();
        let h = GroupElement::new(vec![r.zero(), r.from_base(a.mul(&a))], &w).unwrap();
        let gh = g.compose(&h).unwrap();
        assert_eq!(gh.coeffs()[1], r.from_base(a.pow(3)));
    }

    #[test]
    fn epsilon_shift_inverse() {
        for p in [2u64, 3, 5] {
            let r = dual(p);
            let w = r.zero();
            let mut c = vec![r.zero(); p as usize];
            c[0] = r.eps().unwrap();
            c[1] = r.one();
            let g = GroupElement::new(c, &w).unwrap();
            let inv = g.invert().unwrap();
            assert_eq!(inv.coeffs()[0], r.eps().unwrap().neg());
            assert!(g.in_frobenius_kernel());
        }
    }

    #[test]
    fn witness_text() {
        for p in [2u64, 3, 5] {
            let r = non_normality_witness(p).unwrap();
            assert_eq!(r.conjugate, "ε(u−1)+ut", "p = {p}");
            assert!(r.matches_expected && r.leaves_reduced_subgroup);
            assert_eq!(r.control, "ut");
        }
    }

    #[test]
    fn laurent_inverse_of_scaling() {
        let r = CoeffRing::new(CoeffRingKind::LaurentEps, &FieldDescriptor::prime(3).unwrap());
        let w = r.zero();
        let g = GroupElement::new(vec![r.zero(), r.u_pow(1).unwrap(), r.zero()], &w).unwrap();
        assert_eq!(g.invert().unwrap().to_string(), "u⁻¹t");
    }

    #[test]
    fn ad_order_under_substitution_convention() {
        let mut rng = StdRng::seed_from_u64(11);
        let r = dual(5);
        for w in [r.zero(), r.one()] {
            let mut seen = Vec::new();
            for _ in 0..40 {
                let g = random_member(&r, &w, &mut rng).unwrap();
                let h = random_member(&r, &w, &mut rng).unwrap();
                let f: Vec<_> = (0..5).map(|_| r.random(&mut rng)).collect();
                seen.push(ad_composition_order(&g, &h, &f).unwrap());
            }
            assert!(seen.iter().all(|o| matches!(o, AdOrder::HThenG | AdOrder::Both)), "{seen:?}");
            assert!(seen.contains(&AdOrder::HThenG));
        }
    }

    #[test]
    fn adjoint_is_restricted_automorphism() {
        let mut rng = StdRng::seed_from_u64(12);
        let r = dual(3);
        let w = r.one();
        let g = random_member(&r, &w, &mut rng).unwrap();
        let alg = g.algebra().clone();
        let basis: Vec<Vec<CoeffElem>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { r.one() } else { r.zero() }).collect())
            .collect();
        for a in &basis {
            for b in &basis {
                let lhs = g.adjoint(&witt_bracket(&alg, a, b).unwrap()).unwrap();
                let rhs = witt_bracket(&alg, &g.adjoint(a).unwrap(), &g.adjoint(b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        for _ in 0..20 {
            let f: Vec<_> = (0..3).map(|_| r.random(&mut rng)).collect();
            let lhs = g.adjoint(&witt_p_map(&alg, &f).unwrap()).unwrap();
            let rhs = witt_p_map(&alg, &g.adjoint(&f).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn additive_adjoint_is_translation() {
        let r = CoeffRing::new(CoeffRingKind::TruncU, &FieldDescriptor::prime(3).unwrap());
        let w = r.zero();
        let lam = r.u_pow(1).unwrap();
        let g = GroupElement::new(vec![lam.clone(), r.one(), r.zero()], &w).unwrap();
        let f = vec![r.from_int(1), r.from_int(2), r.from_int(1)];
        let alg = g.algebra().clone();
        let shifted = alg
            .from_univariate(&f)
            .substitute(&alg.from_univariate(&[lam.neg(), r.one(), r.zero()]))
            .unwrap();
        assert_eq!(g.adjoint(&f).unwrap(), shifted.to_vector());
    }

    #[test]
    fn scaling_fixes_euler_field() {
        let r = CoeffRing::new(CoeffRingKind::LaurentEps, &FieldDescriptor::prime(5).unwrap());
        let w = r.zero();
        let mut c = vec![r.zero(); 5];
        c[1] = r.u_pow(1).unwrap();
        let g = GroupElement::new(c, &w).unwrap();
        let mut td = vec![r.zero(); 5];
        td[1] = r.one();
        assert_eq!(g.adjoint(&td).unwrap(), td);
    }

    #[test]
    fn borel_points_over_f4() {
        let f = FieldDescriptor::extension(2, 2).unwrap();
        let r = CoeffRing::new(CoeffRingKind::Field, &f);
        for w in f.elements().unwrap() {
            let w = r.from_base(w);
            let pts = enumerate_members(&w, 1 << 10).unwrap();
            assert_eq!(pts.len(), 3, "omega = {w}");
            for a in &pts {
                assert!(borel_membership(&a.coeffs()[0], &a.coeffs()[1], &w).unwrap());
                assert!(pts.contains(&a.invert().unwrap()));
                for b in &pts {
                    assert!(pts.contains(&a.compose(b).unwrap()));
                }
            }
        }
    }

    #[test]
    fn scaling_outside_frobenius_kernel() {
        let f = FieldDescriptor::extension(3, 2).unwrap();
        let r = CoeffRing::new(CoeffRingKind::Field, &f);
        let u = r.from_base(f.generator());
        let g = GroupElement::new(vec![r.zero(), u, r.zero()], &r.zero()).unwrap();
        assert!(!g.in_frobenius_kernel());
    }

    #[test]
    fn rational_points_over_function_field() {
        let f = FieldDescriptor::rational(2).unwrap();
        let theta = f.variable("theta").unwrap();
        let rep = rational_points_test(&theta).unwrap();
        assert!(rep.only_identity && rep.witness.is_none());
        let rep = rational_points_test(&theta.pow(2)).unwrap();
        assert!(!rep.independent && rep.witness.is_some());
    }
}
