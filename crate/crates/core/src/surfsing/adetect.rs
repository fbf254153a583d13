//! Recognition of rational double points of type `A`.

use std::sync::Arc;

use serde::Serialize;

use super::series::PowerSeries3;
use super::SurfError;
use crate::fields::linalg::Matrix;
use crate::fields::{Embedding, FieldDescriptor, FieldElement};
use crate::ring::{Field, Ring};

/// Largest field enumerated when looking for roots of a binary quadric.
pub const ROOT_SEARCH_LIMIT: u64 = 1_000_000;

const PAIRS: [(usize, usize, usize); 3] = [(0, 1, 2), (0, 2, 1), (1, 2, 0)];

#[derive(Debug, Clone, Serialize)]
pub struct PairOutcome {
    pub pair: (usize, usize),
    /// Constant term of `f_ij^2 - f_ii f_jj`.
    pub expression: String,
    pub unit: bool,
}

/// `f` rewritten as `xy + lambda z^2 + O(3)`.
#[derive(Debug, Clone)]
pub struct HessianForm {
    pub pair: (usize, usize),
    /// Coefficient field after possibly adjoining a square root.
    pub field: Arc<FieldDescriptor>,
    pub extended: bool,
    /// New coordinates as linear forms in the old ones.
    pub change: [[FieldElement; 3]; 3],
    pub lambda: FieldElement,
    /// `f` in the new coordinates.
    pub series: PowerSeries3,
}

#[derive(Debug, Clone)]
pub struct HessianReport {
    pub pairs: Vec<PairOutcome>,
    pub form: Option<HessianForm>,
}

fn require_m2(f: &PowerSeries3) -> Result<(), SurfError> {
    if f.order().is_some_and(|o| o < 2) {
        Err(SurfError::NotInSquareOfMaximalIdeal)
    } else {
        Ok(())
    }
}

fn quad_coeff(f: &PowerSeries3, i: usize, j: usize) -> FieldElement {
    let mut e = [0; 3];
    e[i] += 1;
    e[j] += 1;
    f.coeff(&e)
}

/// Roots of `a r^2 + b r + c` by enumeration.
fn quadratic_roots(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Result<Vec<FieldElement>, SurfError> {
    let field = a.descriptor();
    let order = field.order().ok_or(SurfError::FieldTooLarge)?;
    if order > ROOT_SEARCH_LIMIT {
        return Err(SurfError::FieldTooLarge);
    }
    Ok(field
        .elements()?
        .into_iter()
        .filter(|r| a.mul(r).mul(r).add(&b.mul(r)).add(c).is_zero())
        .collect())
}

fn matrix3(rows: [[FieldElement; 3]; 3]) -> Matrix<FieldElement> {
    let zero = rows[0][0].zero_like();
    Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect(), &zero)
}

fn to_array(m: &Matrix<FieldElement>) -> [[FieldElement; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| m.get(i, j).clone()))
}

/// Linear forms `L_1, L_2` in `u_i, u_j` with `a u_i^2 + b u_i u_j + c u_j^2 = L_1 L_2`,
/// as coefficient pairs `(on u_i, on u_j)`.
fn factor_binary(
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Option<[(FieldElement, FieldElement); 2]>, SurfError> {
    let one = a.one_like();
    let zero = a.zero_like();
    if a.is_zero() && c.is_zero() {
        return Ok(Some([(b.clone(), zero.clone()), (zero, one)]));
    }
    if !a.is_zero() {
        // a (u_i - r1 u_j)(u_i - r2 u_j)
        let roots = quadratic_roots(a, b, c)?;
        let Some(r1) = roots.first() else { return Ok(None) };
        let r2 = b.neg().div(a).expect("a != 0").sub(r1);
        return Ok(Some([(a.clone(), a.mul(r1).neg()), (one, r2.neg())]));
    }
    // c (u_j - s1 u_i)(u_j - s2 u_i)
    let roots = quadratic_roots(c, b, a)?;
    let Some(s1) = roots.first() else { return Ok(None) };
    let s2 = b.neg().div(c).expect("c != 0").sub(s1);
    Ok(Some([(c.mul(s1).neg(), c.clone()), (s2.neg(), one)]))
}

/// Tries the pairs `(x,y)`, `(x,z)`, `(y,z)`; on the first with a unit
/// expression, factors the quadric and changes coordinates to `xy + lambda z^2`.
pub fn hessian_criterion(f: &PowerSeries3) -> Result<HessianReport, SurfError> {
    require_m2(f)?;
    let mut pairs = Vec::new();
    let mut form = None;
    for (i, j, k) in PAIRS {
        let fij = f.partial(i).partial(j).constant_term();
        let fii = f.partial(i).partial(i).constant_term();
        let fjj = f.partial(j).partial(j).constant_term();
        let expr = fij.mul(&fij).sub(&fii.mul(&fjj));
        let unit = !expr.is_zero();
        pairs.push(PairOutcome { pair: (i, j), expression: expr.to_string(), unit });
        if unit && form.is_none() {
            form = normal_form(f, i, j, k)?;
        }
    }
    Ok(HessianReport { pairs, form })
}

fn normal_form(f: &PowerSeries3, i: usize, j: usize, k: usize) -> Result<Option<HessianForm>, SurfError> {
    let (a, b, c) = (quad_coeff(f, i, i), quad_coeff(f, i, j), quad_coeff(f, j, j));
    let (g, field, extended, factors) = match factor_binary(&a, &b, &c)? {
        Some(fs) => (f.clone(), f.field().clone(), false, fs),
        None => {
            let base = f.field();
            let big = FieldDescriptor::extension(base.p(), 2 * base.degree().unwrap_or(1))?;
            let emb = Embedding::new(base, &big)?;
            let g = f.map_field(&emb);
            let fs = factor_binary(&emb.apply(&a), &emb.apply(&b), &emb.apply(&c))?
                .ok_or(SurfError::HessianFailed)?;
            (g, big, true, fs)
        }
    };
    let zero = field.zero();
    let one = field.one();
    let mut w = std::array::from_fn::<_, 3, _>(|_| std::array::from_fn::<_, 3, _>(|_| zero.clone()));
    for (row, (ci, cj)) in factors.iter().enumerate() {
        w[row][i] = ci.clone();
        w[row][j] = cj.clone();
    }
    w[2][k] = one.clone();
    let wm = matrix3(w.clone());
    let Some(winv) = wm.inverse() else { return Ok(None) };
    let q = g.homogeneous(2).linear_change(&to_array(&winv))?;
    let (a2, b2, c2) = (quad_coeff(&q, 0, 2), quad_coeff(&q, 1, 2), quad_coeff(&q, 2, 2));
    if !quad_coeff(&q, 0, 1).is_one() || !quad_coeff(&q, 0, 0).is_zero() || !quad_coeff(&q, 1, 1).is_zero() {
        return Err(SurfError::HessianFailed);
    }
    // x = w1 + b w3, y = w2 + a w3, z = w3
    let t = matrix3([
        [one.clone(), zero.clone(), b2.clone()],
        [zero.clone(), one.clone(), a2.clone()],
        [zero.clone(), zero.clone(), one.clone()],
    ]);
    let change = t.mul(&wm);
    let inv = change.inverse().ok_or(SurfError::HessianFailed)?;
    let series = g.linear_change(&to_array(&inv))?;
    let lambda = c2.sub(&a2.mul(&b2));
    let expect = PowerSeries3::from_terms(&field, g.precision(), [([1, 1, 0], one), ([0, 0, 2], lambda.clone())]);
    if series.homogeneous(2) != expect {
        return Err(SurfError::HessianFailed);
    }
    Ok(Some(HessianForm { pair: (i, j), field, extended, change: to_array(&change), lambda, series }))
}

/// `(f) = (xy + z^n)` certified modulo `m^precision`.
#[derive(Debug, Clone)]
pub struct AType {
    pub n: u32,
    pub precision: u32,
    pub field: Arc<FieldDescriptor>,
    pub iterations: usize,
    /// `h(z) = u(z) z^n` after the iteration; the unit is absorbed into `x`.
    pub unit: PowerSeries3,
    /// Coordinates of the Hessian normal form as series in the final ones.
    pub substitution: [PowerSeries3; 3],
    pub verified: bool,
}

impl AType {
    /// Rational double point `A_{n-1}`.
    pub fn label(&self) -> String {
        format!("A{}", self.n - 1)
    }
}

/// Runs the Hessian criterion, then the iteration `x -> x + psi`, `y -> y + phi`
/// until `f = xy + h(z)` modulo `m^N`.
pub fn a_type_recognition(f: &PowerSeries3) -> Result<AType, SurfError> {
    let rep = hessian_criterion(f)?;
    let form = rep.form.ok_or(SurfError::HessianFailed)?;
    a_type_iterate(&form.series)
}

/// The iteration on `g = xy + lambda z^2 + O(3)`.
pub fn a_type_iterate(g: &PowerSeries3) -> Result<AType, SurfError> {
    let field = g.field().clone();
    let n = g.precision();
    let xy = PowerSeries3::from_terms(&field, n, [([1, 1, 0], field.one())]);
    let vars: [PowerSeries3; 3] = std::array::from_fn(|i| PowerSeries3::var(&field, n, i));
    let mut subst = vars.clone();
    let mut cur = g.clone();
    let mut iterations = 0;
    loop {
        let rest = cur.sub(&xy)?;
        // x phi: monomials with x; y psi: monomials with y but no x; h: pure z
        let x_part = rest.filter(|e| e[0] > 0);
        let y_part = rest.filter(|e| e[0] == 0 && e[1] > 0);
        if x_part.is_zero() && y_part.is_zero() {
            break;
        }
        if iterations > n as usize + 2 {
            return Err(SurfError::PrecisionExhausted { precision: n });
        }
        let phi = divide_by_var(&x_part, 0);
        let psi = divide_by_var(&y_part, 1);
        // f = (x + psi)(y + phi) - phi psi + h, so substitute x -> x - psi, y -> y - phi
        let step = [vars[0].sub(&psi)?, vars[1].sub(&phi)?, vars[2].clone()];
        cur = cur.compose(&step)?;
        subst = [subst[0].compose(&step)?, subst[1].compose(&step)?, subst[2].compose(&step)?];
        iterations += 1;
    }
    let h = cur.sub(&xy)?;
    let order = h.order().ok_or(SurfError::PrecisionExhausted { precision: n })?;
    let unit = divide_by_var_power(&h, 2, order);
    let verified = g.compose(&subst)?.sub(&xy)? == h && unit.constant_term().try_inv().is_some();
    Ok(AType { n: order, precision: n, field, iterations, unit, substitution: subst, verified })
}

fn divide_by_var(s: &PowerSeries3, i: usize) -> PowerSeries3 {
    divide_by_var_power(s, i, 1)
}

fn divide_by_var_power(s: &PowerSeries3, i: usize, k: u32) -> PowerSeries3 {
    let t = s.terms().iter().map(|(e, c)| {
        let mut e2 = *e;
        e2[i] -= k;
        (e2, c.clone())
    });
    PowerSeries3::from_terms(s.field(), s.precision(), t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Arc<FieldDescriptor> {
        FieldDescriptor::prime(5).unwrap()
    }

    #[test]
    fn normal_forms_are_fixed() {
        let f = PowerSeries3::from_ints(&f5(), 10, &[([1, 1, 0], 1), ([0, 0, 3], 1)]);
        let a = a_type_recognition(&f).unwrap();
        assert_eq!((a.n, a.iterations), (3, 0));
        assert!(a.verified);
    }

    #[test]
    fn one_step_example() {
        let f = PowerSeries3::from_ints(&f5(), 10, &[([1, 1, 0], 1), ([0, 0, 3], 1), ([2, 2, 0], 1)]);
        let a = a_type_recognition(&f).unwrap();
        assert_eq!(a.n, 3);
        assert!(a.verified);
    }

    #[test]
    fn sum_of_squares_over_f3() {
        let f3 = FieldDescriptor::prime(3).unwrap();
        let f = PowerSeries3::from_ints(&f3, 6, &[([2, 0, 0], 1), ([0, 2, 0], 1), ([0, 0, 2], 1)]);
        let rep = hessian_criterion(&f).unwrap();
        assert_eq!(rep.pairs[0].expression, "2");
        let form = rep.form.unwrap();
        assert!(form.extended && form.pair == (0, 1));
        assert_eq!(a_type_iterate(&form.series).unwrap().n, 2);
    }

    #[test]
    fn x2_plus_yz_uses_last_pair() {
        let f = PowerSeries3::from_ints(&f5(), 6, &[([2, 0, 0], 1), ([0, 1, 1], 1)]);
        let rep = hessian_criterion(&f).unwrap();
        assert_eq!(rep.form.unwrap().pair, (1, 2));
    }

    #[test]
    fn cubic_fails_everywhere() {
        let f = PowerSeries3::from_ints(&f5(), 6, &[([3, 0, 0], 1), ([0, 3, 0], 1), ([0, 0, 3], 1)]);
        let rep = hessian_criterion(&f).unwrap();
        assert!(rep.pairs.iter().all(|p| !p.unit) && rep.form.is_none());
    }

    #[test]
    fn linear_terms_rejected() {
        let f = PowerSeries3::from_ints(&f5(), 6, &[([1, 0, 0], 1)]);
        assert!(matches!(hessian_criterion(&f), Err(SurfError::NotInSquareOfMaximalIdeal)));
    }

    #[test]
    fn exhausted_precision() {
        let f = PowerSeries3::from_ints(&f5(), 5, &[([1, 1, 0], 1), ([0, 0, 7], 1)]);
        assert!(matches!(a_type_recognition(&f), Err(SurfError::PrecisionExhausted { .. })));
    }
}
