//! Numerical invariants of surfaces with vector fields, bounds in terms of
//! Chern numbers, and recognition of their `A`-type singularities.

mod adetect;
mod series;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::fields::linalg::Matrix;
use crate::fields::{FieldDescriptor, FieldElement, FieldError};
use crate::ring::Ring;

pub use adetect::{
    a_type_iterate, a_type_recognition, hessian_criterion, AType, HessianForm, HessianReport, PairOutcome,
    ROOT_SEARCH_LIMIT,
};
pub use series::{Exp3, PowerSeries3};

pub type Rational = Ratio<i128>;

/// Largest field enumerated for singular points.
pub const LOCUS_FIELD_LIMIT: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfError {
    #[error("(c1^2 + c2) / 12 is not an integer")]
    NonIntegralChi,
    #[error("c1^2 must be at least 1, got {0}")]
    BadC1(i64),
    #[error("characteristic 3 makes the derivative system degenerate")]
    CharThree,
    #[error("series has a constant or linear term")]
    NotInSquareOfMaximalIdeal,
    #[error("substituted series must lie in the maximal ideal")]
    NotInMaximalIdeal,
    #[error("no variable pair gives a unit Hessian expression")]
    HessianFailed,
    #[error("h(z) vanishes to the working precision {precision}")]
    PrecisionExhausted { precision: u32 },
    #[error("series over different fields")]
    MixedFields,
    #[error("series is not a unit")]
    NotUnit,
    #[error("field too large to enumerate")]
    FieldTooLarge,
    #[error("bad parameters: {0}")]
    BadHypotheses(String),
    #[error("json: {0}")]
    Json(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernPair {
    pub c1sq: i64,
    pub c2: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example1Invariants {
    pub p: u64,
    pub d: u64,
    /// `h^0(O(d))`; the vector fields form `k^n` plus a multiplicative line.
    pub n: u64,
    pub c1sq: i64,
    pub c2: i64,
    pub chi: i64,
    pub chi_alt: i64,
    /// `p != 3` and `d >= 4`.
    pub hypotheses_hold: bool,
}

impl Example1Invariants {
    pub fn chern(&self) -> ChernPair {
        ChernPair { c1sq: self.c1sq, c2: self.c2 }
    }
}

/// Invariants of the `p`-cyclic cover of the plane branched along
/// `T0 T1 T2^{pd-2} + T1 T2 T0^{pd-2} + T2 T0 T1^{pd-2}`.
pub fn example1_invariants(p: u64, d: u64) -> Result<Example1Invariants, SurfError> {
    let (pi, di) = (p as i64, d as i64);
    let n = (d + 1) * (d + 2) / 2;
    let c1sq = pi * (pi * di - di - 3).pow(2);
    let c2 = 3 * pi + di * pi * (pi - 1) * (pi * di - 3);
    let alt_num = 12 * pi - 9 * di * (pi - 1) * pi + di * di * (pi - 1) * pi * (2 * pi - 1);
    if (c1sq + c2) % 12 != 0 || alt_num % 12 != 0 {
        return Err(SurfError::NonIntegralChi);
    }
    let (chi, chi_alt) = ((c1sq + c2) / 12, alt_num / 12);
    if chi != chi_alt {
        return Err(SurfError::NonIntegralChi);
    }
    Ok(Example1Invariants { p, d, n, c1sq, c2, chi, chi_alt, hypotheses_hold: p != 3 && d >= 4 })
}

fn check_c1(c1sq: i64) -> Result<(), SurfError> {
    if c1sq < 1 {
        Err(SurfError::BadC1(c1sq))
    } else {
        Ok(())
    }
}

/// `m` with `omega^m` very ample: 4, or 5 when `c1^2 = 1`.
pub fn embedding_power(c1sq: i64) -> i64 {
    if c1sq >= 2 {
        4
    } else {
        5
    }
}

/// `((6m^2 - 6m + 1) c1^2 + c2)^2 / 144 - 1`.
pub fn phi_bound(c: ChernPair) -> Result<Rational, SurfError> {
    check_c1(c.c1sq)?;
    let a: i128 = if c.c1sq >= 2 { 73 } else { 121 };
    let s = a * c.c1sq as i128 + c.c2 as i128;
    Ok(Rational::new(s * s, 144) - 1)
}

pub fn psi_bound(c1sq: i64) -> Result<Rational, SurfError> {
    check_c1(c1sq)?;
    let x = c1sq as i128;
    let (a, b) = if c1sq >= 2 { (169, 39) } else { (441, 63) };
    Ok(Rational::new(a * x * x, 4) + b * x + 8)
}

/// `h^0(omega^m) = chi + (m^2 - m) c1^2 / 2`.
pub fn ekedahl_h0(m: i64, chi: Rational, c1sq: i64) -> Rational {
    chi + Rational::new(((m * m - m) * c1sq) as i128, 2)
}

#[derive(Debug, Clone, Serialize)]
pub struct NoetherReport {
    /// `c2 <= 5 c1^2 + 36`.
    pub c2_bound: bool,
    /// `h0(omega) <= (c1^2 + 4) / 2`, when `h0(omega)` is given.
    pub h0_bound: Option<bool>,
    pub chi_integral: bool,
}

pub fn noether_checks(c: ChernPair, h0_omega: Option<i64>) -> NoetherReport {
    NoetherReport {
        c2_bound: c.c2 <= 5 * c.c1sq + 36,
        h0_bound: h0_omega.map(|h| 2 * h <= c.c1sq + 4),
        chi_integral: (c.c1sq + c.c2) % 12 == 0,
    }
}

/// `aF + bS` in the lattice with `F^2 = 0`, `F.S = 1`, `S^2 = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DivisorClass {
    pub a: i64,
    pub b: i64,
    pub d: i64,
}

impl DivisorClass {
    pub fn fiber(d: i64) -> Self {
        DivisorClass { a: 1, b: 0, d }
    }

    pub fn section(d: i64) -> Self {
        DivisorClass { a: 0, b: 1, d }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: Self) -> Self {
        DivisorClass { a: self.a + o.a, b: self.b + o.b, d: self.d }
    }

    pub fn scale(self, k: i64) -> Self {
        DivisorClass { a: k * self.a, b: k * self.b, d: self.d }
    }

    pub fn dot(self, o: Self) -> i64 {
        self.a * o.b + self.b * o.a + self.b * o.b * self.d
    }

    pub fn self_intersection(self) -> i64 {
        self.dot(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RaynaudInvariants {
    pub p: i64,
    pub n: i64,
    pub d: i64,
    pub c1sq: i64,
    pub c2: i64,
    pub d_sq: i64,
    pub g_sq: i64,
    pub g_prime_sq: i64,
    /// Lattice and closed-form values of `D^2`, `G^2`, `G'^2` coincide.
    pub routes_agree: bool,
    pub chi_integral: bool,
}

pub fn raynaud_invariants(p: i64, n: i64, d: i64) -> Result<RaynaudInvariants, SurfError> {
    if p < 3 || n < 2 || d < 1 {
        return Err(SurfError::BadHypotheses(format!("need p >= 3, n >= 2, d >= 1; got ({p}, {n}, {d})")));
    }
    let f = DivisorClass::fiber(d);
    let s = DivisorClass::section(d);
    let cusps = f.scale(-p * d).add(s.scale(p));
    let g = f.scale(d).add(cusps.scale(n));
    let g1 = f.scale(d).add(cusps.scale(n - 1));
    let (d_sq, g_sq, g_prime_sq) = (cusps.self_intersection(), g.self_intersection(), g1.self_intersection());
    let routes_agree = d_sq == -p * p * d
        && g_sq == d * n * p * (2 - n * p)
        && g_prime_sq == p * d * (n - 1) * (2 - (n - 1) * p);
    let c1sq = d * (p.pow(4) * n * n + 4 * p + 2 * n * p - n * n * p * p - 4 * n * p * p - 2 * n * p.pow(3));
    let c2 = 2 * p * d * (1 - n * p);
    Ok(RaynaudInvariants {
        p,
        n,
        d,
        c1sq,
        c2,
        d_sq,
        g_sq,
        g_prime_sq,
        routes_agree,
        chi_integral: (c1sq + c2) % 12 == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub x: FieldElement,
    pub y: FieldElement,
    pub t: FieldElement,
}

impl Serialize for SingularPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string(), self.t.to_string()].serialize(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularLocus {
    pub field: String,
    /// `x^{pd-3} = y^{pd-3} = 1`.
    pub interior: Vec<SingularPoint>,
    /// Solutions of the full derivative system with `x = 0` or `y = 0`.
    pub boundary: Vec<SingularPoint>,
    /// `1 + 4X^2 + 4Y^2 - 4X - 4Y - 28XY` at `X = Y = 1`.
    pub double_partials: String,
    pub double_partials_nonzero: bool,
}

/// The `t` coordinate on `t^p = xy + x^{pd-2} y + x y^{pd-2}`.
fn t_over(x: &FieldElement, y: &FieldElement, p: u64, d: u64, q: u64) -> FieldElement {
    let e = p * d - 2;
    let rhs = x.mul(y).add(&x.pow(e).mul(y)).add(&x.mul(&y.pow(e)));
    // inverse Frobenius on F_q
    rhs.pow(q / p)
}

/// Singular points of `t^p = xy + x^{pd-2} y + x y^{pd-2}` over `F_{p^k}`.
pub fn example1_singular_locus(p: u64, d: u64, k: usize) -> Result<SingularLocus, SurfError> {
    if p == 3 {
        return Err(SurfError::CharThree);
    }
    let field = FieldDescriptor::extension(p, k)?;
    let q = field.order().ok_or(SurfError::FieldTooLarge)?;
    if q > LOCUS_FIELD_LIMIT {
        return Err(SurfError::FieldTooLarge);
    }
    // -1 + 2X - Y = 0 and -1 - X + 2Y = 0
    let fp = FieldDescriptor::prime(p)?;
    let a = Matrix::from_rows(
        vec![vec![fp.from_int(2), fp.from_int(-1)], vec![fp.from_int(-1), fp.from_int(2)]],
        &fp.zero(),
    );
    if a.rank() < 2 {
        return Err(SurfError::CharThree);
    }
    let rhs = Matrix::from_rows(vec![vec![fp.one()], vec![fp.one()]], &fp.zero());
    let sol = a.inverse().expect("rank 2").mul(&rhs);
    if !sol.get(0, 0).is_one() || !sol.get(1, 0).is_one() {
        return Err(SurfError::BadHypotheses("linear system solution is not (1, 1)".into()));
    }
    let m = p * d - 3;
    let e = p * d - 2;
    let elems = field.elements()?;
    let mut interior = Vec::new();
    for x in elems.iter().filter(|x| !x.is_zero() && x.pow(m).is_one()) {
        for y in elems.iter().filter(|y| !y.is_zero() && y.pow(m).is_one()) {
            interior.push(SingularPoint { x: x.clone(), y: y.clone(), t: t_over(x, y, p, d, q) });
        }
    }
    let two = field.from_int(2);
    let fx = |x: &FieldElement, y: &FieldElement| y.neg().add(&two.mul(&x.pow(m)).mul(y)).sub(&y.pow(e));
    let fy = |x: &FieldElement, y: &FieldElement| x.neg().sub(&x.pow(e)).add(&two.mul(x).mul(&y.pow(m)));
    let mut boundary = Vec::new();
    for x in &elems {
        for y in &elems {
            if (x.is_zero() || y.is_zero()) && fx(x, y).is_zero() && fy(x, y).is_zero() {
                boundary.push(SingularPoint { x: x.clone(), y: y.clone(), t: t_over(x, y, p, d, q) });
            }
        }
    }
    let (x1, y1) = (fp.one(), fp.one());
    let dp = fp
        .one()
        .add(&x1.mul(&x1).scale_int(4))
        .add(&y1.mul(&y1).scale_int(4))
        .sub(&x1.scale_int(4))
        .sub(&y1.scale_int(4))
        .sub(&x1.mul(&y1).scale_int(28));
    Ok(SingularLocus {
        field: field.name(),
        interior,
        boundary,
        double_partials: dp.to_string(),
        double_partials_nonzero: !dp.is_zero(),
    })
}

/// `t^p - xy - x^{pd-2} y - x y^{pd-2}` recentered at a point, with
/// `(x, y, t) = (x0 + X, y0 + Y, t0 + Z)`.
pub fn example1_local_equation(
    p: u64,
    d: u64,
    point: &SingularPoint,
    precision: u32,
) -> Result<PowerSeries3, SurfError> {
    let field = point.x.descriptor().clone();
    let shift = |c: &FieldElement, i: usize| {
        PowerSeries3::constant(&field, precision, c.clone()).add(&PowerSeries3::var(&field, precision, i))
    };
    let (x, y, t) = (shift(&point.x, 0)?, shift(&point.y, 1)?, shift(&point.t, 2)?);
    let e = p * d - 2;
    let rhs = x.mul(&y)?.add(&x.pow(e)?.mul(&y)?)?.add(&x.mul(&y.pow(e)?)?)?;
    let f = t.pow(p)?.sub(&rhs)?;
    if !f.constant_term().is_zero() {
        return Err(SurfError::BadHypotheses("point is not on the surface".into()));
    }
    Ok(f)
}

#[derive(Debug, Clone, Serialize)]
pub struct SingularityType {
    pub point: SingularPoint,
    pub n: u32,
    pub label: String,
    pub field: String,
    pub precision: u32,
    pub verified: bool,
}

/// `A`-type of every interior singular point over `F_{p^k}`.
pub fn example1_singularity_types(
    p: u64,
    d: u64,
    k: usize,
    precision: u32,
) -> Result<Vec<SingularityType>, SurfError> {
    let locus = example1_singular_locus(p, d, k)?;
    locus
        .interior
        .into_iter()
        .map(|pt| {
            let f = example1_local_equation(p, d, &pt, precision)?;
            let a = a_type_recognition(&f)?;
            Ok(SingularityType {
                point: pt,
                n: a.n,
                label: a.label(),
                field: a.field.name(),
                precision: a.precision,
                verified: a.verified,
            })
        })
        .collect()
}

/// Number of interior singular points over the algebraic closure restricted to
/// `F_{p^k}`: `gcd(pd - 3, p^k - 1)^2`.
pub fn interior_point_count(p: u64, d: u64, k: usize) -> u64 {
    let g = (p * d - 3).gcd(&(p.pow(k as u32) - 1));
    g * g
}
