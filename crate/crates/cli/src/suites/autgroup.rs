use std::sync::Arc;

use serde_json::json;
use witt_core::autgroup::{
    ad_composition_order, enumerate_members, non_normality_witness, random_member, rational_points_test,
    witt_bracket, witt_p_map, AdOrder, CoeffElem, CoeffRing, CoeffRingKind, GroupElement,
};
use witt_core::fields::parse::parse_element;
use witt_core::{FieldDescriptor, Ring};

use super::{attempt, field, verdict, wants, OmegaArg, Outcome, Params, Rng, SuiteError};
use crate::report::{Check, Status};

const ADJOINT_PAIRS: usize = 200;

pub(super) fn run(params: &Params, rng: &mut Rng) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    if wants(params, 2) {
        for k in [1usize, 2, 3] {
            let f = FieldDescriptor::extension(2, k).map_err(|e| SuiteError::BadParams(e.to_string()))?;
            out.push(attempt(params, &format!("autgroup.group-axioms.{}", f.name()), "G_w(F_q) is a group for every w", || {
                group_axioms(&f)
            }));
        }
    }
    for p in [2u64, 3, 5].into_iter().filter(|&p| wants(params, p)) {
        out.push(attempt(params, &format!("autgroup.non-normality.p{p}"), "conjugating ut by e + t gives e(u-1)+ut", || {
            let r = non_normality_witness(p)?;
            let ok = r.conjugate == "ε(u−1)+ut" && r.matches_expected && r.leaves_reduced_subgroup && r.control_stays_reduced;
            Ok((verdict(ok), serde_json::to_value(&r)?))
        }));
    }
    let rational_primes: Vec<u64> = match params.p {
        Some(p) => vec![p],
        None => vec![2, 3, 5],
    };
    for p in rational_primes {
        let text = match &params.omega {
            Some(OmegaArg::Expr(s)) => s.clone(),
            Some(OmegaArg::Int(w)) => w.to_string(),
            None => "theta".into(),
        };
        out.push(attempt(
            params,
            &format!("autgroup.rational-points.p{p}"),
            "points over F_p(theta) forced to the identity when 1, w, .., w^(p-1) are p-independent",
            || rational_points(p, &text, params.omega.is_none()),
        ));
    }
    if wants(params, 5) {
        for w in [0i64, 1] {
            out.push(attempt(
                params,
                &format!("autgroup.adjoint.F5[e].w{w}"),
                "Ad_g preserves bracket and p-map",
                || adjoint_pairs(w, rng),
            ));
        }
        out.push(attempt(params, "autgroup.ad-order.F5[e]", "order of adjoints under composition", || {
            ad_order(rng)
        }));
    }
    for p in [3u64, 5].into_iter().filter(|&p| wants(params, p)) {
        out.push(attempt(
            params,
            &format!("autgroup.additive-adjoint.p{p}"),
            "Ad of t + l is the translation f(t) -> f(t - l) for every nilpotent l",
            || additive_adjoint(p),
        ));
    }
    Ok(out)
}

fn group_axioms(f: &Arc<FieldDescriptor>) -> Outcome {
    let r = CoeffRing::new(CoeffRingKind::Field, f);
    let mut sizes = Vec::new();
    for w in f.elements()? {
        let w = r.from_base(w);
        let pts = enumerate_members(&w, 1 << 12)?;
        let e = GroupElement::identity(&w)?;
        let mut failure = None;
        if !pts.contains(&e) {
            failure = Some("identity missing".to_string());
        }
        for a in &pts {
            let inv = a.invert()?;
            if !pts.contains(&inv) || !a.compose(&inv)?.is_identity() || !inv.compose(a)?.is_identity() {
                failure.get_or_insert(format!("inverse of {a}"));
            }
            for b in &pts {
                let ab = a.compose(b)?;
                if !pts.contains(&ab) {
                    failure.get_or_insert(format!("closure at ({a}, {b})"));
                }
                for c in &pts {
                    if ab.compose(c)? != a.compose(&b.compose(c)?)? {
                        failure.get_or_insert(format!("associativity at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        if let Some(msg) = failure {
            return Ok((Status::Fail, json!({"omega": w.to_string(), "failure": msg})));
        }
        sizes.push(json!({"omega": w.to_string(), "points": pts.len()}));
    }
    Ok((Status::Pass, json!(sizes)))
}

fn rational_points(p: u64, text: &str, expect_identity_only: bool) -> Outcome {
    let base = FieldDescriptor::rational(p)?;
    let w = parse_element(&base, text)?;
    let rep = rational_points_test(&w)?;
    let r = CoeffRing::new(CoeffRingKind::Field, &base);
    let e = GroupElement::identity(&r.from_base(w))?;
    let neutral = e.coeffs().iter().enumerate().all(|(i, c)| if i == 1 { c.is_one() } else { c.is_zero() });
    let consistent = rep.only_identity == rep.independent && (rep.independent || rep.witness.is_some());
    let ok = neutral && consistent && (!expect_identity_only || rep.only_identity);
    Ok((verdict(ok), serde_json::to_value(&rep)?))
}

fn unit_vectors(r: &Arc<CoeffRing>, p: usize) -> Vec<Vec<CoeffElem>> {
    (0..p).map(|i| (0..p).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect()
}

fn adjoint_pairs(w: i64, rng: &mut Rng) -> Outcome {
    let r = CoeffRing::new(CoeffRingKind::Dual, &field(5)?);
    let omega = r.from_int(w);
    let mut failures = 0;
    for _ in 0..ADJOINT_PAIRS {
        let g = random_member(&r, &omega, rng)?;
        let alg = g.algebra().clone();
        let f: Vec<CoeffElem> = (0..5).map(|_| r.random(rng)).collect();
        let h: Vec<CoeffElem> = (0..5).map(|_| r.random(rng)).collect();
        let (af, ah) = (g.adjoint(&f)?, g.adjoint(&h)?);
        let bracket_ok = g.adjoint(&witt_bracket(&alg, &f, &h)?)? == witt_bracket(&alg, &af, &ah)?;
        let pmap_ok = g.adjoint(&witt_p_map(&alg, &f)?)? == witt_p_map(&alg, &af)?;
        if !(bracket_ok && pmap_ok) {
            failures += 1;
        }
    }
    Ok((verdict(failures == 0), json!({"pairs": ADJOINT_PAIRS, "failures": failures})))
}

fn ad_order(rng: &mut Rng) -> Outcome {
    let r = CoeffRing::new(CoeffRingKind::Dual, &field(5)?);
    let mut orders = Vec::new();
    for w in [0i64, 1] {
        let omega = r.from_int(w);
        for _ in 0..20 {
            let g = random_member(&r, &omega, rng)?;
            let h = random_member(&r, &omega, rng)?;
            let f: Vec<CoeffElem> = (0..5).map(|_| r.random(rng)).collect();
            orders.push(ad_composition_order(&g, &h, &f)?);
        }
    }
    let ok = orders.iter().all(|o| matches!(o, AdOrder::HThenG | AdOrder::Both));
    let strict = orders.iter().filter(|o| **o == AdOrder::HThenG).count();
    Ok((verdict(ok), json!({"rule": "Ad_{gh} = Ad_h Ad_g", "samples": orders.len(), "distinguishing": strict})))
}

fn additive_adjoint(p: u64) -> Outcome {
    let r = CoeffRing::new(CoeffRingKind::TruncU, &field(p)?);
    let omega = r.zero();
    let n = p as usize;
    let us: Vec<CoeffElem> = (1..n).map(|i| r.u_pow(i as i64).expect("u in k[u]/(u^p)")).collect();
    let mut lambdas = vec![r.zero()];
    for u in &us {
        lambdas = lambdas
            .iter()
            .flat_map(|l| (0..p as i64).map(move |c| l.add(&u.mul(&u.from_int_like(c)))))
            .collect();
    }
    let basis = unit_vectors(&r, n);
    let mut failures = 0;
    for lam in &lambdas {
        let mut c = vec![r.zero(); n];
        c[0] = lam.clone();
        c[1] = r.one();
        let g = GroupElement::new(c, &omega)?;
        let alg = g.algebra().clone();
        let mut shift = vec![r.zero(); n];
        shift[0] = lam.neg();
        shift[1] = r.one();
        let shift = alg.from_univariate(&shift);
        for f in &basis {
            let expected = alg.from_univariate(f).substitute(&shift)?.to_vector();
            if g.adjoint(f)? != expected {
                failures += 1;
            }
        }
    }
    Ok((verdict(failures == 0), json!({"lambdas": lambdas.len(), "failures": failures})))
}
