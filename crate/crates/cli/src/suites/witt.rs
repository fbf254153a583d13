use serde_json::json;
use witt_core::fields::parse::parse_element;
use witt_core::truncalg::{c_polynomial_symbolic, c_polynomial_text};
use witt_core::witt::{build_witt, is_simple, p_closed_sweep, small_prime_isomorphism};
use witt_core::FieldElement;

use super::{attempt, field, primes, verdict, OmegaArg, Outcome, Params, SuiteError};
use crate::reference::{c_differences, displayed_c_p5, GOLDEN_C_P5};
use crate::report::{Check, Status};

pub(super) fn run(params: &Params) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    for p in primes(params, &[2, 3, 5, 7], &[3, 5])? {
        let f = field(p)?;
        let omegas: Vec<FieldElement> = match &params.omega {
            Some(OmegaArg::Int(w)) => vec![f.from_int(*w)],
            Some(OmegaArg::Expr(s)) => {
                vec![parse_element(&f, s).map_err(|e| SuiteError::BadParams(e.to_string()))?]
            }
            None => (0..3.min(p as i64)).map(|w| f.from_int(w)).collect(),
        };
        for w in omegas {
            out.push(attempt(
                params,
                &format!("witt.three-way.F{p}.w{w}"),
                "C-formula, s_r fold and operator power agree on every vector",
                || three_way(&w),
            ));
        }
    }
    if params.p.is_none() {
        out.push(attempt(params, "witt.p-closed-sweep.F3", "additive vectors are exactly the nilpotent operators", || {
            let f = field(3)?;
            let counts: Vec<_> = (0..3)
                .map(|w| p_closed_sweep(&build_witt(&f.from_int(w))?))
                .collect::<Result<_, _>>()?;
            Ok((Status::Pass, serde_json::to_value(counts)?))
        }));
    }
    for (p, expected) in [(2u64, "l1"), (3, "l1^2 - l0*l2")] {
        if params.p.is_none_or(|q| q == p) {
            out.push(attempt(params, &format!("witt.c-polynomial.p{p}"), "symbolic C in closed form", || {
                let text = c_polynomial_text(p)?;
                Ok((verdict(text == expected), json!({"computed": text, "expected": expected})))
            }));
        }
    }
    if params.p.is_none_or(|q| q == 5) {
        out.push(attempt(params, "witt.c-polynomial.golden-p5", "symbolic C at p = 5 against the golden file", || {
            let text = c_polynomial_text(5)? + "\n";
            Ok((verdict(text == GOLDEN_C_P5), json!({"computed": text.trim_end()})))
        }));
        out.push(attempt(params, "witt.c-polynomial.displayed-p5", "symbolic C at p = 5 against the published display", || {
            let c = c_polynomial_symbolic(5)?;
            let diffs = c_differences(&c, &displayed_c_p5());
            let witness = json!({
                "terms": c.len(),
                "differences": diffs
                    .iter()
                    .map(|(m, a, b)| json!({"monomial": m, "computed": a, "displayed": b}))
                    .collect::<Vec<_>>(),
            });
            Ok((if diffs.is_empty() { Status::Pass } else { Status::Flagged }, witness))
        }));
    }
    for p in primes(params, &[2, 3, 5, 7], &[2, 3, 5, 7])? {
        out.push(attempt(params, &format!("witt.simplicity.p{p}"), "simple for p >= 3, a 1-dimensional ideal at p = 2", || {
            simplicity(p)
        }));
    }
    for p in [2u64, 3].into_iter().filter(|&p| params.p.is_none_or(|q| q == p)) {
        for w in 0..p as i64 {
            out.push(attempt(
                params,
                &format!("witt.small-prime-isomorphism.p{p}.w{w}"),
                "explicit restricted isomorphism over F_p and F_p^2",
                || {
                    let r = small_prime_isomorphism(&build_witt(&field(p)?.from_int(w))?)?;
                    Ok((Status::Pass, json!({"target": r.target.labels(), "fields": r.fields_checked})))
                },
            ));
        }
    }
    Ok(out)
}

fn three_way(w: &FieldElement) -> Outcome {
    let alg = build_witt(w)?;
    let mut checked = 0u64;
    for v in alg.algebra().all_vectors()? {
        alg.p_map_three_way(&v)?;
        checked += 1;
    }
    Ok((Status::Pass, json!({"vectors": checked, "mismatches": 0})))
}

fn simplicity(p: u64) -> Outcome {
    let w = build_witt(&field(p)?.zero())?;
    let r = is_simple(&w)?;
    let ideal_dim = r.ideal.as_ref().map(|s| s.dim());
    let ok = if p == 2 { !r.simple && ideal_dim == Some(1) } else { r.simple };
    Ok((verdict(ok), json!({"simple": r.simple, "ideal_dim": ideal_dim, "field": r.field})))
}
