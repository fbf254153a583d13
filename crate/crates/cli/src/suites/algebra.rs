use serde_json::{json, Value};
use witt_core::reslie::{standard_algebra, verify_axioms, ResLieAlgebra, StandardAlgebra, Subspace};
use witt_core::{FieldDescriptor, FieldElement, Matrix, Ring};

use super::{attempt, field, primes, verdict, wants, Outcome, Params, Rng, SuiteError};
use crate::report::{Check, Status};

const ORACLE_PAIRS: usize = 500;

pub(super) fn run(params: &Params, rng: &mut Rng) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    for p in primes(params, &[2, 3, 5, 7], &[2, 3])? {
        let f = field(p)?;
        let algebras = [
            ("trivial2", StandardAlgebra::Trivial(2)),
            ("gl1", StandardAlgebra::Gl1),
            ("k1-gl1", StandardAlgebra::SemidirectKnGl1(1)),
            ("sl2", StandardAlgebra::Sl(2)),
            ("gl2", StandardAlgebra::Gl(2)),
            ("witt-w0", StandardAlgebra::Witt(f.zero())),
            ("witt-w1", StandardAlgebra::Witt(f.one())),
        ];
        for (name, a) in algebras {
            out.push(attempt(params, &format!("axioms.{name}.F{p}"), "bracket and p-map axioms", || {
                let g = standard_algebra(&a, &f)?;
                let r = verify_axioms(&g, 200, rng);
                Ok((verdict(r.passed), serde_json::to_value(&r)?))
            }));
        }
    }
    for p in primes(params, &[2, 3, 5, 7], &[2, 3, 5])? {
        let f = field(p)?;
        out.push(attempt(
            params,
            &format!("axioms.jacobson-oracle.gl2.F{p}"),
            "(x+y)^p = x^p + y^p + sum s_r(x,y) on random gl2 pairs",
            || jacobson_oracle(&f, rng),
        ));
    }
    if wants(params, 3) {
        let f = field(3)?;
        out.push(attempt(params, "axioms.s1-sign.p3", "s_1 at p = 3 against the displayed [y,[x,y]]", || {
            s1_sign(&f, rng)
        }));
    }
    for p in [3u64, 5, 7].into_iter().filter(|&p| wants(params, p)) {
        let f = field(p)?;
        out.push(attempt(params, &format!("axioms.sl2-p-power.F{p}"), "A^[p] = (a^2+bc)^((p-1)/2) A on sl2", || {
            sl2_power(&f, false)
        }));
        out.push(attempt(
            params,
            &format!("axioms.sl2-p-power-displayed.F{p}"),
            "A^[p] = d^((p-1)/2) A with d = -a^2-bc",
            || sl2_power(&f, true),
        ));
    }
    if wants(params, 2) {
        for k in [1usize, 2] {
            let f = FieldDescriptor::extension(2, k).map_err(|e| SuiteError::BadParams(e.to_string()))?;
            let name = f.name();
            out.push(attempt(params, &format!("axioms.sl2-nonsplit.{name}"), "no complement to the scalars is a subalgebra", || {
                sl2_nonsplit(&f)
            }));
            out.push(attempt(
                params,
                &format!("axioms.sl2-square-outside-scalars.{name}"),
                "A^[2] != 0 for every A outside the scalars",
                || sl2_squares(&f),
            ));
        }
    }
    Ok(out)
}

fn as_matrix(v: &[FieldElement], zero: &FieldElement) -> Matrix<FieldElement> {
    Matrix::from_vec(2, 2, v.to_vec(), zero)
}

fn show(g: &ResLieAlgebra, v: &[FieldElement]) -> String {
    let parts: Vec<String> =
        v.iter().zip(g.labels()).filter(|(c, _)| !c.is_zero()).map(|(c, l)| format!("{c}*{l}")).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn jacobson_oracle(f: &std::sync::Arc<FieldDescriptor>, rng: &mut Rng) -> Outcome {
    let p = f.p();
    let g = standard_algebra(&StandardAlgebra::Gl(2), f)?;
    let z = f.zero();
    let mut mismatches = 0;
    let mut first = Value::Null;
    for _ in 0..ORACLE_PAIRS {
        let (x, y) = (g.random_vector(rng), g.random_vector(rng));
        let (mx, my) = (as_matrix(&x, &z), as_matrix(&y, &z));
        let lhs = mx.add(&my).pow(p);
        let rhs = mx.pow(p).add(&my.pow(p)).add(&as_matrix(&g.s_sum(&x, &y), &z));
        if lhs != rhs {
            mismatches += 1;
            if first.is_null() {
                first = json!({"x": show(&g, &x), "y": show(&g, &y)});
            }
        }
    }
    Ok((verdict(mismatches == 0), json!({"pairs": ORACLE_PAIRS, "mismatches": mismatches, "first": first})))
}

fn s1_sign(f: &std::sync::Arc<FieldDescriptor>, rng: &mut Rng) -> Outcome {
    let g = standard_algebra(&StandardAlgebra::Gl(2), f)?;
    let (mut same, mut opposite, mut checked) = (0, 0, 0);
    for _ in 0..50 {
        let (x, y) = (g.random_vector(rng), g.random_vector(rng));
        let displayed = g.bracket_vec(&y, &g.bracket_vec(&x, &y));
        if displayed.iter().all(|c| c.is_zero()) {
            continue;
        }
        checked += 1;
        let s1 = g.s_r(&x, &y, 1)?;
        if s1 == displayed {
            same += 1;
        } else if s1.iter().zip(&displayed).all(|(a, b)| a.add(b).is_zero()) {
            opposite += 1;
        }
    }
    let witness = json!({
        "computed": if opposite == checked { "s_1(x,y) = -[y,[x,y]]" } else { "s_1(x,y) = [y,[x,y]]" },
        "displayed": "s_1(x,y) = [y,[x,y]]",
        "pairs": checked,
        "agree": same,
        "opposite": opposite,
    });
    let status = if same == checked {
        Status::Pass
    } else if opposite == checked {
        Status::Flagged
    } else {
        Status::Fail
    };
    Ok((status, witness))
}

/// Every traceless `A = (a b; c -a)` over `F_p`, compared with the oracle power
/// `(a^2 + bc)^((p-1)/2) A` or the displayed `(-a^2 - bc)^((p-1)/2) A`.
fn sl2_power(f: &std::sync::Arc<FieldDescriptor>, displayed: bool) -> Outcome {
    let p = f.p();
    let g = standard_algebra(&StandardAlgebra::Sl(2), f)?;
    let z = f.zero();
    let e = (p - 1) / 2;
    let mut mismatches = 0u64;
    let mut first = Value::Null;
    let mut total = 0u64;
    for v in g.all_vectors()? {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        let m = Matrix::from_rows(vec![vec![a.clone(), b.clone()], vec![c.clone(), a.neg()]], &z);
        let power = m.pow(p);
        let det = a.mul(a).add(&b.mul(c));
        let scalar = if displayed { det.neg().pow(e) } else { det.pow(e) };
        let mut ok = power == m.scale(&scalar);
        if !displayed {
            let pm = g.p_map(&v);
            ok &= Matrix::from_rows(vec![vec![pm[0].clone(), pm[1].clone()], vec![pm[2].clone(), pm[0].neg()]], &z)
                == power;
        }
        total += 1;
        if !ok {
            mismatches += 1;
            if first.is_null() {
                first = json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string()});
            }
        }
    }
    let witness = json!({
        "matrices": total,
        "mismatches": mismatches,
        "first": first,
        "computed": "(a^2+bc)^((p-1)/2) A",
        "displayed": "(-a^2-bc)^((p-1)/2) A",
    });
    let status = match (mismatches, displayed) {
        (0, _) => Status::Pass,
        (_, true) => Status::Flagged,
        (_, false) => Status::Fail,
    };
    Ok((status, witness))
}

fn sl2_nonsplit(f: &std::sync::Arc<FieldDescriptor>) -> Outcome {
    let g = standard_algebra(&StandardAlgebra::Sl(2), f)?;
    let elems = f.elements()?;
    let mut complements = 0;
    let mut subalgebras = 0;
    for al in &elems {
        for be in &elems {
            let u = vec![al.clone(), f.one(), f.zero()];
            let v = vec![be.clone(), f.zero(), f.one()];
            complements += 1;
            if g.is_subalgebra(&Subspace::span(f, 3, &[u, v])) {
                subalgebras += 1;
            }
        }
    }
    Ok((verdict(subalgebras == 0), json!({"complements": complements, "subalgebras": subalgebras})))
}

fn sl2_squares(f: &std::sync::Arc<FieldDescriptor>) -> Outcome {
    let g = standard_algebra(&StandardAlgebra::Sl(2), f)?;
    let scalars = Subspace::span(f, 3, &[g.basis_vector(0)]);
    let mut outside = 0;
    let mut zero_square = Vec::new();
    for v in g.all_vectors()? {
        if scalars.contains(&v) {
            continue;
        }
        outside += 1;
        if g.p_map(&v).iter().all(|c| c.is_zero()) {
            zero_square.push(show(&g, &v));
        }
    }
    let witness = json!({
        "outside_scalars": outside,
        "zero_square": zero_square.len(),
        "first": zero_square.first(),
    });
    Ok((if zero_square.is_empty() { Status::Pass } else { Status::Flagged }, witness))
}
