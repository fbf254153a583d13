use serde_json::json;
use witt_core::surfsing::{
    ekedahl_h0, example1_invariants, example1_singular_locus, example1_singularity_types, noether_checks, phi_bound,
    psi_bound, raynaud_invariants, embedding_power, ChernPair, Rational,
};
use witt_core::{FieldDescriptor, Ring};

use super::{attempt, verdict, Params, SuiteError};
use crate::report::{Check, Status};

const SWEEP_P: [u64; 3] = [2, 5, 7];
const SWEEP_D: std::ops::RangeInclusive<u64> = 4..=8;
pub const A_TYPE_PRECISION: u32 = 12;

pub(super) fn run(params: &Params) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    out.push(attempt(params, "surfaces.example1.p5d4", "n, c1^2, c2, chi at (p, d) = (5, 4)", || {
        let e = example1_invariants(5, 4)?;
        let ok = (e.n, e.c1sq, e.c2, e.chi) == (15, 845, 1375, 185);
        Ok((verdict(ok), serde_json::to_value(&e)?))
    }));
    out.push(attempt(params, "surfaces.example1.chi-sweep", "(c1^2 + c2)/12 equals the summation formula", || {
        let mut rows = Vec::new();
        for p in SWEEP_P {
            for d in SWEEP_D {
                let e = example1_invariants(p, d)?;
                rows.push(json!([p, d, e.chi, e.chi_alt]));
            }
        }
        Ok((Status::Pass, json!(rows)))
    }));
    out.push(attempt(params, "surfaces.bounds.constants", "Psi(2) = 255 and Phi(845, 1375) = 27615024", || {
        let psi = psi_bound(2)?;
        let phi = phi_bound(ChernPair { c1sq: 845, c2: 1375 })?;
        let ok = psi == Rational::from(255) && phi == Rational::from(27_615_024);
        Ok((verdict(ok), json!({"psi2": psi.to_string(), "phi": phi.to_string()})))
    }));
    out.push(attempt(params, "surfaces.bounds.sweep", "dim h = n + 1 <= Phi and Phi = h0(omega^m)^2 - 1", || {
        let mut rows = Vec::new();
        let mut ok = true;
        for p in SWEEP_P {
            for d in SWEEP_D {
                let e = example1_invariants(p, d)?;
                let phi = phi_bound(e.chern())?;
                let h0 = ekedahl_h0(embedding_power(e.c1sq), Rational::from(e.chi as i128), e.c1sq);
                let dim_h = Rational::from(e.n as i128 + 1);
                ok &= dim_h <= phi && phi == h0 * h0 - 1;
                ok &= noether_checks(e.chern(), None).c2_bound;
                rows.push(json!([p, d, e.n + 1, phi.to_string()]));
            }
        }
        Ok((verdict(ok), json!(rows)))
    }));
    for (p, d) in [(5u64, 4u64), (2, 4), (7, 4)] {
        out.push(attempt(params, &format!("surfaces.double-partials.p{p}d{d}"), "double-partials value is -27 mod p", || {
            let locus = example1_singular_locus(p, d, 1)?;
            let expected = FieldDescriptor::prime(p)?.from_int(-27).to_string();
            Ok((verdict(locus.double_partials == expected && locus.double_partials_nonzero), json!({"value": locus.double_partials})))
        }));
    }
    for k in 1..=3usize {
        out.push(attempt(params, &format!("surfaces.locus.p5d4.k{k}"), "interior singular points over F_5^k are {(1, 1)}", || {
            let locus = example1_singular_locus(5, 4, k)?;
            let ok = locus.interior.len() == 1 && locus.interior[0].x.is_one() && locus.interior[0].y.is_one();
            Ok((verdict(ok), serde_json::to_value(&locus)?))
        }));
    }
    out.push(attempt(params, "surfaces.a-type.p5d4", "the interior singular point is A4", || {
        let types = example1_singularity_types(5, 4, 1, A_TYPE_PRECISION)?;
        let ok = types.len() == 1 && types[0].n == 5 && types[0].label == "A4" && types[0].verified;
        Ok((verdict(ok), serde_json::to_value(&types)?))
    }));
    out.push(attempt(params, "surfaces.raynaud.routes", "lattice and closed-form D^2, G^2, G'^2 agree", || {
        let mut ok = true;
        for p in [3i64, 5, 7] {
            for n in 2..=4 {
                for d in 1..=5 {
                    ok &= raynaud_invariants(p, n, d)?.routes_agree;
                }
            }
        }
        Ok((verdict(ok), json!({"triples": 45})))
    }));
    out.push(attempt(params, "surfaces.raynaud.chi-integrality", "(c1^2 + c2) = 0 mod 12 for the Raynaud formulas", || {
        let mut bad = Vec::new();
        for p in [3i64, 5, 7] {
            for n in 2..=4 {
                for d in 1..=5 {
                    let r = raynaud_invariants(p, n, d)?;
                    if !r.chi_integral {
                        bad.push(json!([p, n, d, r.c1sq, r.c2]));
                    }
                }
            }
        }
        let status = if bad.is_empty() { Status::Pass } else { Status::Flagged };
        Ok((status, json!({"non_integral": bad.len(), "examples": bad.iter().take(5).collect::<Vec<_>>()})))
    }));
    Ok(out)
}
