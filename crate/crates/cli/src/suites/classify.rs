use serde::Serialize;
use serde_json::json;
use witt_core::reslie::Fingerprint;
use witt_core::witt::{build_witt, classify_transitive_subalgebras};

use super::{attempt, field, primes, verdict, Params, SuiteError};
use crate::report::Check;

/// Fingerprints are taken over `F_{p^2}`.
pub const EXT_DEGREE: usize = 2;

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    pub basis: Vec<Vec<String>>,
    pub fingerprint: Fingerprint,
    pub matches: Vec<&'static str>,
}

/// Transitive proper non-zero restricted subalgebras of `W(1)` at `w = 0`.
pub fn classification_table(p: u64) -> Result<Vec<ClassRow>, Box<dyn std::error::Error>> {
    let w = build_witt(&field(p)?.zero())?;
    Ok(classify_transitive_subalgebras(&w, EXT_DEGREE)?
        .into_iter()
        .map(|c| ClassRow {
            basis: c.subspace.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
            fingerprint: c.fingerprint,
            matches: c.matches,
        })
        .collect())
}

pub(super) fn run(params: &Params) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    for p in primes(params, &[2, 3], &[3])? {
        out.push(attempt(
            params,
            &format!("classify.witt-w0.p{p}"),
            "each transitive subalgebra has the fingerprint of exactly one of k, gl1, k x| gl1, sl2",
            || {
                let rows = classification_table(p)?;
                let ok = !rows.is_empty() && rows.iter().all(|r| r.matches.len() == 1);
                Ok((verdict(ok), json!({"subalgebras": rows})))
            },
        ));
    }
    Ok(out)
}
