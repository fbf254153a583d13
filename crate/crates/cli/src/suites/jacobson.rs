use serde_json::json;
use witt_core::jacobson::{battery, no_subspace_kernel};
use witt_core::FieldDescriptor;

use super::{attempt, verdict, wants, Params, SuiteError};
use crate::report::Check;

pub(super) fn run(params: &Params) -> Result<Vec<Check>, SuiteError> {
    let mut out = Vec::new();
    let cases = battery().map_err(|e| SuiteError::BadParams(e.to_string()));
    match cases {
        Ok(cases) => {
            for (i, c) in cases.into_iter().enumerate().filter(|(_, c)| wants(params, c.p)) {
                out.push(attempt(
                    params,
                    &format!("jacobson.battery.{:02}", i + 1),
                    "[F : F^h] = p^rank and inertia codimension = rank",
                    || {
                        let ok = c.report.is_field && c.report.degree_check == Some(true);
                        Ok((verdict(ok), serde_json::to_value(&c)?))
                    },
                ));
            }
        }
        Err(e) => out.push(Check::error("jacobson.battery", "structured examples", e)),
    }
    for p in [2u64, 3, 5].into_iter().filter(|&p| wants(params, p)) {
        out.push(attempt(
            params,
            &format!("jacobson.no-subspace.p{p}"),
            "translation-invariant subspaces over F_p(theta) with w = theta",
            || {
                let base = FieldDescriptor::rational(p)?;
                let theta = base.variable("theta").ok_or("no variable theta")?;
                let dim = no_subspace_kernel(&theta)?;
                Ok((verdict(dim == 0), json!({"kernel_dim": dim})))
            },
        ));
    }
    Ok(out)
}
