//! Verification suites, one per library area.

mod algebra;
mod autgroup;
mod classify;
mod jacobson;
mod surfaces;
mod witt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use std::time::Instant;

use serde_json::Value;

use crate::report::{Check, Status, SuiteReport};

pub use classify::{classification_table, ClassRow};

/// Suite names in report order.
pub const SUITES: [&str; 6] = ["autgroup", "axioms", "classify", "jacobson", "surfaces", "witt"];

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}; expected one of {SUITES:?} or \"all\"")]
    UnknownSuite(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaArg {
    Int(i64),
    Expr(String),
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub p: Option<u64>,
    pub omega: Option<OmegaArg>,
    pub seed: u64,
    /// Stamp each check with its wall-clock time (breaks byte-determinism).
    pub timings: bool,
}

pub type Rng = ChaCha8Rng;

type Outcome = Result<(Status, Value), Box<dyn std::error::Error>>;

pub fn run_suite(name: &str, params: &Params) -> Result<SuiteReport, SuiteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let names: Vec<&str> = if name == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&name) {
        vec![name]
    } else {
        return Err(SuiteError::UnknownSuite(name.into()));
    };
    let mut checks = Vec::new();
    for n in names {
        checks.extend(run_one(n, params, &mut rng)?);
    }
    Ok(SuiteReport { suite: name.into(), seed: params.seed, checks })
}

fn run_one(name: &str, params: &Params, rng: &mut Rng) -> Result<Vec<Check>, SuiteError> {
    Ok(match name {
        "autgroup" => autgroup::run(params, rng)?,
        "axioms" => algebra::run(params, rng)?,
        "classify" => classify::run(params)?,
        "jacobson" => jacobson::run(params)?,
        "surfaces" => surfaces::run(params)?,
        "witt" => witt::run(params)?,
        other => return Err(SuiteError::UnknownSuite(other.into())),
    })
}

/// The primes a suite covers: the requested one if allowed, else the defaults.
fn primes(params: &Params, allowed: &[u64], defaults: &[u64]) -> Result<Vec<u64>, SuiteError> {
    match params.p {
        Some(p) if allowed.contains(&p) => Ok(vec![p]),
        Some(p) => Err(SuiteError::BadParams(format!("p = {p} not in {allowed:?} for this suite"))),
        None => Ok(defaults.to_vec()),
    }
}

/// Runs a check body, turning errors into failing checks.
fn attempt(
    params: &Params,
    id: &str,
    description: &str,
    body: impl FnOnce() -> Outcome,
) -> Check {
    let start = Instant::now();
    let mut c = match body() {
        Ok((status, witness)) => Check::new(id, description, status, witness),
        Err(e) => Check::error(id, description, e),
    };
    if params.timings {
        c.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    c
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn wants(params: &Params, p: u64) -> bool {
    params.p.is_none_or(|q| q == p)
}

fn field(p: u64) -> Result<std::sync::Arc<witt_core::FieldDescriptor>, SuiteError> {
    witt_core::FieldDescriptor::prime(p).map_err(|e| SuiteError::BadParams(e.to_string()))
}
