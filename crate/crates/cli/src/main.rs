use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use witt_cli::suites::classification_table;
use witt_cli::{run_suite, OmegaArg, Params, SuiteError};
use witt_core::autgroup::{non_normality_witness, rational_points_test};
use witt_core::fields::parse::parse_element;
use witt_core::jacobson::{jacobson_report, DerivationSet, InsepExtension};
use witt_core::surfsing::{
    a_type_recognition, example1_invariants, example1_singular_locus, example1_singularity_types, hessian_criterion,
    noether_checks, phi_bound, PowerSeries3,
};
use witt_core::truncalg::{c_polynomial_symbolic, c_polynomial_text};
use witt_core::witt::build_witt;
use witt_core::FieldDescriptor;

type Failure = Box<dyn std::error::Error>;

#[derive(Parser)]
#[command(name = "witt", version, about = "Restricted Lie algebras, Witt algebras and their verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Print the symbolic C polynomial.
    Cmap {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fingerprint table of the transitive subalgebras of W(1).
    ClassifySubalgebras {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fixed field, rank and inertia of a set of derivations.
    Jacobson {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = Base::Ratfunc)]
        base: Base,
        /// Constants mu_i, separated by ';'.
        #[arg(long)]
        mu: String,
        /// Derivations such as "d1; T1*d1".
        #[arg(long)]
        derivations: String,
    },
    /// Surface invariants and singularity recognition.
    #[command(subcommand)]
    Surfaces(SurfacesCommand),
    /// Points of the automorphism group scheme.
    Autgroup {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "theta")]
        omega_str: String,
        #[arg(long, value_enum)]
        check: AutCheck,
    },
    /// Canonical serializations.
    Emit {
        #[arg(value_enum)]
        kind: EmitKind,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        omega: i64,
        /// Suite whose report is emitted.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, conflicts_with = "omega_str", allow_negative_numbers = true)]
    omega: Option<i64>,
    #[arg(long)]
    omega_str: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    json: bool,
    /// Record wall-clock time per check.
    #[arg(long)]
    timings: bool,
}

#[derive(Subcommand)]
enum SurfacesCommand {
    Example1 {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
        /// Degree of the field extension searched for singular points.
        #[arg(long, default_value_t = 1)]
        sing_ext: usize,
        #[arg(long, default_value_t = 12)]
        precision: u32,
    },
    Adetect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 12)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Base {
    Ratfunc,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutCheck {
    RationalPoints,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitKind {
    CPolynomial,
    StructureConstants,
    Report,
}

fn seed(explicit: Option<u64>) -> Result<u64, SuiteError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("WITT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| SuiteError::BadParams(format!("WITT_SEED={v:?} is not an integer"))),
        Err(_) => Ok(0),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(v)?;
    match writeln!(std::io::stdout().lock(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn verify(a: VerifyArgs) -> Result<ExitCode, Failure> {
    let omega = match (a.omega, a.omega_str) {
        (Some(w), _) => Some(OmegaArg::Int(w)),
        (None, Some(s)) => Some(OmegaArg::Expr(s)),
        (None, None) => None,
    };
    let params = Params { p: a.p, omega, seed: seed(a.seed)?, timings: a.timings };
    let report = run_suite(&a.suite, &params)?;
    if a.json {
        print_json(&report)?;
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.failed() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn cmap(p: u64, as_json: bool) -> Result<(), Failure> {
    let text = c_polynomial_text(p)?;
    if as_json {
        let c = c_polynomial_symbolic(p)?;
        let terms: Vec<Value> = c.terms().iter().map(|(e, k)| json!({"exp": e, "coeff": k})).collect();
        print_json(&json!({"p": p, "vars": c.vars().as_slice(), "text": text, "terms": terms}))
    } else {
        println!("{text}");
        Ok(())
    }
}

fn classify(p: u64, as_json: bool) -> Result<ExitCode, Failure> {
    if !matches!(p, 2 | 3) {
        return Err(SuiteError::BadParams(format!("classification supports p in {{2, 3}}, got {p}")).into());
    }
    let rows = classification_table(p)?;
    if as_json {
        print_json(&rows)?;
    } else {
        for r in &rows {
            let f = &r.fingerprint;
            println!(
                "dim {} center {} derived {} toral {} counts ({}, {}, {})  {:<10} basis {:?}",
                f.dim,
                f.center_dim,
                f.derived_dim,
                f.toral_rank,
                f.additive,
                f.multiplicative,
                f.non_closed,
                r.matches.join("|"),
                r.basis
            );
        }
    }
    let ok = rows.iter().all(|r| r.matches.len() == 1);
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn jacobson(p: u64, mu: &str, derivations: &str) -> Result<(), Failure> {
    let texts: Vec<&str> = mu.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let base = match texts.len() {
        1 => FieldDescriptor::rational(p)?,
        n => FieldDescriptor::rational_multi(p, n)?,
    };
    let mus = texts.iter().map(|s| parse_element(&base, s)).collect::<Result<Vec<_>, _>>()?;
    let ext = InsepExtension::new(&base, mus)?;
    let h = DerivationSet::parse(&ext, derivations)?;
    print_json(&jacobson_report(&h, derivations)?)
}

fn surfaces(cmd: SurfacesCommand) -> Result<(), Failure> {
    match cmd {
        SurfacesCommand::Example1 { p, d, sing_ext, precision } => {
            let inv = example1_invariants(p, d)?;
            let locus = example1_singular_locus(p, d, sing_ext)?;
            let types = example1_singularity_types(p, d, sing_ext, precision)?;
            print_json(&json!({
                "invariants": inv,
                "phi": phi_bound(inv.chern())?.to_string(),
                "noether": noether_checks(inv.chern(), None),
                "locus": locus,
                "singularities": types,
            }))
        }
        SurfacesCommand::Adetect { input, precision } => {
            let text = std::fs::read_to_string(&input)?;
            let f = PowerSeries3::from_json(&serde_json::from_str(&text)?)?.with_precision(precision);
            let hess = hessian_criterion(&f)?;
            let a = a_type_recognition(&f)?;
            print_json(&json!({
                "hessian_pair": hess.form.as_ref().map(|h| h.pair),
                "n": a.n,
                "label": a.label(),
                "precision": a.precision,
                "field": a.field.name(),
                "verified": a.verified,
            }))
        }
    }
}

fn autgroup(p: u64, omega: &str, check: AutCheck) -> Result<ExitCode, Failure> {
    match check {
        AutCheck::RationalPoints => {
            let base = FieldDescriptor::rational(p)?;
            let rep = rational_points_test(&parse_element(&base, omega)?)?;
            print_json(&rep)?;
            Ok(ExitCode::SUCCESS)
        }
        AutCheck::Witness => {
            let rep = non_normality_witness(p)?;
            println!("{}", rep.conjugate);
            Ok(if rep.matches_expected { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn emit(kind: EmitKind, p: u64, omega: i64, suite: &str, s: Option<u64>, as_json: bool) -> Result<ExitCode, Failure> {
    match kind {
        EmitKind::CPolynomial => cmap(p, as_json)?,
        EmitKind::StructureConstants => {
            let w = build_witt(&FieldDescriptor::prime(p)?.from_int(omega))?;
            print_json(&w.algebra().to_json())?;
        }
        EmitKind::Report => {
            let report = run_suite(suite, &Params { seed: seed(s)?, ..Params::default() })?;
            print_json(&report)?;
            if report.failed() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Verify(a) => verify(a),
        Command::Cmap { p, json } => cmap(p, json).map(|_| ExitCode::SUCCESS),
        Command::ClassifySubalgebras { p, json } => classify(p, json),
        Command::Jacobson { p, base: Base::Ratfunc, mu, derivations } => {
            jacobson(p, &mu, &derivations).map(|_| ExitCode::SUCCESS)
        }
        Command::Surfaces(cmd) => surfaces(cmd).map(|_| ExitCode::SUCCESS),
        Command::Autgroup { p, omega_str, check } => autgroup(p, &omega_str, check),
        Command::Emit { kind, p, omega, suite, seed, json } => emit(kind, p, omega, &suite, seed, json),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.downcast_ref::<SuiteError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
