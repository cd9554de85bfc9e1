mod demo;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cob3::algebra::{derive_comul, verify_cf, AlgebraJson};
use cob3::eval::{closed_invariant, closed_invariant_by_characters};
use cob3::rational::{format_q, JsonQ};
use cob3::{
    cospan_of_term, eval_term, find_path, manifold_signature, normalize_g1, normalize_g2, parse,
    print, AlgebraError, EvalError, IdempotentDecomposition, LAlgebra, ManifoldSpec, RuleSetName,
    SearchOutcome, Term,
};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Parser)]
#[command(name = "cob3", version, about = "Bordisms of 2-spheres: equality, normal forms, rewriting, evaluation")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Read term arguments as term text instead of file paths.
    #[arg(short = 'e', long, global = true)]
    expr: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PresentationArg {
    #[value(name = "G1")]
    G1,
    #[value(name = "G2")]
    G2,
}

#[derive(Clone, Copy, ValueEnum)]
enum RulesArg {
    #[value(name = "CF")]
    Cf,
    #[value(name = "CF_LEGS")]
    CfLegs,
    #[value(name = "G2_FULL")]
    G2Full,
}

impl From<RulesArg> for RuleSetName {
    fn from(r: RulesArg) -> Self {
        match r {
            RulesArg::Cf => RuleSetName::Cf,
            RulesArg::CfLegs => RuleSetName::CfLegs,
            RulesArg::G2Full => RuleSetName::G2Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether two terms denote the same bordism.
    Eq { a: String, b: String },
    /// Print the canonical term of a bordism.
    Normalize {
        term: String,
        #[arg(long, value_enum, default_value_t = PresentationArg::G1)]
        presentation: PresentationArg,
    },
    /// Evaluate a term under an algebra file.
    Eval {
        term: String,
        #[arg(long)]
        algebra: String,
    },
    /// Invariant of a closed connected manifold such as `P#Q#(S2xS1)^2`.
    Invariant {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        manifold: String,
        /// JSON list of orthogonal idempotents; also evaluates the character formula.
        #[arg(long)]
        idempotents: Option<String>,
    },
    /// Check the commutative Frobenius axioms of an algebra file.
    VerifyAlgebra { algebra: String },
    /// Search for a rewrite path between two terms.
    RewritePath {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value_t = RulesArg::CfLegs)]
        rules: RulesArg,
        #[arg(long, default_value_t = 16)]
        max_steps: usize,
    },
    /// Run a built-in demonstration.
    Demo { name: demo::DemoName },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Semantic(_) => 3,
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Json(_) | AlgebraError::Shape(_) => CliError::Input(e.to_string()),
            _ => CliError::Semantic(e.to_string()),
        }
    }
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Type(t) => CliError::Input(t.to_string()),
            EvalError::Algebra(a) => a.into(),
            other => CliError::Semantic(other.to_string()),
        }
    }
}

/// What a command prints, in both formats, and its exit status.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, status: 0 }
    }
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(Path::new(path)).map_err(|e| CliError::Input(format!("{path}: {e}")))
}

fn load_term(arg: &str, inline: bool) -> Result<Term, CliError> {
    let (src, origin) = if inline {
        (arg.to_string(), "<expr>")
    } else {
        (read(arg)?, arg)
    };
    let t = parse(&src).map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
    t.typecheck().map_err(|e| CliError::Input(format!("{origin}: {e}")))?;
    Ok(t)
}

fn load_algebra(path: &str) -> Result<LAlgebra, CliError> {
    LAlgebra::from_json(&read(path)?).map_err(|e| match e {
        AlgebraError::Json(m) => CliError::Input(format!("{path}: {m}")),
        other => other.into(),
    })
}

fn signature_json(t: &Term) -> Value {
    let c = cospan_of_term(t).expect("typechecked");
    json!({"signature": manifold_signature(&c), "cospan": c.to_json()})
}

fn cmd_eq(a: &Term, b: &Term) -> Report {
    let (ca, cb) = (cospan_of_term(a).expect("typechecked"), cospan_of_term(b).expect("typechecked"));
    let equal = ca == cb;
    let verdict = if equal { "EQUAL" } else { "NOT-EQUAL" };
    Report {
        text: format!("A: {ca}\nB: {cb}\n{verdict}"),
        json: json!({"equal": equal, "a": signature_json(a), "b": signature_json(b)}),
        status: if equal { 0 } else { 1 },
    }
}

fn cmd_normalize(t: &Term, p: PresentationArg) -> Report {
    let n = match p {
        PresentationArg::G1 => normalize_g1(t),
        PresentationArg::G2 => normalize_g2(t),
    }
    .expect("typechecked");
    Report::ok(print(&n), json!({"term": print(&n)}))
}

fn cmd_eval(t: &Term, alg: &LAlgebra) -> Result<Report, CliError> {
    let m = eval_term(t, alg)?;
    Ok(Report::ok(m.to_text(), m.to_json()))
}

fn load_idempotents(path: &str, alg: &LAlgebra) -> Result<IdempotentDecomposition, CliError> {
    let raw: Vec<Vec<JsonQ>> =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let vecs = raw.into_iter().map(|v| v.into_iter().map(|x| x.0).collect()).collect();
    Ok(IdempotentDecomposition::new(alg.algebra(), vecs)?)
}

fn cmd_invariant(alg: &LAlgebra, manifold: &str, idempotents: Option<&str>) -> Result<Report, CliError> {
    let m: ManifoldSpec = manifold.parse().map_err(|e: cob3::eval::ManifoldSyntaxError| CliError::Input(e.to_string()))?;
    let z = closed_invariant(&m, alg)?;
    let mut text = format!("Z({m}) = {}", format_q(&z));
    let mut out = json!({"manifold": m.to_string(), "value": format_q(&z)});
    if let Some(path) = idempotents {
        let dec = load_idempotents(path, alg)?;
        let by_chars = closed_invariant_by_characters(&m, alg, &dec)?;
        if by_chars != z {
            return Err(CliError::Semantic(format!(
                "character formula gives {} but direct evaluation gives {}",
                format_q(&by_chars),
                format_q(&z)
            )));
        }
        text.push_str(&format!("\ncharacter formula: {} (agrees)", format_q(&by_chars)));
        out["character_formula"] = json!(format_q(&by_chars));
    }
    Ok(Report::ok(text, out))
}

fn cmd_verify_algebra(path: &str) -> Result<Report, CliError> {
    let raw: AlgebraJson =
        serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
    let (spec, primes) = raw.into_parts()?;
    spec.check_shapes()?;
    let spec = match spec.comul {
        Some(_) => spec,
        None => derive_comul(&spec)?,
    };
    let report = verify_cf(&spec)?;
    let passed = report.all_passed();
    if passed {
        LAlgebra::new(spec.clone(), primes.clone())?;
    }
    let labels: Vec<String> = primes.keys().map(|p| p.to_string()).collect();
    let verdict = if passed {
        format!("commutative Frobenius algebra of dimension {}", spec.dim)
    } else {
        "not a commutative Frobenius algebra".to_string()
    };
    let mut text = format!("{report}{verdict}");
    if passed && !labels.is_empty() {
        text.push_str(&format!("\nprime units: {}", labels.join(", ")));
    }
    Ok(Report {
        text,
        json: json!({"passed": passed, "dim": spec.dim, "report": report, "primes": labels}),
        status: if passed { 0 } else { 3 },
    })
}

fn cmd_rewrite_path(a: &Term, b: &Term, rules: RuleSetName, max_steps: usize) -> Result<Report, CliError> {
    let set = cob3::rewrite::rule_set(rules);
    let out = find_path(a, b, &set, max_steps).map_err(|e| CliError::Input(e.to_string()))?;
    Ok(match out {
        SearchOutcome::Found(trace) => {
            let text = format!("path of {} steps under {rules}\n{trace}", trace.len());
            Report::ok(text.trim_end().to_string(), json!({"found": true, "rules": rules.to_string(), "trace": trace.to_json()}))
        }
        SearchOutcome::NotFound { explored, reason } => Report {
            text: format!("no path under {rules}: {reason} after {explored} states"),
            json: json!({"found": false, "rules": rules.to_string(), "explored": explored, "reason": reason.to_string()}),
            status: 1,
        },
    })
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let term = |s: &str| load_term(s, cli.expr);
    match &cli.command {
        Command::Eq { a, b } => Ok(cmd_eq(&term(a)?, &term(b)?)),
        Command::Normalize { term: t, presentation } => Ok(cmd_normalize(&term(t)?, *presentation)),
        Command::Eval { term: t, algebra } => {
            let t = term(t)?;
            cmd_eval(&t, &load_algebra(algebra)?)
        }
        Command::Invariant {
            algebra,
            manifold,
            idempotents,
        } => cmd_invariant(&load_algebra(algebra)?, manifold, idempotents.as_deref()),
        Command::VerifyAlgebra { algebra } => cmd_verify_algebra(algebra),
        Command::RewritePath { a, b, rules, max_steps } => {
            cmd_rewrite_path(&term(a)?, &term(b)?, (*rules).into(), *max_steps)
        }
        Command::Demo { name } => Ok(demo::run(*name)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("json")),
            }
            ExitCode::from(report.status)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({"error": e.to_string(), "exit": e.code()})),
            }
            ExitCode::from(e.code())
        }
    }
}
