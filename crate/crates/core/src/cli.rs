//! Command-line front end. Every command renders to a `String`; `main` only
//! prints and maps errors to exit codes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::braid::BraidError;
use crate::cache::{Cache, CacheError};
use crate::expr::{parse, ExprError, KnotExpr};
use crate::invariants::{Engine, EngineError, InvariantRecord};
use crate::report::{bundle_node, crosscheck_node, family_node, record_node, thm1_node, Node};
use crate::selftest;
use crate::verdict::{self, Verdict, VerdictBundle, VerdictError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESES: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "knotcert", version, about = "Concordance invariants and crossing-change obstructions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an expression and print its normal form.
    Parse {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Compute sigma, tau, epsilon, Alexander polynomial and d1 bounds.
    Invariants {
        expr: String,
        #[arg(long)]
        json: bool,
        /// Read and update a record cache at this path.
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
    },
    /// Positon/negaton and one-signed deformation verdicts.
    Verdict {
        expr: String,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Admissible cable range (thm1) or an infinite-family prefix (thm2).
    Family {
        kind: FamilyKind,
        base: String,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long)]
        json: bool,
    },
    /// Compare symbolic invariants with the braid Seifert matrix. Without an
    /// expression, runs the built-in torus and cable corpus.
    Crosscheck {
        expr: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded property suites.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct TargetArgs {
    /// Compare against this knot.
    #[arg(long, value_name = "EXPR")]
    pub target: Option<String>,
    /// Compare against the slice class (the default).
    #[arg(long)]
    pub slice: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Thm1,
    Thm2,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Hypotheses(VerdictError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    /// The command ran but found a disagreement; the report is kept.
    #[error("{summary}")]
    Failed { report: String, summary: String },
}

impl From<VerdictError> for CliError {
    fn from(e: VerdictError) -> Self {
        match e {
            VerdictError::Engine(inner) => CliError::Engine(inner),
            other => CliError::Hypotheses(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Expr(_) | CliError::Cache(_) => EXIT_INPUT,
            CliError::Hypotheses(_) => EXIT_HYPOTHESES,
            CliError::Engine(EngineError::Braid(
                BraidError::TooLarge { .. } | BraidError::EvenCable(_) | BraidError::BadTorus { .. },
            )) => EXIT_INPUT,
            CliError::Engine(_) | CliError::Failed { .. } => EXIT_CONSISTENCY,
        }
    }
}

fn parse_valid(text: &str) -> Result<KnotExpr, CliError> {
    let e = parse(text)?;
    e.validate()?;
    Ok(e)
}

fn render(node: Node, json: bool) -> String {
    if json {
        node.to_json_string()
    } else {
        node.to_table()
    }
}

pub fn run(cli: Cli) -> Result<String, CliError> {
    let engine = Engine::global();
    match cli.command {
        Command::Parse { expr, json } => cmd_parse(&expr, json),
        Command::Invariants { expr, json, cache } => cmd_invariants(engine, &expr, json, cache),
        Command::Verdict { expr, target, json } => cmd_verdict(engine, &expr, target.target.as_deref(), json),
        Command::Family { kind, base, count, json } => cmd_family(engine, kind, &base, count, json),
        Command::Crosscheck { expr, json } => cmd_crosscheck(engine, expr.as_deref(), json),
        Command::Selftest { seed, cases } => cmd_selftest(seed, cases),
    }
}

pub fn cmd_parse(text: &str, json: bool) -> Result<String, CliError> {
    let e = parse_valid(text)?;
    let n = e.normalize();
    Ok(render(
        Node::map([
            ("expr", Node::str(e.to_string())),
            ("normal_form", Node::str(n.to_string())),
            ("depth", Node::int(e.depth() as i64)),
        ]),
        json,
    ))
}

pub fn cmd_invariants(
    engine: &Engine,
    text: &str,
    json: bool,
    cache_path: Option<PathBuf>,
) -> Result<String, CliError> {
    let e = parse_valid(text)?;
    let rec = match cache_path {
        None => engine.invariants(&e)?,
        Some(path) => {
            let mut cache = Cache::load(path)?;
            let key = e.canonical_key();
            match cache.get(&key)? {
                Some(rec) => {
                    rec.check()?;
                    rec
                }
                None => {
                    let rec = engine.invariants(&e)?;
                    cache.insert(&rec);
                    cache.save()?;
                    rec
                }
            }
        }
    };
    Ok(render(record_node(&rec), json))
}

fn verdict_line(label: &str, v: &Verdict) -> String {
    match (&v.witness, &v.note) {
        (Some(w), _) => format!("{label}: proved by {} ({w})\n", v.rule),
        (None, Some(note)) => format!("{label}: no information ({note})\n"),
        (None, None) => format!("{label}: no information\n"),
    }
}

fn bundle_summary(b: &VerdictBundle) -> String {
    let mut s = String::new();
    s += &verdict_line("not slice in positons", &b.positon);
    s += &verdict_line("not slice in negatons", &b.negaton);
    s += &format!("kinkiness: k+ >= {}, k- >= {}\n", b.kinkiness.k_plus_lb, b.kinkiness.k_minus_lb);
    s += &verdict_line("only positive changes", &b.only_positive);
    s += &verdict_line("only negative changes", &b.only_negative);
    s += &format!(
        "signed unknotting bounds: n+ >= {}, n- >= {}\n",
        b.gordian.n_pos_lb, b.gordian.n_neg_lb
    );
    s
}

pub fn cmd_verdict(engine: &Engine, text: &str, target: Option<&str>, json: bool) -> Result<String, CliError> {
    let e = parse_valid(text)?;
    let target = match target {
        Some(t) => engine.invariants(&parse_valid(t)?)?,
        None => InvariantRecord::slice_class(),
    };
    let bundle = verdict::verdict_bundle(engine, &e, &target)?;
    if json {
        Ok(bundle_node(&bundle).to_json_string())
    } else {
        Ok(format!("{}\n{}", bundle_summary(&bundle), bundle_node(&bundle).to_table()))
    }
}

pub fn cmd_family(engine: &Engine, kind: FamilyKind, text: &str, count: usize, json: bool) -> Result<String, CliError> {
    let e = parse_valid(text)?;
    let node = match kind {
        FamilyKind::Thm1 => thm1_node(&verdict::thm1_admissible_range(engine, &e)?),
        FamilyKind::Thm2 => {
            let fam = verdict::thm2_family(engine, &e, count)?;
            if !fam.pairwise_distinct {
                return Err(EngineError::Consistency("family members share an Alexander polynomial".into()).into());
            }
            family_node(&fam)
        }
    };
    Ok(render(node, json))
}

pub fn cmd_crosscheck(engine: &Engine, text: Option<&str>, json: bool) -> Result<String, CliError> {
    let exprs = match text {
        Some(t) => vec![parse_valid(t)?],
        None => selftest::crosscheck_corpus(),
    };
    let mut reports = Vec::new();
    let mut bad = 0;
    for e in &exprs {
        let rep = engine.crosscheck(e)?;
        bad += usize::from(!rep.agrees());
        reports.push(crosscheck_node(&rep));
    }
    let node = if reports.len() == 1 {
        reports.pop().unwrap()
    } else {
        Node::List(reports)
    };
    let out = render(node, json);
    if bad > 0 {
        return Err(CliError::Failed {
            report: out,
            summary: format!("crosscheck: {bad} of {} disagree", exprs.len()),
        });
    }
    Ok(out)
}

pub fn cmd_selftest(seed: u64, cases: usize) -> Result<String, CliError> {
    let results = selftest::run_all(seed, cases);
    let mut out = format!("selftest seed={seed} cases={cases}\n");
    for r in &results {
        out += &format!(
            "{:<4} {:<60} checks={} skipped={} failures={}\n",
            if r.passed() { "ok" } else { "FAIL" },
            r.name,
            r.cases,
            r.skipped,
            r.failures.len()
        );
        for f in r.failures.iter().take(5) {
            out += &format!("     - {f}\n");
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::Failed {
            report: out,
            summary: format!("selftest: {failed} suite(s) failed"),
        });
    }
    out += "all suites passed\n";
    Ok(out)
}
