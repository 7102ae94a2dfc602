//! `cross5`: 5-coloring, crossing numbers, certificate checks and corpora.
//!
//! Exit codes: 0 success, 1 error, 2 negative answer or rejected
//! certificate, 3 budget exhausted.

mod check;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use cross5_core::coloring::{check_coloring, exhaustive_coloring, five_color, ColorPolicy};
use cross5_core::corpus::{corpus_to_jsonl, gen_corpus, CorpusSpec};
use cross5_core::drawing::{crossed_edges_at, planarize, validate_drawing, Drawing};
use cross5_core::graph::{construct_named, Graph};
use cross5_core::immersion::{check_immersion, ImmersionFlags};
use cross5_core::solver::{
    crossing_number, crossing_number_at_most, decide_crossing_number, enumerate_good_drawings, Decision, Mode,
    SolverConfig, SolverError,
};
use cross5_core::{fixtures, ColorOutcome, Coloring, ImmersionCertificate};
use serde_json::{json, Value};

use input::GraphInput;

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NEGATIVE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cross5",
    version,
    about = "Crossing numbers and Kempe-chain 5-coloring of small graphs"
)]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Five-color a graph or report why the Kempe argument failed.
    Color(ColorArgs),
    /// Crossing number queries.
    Nu(NuArgs),
    /// Check a drawing, coloring or immersion certificate.
    Verify {
        #[command(subcommand)]
        kind: VerifyKind,
    },
    /// Generate a reproducible corpus of graphs with exact crossing numbers.
    Corpus(CorpusArgs),
    /// Run every claim in the reproduction manifest.
    CheckClaims(check::CheckArgs),
}

#[derive(Debug, Args)]
struct ColorArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Degree-5 vertices tried per step.
    #[arg(long, default_value_t = 8)]
    max_candidates: usize,
    /// Fall back to backtracking when the Kempe argument fails.
    #[arg(long)]
    fallback: bool,
    /// Only decide 5-colorability by backtracking.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("query").required(true).args(["exact", "le", "enumerate_good"]))]
struct NuArgs {
    #[command(flatten)]
    graph: GraphInput,
    /// Compute the crossing number.
    #[arg(long)]
    exact: bool,
    /// Decide whether some drawing has at most K crossings.
    #[arg(long, value_name = "K")]
    le: Option<usize>,
    /// List all good drawings with exactly K crossings.
    #[arg(long, value_name = "K")]
    enumerate_good: Option<usize>,
    /// Allow adjacent edges to cross and pairs to cross repeatedly (with --le).
    #[arg(long)]
    any_drawing: bool,
    /// Planarity-test budget; defaults to CROSS5_BUDGET or 10^7.
    #[arg(long)]
    budget: Option<u64>,
    /// Merge configurations related by graph automorphisms.
    #[arg(long)]
    symmetry: bool,
    /// Write the witness drawing (or all enumerated drawings) here.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum VerifyKind {
    /// A drawing JSON file, or a bundled fixture by name.
    Drawing {
        #[arg(required_unless_present = "fixture")]
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        fixture: Option<String>,
    },
    /// A coloring JSON file against a graph.
    Coloring {
        #[command(flatten)]
        graph: GraphInput,
        file: PathBuf,
    },
    /// An immersion certificate JSON file.
    Immersion {
        file: PathBuf,
        #[arg(long)]
        essential: bool,
        #[arg(long)]
        v_immersion: bool,
        #[arg(long)]
        embedding: bool,
        #[arg(long)]
        onto: bool,
    },
}

#[derive(Debug, Args)]
struct CorpusArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    count: usize,
    #[arg(long, default_value_t = 3)]
    n_min: usize,
    #[arg(long, default_value_t = 9)]
    n_max: usize,
    /// Largest admitted crossing number (0 to 3).
    #[arg(long)]
    cap: usize,
    #[arg(long)]
    omega_max: Option<usize>,
    #[arg(long)]
    connectivity_min: Option<usize>,
    /// Named graphs to leave out, up to isomorphism.
    #[arg(long = "exclude", value_name = "NAME")]
    exclude: Vec<String>,
    /// Five-color every entry and print a summary instead of the entries.
    #[arg(long)]
    color: bool,
    #[arg(long)]
    budget: Option<u64>,
    /// Write JSON lines here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn solver_config(budget: Option<u64>, symmetry: bool) -> SolverConfig {
    let mut cfg = budget.map_or_else(SolverConfig::default, SolverConfig::with_budget);
    cfg.symmetry = symmetry;
    cfg
}

/// Prints `value` as JSON, or `text` otherwise.
fn emit(out: &mut dyn Write, json: bool, value: &Value, text: &str) -> Result<()> {
    if json {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Color(a) => color(a, cli.json, out),
        Command::Nu(a) => nu(a, cli.json, out),
        Command::Verify { kind } => verify(kind, cli.json, out),
        Command::Corpus(a) => corpus(a, cli.json, out),
        Command::CheckClaims(a) => check::check_claims(a, cli.json, out),
    }
}

fn color(a: &ColorArgs, json: bool, out: &mut dyn Write) -> Result<u8> {
    let g = a.graph.load()?;
    if a.exhaustive {
        let c = exhaustive_coloring(&g, 5);
        let text = c
            .as_ref()
            .map_or("not 5-colorable".to_string(), |c| format!("colors {:?}", c.colors));
        emit(out, json, &json!({ "colorable": c.is_some(), "coloring": c }), &text)?;
        return Ok(if c.is_some() { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let policy = ColorPolicy {
        max_candidates: a.max_candidates,
        exhaustive_fallback: a.fallback,
    };
    let report = five_color(&g, &policy);
    let stats = json!({
        "max_candidates_consumed": report.stats.max_candidates_consumed,
        "subproblems": report.stats.subproblems,
        "fallback_used": report.stats.fallback_used,
    });
    match report.outcome {
        ColorOutcome::Colored(c) => {
            let value = json!({ "colored": true, "colors_used": c.colors_used(), "coloring": c, "stats": stats });
            emit(
                out,
                json,
                &value,
                &format!("{} colors: {:?}", c.colors_used(), c.colors),
            )?;
            Ok(EXIT_OK)
        }
        ColorOutcome::Obstruction(obs) => {
            let valid = obs
                .certificate
                .as_ref()
                .map(|c| check_immersion(c, ImmersionFlags::v_immersion()).is_ok());
            let value = json!({
                "colored": false,
                "obstruction": obs,
                "certificate_valid": valid,
                "stats": stats,
            });
            let mut text = format!("obstruction: {}", obs.reason);
            if let (Some(v), Some(cert)) = (obs.center, &obs.certificate) {
                text += &format!("\nK6 v-immersion centered at {v}: vertices {:?}", cert.vmap);
            }
            emit(out, json, &value, &text)?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn budget_report(e: &SolverError, json: bool, out: &mut dyn Write) -> Result<u8> {
    let value = match e {
        SolverError::Budget { budget, partial } => json!({
            "status": "budget",
            "budget": budget,
            "lower": partial.lower,
            "upper": partial.upper,
            "witness_valid": partial.witness.as_ref().map(|w| validate_drawing(w).is_valid()),
            "planarity_calls": partial.stats.planarity_calls,
        }),
        SolverError::EnumerationBudget { budget, stats } => json!({
            "status": "budget",
            "budget": budget,
            "planarity_calls": stats.planarity_calls,
        }),
    };
    emit(out, json, &value, &e.to_string())?;
    Ok(EXIT_BUDGET)
}

fn nu(a: &NuArgs, json: bool, out: &mut dyn Write) -> Result<u8> {
    let g = a.graph.load()?;
    let cfg = solver_config(a.budget, a.symmetry);
    if let Some(k) = a.enumerate_good {
        let all = match enumerate_good_drawings(&g, k, &cfg) {
            Ok(all) => all,
            Err(e) => return budget_report(&e, json, out),
        };
        if let Some(path) = &a.witness {
            let lines: String = all.iter().map(|d| d.to_json() + "\n").collect();
            write_file(path, &lines)?;
        }
        let value = json!({
            "k": k,
            "count": all.len(),
            "empty": all.is_empty(),
            "crossed_edge_counts": crossed_edge_counts(&all),
        });
        emit(
            out,
            json,
            &value,
            &format!("{} good drawings with {k} crossings", all.len()),
        )?;
        return Ok(EXIT_OK);
    }
    if let Some(k) = a.le {
        if a.any_drawing {
            let mode = if a.any_drawing {
                Mode::AnyDrawing
            } else {
                Mode::GoodOnly
            };
            let outcome = decide_crossing_number(&g, k, mode, &cfg);
            return decision_report(outcome.decision, k, outcome.stats.planarity_calls, a, json, out);
        }
        // Optimal drawings are good, so the good-only search settles `nu <= k`.
        return match crossing_number_at_most(&g, k, &cfg) {
            Ok(Some(r)) => decision_report(Decision::Sat(r.witness), k, r.stats.planarity_calls, a, json, out),
            Ok(None) => decision_report(Decision::Unsat, k, 0, a, json, out),
            Err(e) => budget_report(&e, json, out),
        };
    }
    match crossing_number(&g, &cfg) {
        Ok(r) => {
            if let Some(path) = &a.witness {
                write_file(path, &r.witness.to_json())?;
            }
            let value = json!({
                "value": r.value,
                "witness": serde_json::from_str::<Value>(&r.witness.to_json())?,
                "refuted": r.infeasible_trace,
                "nodes": r.stats.nodes,
                "planarity_calls": r.stats.planarity_calls,
            });
            emit(out, json, &value, &format!("{}", r.value))?;
            Ok(EXIT_OK)
        }
        Err(e) => budget_report(&e, json, out),
    }
}

fn decision_report(d: Decision, k: usize, calls: u64, a: &NuArgs, json: bool, out: &mut dyn Write) -> Result<u8> {
    match d {
        Decision::Sat(w) => {
            if let Some(path) = &a.witness {
                write_file(path, &w.to_json())?;
            }
            let value = json!({ "status": "sat", "k": k, "crossings": w.crossing_count(), "planarity_calls": calls });
            emit(
                out,
                json,
                &value,
                &format!("sat: a drawing with {} crossings", w.crossing_count()),
            )?;
            Ok(EXIT_OK)
        }
        Decision::Unsat => {
            let value = json!({ "status": "unsat", "k": k, "planarity_calls": calls });
            emit(
                out,
                json,
                &value,
                &format!("unsat: every drawing has more than {k} crossings"),
            )?;
            Ok(EXIT_NEGATIVE)
        }
        Decision::Budget => {
            let value = json!({ "status": "budget", "k": k, "planarity_calls": calls });
            emit(out, json, &value, "budget exhausted")?;
            Ok(EXIT_BUDGET)
        }
    }
}

/// Distinct numbers of crossed edges at a vertex, over all drawings.
fn crossed_edge_counts(all: &[Drawing]) -> Vec<usize> {
    let mut counts: Vec<usize> = all
        .iter()
        .flat_map(|d| (0..d.base().n()).map(move |v| crossed_edges_at(d, v).expect("valid drawing").len()))
        .collect();
    counts.sort_unstable();
    counts.dedup();
    counts
}

fn verdict(out: &mut dyn Write, json: bool, failed: Option<(&str, String)>, extra: Value) -> Result<u8> {
    let mut value = json!({ "valid": failed.is_none() });
    if let Some((clause, detail)) = &failed {
        value["clause"] = json!(clause);
        value["detail"] = json!(detail);
    }
    if let (Value::Object(v), Value::Object(e)) = (&mut value, extra) {
        v.extend(e);
    }
    let text = match &failed {
        None => "valid".to_string(),
        Some((clause, detail)) => format!("invalid: clause {clause:?} violated: {detail}"),
    };
    emit(out, json, &value, &text)?;
    Ok(if failed.is_none() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn verify(kind: &VerifyKind, json: bool, out: &mut dyn Write) -> Result<u8> {
    match kind {
        VerifyKind::Drawing { file, fixture } => {
            let d = match (file, fixture) {
                (Some(path), _) => Drawing::from_json(&input::read(path)?)?,
                (None, Some(name)) => match fixtures::all().into_iter().find(|(n, _)| n == name) {
                    Some((_, d)) => d,
                    None => bail!("no bundled drawing {name:?}"),
                },
                (None, None) => bail!("no drawing given"),
            };
            let failed = match validate_drawing(&d) {
                _ if !planarize(&d).is_planar() => Some(("planarization", "planarization is not planar".into())),
                cross5_core::Validity::Invalid(reason) => Some(("realization", reason)),
                cross5_core::Validity::Valid => None,
            };
            verdict(out, json, failed, json!({ "crossings": d.crossing_count() }))
        }
        VerifyKind::Coloring { graph, file } => {
            let g = graph.load()?;
            let c = Coloring::from_json(&input::read(file)?)?;
            let failed = check_coloring(&g, &c).err().map(|(clause, e)| (clause, e.to_string()));
            verdict(out, json, failed, json!({}))
        }
        VerifyKind::Immersion {
            file,
            essential,
            v_immersion,
            embedding,
            onto,
        } => {
            let cert = ImmersionCertificate::from_json(&input::read(file)?)?;
            let flags = ImmersionFlags {
                essential: *essential,
                v_immersion: *v_immersion,
                embedding: *embedding,
                onto: *onto,
            };
            let failed = match check_immersion(&cert, flags) {
                Ok(()) => None,
                Err(e) => match e.clause() {
                    Some(clause) => Some((clause, e.to_string())),
                    None => return Err(e.into()),
                },
            };
            verdict(out, json, failed, json!({}))
        }
    }
}

fn corpus(a: &CorpusArgs, json: bool, out: &mut dyn Write) -> Result<u8> {
    let exclude_iso = a
        .exclude
        .iter()
        .map(|s| construct_named(s).with_context(|| format!("cannot build {s:?}")))
        .collect::<Result<Vec<Graph>>>()?;
    let spec = CorpusSpec {
        seed: a.seed,
        count: a.count,
        n_min: a.n_min,
        n_max: a.n_max,
        crossing_cap: a.cap,
        omega_max: a.omega_max,
        connectivity_min: a.connectivity_min,
        exclude_iso,
    };
    let entries = match gen_corpus(&spec, &solver_config(a.budget, false)) {
        Ok(entries) => entries,
        Err(cross5_core::corpus::CorpusError::Solver(e)) => return budget_report(&e, json, out),
        Err(e) => return Err(e.into()),
    };
    if !a.color {
        let text = corpus_to_jsonl(&entries);
        match &a.out {
            Some(path) => write_file(path, &text)?,
            None => write!(out, "{text}")?,
        }
        return Ok(EXIT_OK);
    }
    let mut colored = 0;
    let mut max_consumed = 0;
    let mut failures = Vec::new();
    for e in &entries {
        let report = five_color(&e.graph(), &ColorPolicy::default());
        max_consumed = max_consumed.max(report.stats.max_candidates_consumed);
        match report.outcome {
            ColorOutcome::Colored(c) if check_coloring(&e.graph(), &c).is_ok() => colored += 1,
            _ => failures.push(e.graph6.clone()),
        }
    }
    let mut histogram = vec![0; a.cap + 1];
    for e in &entries {
        histogram[e.nu] += 1;
    }
    let value = json!({
        "count": entries.len(),
        "colored": colored,
        "all_colored": failures.is_empty(),
        "nu_histogram": histogram,
        "max_candidates_consumed": max_consumed,
        "failures": failures,
    });
    let text = format!(
        "{colored} of {} graphs 5-colored; crossing numbers {histogram:?}; at most {max_consumed} candidates per step",
        entries.len()
    );
    emit(out, json, &value, &text)?;
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(&cli, &mut stdout) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
