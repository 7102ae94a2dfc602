//! Runs the claims manifest: each claim is a command line, an expected exit
//! code, and fields its JSON output must contain.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::{run, Cli, EXIT_ERROR, EXIT_NEGATIVE, EXIT_OK};

const MANIFEST: &str = include_str!("../manifest/claims.json");

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Also run claims that take minutes.
    #[arg(long)]
    extended: bool,
    /// Read claims from this file instead of the built-in manifest.
    #[arg(long)]
    manifest: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tier {
    Default,
    Extended,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub criterion: u32,
    pub claim: String,
    #[serde(default = "default_tier")]
    pub tier: Tier,
    pub args: Vec<String>,
    pub exit: u8,
    #[serde(default)]
    pub expect: Map<String, Value>,
}

fn default_tier() -> Tier {
    Tier::Default
}

#[derive(Debug, Serialize)]
struct Outcome<'a> {
    id: &'a str,
    criterion: u32,
    claim: &'a str,
    tier: &'a Tier,
    command: String,
    /// `pass`, `fail` or `skipped`.
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    seconds: f64,
}

pub fn load_manifest(text: &str) -> Result<Vec<Claim>> {
    serde_json::from_str(text).context("malformed claims manifest")
}

/// Runs one claim; `Err` carries the mismatch.
fn evaluate(claim: &Claim) -> Result<(), String> {
    let argv = ["cross5", "--json"]
        .into_iter()
        .map(String::from)
        .chain(claim.args.iter().cloned());
    let cli = Cli::try_parse_from(argv).map_err(|e| format!("bad command line: {e}"))?;
    let mut buf = Vec::new();
    let code = run(&cli, &mut buf).unwrap_or(EXIT_ERROR);
    if code != claim.exit {
        return Err(format!("exit code {code}, expected {}", claim.exit));
    }
    if claim.expect.is_empty() {
        return Ok(());
    }
    let text = String::from_utf8_lossy(&buf);
    let last = text.lines().last().unwrap_or("");
    let got: Value = serde_json::from_str(last).map_err(|_| format!("output is not JSON: {last:?}"))?;
    for (key, want) in &claim.expect {
        if got.get(key) != Some(want) {
            return Err(format!(
                "{key} = {}, expected {want}",
                got.get(key).unwrap_or(&Value::Null)
            ));
        }
    }
    Ok(())
}

pub fn check_claims(a: &CheckArgs, json: bool, out: &mut dyn Write) -> Result<u8> {
    let claims = match &a.manifest {
        Some(path) => load_manifest(&crate::input::read(path)?)?,
        None => load_manifest(MANIFEST)?,
    };
    let mut outcomes = Vec::new();
    let mut default_failed = false;
    for c in &claims {
        let command = format!("cross5 {}", c.args.join(" "));
        if c.tier == Tier::Extended && !a.extended {
            outcomes.push(Outcome {
                id: &c.id,
                criterion: c.criterion,
                claim: &c.claim,
                tier: &c.tier,
                command,
                status: "skipped",
                detail: None,
                seconds: 0.0,
            });
            continue;
        }
        let t = Instant::now();
        let r = evaluate(c);
        default_failed |= r.is_err() && c.tier == Tier::Default;
        let o = Outcome {
            id: &c.id,
            criterion: c.criterion,
            claim: &c.claim,
            tier: &c.tier,
            command,
            status: if r.is_ok() { "pass" } else { "fail" },
            detail: r.err(),
            seconds: t.elapsed().as_secs_f64(),
        };
        if !json {
            let detail = o.detail.as_ref().map_or(String::new(), |d| format!(" ({d})"));
            writeln!(
                out,
                "{:<7} [{:>2}] {}: {}{detail}  [{:.2}s]",
                o.status.to_uppercase(),
                o.criterion,
                o.id,
                o.claim,
                o.seconds
            )?;
            out.flush()?;
        }
        outcomes.push(o);
    }
    if json {
        writeln!(out, "{}", json!({ "passed": !default_failed, "claims": outcomes }))?;
    } else {
        for o in outcomes.iter().filter(|o| o.status == "skipped") {
            writeln!(
                out,
                "SKIPPED [{:>2}] {}: {} (needs --extended)",
                o.criterion, o.id, o.claim
            )?;
        }
    }
    Ok(if default_failed { EXIT_NEGATIVE } else { EXIT_OK })
}
