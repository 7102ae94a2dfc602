use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use cross5_core::graph::{construct_named, parse_graph, Graph, GraphFormat};

/// Exactly one way to name the input graph.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphInput {
    /// A named graph: K6, K_{3,5}, K222, C5, W5, P4, E3, join(C3,C5).
    #[arg(long)]
    pub named: Option<String>,
    /// A file holding an edge list (`n`, then `u v` per line) or one graph6 line.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    /// A graph6 string.
    #[arg(long)]
    pub g6: Option<String>,
}

impl GraphInput {
    pub fn load(&self) -> Result<Graph> {
        if let Some(name) = &self.named {
            return construct_named(name).with_context(|| format!("cannot build {name:?}"));
        }
        if let Some(s) = &self.g6 {
            return parse_graph(s, GraphFormat::Graph6).context("bad graph6 string");
        }
        let Some(path) = &self.graph else {
            bail!("no graph given")
        };
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        parse_graph_file(&text).with_context(|| format!("cannot parse {}", path.display()))
    }
}

/// An edge list unless the first meaningful line is a lone graph6 word.
pub fn parse_graph_file(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    let format = if first.parse::<usize>().is_ok() || first.contains(char::is_whitespace) {
        GraphFormat::EdgeList
    } else {
        GraphFormat::Graph6
    };
    Ok(parse_graph(text, format)?)
}

pub fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}
