//! Text encodings: a human-authored edge list and bit-exact graph6.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{Graph, GraphError, Location};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    /// First line `n`, then one `u v` pair per line, 0-based.
    EdgeList,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(format!("unknown graph format {other:?}")),
        }
    }
}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, GraphError> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Graph6 => parse_graph6(text),
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => {
            let mut s = format!("{}\n", g.n());
            for &(u, v) in g.edges() {
                writeln!(s, "{u} {v}").unwrap();
            }
            s
        }
        GraphFormat::Graph6 => to_graph6(g),
    }
}

fn malformed(location: Location, message: impl Into<String>) -> GraphError {
    GraphError::Malformed {
        location,
        message: message.into(),
    }
}

/// Blank lines and lines starting with `#` are skipped.
fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| malformed(Location::Line(1), "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| malformed(Location::Line(hl), format!("bad vertex count {header:?}")))?;
    let mut g = Graph::empty(n);
    for (ln, line) in lines {
        let at = Location::Line(ln);
        let mut parts = line.split_whitespace();
        let mut endpoint = || -> Result<usize, GraphError> {
            let tok = parts.next().ok_or_else(|| malformed(at, "expected two endpoints"))?;
            tok.parse().map_err(|_| malformed(at, format!("bad endpoint {tok:?}")))
        };
        let u = endpoint()?;
        let v = endpoint()?;
        if parts.next().is_some() {
            return Err(malformed(at, "trailing tokens after edge"));
        }
        g.push_edge(u, v, at)?;
    }
    Ok(g)
}

const G6_HEADER: &str = ">>graph6<<";

fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let raw = text.trim_end_matches(['\n', '\r']);
    let (base, s) = match raw.strip_prefix(G6_HEADER) {
        Some(rest) => (G6_HEADER.len(), rest.as_bytes()),
        None => (0, raw.as_bytes()),
    };
    for (i, &b) in s.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(
                Location::Offset(base + i),
                format!("byte {b:#04x} outside graph6 range"),
            ));
        }
    }
    let short = |at: usize| malformed(Location::Offset(base + at), "truncated size field");
    let (n, mut pos) = match s.first() {
        None => return Err(short(0)),
        Some(&126) => {
            if s.get(1) == Some(&126) {
                if s.len() < 8 {
                    return Err(short(s.len()));
                }
                (big_endian6(&s[2..8]), 8)
            } else {
                if s.len() < 4 {
                    return Err(short(s.len()));
                }
                (big_endian6(&s[1..4]), 4)
            }
        }
        Some(&b) => ((b - 63) as usize, 1),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if s.len() - pos != need {
        return Err(malformed(
            Location::Offset(base + pos),
            format!("expected {need} adjacency bytes for n={n}, found {}", s.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    let mut byte = 0u8;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                byte = s[pos] - 63;
                pos += 1;
            }
            if byte >> (5 - k % 6) & 1 == 1 {
                g.push_edge(i, j, Location::Offset(base + pos - 1))?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 && byte & ((1 << (6 - bits % 6)) - 1) != 0 {
        return Err(malformed(Location::Offset(base + pos - 1), "nonzero padding bits"));
    }
    Ok(g)
}

fn big_endian6(bytes: &[u8]) -> usize {
    bytes.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize)
}

fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}
