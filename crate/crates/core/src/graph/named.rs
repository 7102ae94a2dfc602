//! Named graph families.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! name  := join "(" name "," name ")"
//!        | K parts          complete (one part) or complete multipartite
//!        | C size | P size | W size | E size
//! parts := "_{" n ("," n)* "}" | "_" n | n ("," n)* | digit digit+
//! ```
//!
//! A bare run of two or more digits after `K` lists single-digit part sizes,
//! so `K35` is K_{3,5} and `K222` the octahedron K_{2,2,2}. `C` is the cycle,
//! `P` the path, `W` the wheel over a `size`-cycle and `E` the edgeless graph.

use super::{Graph, GraphError, Location};

pub fn construct_named(name: &str) -> Result<Graph, GraphError> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    parse(&compact)
}

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

fn parse(s: &str) -> Result<Graph, GraphError> {
    if let Some(inner) = s.strip_prefix("join(").and_then(|r| r.strip_suffix(')')) {
        let split = top_level_comma(inner).ok_or_else(|| bad(format!("join needs two arguments: {s:?}")))?;
        let g = parse(&inner[..split])?;
        let h = parse(&inner[split + 1..])?;
        return Ok(g.join(&h));
    }
    let mut chars = s.chars();
    let family = chars.next().ok_or_else(|| bad("empty graph name"))?;
    let rest = chars.as_str();
    match family {
        'K' => {
            let parts = parse_parts(rest)?;
            if parts.len() == 1 {
                complete(parts[0])
            } else {
                multipartite(&parts)
            }
        }
        'C' => cycle(single(rest)?),
        'P' => path(single(rest)?),
        'W' => wheel(single(rest)?),
        'E' => Ok(Graph::empty(single(rest)?)),
        _ => Err(bad(format!("unknown graph family in {s:?}"))),
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_parts(rest: &str) -> Result<Vec<usize>, GraphError> {
    let body = rest.strip_prefix('_').unwrap_or(rest);
    let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
    let nums: Vec<&str> = body.split(',').collect();
    let parse_num = |t: &str| {
        t.parse::<usize>()
            .map_err(|_| bad(format!("bad size {t:?} in K{rest}")))
    };
    let braced_or_sep = rest.starts_with('_') || nums.len() > 1;
    let sizes: Vec<usize> = if !braced_or_sep && body.len() >= 2 && body.bytes().all(|b| b.is_ascii_digit()) {
        body.bytes().map(|b| (b - b'0') as usize).collect()
    } else {
        nums.into_iter().map(parse_num).collect::<Result<_, _>>()?
    };
    if sizes.contains(&0) {
        return Err(bad(format!("part sizes must be positive in K{rest}")));
    }
    Ok(sizes)
}

fn single(rest: &str) -> Result<usize, GraphError> {
    let body = rest.strip_prefix('_').unwrap_or(rest);
    let body = body.strip_prefix('{').and_then(|b| b.strip_suffix('}')).unwrap_or(body);
    body.parse().map_err(|_| bad(format!("bad size {rest:?}")))
}

pub(crate) fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(bad("K_n needs n >= 1"));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub(crate) fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad(format!("C_n needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(bad("P_n needs n >= 1"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

fn wheel(n: usize) -> Result<Graph, GraphError> {
    let rim = cycle(n)?;
    Ok(Graph::empty(1).join(&rim))
}

fn multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
    let n: usize = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (p, &k) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(p, k));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if part_of[i] != part_of[j] {
                g.push_edge(i, j, Location::Unknown)?;
            }
        }
    }
    Ok(g)
}
