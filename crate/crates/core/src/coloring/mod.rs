//! Kempe-chain 5-coloring with K6 v-immersion obstructions.

mod kempe;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::immersion::ImmersionCertificate;

pub use kempe::{extend_coloring, kempe_subgraph, kempe_swap, Extension, KempeSubgraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {found} entries for {expected} vertices")]
    Partial { expected: usize, found: usize },
    #[error("vertex {vertex} has color {color} outside 1..={palette}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        palette: usize,
    },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("edge {u}-{v} is monochromatic")]
    Improper { u: usize, v: usize },
    #[error("vertex {vertex} has degree {degree}; at most 5 neighbors can be handled")]
    DegreeTooHigh { vertex: usize, degree: usize },
    #[error("no component {component} in the Kempe subgraph of colors {i} and {j}")]
    InvalidComponent { i: usize, j: usize, component: usize },
    #[error("invalid coloring JSON: {0}")]
    Json(String),
}

/// Colors `1..=palette`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    pub palette: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("coloring serializes")
    }

    pub fn from_json(text: &str) -> Result<Coloring, ColoringError> {
        serde_json::from_str(text).map_err(|e| ColoringError::Json(e.to_string()))
    }

    /// The number of distinct colors used.
    pub fn colors_used(&self) -> usize {
        let mut seen = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// The first clause a coloring of `g` violates: `"total"`, `"palette"` or
/// `"proper"`.
pub fn check_coloring(g: &Graph, c: &Coloring) -> Result<(), (&'static str, ColoringError)> {
    if c.colors.len() != g.n() {
        let err = ColoringError::Partial {
            expected: g.n(),
            found: c.colors.len(),
        };
        return Err(("total", err));
    }
    if let Some((vertex, &color)) = c.colors.iter().enumerate().find(|(_, &x)| x == 0 || x > c.palette) {
        let err = ColoringError::ColorOutOfRange {
            vertex,
            color,
            palette: c.palette,
        };
        return Err(("palette", err));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| c.colors[u] == c.colors[v]) {
        return Err(("proper", ColoringError::Improper { u, v }));
    }
    Ok(())
}

/// True iff `c` is a proper coloring of `g` within its palette. A coloring
/// that misses vertices is an error.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    match check_coloring(g, c) {
        Ok(()) => Ok(true),
        Err(("total", e)) => Err(e),
        Err(_) => Ok(false),
    }
}

/// Why [`five_color`] gave up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    /// The vertex whose coloring could not be extended.
    pub center: Option<usize>,
    /// A K6 v-immersion centered at `center`, when the Kempe argument failed.
    pub certificate: Option<ImmersionCertificate>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColorOutcome {
    Colored(Coloring),
    Obstruction(Obstruction),
}

impl ColorOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ColorOutcome::Colored(c) => Some(c),
            ColorOutcome::Obstruction(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColorPolicy {
    /// Degree-5 vertices tried per step when the minimum degree is five.
    pub max_candidates: usize,
    /// Fall back to exhaustive search when every candidate fails.
    pub exhaustive_fallback: bool,
}

impl Default for ColorPolicy {
    fn default() -> Self {
        ColorPolicy {
            max_candidates: 8,
            exhaustive_fallback: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ColorStats {
    /// The most candidates any single step tried before succeeding or giving up.
    pub max_candidates_consumed: usize,
    /// Subproblems solved (memo misses).
    pub subproblems: usize,
    pub fallback_used: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorReport {
    pub outcome: ColorOutcome,
    pub stats: ColorStats,
}

/// Colors `g` with at most five colors by deleting a vertex of minimum
/// degree, coloring the rest, and extending with Kempe chains.
///
/// When the minimum degree is five, each degree-5 vertex (up to
/// `policy.max_candidates`, in increasing order) is tried as the deleted
/// vertex. Subproblems are memoized on their vertex set.
pub fn five_color(g: &Graph, policy: &ColorPolicy) -> ColorReport {
    let mut run = Run {
        g,
        policy,
        memo: HashMap::new(),
        stats: ColorStats::default(),
    };
    let outcome = match run.solve(&VertexSet::full(g.n())) {
        Ok(colors) => ColorOutcome::Colored(Coloring { palette: 5, colors }),
        Err(obs) => match policy.exhaustive_fallback.then(|| exhaustive_coloring(g, 5)).flatten() {
            Some(c) => {
                run.stats.fallback_used = true;
                ColorOutcome::Colored(c)
            }
            None => ColorOutcome::Obstruction(obs),
        },
    };
    if let ColorOutcome::Colored(c) = &outcome {
        assert_eq!(
            verify_coloring(g, c),
            Ok(true),
            "five_color produced an improper coloring"
        );
    }
    ColorReport {
        outcome,
        stats: run.stats,
    }
}

struct Run<'a> {
    g: &'a Graph,
    policy: &'a ColorPolicy,
    memo: HashMap<VertexSet, Result<Vec<usize>, Obstruction>>,
    stats: ColorStats,
}

impl Run<'_> {
    /// Colors of the vertices in `alive` (0 elsewhere).
    fn solve(&mut self, alive: &VertexSet) -> Result<Vec<usize>, Obstruction> {
        if let Some(hit) = self.memo.get(alive) {
            return hit.clone();
        }
        self.stats.subproblems += 1;
        let out = self.solve_fresh(alive);
        self.memo.insert(alive.clone(), out.clone());
        out
    }

    fn solve_fresh(&mut self, alive: &VertexSet) -> Result<Vec<usize>, Obstruction> {
        let g = self.g;
        if alive.len() <= 5 {
            let mut colors = vec![0; g.n()];
            for (i, v) in alive.iter().enumerate() {
                colors[v] = i + 1;
            }
            return Ok(colors);
        }
        let degree = |v: usize| g.neighbors(v).filter(|&w| alive.contains(w)).count();
        let v = alive.iter().min_by_key(|&v| (degree(v), v)).expect("nonempty");
        let dv = degree(v);
        if dv <= 4 {
            let mut rest = alive.clone();
            rest.remove(v);
            let mut colors = self.solve(&rest)?;
            let used: Vec<usize> = g.neighbors(v).map(|w| colors[w]).collect();
            colors[v] = (1..=5).find(|c| !used.contains(c)).expect("a neighbor-free color");
            return Ok(colors);
        }
        if dv > 5 {
            return Err(Obstruction {
                center: None,
                certificate: None,
                reason: format!("minimum degree {dv} exceeds five"),
            });
        }
        let candidates: Vec<usize> = alive
            .iter()
            .filter(|&w| degree(w) == 5)
            .take(self.policy.max_candidates)
            .collect();
        let mut first_failure = None;
        for (tried, &w) in candidates.iter().enumerate() {
            self.stats.max_candidates_consumed = self.stats.max_candidates_consumed.max(tried + 1);
            let mut rest = alive.clone();
            rest.remove(w);
            let attempt =
                self.solve(&rest)
                    .and_then(|mut colors| match kempe::extend_within(g, alive, w, &mut colors) {
                        Ok(()) => Ok(colors),
                        Err(cert) => Err(Obstruction {
                            center: Some(w),
                            certificate: Some(cert),
                            reason: "every Kempe pair at the candidate is connected".into(),
                        }),
                    });
            match attempt {
                Ok(colors) => return Ok(colors),
                Err(obs) => {
                    first_failure.get_or_insert(obs);
                }
            }
        }
        Err(first_failure.expect("a degree-5 vertex exists"))
    }
}

/// A proper coloring with at most `palette` colors by backtracking, or
/// `None` if there is none.
pub fn exhaustive_coloring(g: &Graph, palette: usize) -> Option<Coloring> {
    fn assign(g: &Graph, order: &[usize], i: usize, palette: usize, colors: &mut [usize]) -> bool {
        let Some(&v) = order.get(i) else { return true };
        // Only one new color is worth trying; the rest are symmetric.
        let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
        for c in 1..=fresh.min(palette) {
            if g.neighbors(v).all(|w| colors[w] != c) {
                colors[v] = c;
                if assign(g, order, i + 1, palette, colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut colors = vec![0; g.n()];
    assign(g, &order, 0, palette, &mut colors).then_some(Coloring { palette, colors })
}
