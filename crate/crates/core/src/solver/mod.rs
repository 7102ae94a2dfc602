//! Exact crossing numbers of small graphs.
//!
//! The search works on crossing configurations: which edge pairs cross and in
//! what order along each edge. A configuration whose realization graph is
//! planar is a valid drawing. Otherwise some nonplanar part of it must be
//! crossed by any valid extension, so the search branches on pairs of
//! segments from a minimal nonplanar subset of segments.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drawing::{validate_drawing, Drawing};
use crate::fixtures;
use crate::graph::{automorphisms, Graph};
use crate::planarity::euler_lower_bound;
use search::{Config, EdgeMap, Search};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding the planarity-call budget.
pub const BUDGET_ENV: &str = "CROSS5_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Any drawing: adjacent edges may cross, and a pair may cross repeatedly.
    AnyDrawing,
    /// Good drawings only: independent pairs, each crossing at most once.
    GoodOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Maximum number of planarity tests per call.
    pub budget: u64,
    /// Merge configurations that differ by an automorphism of the graph.
    pub symmetry: bool,
}

impl Default for SolverConfig {
    /// The default budget, or the value of `CROSS5_BUDGET` when it parses.
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        SolverConfig {
            budget,
            symmetry: false,
        }
    }
}

impl SolverConfig {
    pub fn with_budget(budget: u64) -> SolverConfig {
        SolverConfig {
            budget,
            symmetry: false,
        }
    }

    pub fn symmetric(mut self) -> SolverConfig {
        self.symmetry = true;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub planarity_calls: u64,
}

impl std::ops::AddAssign for SearchStats {
    fn add_assign(&mut self, rhs: SearchStats) {
        self.nodes += rhs.nodes;
        self.planarity_calls += rhs.planarity_calls;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// A valid drawing with at most `k` crossings.
    Sat(Drawing),
    Unsat,
    /// The budget ran out first; nothing is known.
    Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecideOutcome {
    pub decision: Decision,
    pub stats: SearchStats,
}

/// Evidence that no drawing with `k` crossings exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnsatTrace {
    pub k: usize,
    pub nodes: u64,
    pub planarity_calls: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverResult {
    pub value: usize,
    pub witness: Drawing,
    /// One entry per `k` below `value` that was refuted by search, in
    /// increasing order. Values below the edge-count bound need no search.
    pub infeasible_trace: Vec<UnsatTrace>,
    pub stats: SearchStats,
}

/// What was established before the budget ran out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialResult {
    pub lower: usize,
    pub upper: Option<usize>,
    pub witness: Option<Drawing>,
    pub infeasible_trace: Vec<UnsatTrace>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("budget of {budget} planarity calls exhausted; crossing number is in [{}, {}]",
        .partial.lower,
        .partial.upper.map_or("?".to_string(), |u| u.to_string()))]
    Budget { budget: u64, partial: Box<PartialResult> },
    #[error("budget of {budget} planarity calls exhausted during enumeration")]
    EnumerationBudget { budget: u64, stats: SearchStats },
}

fn edge_maps(g: &Graph, symmetry: bool) -> Vec<EdgeMap> {
    if !symmetry {
        return Vec::new();
    }
    automorphisms(g).iter().skip(1).map(|p| EdgeMap::new(g, p)).collect()
}

/// Is there a drawing of `g` with at most `k` crossings?
pub fn decide_crossing_number(g: &Graph, k: usize, mode: Mode, config: &SolverConfig) -> DecideOutcome {
    let mut search = Search::new(g, mode, config.budget, edge_maps(g, config.symmetry));
    let decision = match search.decide(&Config::empty(g.m()), k) {
        Ok(Some(c)) => {
            let w = c.to_drawing(g);
            assert!(validate_drawing(&w).is_valid(), "solver returned an invalid witness");
            assert!(w.crossing_count() <= k);
            Decision::Sat(w)
        }
        Ok(None) => Decision::Unsat,
        Err(_) => Decision::Budget,
    };
    DecideOutcome {
        decision,
        stats: search.stats,
    }
}

/// The crossing number of `g` with an optimal good drawing.
///
/// Tries `k` upward from the edge-count bound. Optimal drawings are good, so
/// only good drawings are searched. A bundled certificate for `g`, if any,
/// serves as the upper bound reported when the budget runs out.
pub fn crossing_number(g: &Graph, config: &SolverConfig) -> Result<SolverResult, SolverError> {
    Ok(crossing_number_at_most(g, usize::MAX, config)?.expect("some k succeeds"))
}

/// Like [`crossing_number`], but gives up with `None` once `cap` is refuted.
pub fn crossing_number_at_most(
    g: &Graph,
    cap: usize,
    config: &SolverConfig,
) -> Result<Option<SolverResult>, SolverError> {
    let start = euler_lower_bound(g).unwrap_or(0);
    let known = fixtures::known_drawing(g);
    let mut stats = SearchStats::default();
    let mut trace = Vec::new();
    for k in start..=cap {
        if let Some(w) = known.as_ref().filter(|w| w.crossing_count() == k) {
            return Ok(Some(SolverResult {
                value: k,
                witness: w.clone(),
                infeasible_trace: trace,
                stats,
            }));
        }
        let remaining = SolverConfig {
            budget: config.budget - stats.planarity_calls,
            ..config.clone()
        };
        let out = decide_crossing_number(g, k, Mode::GoodOnly, &remaining);
        stats += out.stats;
        match out.decision {
            Decision::Sat(witness) => {
                debug_assert_eq!(witness.crossing_count(), k);
                return Ok(Some(SolverResult {
                    value: k,
                    witness,
                    infeasible_trace: trace,
                    stats,
                }));
            }
            Decision::Unsat => trace.push(UnsatTrace {
                k,
                nodes: out.stats.nodes,
                planarity_calls: out.stats.planarity_calls,
            }),
            Decision::Budget => {
                return Err(SolverError::Budget {
                    budget: config.budget,
                    partial: Box::new(PartialResult {
                        lower: k,
                        upper: known.as_ref().map(Drawing::crossing_count),
                        witness: known,
                        infeasible_trace: trace,
                        stats,
                    }),
                })
            }
        }
    }
    Ok(None)
}

/// All valid good drawings of `g` with exactly `k` crossings, up to crossing
/// ids, sorted. Isomorphic but differently labeled drawings are distinct.
pub fn enumerate_good_drawings(g: &Graph, k: usize, config: &SolverConfig) -> Result<Vec<Drawing>, SolverError> {
    let mut search = Search::new(g, Mode::GoodOnly, config.budget, Vec::new());
    let mut found = Vec::new();
    search
        .enumerate(&Config::empty(g.m()), k, &mut found)
        .map_err(|_| SolverError::EnumerationBudget {
            budget: config.budget,
            stats: search.stats,
        })?;
    let mut out: Vec<Drawing> = found.iter().map(|c| c.to_drawing(g).canonical()).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
