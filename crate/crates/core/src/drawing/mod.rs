//! Combinatorial drawings: which edge pairs cross, and in what order the
//! crossings occur along each edge.
//!
//! Realizability is decided by planarity. The plain planarization (one
//! degree-4 dummy per crossing) is planar exactly when the crossings can be
//! realized as crossings *or touchings*. [`validate_drawing`] uses a stricter
//! graph where every dummy is a small wheel whose rim forces the two edges to
//! alternate, so a valid drawing has exactly its listed crossings, all of
//! them transversal.

mod induced;
mod routes;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::planarity::is_planar_edges;

pub use induced::induced_drawing;
pub(crate) use routes::{planarization_edges, realization_edges, RouteSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("crossing {crossing} references edge {edge}, but the graph has {m} edges")]
    DanglingCrossing { crossing: usize, edge: usize, m: usize },
    #[error("crossing {crossing} joins edge {edge} with itself")]
    SelfCrossing { crossing: usize, edge: usize },
    #[error("order of edge {edge}: {message}")]
    BadOrder { edge: usize, message: String },
    #[error("edge {edge} has {count} crossings but no order entry")]
    MissingOrder { edge: usize, count: usize },
    #[error("malformed drawing JSON: {0}")]
    Json(String),
    #[error("drawing is not valid: {0}")]
    Invalid(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("drawing is not good: {0}")]
    NotGood(String),
    #[error("immersion certificate rejected: {0}")]
    Certificate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Crossing {
    pub a: usize,
    pub b: usize,
}

impl Crossing {
    fn key(&self) -> (usize, usize) {
        (self.a.min(self.b), self.a.max(self.b))
    }

    /// The partner of `e` in this crossing.
    pub fn other(&self, e: usize) -> usize {
        if self.a == e {
            self.b
        } else {
            self.a
        }
    }
}

/// A combinatorial drawing of `base`.
///
/// Crossing ids are indices into `crossings`. `order[e]` lists the crossings
/// on edge `e` from its smaller endpoint to its larger one. Equality and
/// hashing ignore crossing ids.
#[derive(Clone, Debug)]
pub struct Drawing {
    base: Graph,
    crossings: Vec<Crossing>,
    order: Vec<Vec<usize>>,
}

impl Drawing {
    /// Checks reference integrity and order consistency. Realizability is
    /// checked separately by [`validate_drawing`].
    pub fn new(base: Graph, crossings: Vec<Crossing>, order: Vec<Vec<usize>>) -> Result<Drawing, DrawingError> {
        let m = base.m();
        if order.len() != m {
            return Err(DrawingError::BadOrder {
                edge: order.len().min(m),
                message: format!("expected {m} order sequences, found {}", order.len()),
            });
        }
        let mut expected: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (id, c) in crossings.iter().enumerate() {
            for e in [c.a, c.b] {
                if e >= m {
                    return Err(DrawingError::DanglingCrossing {
                        crossing: id,
                        edge: e,
                        m,
                    });
                }
            }
            if c.a == c.b {
                return Err(DrawingError::SelfCrossing {
                    crossing: id,
                    edge: c.a,
                });
            }
            expected[c.a].push(id);
            expected[c.b].push(id);
        }
        for (e, seq) in order.iter().enumerate() {
            let mut sorted = seq.clone();
            sorted.sort_unstable();
            if sorted != expected[e] {
                return Err(DrawingError::BadOrder {
                    edge: e,
                    message: format!("lists crossings {seq:?}, but the edge takes part in {:?}", expected[e]),
                });
            }
        }
        Ok(Drawing { base, crossings, order })
    }

    /// The drawing of `base` without crossings.
    pub fn planar(base: Graph) -> Drawing {
        let m = base.m();
        Drawing {
            base,
            crossings: Vec::new(),
            order: vec![Vec::new(); m],
        }
    }

    /// Crossings given as edge pairs; along every edge they are ordered by
    /// crossing id. Enough for drawings where no edge is crossed twice.
    pub fn from_pairs(base: Graph, pairs: &[(usize, usize)]) -> Result<Drawing, DrawingError> {
        let crossings: Vec<Crossing> = pairs.iter().map(|&(a, b)| Crossing { a, b }).collect();
        let mut order = vec![Vec::new(); base.m()];
        for (id, c) in crossings.iter().enumerate() {
            for e in [c.a, c.b] {
                if e < order.len() && (e == c.a || c.a != c.b) {
                    order[e].push(id);
                }
            }
        }
        Drawing::new(base, crossings, order)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn order(&self, e: usize) -> &[usize] {
        &self.order[e]
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// True if the two edges of crossing `id` share an endpoint.
    pub fn is_trivial(&self, id: usize) -> bool {
        let c = self.crossings[id];
        self.base.edges_adjacent(c.a, c.b)
    }

    /// Relabels crossings by (smaller edge, larger edge, position on the smaller edge).
    pub fn canonical(&self) -> Drawing {
        let mut ids: Vec<usize> = (0..self.crossings.len()).collect();
        let pos_on = |id: usize| {
            let e = self.crossings[id].key().0;
            self.order[e].iter().position(|&x| x == id).unwrap()
        };
        ids.sort_by_key(|&id| (self.crossings[id].key(), pos_on(id)));
        let mut relabel = vec![0; ids.len()];
        for (new, &old) in ids.iter().enumerate() {
            relabel[old] = new;
        }
        let crossings = ids
            .iter()
            .map(|&old| {
                let (a, b) = self.crossings[old].key();
                Crossing { a, b }
            })
            .collect();
        let order = self
            .order
            .iter()
            .map(|seq| seq.iter().map(|&x| relabel[x]).collect())
            .collect();
        Drawing {
            base: self.base.clone(),
            crossings,
            order,
        }
    }

    fn canonical_parts(&self) -> (Vec<Crossing>, Vec<Vec<usize>>) {
        let c = self.canonical();
        (c.crossings, c.order)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("drawing serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("drawing serializes")
    }

    pub fn from_json(text: &str) -> Result<Drawing, DrawingError> {
        let repr: DrawingRepr = serde_json::from_str(text).map_err(|e| DrawingError::Json(e.to_string()))?;
        Drawing::try_from(repr)
    }

    pub(crate) fn from_parts_unchecked(base: Graph, crossings: Vec<Crossing>, order: Vec<Vec<usize>>) -> Drawing {
        debug_assert!(Drawing::new(base.clone(), crossings.clone(), order.clone()).is_ok());
        Drawing { base, crossings, order }
    }
}

impl PartialEq for Drawing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.crossings.len() == other.crossings.len()
            && self.canonical_parts() == other.canonical_parts()
    }
}

impl Eq for Drawing {}

impl PartialOrd for Drawing {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by base graph, then by the canonical crossing list and orders.
impl Ord for Drawing {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.base.n(), self.base.edges())
            .cmp(&(other.base.n(), other.base.edges()))
            .then_with(|| self.canonical_parts().cmp(&other.canonical_parts()))
    }
}

impl Hash for Drawing {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.base.hash(state);
        self.canonical_parts().hash(state);
    }
}

#[derive(Serialize, Deserialize)]
struct DrawingRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    crossings: Vec<Crossing>,
    #[serde(default)]
    order: BTreeMap<usize, Vec<usize>>,
}

impl Serialize for Drawing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // Sequences of length 0 or 1 are implied by the crossing list.
        let order = self
            .order
            .iter()
            .enumerate()
            .filter(|(_, seq)| seq.len() >= 2)
            .map(|(e, seq)| (e, seq.clone()))
            .collect();
        DrawingRepr {
            n: self.base.n(),
            edges: self.base.edges().to_vec(),
            crossings: self.crossings.clone(),
            order,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Drawing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Drawing, D::Error> {
        let repr = DrawingRepr::deserialize(d)?;
        Drawing::try_from(repr).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<DrawingRepr> for Drawing {
    type Error = DrawingError;

    fn try_from(repr: DrawingRepr) -> Result<Drawing, DrawingError> {
        let base = Graph::from_edges(repr.n, repr.edges)?;
        let m = base.m();
        let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (id, c) in repr.crossings.iter().enumerate() {
            for e in [c.a, c.b] {
                if e >= m {
                    return Err(DrawingError::DanglingCrossing {
                        crossing: id,
                        edge: e,
                        m,
                    });
                }
            }
            on_edge[c.a].push(id);
            if c.b != c.a {
                on_edge[c.b].push(id);
            }
        }
        if let Some(&e) = repr.order.keys().find(|&&e| e >= m) {
            return Err(DrawingError::BadOrder {
                edge: e,
                message: format!("no such edge among {m}"),
            });
        }
        let mut order = Vec::with_capacity(m);
        for (e, implied) in on_edge.into_iter().enumerate() {
            match repr.order.get(&e) {
                Some(seq) => order.push(seq.clone()),
                None if implied.len() <= 1 => order.push(implied),
                None => {
                    return Err(DrawingError::MissingOrder {
                        edge: e,
                        count: implied.len(),
                    })
                }
            }
        }
        Drawing::new(base, repr.crossings, order)
    }
}

/// The graph obtained by replacing every crossing with a dummy vertex.
///
/// Base vertices keep their ids; the dummy of crossing `x` is `n + x`.
/// Edges are segments and may repeat when two edges cross twice in a row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Planarization {
    n_base: usize,
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
}

impl Planarization {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Number of segments, counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertices visited by base edge `e`, from its smaller endpoint.
    pub fn path(&self, e: usize) -> &[usize] {
        &self.paths[e]
    }

    pub fn is_dummy(&self, v: usize) -> bool {
        v >= self.n_base
    }

    /// The underlying simple graph (parallel segments merged).
    pub fn to_graph(&self) -> Graph {
        let mut seen = HashSet::new();
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .filter(|e| seen.insert(*e));
        Graph::from_edges(self.vertex_count, edges).expect("segments join distinct vertices")
    }

    /// Contracts every segment path back to a single edge.
    pub fn contract(&self) -> Graph {
        let edges = self.paths.iter().map(|p| (p[0], p[p.len() - 1]));
        Graph::from_edges(self.n_base, edges).expect("paths join the base endpoints")
    }

    pub fn is_planar(&self) -> bool {
        is_planar_edges(self.vertex_count, &self.edges)
    }
}

pub fn planarize(d: &Drawing) -> Planarization {
    let n = d.base.n();
    let mut edges = Vec::with_capacity(d.base.m() + 2 * d.crossings.len());
    let mut paths = Vec::with_capacity(d.base.m());
    for (e, &(u, v)) in d.base.edges().iter().enumerate() {
        let mut path = vec![u];
        path.extend(d.order[e].iter().map(|&x| n + x));
        path.push(v);
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
        paths.push(path);
    }
    Planarization {
        n_base: n,
        vertex_count: n + d.crossings.len(),
        edges,
        paths,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Invalid(String),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Valid iff the drawing can be realized in the plane with exactly its
/// crossings, each transversal, in the listed orders.
pub fn validate_drawing(d: &Drawing) -> Validity {
    if !planarize(d).is_planar() {
        return Validity::Invalid("planarization is not planar".into());
    }
    let routes = RouteSystem::from_drawing(d);
    if !routes.is_realizable() {
        return Validity::Invalid("planarization is planar only with some crossing drawn as a touching".into());
    }
    Validity::Valid
}

fn require_valid(d: &Drawing) -> Result<(), DrawingError> {
    match validate_drawing(d) {
        Validity::Valid => Ok(()),
        Validity::Invalid(reason) => Err(DrawingError::Invalid(reason)),
    }
}

pub fn crossing_count(d: &Drawing) -> Result<usize, DrawingError> {
    require_valid(d)?;
    Ok(d.crossing_count())
}

/// Ids of crossings between adjacent edges.
pub fn trivial_crossings(d: &Drawing) -> Result<Vec<usize>, DrawingError> {
    require_valid(d)?;
    Ok((0..d.crossings.len()).filter(|&x| d.is_trivial(x)).collect())
}

/// No trivial crossings, and no pair of edges crossing twice.
pub fn is_good(d: &Drawing) -> Result<bool, DrawingError> {
    require_valid(d)?;
    Ok(is_good_unchecked(d))
}

pub(crate) fn is_good_unchecked(d: &Drawing) -> bool {
    let mut pairs = HashSet::new();
    (0..d.crossings.len()).all(|x| !d.is_trivial(x) && pairs.insert(d.crossings[x].key()))
}

/// States visited when searching for a better surgery order.
const SURGERY_SEARCH_STATES: usize = 100_000;

/// Removes every trivial crossing by local surgery: at a crossing of two
/// edges with a common end, the two edges exchange their initial portions;
/// a self-crossing loop is cut off; two edges crossing twice exchange the
/// portions between the crossings. Each step removes at least one crossing.
///
/// Surgery at the smallest trivial crossing id comes first. A head swap can
/// turn a crossing into a non-trivial one; if that leaves more non-trivial
/// crossings than `d` had, other surgery orders are searched for a result
/// within that count.
pub fn eliminate_trivial(d: &Drawing) -> Result<Drawing, DrawingError> {
    require_valid(d)?;
    let start = RouteSystem::from_drawing(d);
    let mut routes = start.clone();
    routes.simplify();
    let limit = (0..d.crossings.len()).filter(|&x| !d.is_trivial(x)).count();
    if routes.crossing_total() > limit {
        if let Some(better) = start.simplify_within(limit, SURGERY_SEARCH_STATES) {
            routes = better;
        }
    }
    let out = routes.into_drawing();
    debug_assert!(validate_drawing(&out).is_valid());
    Ok(out)
}

/// Edges at `v` that take part in at least one crossing.
pub fn crossed_edges_at(d: &Drawing, v: usize) -> Result<Vec<usize>, DrawingError> {
    if v >= d.base.n() {
        return Err(DrawingError::VertexOutOfRange {
            vertex: v,
            n: d.base.n(),
        });
    }
    require_valid(d)?;
    let mut out: Vec<usize> = d
        .base
        .incident(v)
        .iter()
        .map(|&(_, e)| e)
        .filter(|&e| !d.order[e].is_empty())
        .collect();
    out.sort_unstable();
    Ok(out)
}

impl fmt::Display for Drawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges = self.base.edges();
        write!(f, "{} crossings", self.crossings.len())?;
        for (i, c) in self.crossings.iter().enumerate() {
            let (a, b) = (edges[c.a], edges[c.b]);
            write!(
                f,
                "{}#{i}: {}-{} x {}-{}",
                if i == 0 { ": " } else { ", " },
                a.0,
                a.1,
                b.0,
                b.1
            )?;
        }
        Ok(())
    }
}
