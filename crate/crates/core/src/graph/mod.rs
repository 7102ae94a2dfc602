//! Simple undirected graphs on dense vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Edges keep the order in which they
//! were supplied, so an edge index is stable across serialization; each edge
//! is stored with its smaller endpoint first.

mod format;
mod named;
mod set;
mod structure;

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use format::{parse_graph, serialize_graph, GraphFormat};
pub use named::construct_named;
pub use set::VertexSet;
pub use structure::{
    automorphisms, clique_number, is_connected, is_isomorphic, local_connectivity, maximum_clique, min_degree_vertex,
    vertex_connectivity, vertex_connectivity_at_least,
};

/// Where in an input a graph error was detected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// 1-based line of an edge-list document.
    Line(usize),
    /// 0-based byte offset into a graph6 string.
    Offset(usize),
    /// Index into an edge array.
    Edge(usize),
    Unknown,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Offset(o) => write!(f, "offset {o}"),
            Location::Edge(i) => write!(f, "edge #{i}"),
            Location::Unknown => write!(f, "input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("{location}: malformed input: {message}")]
    Malformed { location: Location, message: String },
    #[error("{location}: loop at vertex {vertex}")]
    Loop { location: Location, vertex: usize },
    #[error("{location}: endpoint {vertex} out of range for {n} vertices")]
    OutOfRange {
        location: Location,
        vertex: usize,
        n: usize,
    },
    #[error("{location}: duplicate edge {u}-{v}")]
    Duplicate { location: Location, u: usize, v: usize },
    #[error("graph has no vertices")]
    Empty,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// `(neighbor, edge index)` sorted by neighbor.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph, rejecting loops, out-of-range endpoints and repeated edges.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n);
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.push_edge(u, v, Location::Edge(i))?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub(crate) fn push_edge(&mut self, u: usize, v: usize, at: Location) -> Result<usize, GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange {
                    location: at,
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(GraphError::Loop {
                location: at,
                vertex: u,
            });
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        let pos = match self.adj[a].binary_search_by_key(&b, |&(w, _)| w) {
            Ok(_) => {
                return Err(GraphError::Duplicate {
                    location: at,
                    u: a,
                    v: b,
                })
            }
            Err(p) => p,
        };
        let id = self.edges.len();
        self.edges.push((a, b));
        self.adj[a].insert(pos, (b, id));
        let pos = self.adj[b].binary_search_by_key(&a, |&(w, _)| w).unwrap_err();
        self.adj[b].insert(pos, (a, id));
        Ok(id)
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in index order, smaller endpoint first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    /// `(neighbor, edge index)` pairs of `v` in increasing neighbor order.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        self.adj[u]
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|p| self.adj[u][p].1)
    }

    /// True when two edges share an endpoint.
    pub fn edges_adjacent(&self, e: usize, f: usize) -> bool {
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// The same graph with edge `id` removed; later edge indices shift down by one.
    pub fn without_edge(&self, id: usize) -> Graph {
        let edges = self.edges.iter().enumerate().filter(|&(i, _)| i != id).map(|(_, &e)| e);
        Graph::from_edges(self.n, edges).expect("subgraph of a simple graph is simple")
    }

    /// Subgraph induced by `keep`, relabeled to `0..keep.len()` in increasing
    /// order. Returns the graph and the new-to-old vertex map.
    pub fn induced(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = keep.iter().collect();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_of[u] != usize::MAX && new_of[v] != usize::MAX)
            .map(|&(u, v)| (new_of[u], new_of[v]));
        let g = Graph::from_edges(old.len(), edges).expect("induced subgraph is simple");
        (g, old)
    }

    /// Graph on the same vertices containing only the listed edges.
    pub fn edge_subgraph(&self, ids: impl IntoIterator<Item = usize>) -> Graph {
        let mut ids: Vec<usize> = ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        Graph::from_edges(self.n, ids.into_iter().map(|i| self.edges[i])).expect("edge subgraph is simple")
    }

    /// Vertex-disjoint union followed by all edges between the two parts.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        let mut g = Graph::empty(self.n + other.n);
        for &(u, v) in &self.edges {
            g.push_edge(u, v, Location::Unknown).unwrap();
        }
        for &(u, v) in &other.edges {
            g.push_edge(u + off, v + off, Location::Unknown).unwrap();
        }
        for u in 0..self.n {
            for v in 0..other.n {
                g.push_edge(u, v + off, Location::Unknown).unwrap();
            }
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`, keeping edge order.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling a simple graph by a permutation")
    }

    fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

/// Equality is on the vertex count and edge set; edge order is ignored.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m() == other.m() && self.sorted_edges() == other.sorted_edges()
    }
}

impl Eq for Graph {}

impl Hash for Graph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.sorted_edges().hash(state);
    }
}

/// JSON shape `{"n": int, "edges": [[u, v], ...]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = GraphRepr::deserialize(d)?;
        Graph::from_edges(r.n, r.edges.into_iter().map(|[u, v]| (u, v))).map_err(serde::de::Error::custom)
    }
}
