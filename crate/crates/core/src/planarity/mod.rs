//! Planarity testing, planar embeddings, Kuratowski subdivisions and the
//! edge-count lower bound on the crossing number.

mod kuratowski;
mod lr;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

pub use kuratowski::{find_kuratowski, KuratowskiKind, KuratowskiWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("graph is planar; no Kuratowski subdivision exists")]
    Planar,
    #[error("invalid Kuratowski witness: {0}")]
    InvalidWitness(String),
}

/// A combinatorial embedding: the clockwise cyclic order of neighbors at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    /// Number of facial walks of the rotation system.
    pub fn face_count(&self) -> usize {
        let n = self.rotation.len();
        // Index darts (v, i) = v's i-th neighbor.
        let offset: Vec<usize> = std::iter::once(0)
            .chain(self.rotation.iter().scan(0, |acc, r| {
                *acc += r.len();
                Some(*acc)
            }))
            .collect();
        let mut seen = vec![false; offset[n]];
        let mut faces = 0;
        for v in 0..n {
            for i in 0..self.rotation[v].len() {
                if seen[offset[v] + i] {
                    continue;
                }
                faces += 1;
                let (mut a, mut j) = (v, i);
                while !seen[offset[a] + j] {
                    seen[offset[a] + j] = true;
                    let b = self.rotation[a][j];
                    let back = self.rotation[b]
                        .iter()
                        .position(|&x| x == a)
                        .expect("rotation system is symmetric");
                    let next = (back + 1) % self.rotation[b].len();
                    a = b;
                    j = next;
                }
            }
        }
        faces
    }

    /// True if this rotation system describes `g` and satisfies Euler's
    /// formula on every component, i.e. it is a genuine plane embedding.
    pub fn is_plane_embedding_of(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.n() {
            return false;
        }
        for v in 0..g.n() {
            let mut r = self.rotation[v].clone();
            r.sort_unstable();
            if !r.iter().copied().eq(g.neighbors(v)) {
                return false;
            }
        }
        let (comps, nontrivial_vertices) = edge_components(g);
        let expected = g.m() + 2 * comps - nontrivial_vertices;
        self.face_count() == expected
    }
}

/// Number of components containing an edge, and the number of non-isolated vertices.
fn edge_components(g: &Graph) -> (usize, usize) {
    let mut seen = vec![false; g.n()];
    let (mut comps, mut verts) = (0, 0);
    for s in 0..g.n() {
        if seen[s] || g.degree(s) == 0 {
            continue;
        }
        comps += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            verts += 1;
            for w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    (comps, verts)
}

pub fn is_planar(g: &Graph) -> bool {
    lr::embed(&adjacency(g), g.m()).is_some()
}

/// A plane embedding of `g`, or `None` when `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let rotation = lr::embed(&adjacency(g), g.m())?;
    let emb = Embedding { rotation };
    debug_assert!(emb.is_plane_embedding_of(g), "left-right embedding failed Euler check");
    Some(emb)
}

fn adjacency(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    (0..g.n()).map(|v| g.incident(v).to_vec()).collect()
}

/// Planarity of the graph on `n` vertices with the given edges; repeated edges
/// are tolerated and ignored. Used on hot paths that never build a [`Graph`].
pub(crate) fn is_planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    let (adj, m) = simple_adjacency(n, edges);
    lr::embed(&adj, m).is_some()
}

pub(crate) fn embed_edges(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let (adj, m) = simple_adjacency(n, edges);
    lr::embed(&adj, m)
}

fn simple_adjacency(n: usize, edges: &[(usize, usize)]) -> (Vec<Vec<(usize, usize)>>, usize) {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut m = 0;
    for &(u, v) in edges {
        debug_assert!(u != v);
        if adj[u].iter().any(|&(w, _)| w == v) {
            continue;
        }
        adj[u].push((v, m));
        adj[v].push((u, m));
        m += 1;
    }
    (adj, m)
}

/// `max(0, m - 3n + 6)`: every edge beyond the planar maximum forces a crossing.
pub fn euler_lower_bound(g: &Graph) -> Result<usize, GraphError> {
    if g.n() < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "edge-count crossing bound needs n >= 3, got n = {}",
            g.n()
        )));
    }
    Ok((g.m() + 6).saturating_sub(3 * g.n()))
}
