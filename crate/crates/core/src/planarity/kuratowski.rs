use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_planar_edges, PlanarityError};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

impl fmt::Display for KuratowskiKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KuratowskiKind::K5 => write!(f, "K5-subdivision"),
            KuratowskiKind::K33 => write!(f, "K33-subdivision"),
        }
    }
}

/// A subdivision of K5 or K3,3 inside a host graph.
///
/// For K5 the branch vertices are sorted and `paths` lists the ten pairs
/// `(i, j)`, `i < j`, in lexicographic order. For K3,3 the first three branch
/// vertices form one side, the last three the other, and `paths` lists the
/// nine cross pairs side-major. Every path runs from the first branch vertex
/// of its pair to the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl KuratowskiWitness {
    /// Branch-vertex index pairs joined by `paths`, in the same order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        match self.kind {
            KuratowskiKind::K5 => (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect(),
            KuratowskiKind::K33 => (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect(),
        }
    }

    /// Checks the witness against `g`: path edges exist, endpoints are the
    /// right branch vertices, and paths are internally vertex-disjoint.
    pub fn verify(&self, g: &Graph) -> Result<(), PlanarityError> {
        let fail = |msg: String| Err(PlanarityError::InvalidWitness(msg));
        let (nb, np) = match self.kind {
            KuratowskiKind::K5 => (5, 10),
            KuratowskiKind::K33 => (6, 9),
        };
        if self.branch_vertices.len() != nb || self.paths.len() != np {
            return fail(format!(
                "{} needs {nb} branch vertices and {np} paths, found {} and {}",
                self.kind,
                self.branch_vertices.len(),
                self.paths.len()
            ));
        }
        let branch: HashSet<usize> = self.branch_vertices.iter().copied().collect();
        if branch.len() != nb || self.branch_vertices.iter().any(|&v| v >= g.n()) {
            return fail("branch vertices must be distinct vertices of the host".into());
        }
        let mut interior = HashSet::new();
        for (path, (i, j)) in self.paths.iter().zip(self.pairs()) {
            let (a, b) = (self.branch_vertices[i], self.branch_vertices[j]);
            if path.len() < 2 || path[0] != a || path[path.len() - 1] != b {
                return fail(format!("path {path:?} does not join {a} and {b}"));
            }
            for w in path.windows(2) {
                if w[0] >= g.n() || w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
                    return fail(format!("path edge {}-{} missing from host", w[0], w[1]));
                }
            }
            for &x in &path[1..path.len() - 1] {
                if branch.contains(&x) || !interior.insert(x) {
                    return fail(format!("vertex {x} is shared by two paths"));
                }
            }
        }
        Ok(())
    }
}

/// Indices of a minimal nonplanar subset of `edges`, or `None` if the graph is
/// planar. Minimality makes the subset a Kuratowski subdivision.
pub(crate) fn minimal_nonplanar_edges(n: usize, edges: &[(usize, usize)]) -> Option<Vec<usize>> {
    if is_planar_edges(n, edges) {
        return None;
    }
    // Shrink to a nonplanar prefix first, then drop every removable edge.
    let (mut lo, mut hi) = (0, edges.len());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if is_planar_edges(n, &edges[..mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let mut keep: Vec<usize> = (0..lo).collect();
    let mut i = 0;
    while i < keep.len() {
        let trial: Vec<(usize, usize)> = keep
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &e)| edges[e])
            .collect();
        if is_planar_edges(n, &trial) {
            i += 1;
        } else {
            keep.remove(i);
        }
    }
    Some(keep)
}

/// Turns a Kuratowski subdivision given as an edge list into a witness.
pub(crate) fn witness_from_edges(n: usize, edges: &[(usize, usize)]) -> KuratowskiWitness {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    let kind = match branch.len() {
        5 => KuratowskiKind::K5,
        6 => KuratowskiKind::K33,
        k => panic!("edge set is not a Kuratowski subdivision ({k} branch vertices)"),
    };
    let mut is_branch = vec![false; n];
    for &b in &branch {
        is_branch[b] = true;
    }
    // Trace every path leaving a branch vertex.
    let mut traced: Vec<Vec<usize>> = Vec::new();
    for &b in &branch {
        for &first in &adj[b] {
            let mut path = vec![b, first];
            while !is_branch[*path.last().unwrap()] {
                let cur = *path.last().unwrap();
                let prev = path[path.len() - 2];
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                path.push(next);
            }
            if b < *path.last().unwrap() {
                traced.push(path);
            }
        }
    }
    let branch_vertices = match kind {
        KuratowskiKind::K5 => branch,
        KuratowskiKind::K33 => {
            let a = branch[0];
            let mut side_b: Vec<usize> = traced
                .iter()
                .filter_map(|p| {
                    let (s, t) = (p[0], p[p.len() - 1]);
                    (s == a).then_some(t).or((t == a).then_some(s))
                })
                .collect();
            side_b.sort_unstable();
            let mut side_a: Vec<usize> = branch.iter().copied().filter(|v| !side_b.contains(v)).collect();
            side_a.sort_unstable();
            side_a.extend(side_b);
            side_a
        }
    };
    let pos = |v: usize| branch_vertices.iter().position(|&x| x == v).unwrap();
    let mut w = KuratowskiWitness {
        kind,
        branch_vertices: branch_vertices.clone(),
        paths: Vec::new(),
    };
    let pairs = w.pairs();
    let mut paths = vec![Vec::new(); pairs.len()];
    for mut p in traced {
        let (mut i, mut j) = (pos(p[0]), pos(p[p.len() - 1]));
        if i > j {
            std::mem::swap(&mut i, &mut j);
            p.reverse();
        }
        let slot = pairs
            .iter()
            .position(|&q| q == (i, j))
            .expect("traced path joins a branch pair of the subdivision");
        paths[slot] = p;
    }
    w.paths = paths;
    w
}

/// A Kuratowski subdivision contained in `g`.
pub fn find_kuratowski(g: &Graph) -> Result<KuratowskiWitness, PlanarityError> {
    let keep = minimal_nonplanar_edges(g.n(), g.edges()).ok_or(PlanarityError::Planar)?;
    let sub: Vec<(usize, usize)> = keep.iter().map(|&e| g.edge(e)).collect();
    let w = witness_from_edges(g.n(), &sub);
    debug_assert!(w.verify(g).is_ok());
    Ok(w)
}
