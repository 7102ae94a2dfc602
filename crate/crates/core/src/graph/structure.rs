use std::collections::VecDeque;

use super::{Graph, GraphError, VertexSet};

/// Smallest-id vertex of minimum degree.
pub fn min_degree_vertex(g: &Graph) -> Result<usize, GraphError> {
    (0..g.n()).min_by_key(|&v| (g.degree(v), v)).ok_or(GraphError::Empty)
}

/// Size of a largest clique.
pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    Ok(maximum_clique(g)?.len())
}

/// A largest clique, found by Bron–Kerbosch with Tomita pivoting and a
/// size bound. Vertices are returned in increasing order.
pub fn maximum_clique(g: &Graph) -> Result<Vec<usize>, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    let nbrs: Vec<VertexSet> = (0..g.n())
        .map(|v| VertexSet::from_iter(g.n(), g.neighbors(v)))
        .collect();
    let mut best = vec![0];
    let mut r = Vec::new();
    expand(&nbrs, &mut r, VertexSet::full(g.n()), VertexSet::new(g.n()), &mut best);
    best.sort_unstable();
    Ok(best)
}

fn expand(nbrs: &[VertexSet], r: &mut Vec<usize>, mut p: VertexSet, mut x: VertexSet, best: &mut Vec<usize>) {
    if p.is_empty() {
        if x.is_empty() && r.len() > best.len() {
            *best = r.clone();
        }
        return;
    }
    if r.len() + p.len() <= best.len() {
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| nbrs[u].intersection_len(&p))
        .unwrap();
    let candidates: Vec<usize> = p.difference(&nbrs[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        expand(nbrs, r, p.intersect(&nbrs[v]), x.intersect(&nbrs[v]), best);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

pub fn is_connected(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == g.n()
}

/// Unit-capacity flow network on the vertex-split graph: vertex `v` becomes
/// `2v -> 2v+1` with capacity one, every edge becomes two infinite arcs.
struct SplitNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl SplitNetwork {
    const INF: u32 = u32::MAX / 2;

    fn new(g: &Graph, s: usize, t: usize) -> SplitNetwork {
        let mut net = SplitNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); 2 * g.n()],
        };
        for v in 0..g.n() {
            let c = if v == s || v == t { Self::INF } else { 1 };
            net.arc(2 * v, 2 * v + 1, c);
        }
        for &(u, v) in g.edges() {
            net.arc(2 * u + 1, 2 * v, Self::INF);
            net.arc(2 * v + 1, 2 * u, Self::INF);
        }
        net
    }

    fn arc(&mut self, a: usize, b: usize, c: u32) {
        self.out[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.out[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    /// Augments along one shortest path; false when none exists.
    fn augment(&mut self, src: usize, dst: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut queue = VecDeque::from([src]);
        let mut seen = vec![false; self.out.len()];
        seen[src] = true;
        while let Some(a) = queue.pop_front() {
            if a == dst {
                break;
            }
            for &arc in &self.out[a] {
                let b = self.head[arc];
                if !seen[b] && self.cap[arc] > 0 {
                    seen[b] = true;
                    via[b] = arc;
                    queue.push_back(b);
                }
            }
        }
        if !seen[dst] {
            return false;
        }
        let mut b = dst;
        while b != src {
            let arc = via[b];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            b = self.head[arc ^ 1];
        }
        true
    }
}

/// Number of internally vertex-disjoint `s`–`t` paths for non-adjacent `s`, `t`,
/// counted up to `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    assert!(
        s != t && !g.has_edge(s, t),
        "local connectivity needs non-adjacent vertices"
    );
    let mut net = SplitNetwork::new(g, s, t);
    let mut flow = 0;
    while flow < limit && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    flow
}

/// True iff `g` has more than `k` vertices and no vertex cut of fewer than `k` vertices.
pub fn vertex_connectivity_at_least(g: &Graph, k: usize) -> bool {
    assert!(k >= 1, "connectivity threshold must be positive");
    if g.n() <= k {
        return false;
    }
    for s in 0..g.n() {
        for t in s + 1..g.n() {
            if !g.has_edge(s, t) && local_connectivity(g, s, t, k) < k {
                return false;
            }
        }
    }
    true
}

/// Vertex connectivity; `n - 1` for complete graphs, 0 for disconnected ones.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n.saturating_sub(1);
    for s in 0..n {
        for t in s + 1..n {
            if !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
            }
        }
    }
    best
}

/// Every automorphism of `g` as a vertex permutation, in lexicographic order
/// (so the identity comes first).
pub fn automorphisms(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, image: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        let v = image.len();
        if v == g.n() {
            out.push(image.clone());
            return;
        }
        for w in 0..g.n() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != g.has_edge(image[u], w)) {
                continue;
            }
            used[w] = true;
            image.push(w);
            extend(g, image, used, out);
            image.pop();
            used[w] = false;
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::with_capacity(g.n()), &mut vec![false; g.n()], &mut out);
    out
}

/// True if `g` and `h` are isomorphic.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    fn extend(g: &Graph, h: &Graph, image: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = image.len();
        if v == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used[w] || h.degree(w) != g.degree(v) {
                continue;
            }
            if (0..v).any(|u| g.has_edge(u, v) != h.has_edge(image[u], w)) {
                continue;
            }
            used[w] = true;
            image.push(w);
            if extend(g, h, image, used) {
                return true;
            }
            image.pop();
            used[w] = false;
        }
        false
    }
    let degrees = |x: &Graph| {
        let mut d: Vec<usize> = (0..x.n()).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    g.n() == h.n()
        && g.m() == h.m()
        && degrees(g) == degrees(h)
        && extend(g, h, &mut Vec::new(), &mut vec![false; h.n()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct_named;
    use proptest::prelude::*;

    fn named(s: &str) -> Graph {
        construct_named(s).unwrap()
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(clique_number(&named("K6")).unwrap(), 6);
        assert_eq!(clique_number(&named("join(C3,C5)")).unwrap(), 5);
        assert_eq!(clique_number(&named("C5")).unwrap(), 2);
        assert_eq!(clique_number(&Graph::empty(3)).unwrap(), 1);
        assert_eq!(clique_number(&Graph::empty(0)), Err(GraphError::Empty));
    }

    #[test]
    fn connectivity_examples() {
        assert!(vertex_connectivity_at_least(&named("K6"), 4));
        assert!(vertex_connectivity_at_least(&named("C5"), 2));
        assert!(!vertex_connectivity_at_least(&named("C5"), 3));
        assert!(vertex_connectivity_at_least(&named("join(C3,C5)"), 4));
        assert!(!vertex_connectivity_at_least(&named("K4"), 4));
        assert_eq!(vertex_connectivity(&named("K222")), 4);
        assert_eq!(vertex_connectivity(&named("K35")), 3);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
    }

    #[test]
    fn automorphism_group_orders() {
        let order = |s: &str| automorphisms(&named(s)).len();
        assert_eq!(order("K5"), 120);
        assert_eq!(order("K35"), 720);
        assert_eq!(order("join(C3,C5)"), 60);
        assert_eq!(order("C5"), 10);
        let path = named("P4");
        assert_eq!(automorphisms(&path), vec![vec![0, 1, 2, 3], vec![3, 2, 1, 0]]);
    }

    #[test]
    fn isomorphism() {
        let k33 = named("K33");
        let prism_free = k33.relabel(&[3, 0, 4, 1, 5, 2]);
        assert!(is_isomorphic(&k33, &prism_free));
        let prism = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert!(!is_isomorphic(&k33, &prism));
        assert!(!is_isomorphic(&named("C5"), &named("P5")));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree_vertex(&named("K6")).unwrap(), 0);
        let star = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(min_degree_vertex(&star).unwrap(), 1);
        assert_eq!(min_degree_vertex(&named("P3")).unwrap(), 0);
        assert_eq!(min_degree_vertex(&Graph::empty(0)), Err(GraphError::Empty));
    }

    fn brute_clique(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                vs.iter()
                    .enumerate()
                    .all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.has_edge(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    /// Deletes every vertex subset of size `k - 1` and checks connectivity.
    fn brute_connectivity_at_least(g: &Graph, k: usize) -> bool {
        let n = g.n();
        if n <= k {
            return false;
        }
        (0u32..1 << n).filter(|m| m.count_ones() as usize == k - 1).all(|mask| {
            let keep = VertexSet::from_iter(n, (0..n).filter(|&i| mask >> i & 1 == 0));
            is_connected(&g.induced(&keep).0)
        })
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1usize..=max_n, 0.0f64..1.0).prop_flat_map(|(n, p)| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let len = pairs.len();
            proptest::collection::vec(0.0f64..1.0, len).prop_map(move |r| {
                Graph::from_edges(n, pairs.iter().zip(r).filter(|(_, x)| *x < p).map(|(&e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn clique_matches_subset_enumeration(g in arb_graph(9)) {
            let w = clique_number(&g).unwrap();
            prop_assert_eq!(w, brute_clique(&g));
            prop_assert!(w <= g.n());
            prop_assert_eq!(w == g.n(), g.is_complete());
        }

        #[test]
        fn connectivity_matches_cut_enumeration(g in arb_graph(9), k in 1usize..5) {
            prop_assert_eq!(vertex_connectivity_at_least(&g, k), brute_connectivity_at_least(&g, k));
        }
    }
}
