//! Depth-first search over crossing configurations.

use std::collections::HashSet;

use crate::drawing::{planarization_edges, realization_edges, Crossing, Drawing};
use crate::graph::Graph;
use crate::planarity::is_planar_edges;

use super::{Mode, SearchStats};

/// Which crossings exist and where they sit along each edge.
#[derive(Clone, Debug)]
pub(super) struct Config {
    routes: Vec<Vec<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl Config {
    pub(super) fn empty(m: usize) -> Config {
        Config {
            routes: vec![Vec::new(); m],
            pairs: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.pairs.len()
    }

    fn crosses(&self, e: usize, f: usize) -> bool {
        self.pairs.iter().any(|&p| p == (e.min(f), e.max(f)))
    }

    /// Adds a crossing in segment `s` of `e` and segment `t` of `f`.
    fn with_crossing(&self, (e, s): (usize, usize), (f, t): (usize, usize)) -> Config {
        let mut c = self.clone();
        let id = c.pairs.len();
        c.pairs.push((e.min(f), e.max(f)));
        c.routes[e].insert(s, id);
        c.routes[f].insert(t, id);
        c
    }

    pub(super) fn to_drawing(&self, g: &Graph) -> Drawing {
        let crossings = self.pairs.iter().map(|&(a, b)| Crossing { a, b }).collect();
        Drawing::new(g.clone(), crossings, self.routes.clone()).expect("search keeps configurations consistent")
    }
}

/// An automorphism acting on edges: the image of edge `from[e]` is `e`,
/// traversed backwards if `flip[e]`.
#[derive(Clone, Debug)]
pub(super) struct EdgeMap {
    from: Vec<usize>,
    flip: Vec<bool>,
}

impl EdgeMap {
    pub(super) fn new(g: &Graph, perm: &[usize]) -> EdgeMap {
        let mut from = vec![0; g.m()];
        let mut flip = vec![false; g.m()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            let to = g
                .edge_index(perm[u], perm[v])
                .expect("automorphism maps edges to edges");
            from[to] = e;
            flip[to] = perm[u] > perm[v];
        }
        EdgeMap { from, flip }
    }
}

pub(super) struct Exhausted;

enum Node {
    Valid,
    /// Segments `(edge, segment)` of a nonplanar part of the configuration;
    /// every extension that becomes valid crosses two of them.
    Blocked(Vec<(usize, usize)>),
    /// No extension within the allowed number of crossings is valid.
    Refuted,
}

pub(super) struct Search<'a> {
    g: &'a Graph,
    mode: Mode,
    budget: u64,
    pub stats: SearchStats,
    symmetry: Vec<EdgeMap>,
    seen: HashSet<Vec<u32>>,
}

impl<'a> Search<'a> {
    pub(super) fn new(g: &'a Graph, mode: Mode, budget: u64, symmetry: Vec<EdgeMap>) -> Search<'a> {
        Search {
            g,
            mode,
            budget,
            stats: SearchStats::default(),
            symmetry,
            seen: HashSet::new(),
        }
    }

    fn planar(&mut self, nv: usize, edges: &[(usize, usize)]) -> Result<bool, Exhausted> {
        if self.stats.planarity_calls >= self.budget {
            return Err(Exhausted);
        }
        self.stats.planarity_calls += 1;
        Ok(is_planar_edges(nv, edges))
    }

    /// Shrinks `candidates` to a subset that is still nonplanar together with
    /// `fixed` but becomes planar when any one member is removed.
    fn minimal_nonplanar(
        &mut self,
        nv: usize,
        fixed: &[(usize, usize)],
        candidates: &[(usize, usize)],
    ) -> Result<Vec<usize>, Exhausted> {
        let mut trial: Vec<(usize, usize)> = fixed.to_vec();
        let (mut lo, mut hi) = (0, candidates.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            trial.truncate(fixed.len());
            trial.extend(&candidates[..mid]);
            if self.planar(nv, &trial)? {
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        let mut keep: Vec<usize> = (0..lo).collect();
        let mut i = 0;
        while i < keep.len() {
            trial.truncate(fixed.len());
            trial.extend(
                keep.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| candidates[x]),
            );
            if self.planar(nv, &trial)? {
                i += 1;
            } else {
                keep.remove(i);
            }
        }
        Ok(keep)
    }

    /// Classifies `c` when at most `spare` more crossings may be added.
    ///
    /// Segment-disjoint nonplanar subsets each need a crossing of their own,
    /// so finding `spare + 1` of them refutes every extension.
    fn evaluate(&mut self, c: &Config, spare: usize) -> Result<Node, Exhausted> {
        let (n, edges) = (self.g.n(), self.g.edges());
        let (nv, segs, labels) = planarization_edges(n, edges, &c.routes);
        if !self.planar(nv, &segs)? {
            let labels: Vec<(usize, usize)> = labels.iter().map(|l| (l.edge, l.seg)).collect();
            return self.block(nv, &[], segs, labels, spare);
        }
        if c.len() == 0 {
            return Ok(Node::Valid);
        }
        let (nv, all, labels) = realization_edges(n, edges, &c.routes);
        if self.planar(nv, &all)? {
            return Ok(Node::Valid);
        }
        let mut fixed = Vec::new();
        let mut cand = Vec::new();
        let mut cand_labels = Vec::new();
        for (&edge, label) in all.iter().zip(&labels) {
            match label {
                Some(l) => {
                    cand.push(edge);
                    cand_labels.push((l.edge, l.seg));
                }
                None => fixed.push(edge),
            }
        }
        self.block(nv, &fixed, cand, cand_labels, spare)
    }

    /// `fixed` plus `cand` is known to be nonplanar.
    fn block(
        &mut self,
        nv: usize,
        fixed: &[(usize, usize)],
        mut cand: Vec<(usize, usize)>,
        mut labels: Vec<(usize, usize)>,
        spare: usize,
    ) -> Result<Node, Exhausted> {
        if spare == 0 {
            return Ok(Node::Refuted);
        }
        let keep = self.minimal_nonplanar(nv, fixed, &cand)?;
        let first: Vec<(usize, usize)> = keep.iter().map(|&i| labels[i]).collect();
        let mut found = 1;
        let mut used = keep;
        loop {
            // Drop the segments of the last subset found.
            let mut i = 0;
            let mut u = 0;
            used.sort_unstable();
            cand.retain(|_| {
                let drop = u < used.len() && used[u] == i;
                u += drop as usize;
                i += 1;
                !drop
            });
            let mut i = 0;
            let mut u = 0;
            labels.retain(|_| {
                let drop = u < used.len() && used[u] == i;
                u += drop as usize;
                i += 1;
                !drop
            });
            let mut trial = fixed.to_vec();
            trial.extend(&cand);
            if self.planar(nv, &trial)? {
                return Ok(Node::Blocked(first));
            }
            found += 1;
            if found > spare {
                return Ok(Node::Refuted);
            }
            used = self.minimal_nonplanar(nv, fixed, &cand)?;
        }
    }

    fn allowed(&self, c: &Config, e: usize, f: usize) -> bool {
        e != f
            && match self.mode {
                Mode::AnyDrawing => true,
                Mode::GoodOnly => !self.g.edges_adjacent(e, f) && !c.crosses(e, f),
            }
    }

    fn children(&self, c: &Config, segs: &[(usize, usize)]) -> Vec<Config> {
        let mut segs = segs.to_vec();
        segs.sort_unstable();
        segs.dedup();
        let mut out = Vec::new();
        for (i, &x) in segs.iter().enumerate() {
            for &y in &segs[i + 1..] {
                if self.allowed(c, x.0, y.0) {
                    out.push(c.with_crossing(x, y));
                }
            }
        }
        out
    }

    fn all_children(&self, c: &Config) -> Vec<Config> {
        let segs: Vec<(usize, usize)> = (0..self.g.m())
            .flat_map(|e| (0..=c.routes[e].len()).map(move |s| (e, s)))
            .collect();
        self.children(c, &segs)
    }

    /// Relabels crossings by first appearance, edge by edge.
    fn key_under(&self, c: &Config, map: Option<&EdgeMap>) -> Vec<u32> {
        let mut label = vec![u32::MAX; c.len()];
        let mut next = 0;
        let mut key = Vec::with_capacity(self.g.m() + 2 * c.len());
        for e in 0..self.g.m() {
            let (src, rev) = map.map_or((e, false), |m| (m.from[e], m.flip[e]));
            let route = &c.routes[src];
            key.push(route.len() as u32);
            let mut push = |x: usize| {
                if label[x] == u32::MAX {
                    label[x] = next;
                    next += 1;
                }
                key.push(label[x]);
            };
            if rev {
                route.iter().rev().for_each(|&x| push(x));
            } else {
                route.iter().for_each(|&x| push(x));
            }
        }
        key
    }

    fn key(&self, c: &Config) -> Vec<u32> {
        let mut best = self.key_under(c, None);
        for m in &self.symmetry {
            let k = self.key_under(c, Some(m));
            if k < best {
                best = k;
            }
        }
        best
    }

    /// A valid configuration extending `c` with at most `k` crossings.
    pub(super) fn decide(&mut self, c: &Config, k: usize) -> Result<Option<Config>, Exhausted> {
        self.stats.nodes += 1;
        let key = self.key(c);
        if self.seen.contains(&key) {
            return Ok(None);
        }
        match self.evaluate(c, k - c.len())? {
            Node::Valid => return Ok(Some(c.clone())),
            Node::Refuted => {}
            Node::Blocked(segs) => {
                for child in self.children(c, &segs) {
                    if let Some(found) = self.decide(&child, k)? {
                        return Ok(Some(found));
                    }
                }
            }
        }
        self.seen.insert(key);
        Ok(None)
    }

    /// Every valid configuration with exactly `k` crossings extending `c`.
    pub(super) fn enumerate(&mut self, c: &Config, k: usize, out: &mut Vec<Config>) -> Result<(), Exhausted> {
        self.stats.nodes += 1;
        if !self.seen.insert(self.key(c)) {
            return Ok(());
        }
        let node = self.evaluate(c, k - c.len())?;
        if c.len() == k {
            if let Node::Valid = node {
                out.push(c.clone());
            }
            return Ok(());
        }
        let children = match node {
            Node::Valid => self.all_children(c),
            Node::Blocked(segs) => self.children(c, &segs),
            Node::Refuted => return Ok(()),
        };
        for child in children {
            self.enumerate(&child, k, out)?;
        }
        Ok(())
    }
}
