//! Edge routes through crossings, allowing self-crossings, plus the graphs
//! used to decide realizability.

use std::collections::HashSet;

use super::{Crossing, Drawing};
use crate::graph::Graph;
use crate::planarity::is_planar_edges;

/// Segment `seg` of edge `edge`: the part between its `seg - 1`-th and
/// `seg`-th crossing, counting from the smaller endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct SegmentLabel {
    pub edge: usize,
    pub seg: usize,
}

/// Dense ids for the crossing ids used in `routes`, and the number of them.
fn compact_ids(routes: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let slots = routes.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
    let mut dense = vec![usize::MAX; slots];
    let mut next = 0;
    for &x in routes.iter().flatten() {
        if dense[x] == usize::MAX {
            dense[x] = next;
            next += 1;
        }
    }
    (dense, next)
}

/// Segments of the planarization; the dummy of the `i`-th distinct crossing
/// (in order of first appearance) is `n + i`. Loops are dropped.
pub(crate) fn planarization_edges(
    n: usize,
    edges: &[(usize, usize)],
    routes: &[Vec<usize>],
) -> (usize, Vec<(usize, usize)>, Vec<SegmentLabel>) {
    let (dense, count) = compact_ids(routes);
    let mut out = Vec::new();
    let mut labels = Vec::new();
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = u;
        let points = routes[e].iter().map(|&x| n + dense[x]).chain([v]);
        for (seg, p) in points.enumerate() {
            if p != prev {
                out.push((prev, p));
                labels.push(SegmentLabel { edge: e, seg });
            }
            prev = p;
        }
    }
    (n + count, out, labels)
}

/// The realization graph: every crossing becomes a wheel with four rim
/// vertices, visited by the two passing curves in alternation, and every
/// segment becomes an edge between rim vertices or base vertices. The graph
/// is simple and is planar iff the routes can be drawn with exactly these
/// crossings, all transversal. Gadget edges carry no label.
pub(crate) fn realization_edges(
    n: usize,
    edges: &[(usize, usize)],
    routes: &[Vec<usize>],
) -> (usize, Vec<(usize, usize)>, Vec<Option<SegmentLabel>>) {
    let (dense, count) = compact_ids(routes);
    let mut out = Vec::new();
    let mut labels = Vec::new();
    let mut seen = vec![false; count];
    for i in 0..count {
        let c = n + 5 * i;
        for r in 1..=4 {
            out.push((c, c + r));
            out.push((c + r, c + r % 4 + 1));
            labels.push(None);
            labels.push(None);
        }
    }
    for (e, &(u, v)) in edges.iter().enumerate() {
        let mut prev = u;
        for (seg, &x) in routes[e].iter().enumerate() {
            let c = n + 5 * dense[x];
            // Rim order: first-visit in, second-visit in, first out, second out.
            let (rim_in, rim_out) = if seen[dense[x]] { (c + 2, c + 4) } else { (c + 1, c + 3) };
            seen[dense[x]] = true;
            out.push((prev, rim_in));
            labels.push(Some(SegmentLabel { edge: e, seg }));
            prev = rim_out;
        }
        out.push((prev, v));
        labels.push(Some(SegmentLabel {
            edge: e,
            seg: routes[e].len(),
        }));
    }
    (n + 5 * count, out, labels)
}

/// Routes of all edges through crossing ids. Every live id occurs exactly
/// twice; both occurrences on one edge mean a self-crossing.
#[derive(Debug, Clone)]
pub(crate) struct RouteSystem {
    base: Graph,
    routes: Vec<Vec<usize>>,
}

impl RouteSystem {
    pub fn new(base: Graph, routes: Vec<Vec<usize>>) -> RouteSystem {
        debug_assert_eq!(base.m(), routes.len());
        let rs = RouteSystem { base, routes };
        debug_assert!(rs.occurrences().iter().all(|o| o.is_empty() || o.len() == 2));
        rs
    }

    pub fn from_drawing(d: &Drawing) -> RouteSystem {
        let routes = (0..d.base().m()).map(|e| d.order(e).to_vec()).collect();
        RouteSystem::new(d.base().clone(), routes)
    }

    pub fn is_realizable(&self) -> bool {
        let (nv, edges, _) = realization_edges(self.base.n(), self.base.edges(), &self.routes);
        is_planar_edges(nv, &edges)
    }

    pub fn crossing_total(&self) -> usize {
        self.routes.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// `(edge, position)` of both occurrences of every crossing id.
    fn occurrences(&self) -> Vec<Vec<(usize, usize)>> {
        let slots = self.routes.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let mut occ = vec![Vec::new(); slots];
        for (e, r) in self.routes.iter().enumerate() {
            for (p, &x) in r.iter().enumerate() {
                occ[x].push((e, p));
            }
        }
        occ
    }

    /// Applies surgery until no trivial crossing and no doubly crossing pair remains.
    pub fn simplify(&mut self) {
        loop {
            let occ = self.occurrences();
            let trivial = occ
                .iter()
                .enumerate()
                .find(|(_, o)| o.len() == 2 && (o[0].0 == o[1].0 || self.base.edges_adjacent(o[0].0, o[1].0)));
            if let Some((x, o)) = trivial {
                let ((e, _), (f, _)) = (o[0], o[1]);
                if e == f {
                    self.cut_loop(e, x);
                } else {
                    self.swap_heads(e, f, x);
                }
                continue;
            }
            if let Some((x, y)) = first_double(&occ) {
                self.swap_lens(x, y, &occ);
                continue;
            }
            break;
        }
    }

    /// Depth-first search over surgery orders for a fully simplified state
    /// with at most `limit` crossings, visiting at most `max_states` states.
    pub fn simplify_within(&self, limit: usize, max_states: usize) -> Option<RouteSystem> {
        let mut seen = HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(rs) = stack.pop() {
            if seen.len() >= max_states {
                return None;
            }
            if !seen.insert(rs.routes.clone()) {
                continue;
            }
            let next = rs.successors();
            if next.is_empty() && rs.crossing_total() <= limit {
                return Some(rs);
            }
            stack.extend(next.into_iter().rev());
        }
        None
    }

    /// Every state reachable by one surgery step.
    pub fn successors(&self) -> Vec<RouteSystem> {
        let occ = self.occurrences();
        let mut out = Vec::new();
        for (x, o) in occ.iter().enumerate() {
            if o.len() != 2 {
                continue;
            }
            let ((e, _), (f, _)) = (o[0], o[1]);
            if e == f {
                let mut next = self.clone();
                next.cut_loop(e, x);
                out.push(next);
            } else if self.base.edges_adjacent(e, f) {
                let mut next = self.clone();
                next.swap_heads(e, f, x);
                out.push(next);
            }
            for y in x + 1..occ.len() {
                if occ[y].len() == 2 {
                    let (g, h) = (occ[y][0].0, occ[y][1].0);
                    if (g.min(h), g.max(h)) == (e.min(f), e.max(f)) && e != f {
                        let mut next = self.clone();
                        next.swap_lens(x, y, &occ);
                        out.push(next);
                    }
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub fn routes(&self) -> &[Vec<usize>] {
        &self.routes
    }

    /// Removes the closed loop of edge `e` at its self-crossing `x`, together
    /// with every crossing on that loop.
    fn cut_loop(&mut self, e: usize, x: usize) {
        let r = &self.routes[e];
        let i = r.iter().position(|&y| y == x).unwrap();
        let j = i + 1 + r[i + 1..].iter().position(|&y| y == x).unwrap();
        let removed: Vec<usize> = self.routes[e].drain(i..=j).collect();
        for &z in &removed {
            if z == x || removed.iter().filter(|&&w| w == z).count() == 2 {
                continue;
            }
            // The other occurrence of `z` lies off the loop; it disappears too.
            for route in &mut self.routes {
                if let Some(p) = route.iter().position(|&w| w == z) {
                    route.remove(p);
                    break;
                }
            }
        }
    }

    /// Route of `e` read from endpoint `a`.
    fn read_from(&self, e: usize, a: usize) -> Vec<usize> {
        let mut r = self.routes[e].clone();
        if self.base.edge(e).0 != a {
            r.reverse();
        }
        r
    }

    fn set_from_end(&mut self, e: usize, a: usize, mut seq: Vec<usize>) {
        if self.base.edge(e).0 != a {
            seq.reverse();
        }
        self.routes[e] = seq;
    }

    /// Adjacent edges `e`, `f` crossing at `x` exchange their portions between
    /// the common endpoint and `x`; `x` disappears.
    fn swap_heads(&mut self, e: usize, f: usize, x: usize) {
        let (e0, e1) = self.base.edge(e);
        let (f0, f1) = self.base.edge(f);
        let a = if e0 == f0 || e0 == f1 { e0 } else { e1 };
        debug_assert!(a == f0 || a == f1);
        let re = self.read_from(e, a);
        let rf = self.read_from(f, a);
        let pe = re.iter().position(|&y| y == x).unwrap();
        let pf = rf.iter().position(|&y| y == x).unwrap();
        let new_e: Vec<usize> = rf[..pf].iter().chain(&re[pe + 1..]).copied().collect();
        let new_f: Vec<usize> = re[..pe].iter().chain(&rf[pf + 1..]).copied().collect();
        self.set_from_end(e, a, new_e);
        self.set_from_end(f, a, new_f);
    }

    /// Two edges crossing at both `x` and `y` exchange their portions between
    /// the two crossings; both crossings disappear.
    fn swap_lens(&mut self, x: usize, y: usize, occ: &[Vec<(usize, usize)>]) {
        let (e, f) = (occ[x][0].0, occ[x][1].0);
        let pos = |edge: usize, id: usize| occ[id].iter().find(|&&(g, _)| g == edge).unwrap().1;
        let (mut px, mut py) = (pos(e, x), pos(e, y));
        let (mut qx, mut qy) = (pos(f, x), pos(f, y));
        if px > py {
            std::mem::swap(&mut px, &mut py);
            std::mem::swap(&mut qx, &mut qy);
        }
        let re = self.routes[e].clone();
        let rf = self.routes[f].clone();
        let em = &re[px + 1..py];
        let (lo, hi) = (qx.min(qy), qx.max(qy));
        let mut fm: Vec<usize> = rf[lo + 1..hi].to_vec();
        let mut em_for_f: Vec<usize> = em.to_vec();
        if qx > qy {
            // `f` meets the lens crossings in the opposite order.
            fm.reverse();
            em_for_f.reverse();
        }
        let new_e = re[..px].iter().chain(&fm).chain(&re[py + 1..]).copied().collect();
        let new_f = rf[..lo].iter().chain(&em_for_f).chain(&rf[hi + 1..]).copied().collect();
        self.routes[e] = new_e;
        self.routes[f] = new_f;
    }

    /// Drops dead ids and builds a drawing. Panics on remaining self-crossings.
    pub fn into_drawing(self) -> Drawing {
        let (dense, count) = {
            // Renumber by increasing old id so surviving crossings keep their relative order.
            let slots = self.routes.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
            let mut alive = vec![false; slots];
            for &x in self.routes.iter().flatten() {
                alive[x] = true;
            }
            let mut dense = vec![usize::MAX; slots];
            let mut next = 0;
            for x in 0..slots {
                if alive[x] {
                    dense[x] = next;
                    next += 1;
                }
            }
            (dense, next)
        };
        let mut ends: Vec<Vec<usize>> = vec![Vec::new(); count];
        let order: Vec<Vec<usize>> = self
            .routes
            .iter()
            .enumerate()
            .map(|(e, r)| {
                r.iter()
                    .map(|&x| {
                        ends[dense[x]].push(e);
                        dense[x]
                    })
                    .collect()
            })
            .collect();
        let crossings = ends
            .into_iter()
            .map(|es| {
                assert!(es.len() == 2 && es[0] != es[1], "self-crossing left in route system");
                Crossing { a: es[0], b: es[1] }
            })
            .collect();
        Drawing::from_parts_unchecked(self.base, crossings, order)
    }
}

/// Smallest crossing id whose edge pair crosses again, with the smallest such partner id.
fn first_double(occ: &[Vec<(usize, usize)>]) -> Option<(usize, usize)> {
    let pair = |o: &Vec<(usize, usize)>| {
        let (a, b) = (o[0].0, o[1].0);
        (a.min(b), a.max(b))
    };
    for (x, o) in occ.iter().enumerate() {
        if o.len() != 2 {
            continue;
        }
        let p = pair(o);
        if let Some(y) = (0..occ.len()).find(|&y| y != x && occ[y].len() == 2 && pair(&occ[y]) == p) {
            return Some((x, y));
        }
    }
    None
}
