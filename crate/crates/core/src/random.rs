//! Random graphs and random geometric drawings, for corpora and tests.

use rand::Rng;

use crate::drawing::{Crossing, Drawing};
use crate::graph::Graph;

/// Erdős–Rényi G(n, p).
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

type Point = (f64, f64);

fn orient(a: Point, b: Point, c: Point) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Parameter `t` on `p0p1` of a proper crossing with `q0q1`.
fn proper_crossing(p0: Point, p1: Point, q0: Point, q1: Point) -> Option<(f64, f64)> {
    let (d1, d2) = (orient(q0, q1, p0), orient(q0, q1, p1));
    let (d3, d4) = (orient(p0, p1, q0), orient(p0, p1, q1));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        let t = d1 / (d1 - d2);
        let s = d3 / (d3 - d4);
        Some((t, s))
    } else {
        None
    }
}

/// Draws `g` with vertices at random points and every edge as a polyline with
/// `bends` random bend points (0 or 1, so no edge crosses itself), and returns
/// the resulting combinatorial drawing. Adjacent edges may cross, and a pair
/// of edges may cross several times.
pub fn polyline_drawing<R: Rng>(g: &Graph, bends: usize, rng: &mut R) -> Drawing {
    assert!(bends <= 1, "more than one bend allows self-crossings");
    let mut pt = || (rng.random::<f64>(), rng.random::<f64>());
    let pos: Vec<Point> = (0..g.n()).map(|_| pt()).collect();
    let lines: Vec<Vec<Point>> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let mut l = vec![pos[u]];
            l.extend((0..bends).map(|_| pt()));
            l.push(pos[v]);
            l
        })
        .collect();
    let mut crossings = Vec::new();
    // (edge, position along the edge, crossing id)
    let mut marks: Vec<(usize, f64, usize)> = Vec::new();
    for e in 0..lines.len() {
        for f in e + 1..lines.len() {
            for (i, pe) in lines[e].windows(2).enumerate() {
                for (j, pf) in lines[f].windows(2).enumerate() {
                    if let Some((t, s)) = proper_crossing(pe[0], pe[1], pf[0], pf[1]) {
                        let id = crossings.len();
                        crossings.push(Crossing { a: e, b: f });
                        marks.push((e, i as f64 + t, id));
                        marks.push((f, j as f64 + s, id));
                    }
                }
            }
        }
    }
    marks.sort_by(|a, b| (a.0, a.1).partial_cmp(&(b.0, b.1)).unwrap());
    let mut order = vec![Vec::new(); g.m()];
    for (e, _, id) in marks {
        order[e].push(id);
    }
    Drawing::new(g.clone(), crossings, order).expect("geometric crossings are consistent")
}
