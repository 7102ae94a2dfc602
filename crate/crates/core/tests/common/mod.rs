//! Oracles and builders shared by the integration tests.

#![allow(dead_code)]

use std::collections::HashSet;

use cross5_core::drawing::{eliminate_trivial, validate_drawing, Drawing};
use cross5_core::graph::Graph;
use cross5_core::immersion::{verify_immersion, ImmersionCertificate, ImmersionFlags};
use cross5_core::random::{gnp, polyline_drawing};
use cross5_core::{fixtures, Crossing};
use rand::Rng;

/// Subdivides host edge `e` by a new last vertex, after the first `at`
/// crossings of `e`, and reroutes the certificate.
pub fn subdivide(d: &Drawing, cert: &ImmersionCertificate, e: usize, at: usize) -> (Drawing, ImmersionCertificate) {
    let g = d.base();
    let (u, v) = g.edge(e);
    let w = g.n();
    let remap = |i: usize| if i < e { i } else { i - 1 };
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, &x)| x)
        .collect();
    let (uw, vw) = (edges.len(), edges.len() + 1);
    edges.extend([(u, w), (v, w)]);
    let host = Graph::from_edges(w + 1, edges).unwrap();
    let seq = d.order(e);
    let mut order: Vec<Vec<usize>> = (0..g.m()).filter(|&i| i != e).map(|i| d.order(i).to_vec()).collect();
    order.push(seq[..at].to_vec());
    order.push(seq[at..].iter().rev().copied().collect());
    let on_uw: HashSet<usize> = seq[..at].iter().copied().collect();
    let crossings = d
        .crossings()
        .iter()
        .enumerate()
        .map(|(id, c)| {
            let fix = |x: usize| {
                if x != e {
                    remap(x)
                } else if on_uw.contains(&id) {
                    uw
                } else {
                    vw
                }
            };
            Crossing {
                a: fix(c.a),
                b: fix(c.b),
            }
        })
        .collect();
    let paths = cert.paths.iter().map(|p| insert_between(p, u, v, &[w])).collect();
    let cert = ImmersionCertificate {
        host: host.clone(),
        paths,
        ..cert.clone()
    };
    (Drawing::new(host, crossings, order).unwrap(), cert)
}

/// Replaces a step `a, b` (either direction) of `p` by `a, mid.., b`.
fn insert_between(p: &[usize], a: usize, b: usize, mid: &[usize]) -> Vec<usize> {
    let mut out = vec![p[0]];
    for w in p.windows(2) {
        if (w[0], w[1]) == (a, b) {
            out.extend(mid);
        } else if (w[0], w[1]) == (b, a) {
            out.extend(mid.iter().rev());
        }
        out.push(w[1]);
    }
    out
}

/// Makes the images of the host edges `u-a` and `u-b` meet at a new vertex
/// `w` next to `u`: `u-a` becomes `u, w, a` and `u-b` becomes `u, z, w, b`.
/// Returns `None` if the result is not a valid drawing with an essential
/// immersion onto it.
pub fn split(
    d: &Drawing,
    cert: &ImmersionCertificate,
    u: usize,
    a: usize,
    b: usize,
) -> Option<(Drawing, ImmersionCertificate)> {
    let g = d.base();
    let (e, f) = (g.edge_index(u, a)?, g.edge_index(u, b)?);
    let (w, z) = (g.n(), g.n() + 1);
    let kept: Vec<usize> = (0..g.m()).filter(|&i| i != e && i != f).collect();
    let mut new_id = vec![usize::MAX; g.m()];
    for (k, &i) in kept.iter().enumerate() {
        new_id[i] = k;
    }
    let mut edges: Vec<(usize, usize)> = kept.iter().map(|&i| g.edge(i)).collect();
    let base = edges.len();
    edges.extend([(u, w), (a, w), (u, z), (z, w), (b, w)]);
    new_id[e] = base + 1;
    new_id[f] = base + 4;
    let host = Graph::from_edges(g.n() + 2, edges).unwrap();
    // The crossings of u-a now lie on a-w, read from a; likewise for b.
    let from = |i: usize, end: usize| {
        let mut s = d.order(i).to_vec();
        if g.edge(i).0 != end {
            s.reverse();
        }
        s
    };
    let mut order: Vec<Vec<usize>> = kept.iter().map(|&i| d.order(i).to_vec()).collect();
    order.extend([vec![], from(e, a), vec![], vec![], from(f, b)]);
    let crossings = d
        .crossings()
        .iter()
        .map(|c| Crossing {
            a: new_id[c.a],
            b: new_id[c.b],
        })
        .collect();
    let paths = cert
        .paths
        .iter()
        .map(|p| insert_between(&insert_between(p, u, a, &[w]), u, b, &[z, w]))
        .collect();
    let cert = ImmersionCertificate {
        host: host.clone(),
        paths,
        ..cert.clone()
    };
    let drawing = Drawing::new(host, crossings, order).ok()?;
    let flags = ImmersionFlags {
        essential: true,
        onto: true,
        ..Default::default()
    };
    (validate_drawing(&drawing).is_valid() && verify_immersion(&cert, flags).ok()?).then_some((drawing, cert))
}

/// Good drawings of `g` with exactly `k` crossings, by trying every set of
/// `k` independent edge pairs with every order of crossings along each edge.
pub fn naive_good_drawings(g: &Graph, k: usize, stop_at_first: bool) -> Vec<Drawing> {
    let m = g.m();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|e| (e + 1..m).map(move |f| (e, f)))
        .filter(|&(e, f)| !g.edges_adjacent(e, f))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    subsets(&pairs, k, 0, &mut chosen, &mut |set| {
        let crossings: Vec<Crossing> = set.iter().map(|&(a, b)| Crossing { a, b }).collect();
        let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (id, c) in crossings.iter().enumerate() {
            on_edge[c.a].push(id);
            on_edge[c.b].push(id);
        }
        let mut orders = on_edge.clone();
        for_each_order(&on_edge, 0, &mut orders, &mut |orders| {
            let d = Drawing::new(g.clone(), crossings.clone(), orders.to_vec()).unwrap();
            if validate_drawing(&d).is_valid() {
                out.push(d.canonical());
            }
            !(stop_at_first && !out.is_empty())
        })
    });
    out.sort();
    out.dedup();
    out
}

/// Calls `f` on every `k`-subset; stops when `f` returns false.
fn subsets<T: Copy>(items: &[T], k: usize, from: usize, chosen: &mut Vec<T>, f: &mut impl FnMut(&[T]) -> bool) -> bool {
    if chosen.len() == k {
        return f(chosen);
    }
    for i in from..items.len() {
        if items.len() - i < k - chosen.len() {
            break;
        }
        chosen.push(items[i]);
        let go_on = subsets(items, k, i + 1, chosen, f);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Every combination of permutations of the per-edge crossing lists.
fn for_each_order(
    base: &[Vec<usize>],
    e: usize,
    cur: &mut Vec<Vec<usize>>,
    f: &mut impl FnMut(&[Vec<usize>]) -> bool,
) -> bool {
    if e == base.len() {
        return f(cur);
    }
    let mut perm = base[e].clone();
    permutations(&mut perm, 0, &mut |p| {
        cur[e] = p.to_vec();
        for_each_order(base, e + 1, cur, f)
    })
}

fn permutations(items: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if i + 1 >= items.len() {
        return f(items);
    }
    for j in i..items.len() {
        items.swap(i, j);
        let go_on = permutations(items, i + 1, f);
        items.swap(i, j);
        if !go_on {
            return false;
        }
    }
    true
}

/// The crossing number by the naive enumeration, searching good drawings only.
pub fn naive_crossing_number(g: &Graph) -> usize {
    (0..).find(|&k| !naive_good_drawings(g, k, true).is_empty()).unwrap()
}

/// One graph from every isomorphism class on `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut index = vec![vec![0; n]; n];
    for (s, &(i, j)) in slots.iter().enumerate() {
        index[i][j] = s;
        index[j][i] = s;
    }
    let mut perms = vec![Vec::new()];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << slots.len() {
        let canon = perms
            .iter()
            .map(|p| {
                slots
                    .iter()
                    .enumerate()
                    .filter(|&(s, _)| mask >> s & 1 == 1)
                    .fold(0u32, |acc, (_, &(i, j))| acc | 1 << index[p[i]][p[j]])
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges = slots
                .iter()
                .enumerate()
                .filter(|&(s, _)| mask >> s & 1 == 1)
                .map(|(_, &e)| e);
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// A good drawing to build hosts from: a bundled K6 drawing, or a random
/// polyline drawing with its trivial crossings eliminated.
pub fn random_good_drawing<R: Rng>(rng: &mut R) -> Drawing {
    if rng.random_bool(0.25) {
        return fixtures::k6_three_crossings();
    }
    let n = rng.random_range(5..=8);
    let g = gnp(n, rng.random_range(0.4..0.8), rng);
    eliminate_trivial(&polyline_drawing(&g, 1, rng)).unwrap()
}

/// A drawn host with an essential immersion onto it from `d.base()`, built
/// by `1..=ops` random subdivisions and splits.
pub fn random_immersion_pair<R: Rng>(d: &Drawing, ops: usize, rng: &mut R) -> (Drawing, ImmersionCertificate) {
    let mut host = d.clone();
    let mut cert = ImmersionCertificate::identity(d.base(), None);
    let steps = rng.random_range(1..=ops);
    let mut done = 0;
    let mut attempts = 0;
    while done < steps && attempts < 100 {
        attempts += 1;
        let g = host.base().clone();
        if g.m() == 0 {
            break;
        }
        if rng.random_bool(0.5) {
            let e = rng.random_range(0..g.m());
            let at = rng.random_range(0..=host.order(e).len());
            (host, cert) = subdivide(&host, &cert, e, at);
            done += 1;
        } else {
            let u = rng.random_range(0..g.n());
            let nbrs: Vec<usize> = g.neighbors(u).collect();
            if nbrs.len() < 2 {
                continue;
            }
            let a = nbrs[rng.random_range(0..nbrs.len())];
            let b = nbrs[rng.random_range(0..nbrs.len())];
            if a == b {
                continue;
            }
            if let Some(next) = split(&host, &cert, u, a.min(b), a.max(b)) {
                (host, cert) = next;
                done += 1;
            }
        }
    }
    (host, cert)
}
