//! Drawing a graph along the paths of an essential immersion onto a drawn host.
//!
//! Inside a small disk around each host vertex `w`, a path ending at `w` runs
//! radially to the center, and a path passing through `w` runs in from the
//! boundary, along a circular arc, and back out. The arc covers the shorter
//! side between its two boundary points; longer arcs get smaller radii, so
//! nested arcs stay disjoint and only interleaved ones meet, exactly once.

use super::routes::realization_edges;
use super::{is_good_unchecked, require_valid, Drawing, DrawingError, RouteSystem};
use crate::immersion::{check_immersion, ImmersionCertificate, ImmersionFlags};
use crate::planarity::embed_edges;

/// A curve inside the disk of one host vertex.
struct Passing {
    small_edge: usize,
    start: usize,
    len: usize,
    radius: usize,
    /// True if the small edge, read from its smaller end, enters at `start`.
    forward: bool,
}

/// Position along a passing curve: inward leg, arc, outward leg.
type Param = (u8, i64);

pub fn induced_drawing(d: &Drawing, cert: &ImmersionCertificate) -> Result<Drawing, DrawingError> {
    require_valid(d)?;
    if !is_good_unchecked(d) {
        return Err(DrawingError::NotGood(
            "host drawing has trivial or repeated crossings".into(),
        ));
    }
    if cert.host != *d.base() {
        return Err(DrawingError::Certificate(
            "certificate host differs from the drawn graph".into(),
        ));
    }
    let flags = ImmersionFlags {
        essential: true,
        onto: true,
        ..Default::default()
    };
    check_immersion(cert, flags).map_err(|e| DrawingError::Certificate(e.to_string()))?;

    let host = d.base();
    let small = &cert.small;
    let rotation = host_rotation(d);

    // Host paths oriented from the image of each small edge's smaller end.
    let paths: Vec<Vec<usize>> = cert
        .paths
        .iter()
        .enumerate()
        .map(|(e, p)| {
            let mut p = p.clone();
            if p[0] != cert.vmap[small.edge(e).0] {
                p.reverse();
            }
            p
        })
        .collect();
    let host_edge = |a: usize, b: usize| host.edge_index(a, b).expect("path edge in host");

    let mut next_id = d.crossing_count();
    // Crossings inside the disk of each host vertex, per small edge.
    let mut disk: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); small.m()]; host.n()];
    for w in 0..host.n() {
        let deg = rotation[w].len();
        let mut pos = vec![usize::MAX; host.m()];
        for (i, &h) in rotation[w].iter().enumerate() {
            pos[h] = i;
        }
        let mut passing = Vec::new();
        let mut terminals = Vec::new();
        for (e, p) in paths.iter().enumerate() {
            if let Some(i) = p.iter().position(|&x| x == w) {
                if i == 0 || i == p.len() - 1 {
                    let h = if i == 0 {
                        host_edge(p[0], p[1])
                    } else {
                        host_edge(p[i - 1], p[i])
                    };
                    terminals.push((e, pos[h], i == 0));
                } else {
                    let a = pos[host_edge(p[i - 1], w)];
                    let b = pos[host_edge(w, p[i + 1])];
                    let ab = (b + deg - a) % deg;
                    let (start, len, forward) = if ab <= deg - ab {
                        (a, ab, true)
                    } else {
                        (b, deg - ab, false)
                    };
                    passing.push(Passing {
                        small_edge: e,
                        start,
                        len,
                        radius: 0,
                        forward,
                    });
                }
            }
        }
        let mut by_len: Vec<usize> = (0..passing.len()).collect();
        by_len.sort_by_key(|&i| (std::cmp::Reverse(passing[i].len), passing[i].start));
        for (r, &i) in by_len.iter().enumerate() {
            passing[i].radius = r + 1;
        }
        let inside = |c: &Passing, theta: usize| {
            let off = (theta + deg - c.start) % deg;
            off > 0 && off < c.len
        };
        let offset = |c: &Passing, theta: usize| ((theta + deg - c.start) % deg) as i64;

        // (small edge, position key, crossing id) for every crossing in this disk.
        let mut marks: Vec<(usize, (u8, i64, i64), usize)> = Vec::new();
        let push = |marks: &mut Vec<_>, e: usize, key: (u8, i64, i64), other: usize, key2, id: usize| {
            marks.push((e, key, id));
            marks.push((other, key2, id));
        };
        for &(e, theta, outward) in &terminals {
            for c in passing.iter().filter(|c| inside(c, theta)) {
                let id = next_id;
                next_id += 1;
                let r = c.radius as i64;
                // A terminal runs outward from the center when it starts here.
                let tkey = (0, if outward { r } else { -r }, 0);
                let ckey = param_key(c, (1, offset(c, theta)));
                push(&mut marks, e, tkey, c.small_edge, ckey, id);
            }
        }
        for i in 0..passing.len() {
            for j in 0..passing.len() {
                let (deep, outer) = (&passing[i], &passing[j]);
                if deep.radius >= outer.radius {
                    continue;
                }
                let end = (deep.start + deep.len) % deg;
                let (s_in, t_in) = (inside(outer, deep.start), inside(outer, end));
                if s_in == t_in {
                    continue;
                }
                let id = next_id;
                next_id += 1;
                let r = outer.radius as i64;
                let (phi, dparam) = if s_in { (deep.start, (0, -r)) } else { (end, (2, r)) };
                let dkey = param_key(deep, dparam);
                let okey = param_key(outer, (1, offset(outer, phi)));
                push(&mut marks, deep.small_edge, dkey, outer.small_edge, okey, id);
            }
        }
        marks.sort();
        for (e, _, id) in marks {
            disk[w][e].push(id);
        }
    }

    let routes: Vec<Vec<usize>> = paths
        .iter()
        .enumerate()
        .map(|(e, p)| {
            let mut route = Vec::new();
            for (i, &w) in p.iter().enumerate() {
                route.extend(&disk[w][e]);
                if i + 1 < p.len() {
                    let h = host_edge(w, p[i + 1]);
                    let seq = d.order(h);
                    if w < p[i + 1] {
                        route.extend(seq);
                    } else {
                        route.extend(seq.iter().rev());
                    }
                }
            }
            route
        })
        .collect();
    let mut rs = RouteSystem::new(small.clone(), routes);
    debug_assert!(rs.is_realizable(), "disk construction produced an unrealizable drawing");
    rs.simplify();
    Ok(rs.into_drawing())
}

/// Sort key of a position on a passing curve, read along its small edge.
fn param_key(c: &Passing, (phase, value): Param) -> (u8, i64, i64) {
    if c.forward {
        (1, phase as i64, value)
    } else {
        (1, -(phase as i64), -value)
    }
}

/// Cyclic order of host edges around every host vertex in some plane
/// realization of the drawing.
fn host_rotation(d: &Drawing) -> Vec<Vec<usize>> {
    let host = d.base();
    let n = host.n();
    let routes: Vec<Vec<usize>> = (0..host.m()).map(|e| d.order(e).to_vec()).collect();
    let (nv, edges, labels) = realization_edges(n, host.edges(), &routes);
    let rot = embed_edges(nv, &edges).expect("valid drawing has a planar realization");
    // Realization neighbor of a base vertex -> the host edge leaving toward it.
    let mut via: Vec<std::collections::HashMap<usize, usize>> = vec![Default::default(); n];
    for (&(p, q), label) in edges.iter().zip(&labels) {
        let Some(l) = label else { continue };
        let (u, v) = host.edge(l.edge);
        if l.seg == 0 {
            debug_assert_eq!(p, u);
            via[u].insert(q, l.edge);
        }
        if l.seg == routes[l.edge].len() {
            debug_assert_eq!(q, v);
            via[v].insert(p, l.edge);
        }
    }
    (0..n).map(|w| rot[w].iter().map(|x| via[w][x]).collect()).collect()
}
