use std::collections::VecDeque;

use super::{verify_coloring, Coloring, ColoringError};
use crate::graph::{Graph, VertexSet};
use crate::immersion::ImmersionCertificate;

/// Components of the subgraph induced by the vertices colored `i` or `j`.
/// Components are numbered in order of their smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KempeSubgraph {
    pub colors: (usize, usize),
    pub component_of: Vec<Option<usize>>,
    pub components: usize,
}

impl KempeSubgraph {
    pub fn members(&self, component: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.component_of.len()).filter(move |&v| self.component_of[v] == Some(component))
    }
}

pub fn kempe_subgraph(g: &Graph, c: &Coloring, i: usize, j: usize) -> KempeSubgraph {
    kempe_within(g, &VertexSet::full(g.n()), &c.colors, i, j)
}

fn kempe_within(g: &Graph, alive: &VertexSet, colors: &[usize], i: usize, j: usize) -> KempeSubgraph {
    let inside = |v: usize| alive.contains(v) && (colors[v] == i || colors[v] == j);
    let mut component_of = vec![None; g.n()];
    let mut components = 0;
    for s in 0..g.n() {
        if !inside(s) || component_of[s].is_some() {
            continue;
        }
        component_of[s] = Some(components);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in g.neighbors(u) {
                if inside(w) && component_of[w].is_none() {
                    component_of[w] = Some(components);
                    stack.push(w);
                }
            }
        }
        components += 1;
    }
    KempeSubgraph {
        colors: (i.min(j), i.max(j)),
        component_of,
        components,
    }
}

/// Exchanges colors `i` and `j` on one component of their Kempe subgraph.
pub fn kempe_swap(
    g: &Graph,
    c: &Coloring,
    (i, j): (usize, usize),
    component: usize,
) -> Result<Coloring, ColoringError> {
    let k = kempe_subgraph(g, c, i, j);
    if component >= k.components {
        return Err(ColoringError::InvalidComponent { i, j, component });
    }
    let mut out = c.clone();
    swap_component(&k, component, &mut out.colors);
    if verify_coloring(g, c)? {
        assert_eq!(
            verify_coloring(g, &out),
            Ok(true),
            "a Kempe swap keeps a coloring proper"
        );
    }
    Ok(out)
}

fn swap_component(k: &KempeSubgraph, component: usize, colors: &mut [usize]) {
    let (i, j) = k.colors;
    for v in k.members(component) {
        colors[v] = if colors[v] == i { j } else { i };
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Extended(Coloring),
    /// Every pair of neighbor colors is joined by a Kempe chain.
    Failure(ImmersionCertificate),
}

/// Extends a proper 5-coloring of `g - v` to `g`. The entry of `v` in `c` is
/// ignored.
pub fn extend_coloring(g: &Graph, v: usize, c: &Coloring) -> Result<Extension, ColoringError> {
    if v >= g.n() {
        return Err(ColoringError::VertexOutOfRange(v));
    }
    if g.degree(v) > 5 {
        return Err(ColoringError::DegreeTooHigh {
            vertex: v,
            degree: g.degree(v),
        });
    }
    if c.colors.len() != g.n() {
        return Err(ColoringError::Partial {
            expected: g.n(),
            found: c.colors.len(),
        });
    }
    let colored = |x: usize| x != v;
    if let Some((x, &color)) = c
        .colors
        .iter()
        .enumerate()
        .find(|&(x, &col)| colored(x) && (col == 0 || col > 5))
    {
        return Err(ColoringError::ColorOutOfRange {
            vertex: x,
            color,
            palette: 5,
        });
    }
    if let Some(&(a, b)) = g
        .edges()
        .iter()
        .find(|&&(a, b)| colored(a) && colored(b) && c.colors[a] == c.colors[b])
    {
        return Err(ColoringError::Improper { u: a, v: b });
    }
    let mut colors = c.colors.clone();
    colors[v] = 0;
    match extend_within(g, &VertexSet::full(g.n()), v, &mut colors) {
        Ok(()) => Ok(Extension::Extended(Coloring { palette: 5, colors })),
        Err(cert) => Ok(Extension::Failure(cert)),
    }
}

/// The Kempe step on the subgraph induced by `alive`, where `v` is alive,
/// has at most five alive neighbors, and every other alive vertex is colored.
pub(super) fn extend_within(
    g: &Graph,
    alive: &VertexSet,
    v: usize,
    colors: &mut [usize],
) -> Result<(), ImmersionCertificate> {
    let nbrs: Vec<usize> = g.neighbors(v).filter(|&w| alive.contains(w)).collect();
    debug_assert!(nbrs.len() <= 5);
    let present: Vec<usize> = nbrs.iter().map(|&w| colors[w]).collect();
    if let Some(free) = (1..=5).find(|c| !present.contains(c)) {
        colors[v] = free;
        return Ok(());
    }
    // Five neighbors with five distinct colors; `at[i]` has color `i`.
    let mut at = [0; 6];
    for &w in &nbrs {
        at[colors[w]] = w;
    }
    let mut others = alive.clone();
    others.remove(v);
    for i in 1..=5 {
        for j in i + 1..=5 {
            let k = kempe_within(g, &others, colors, i, j);
            let ci = k.component_of[at[i]].expect("colored i");
            if k.component_of[at[j]] != Some(ci) {
                swap_component(&k, ci, colors);
                colors[v] = i;
                return Ok(());
            }
        }
    }
    Err(k6_certificate(g, &others, v, &at, colors))
}

/// K6 v-immersion: vertex 0 goes to `v`, vertex `i` to the neighbor colored
/// `i`, and edge `ij` to a shortest path alternating colors `i` and `j`.
fn k6_certificate(g: &Graph, others: &VertexSet, v: usize, at: &[usize; 6], colors: &[usize]) -> ImmersionCertificate {
    let small = crate::graph::construct_named("K6").expect("K6 is a valid name");
    let paths = small
        .edges()
        .iter()
        .map(|&(a, b)| {
            if a == 0 {
                vec![v, at[b]]
            } else {
                shortest_alternating(g, others, colors, at[a], at[b], (a, b))
            }
        })
        .collect();
    ImmersionCertificate {
        small,
        host: g.clone(),
        vmap: at
            .iter()
            .enumerate()
            .map(|(i, &w)| if i == 0 { v } else { w })
            .collect(),
        paths,
        center: Some(v),
    }
}

/// Breadth-first search visiting neighbors in increasing order.
fn shortest_alternating(
    g: &Graph,
    others: &VertexSet,
    colors: &[usize],
    from: usize,
    to: usize,
    (i, j): (usize, usize),
) -> Vec<usize> {
    let mut prev = vec![usize::MAX; g.n()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            break;
        }
        for w in g.neighbors(u) {
            if others.contains(w) && (colors[w] == i || colors[w] == j) && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    path
}
