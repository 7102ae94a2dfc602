//! Immersion certificates: a vertex map plus an edge-to-path map from a small
//! graph into a host, with checks for the essential, v-immersion, embedding
//! and onto refinements.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImmersionCertificate {
    pub small: Graph,
    pub host: Graph,
    /// Host vertex of every small vertex.
    pub vmap: Vec<usize>,
    /// Host path of every small edge, as a vertex sequence.
    pub paths: Vec<Vec<usize>>,
    /// Host vertex at which the certificate is a v-immersion, if any.
    pub center: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ImmersionFlags {
    pub essential: bool,
    pub v_immersion: bool,
    pub embedding: bool,
    pub onto: bool,
}

impl ImmersionFlags {
    pub fn essential() -> Self {
        ImmersionFlags {
            essential: true,
            ..Default::default()
        }
    }

    pub fn v_immersion() -> Self {
        ImmersionFlags {
            essential: true,
            v_immersion: true,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ImmersionError {
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("clause {clause:?} violated: {detail}")]
    Violation { clause: &'static str, detail: String },
}

impl ImmersionError {
    pub fn clause(&self) -> Option<&'static str> {
        match self {
            ImmersionError::Violation { clause, .. } => Some(clause),
            ImmersionError::Malformed(_) => None,
        }
    }
}

fn violation(clause: &'static str, detail: String) -> Result<(), ImmersionError> {
    Err(ImmersionError::Violation { clause, detail })
}

/// `Ok(true)` if every requested property holds, `Ok(false)` if one fails,
/// and an error if the certificate does not even describe host paths.
pub fn verify_immersion(cert: &ImmersionCertificate, flags: ImmersionFlags) -> Result<bool, ImmersionError> {
    match check_immersion(cert, flags) {
        Ok(()) => Ok(true),
        Err(ImmersionError::Violation { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Like [`verify_immersion`], naming the first violated clause.
pub fn check_immersion(cert: &ImmersionCertificate, flags: ImmersionFlags) -> Result<(), ImmersionError> {
    check_shape(cert)?;
    let (small, host) = (&cert.small, &cert.host);

    let mut seen = HashSet::new();
    for (u, &x) in cert.vmap.iter().enumerate() {
        if !seen.insert(x) {
            return violation(
                "injective",
                format!("vertex {u} maps onto an already used host vertex {x}"),
            );
        }
    }
    for (e, p) in cert.paths.iter().enumerate() {
        let (a, b) = small.edge(e);
        let (s, t) = (p[0], p[p.len() - 1]);
        let (ia, ib) = (cert.vmap[a], cert.vmap[b]);
        if !((s, t) == (ia, ib) || (s, t) == (ib, ia)) {
            return violation(
                "endpoints",
                format!("path of edge {a}-{b} runs {s}..{t}, expected {ia}..{ib}"),
            );
        }
        let distinct: HashSet<usize> = p.iter().copied().collect();
        if distinct.len() != p.len() {
            return violation("path", format!("image of edge {a}-{b} repeats a vertex"));
        }
    }
    let mut used: HashMap<usize, usize> = HashMap::new();
    for (e, p) in cert.paths.iter().enumerate() {
        for w in p.windows(2) {
            let h = host.edge_index(w[0], w[1]).expect("shape checked");
            if let Some(&f) = used.get(&h) {
                return violation(
                    "edge-disjoint",
                    format!("host edge {}-{} lies on the images of edges #{f} and #{e}", w[0], w[1]),
                );
            }
            used.insert(h, e);
        }
    }
    let vsets: Vec<HashSet<usize>> = cert.paths.iter().map(|p| p.iter().copied().collect()).collect();
    if flags.essential || flags.v_immersion {
        for e in 0..small.m() {
            for f in e + 1..small.m() {
                if !small.edges_adjacent(e, f) && !vsets[e].is_disjoint(&vsets[f]) {
                    return violation(
                        "essential",
                        format!("images of non-adjacent edges #{e} and #{f} share a vertex"),
                    );
                }
            }
        }
    }
    if flags.v_immersion {
        let Some(v) = cert.center else {
            return violation("v-immersion", "no center vertex given".into());
        };
        let Some(u) = cert.vmap.iter().position(|&x| x == v) else {
            return violation("v-immersion", format!("center {v} is not the image of a vertex"));
        };
        for &(_, e) in small.incident(u) {
            if cert.paths[e].len() != 2 {
                return violation(
                    "v-immersion",
                    format!(
                        "edge #{e} at the center maps to a path of length {}",
                        cert.paths[e].len() - 1
                    ),
                );
            }
        }
    }
    if flags.embedding {
        for e in 0..small.m() {
            for f in e + 1..small.m() {
                let (pe, pf) = (&cert.paths[e], &cert.paths[f]);
                let ends_e = [pe[0], pe[pe.len() - 1]];
                let ends_f = [pf[0], pf[pf.len() - 1]];
                if let Some(x) = vsets[e]
                    .intersection(&vsets[f])
                    .find(|x| !(ends_e.contains(x) && ends_f.contains(x)))
                {
                    return violation(
                        "embedding",
                        format!("images of edges #{e} and #{f} meet at inner vertex {x}"),
                    );
                }
            }
        }
    }
    if flags.onto {
        let mut covered: HashSet<usize> = cert.vmap.iter().copied().collect();
        covered.extend(cert.paths.iter().flatten().copied());
        if let Some(x) = (0..host.n()).find(|x| !covered.contains(x)) {
            return violation("onto", format!("host vertex {x} is not in the image"));
        }
        if let Some(h) = (0..host.m()).find(|h| !used.contains_key(h)) {
            let (a, b) = host.edge(h);
            return violation("onto", format!("host edge {a}-{b} is not in the image"));
        }
    }
    Ok(())
}

fn check_shape(cert: &ImmersionCertificate) -> Result<(), ImmersionError> {
    let bad = |m: String| Err(ImmersionError::Malformed(m));
    let (small, host) = (&cert.small, &cert.host);
    if cert.vmap.len() != small.n() {
        return bad(format!(
            "vmap has {} entries for {} vertices",
            cert.vmap.len(),
            small.n()
        ));
    }
    if cert.paths.len() != small.m() {
        return bad(format!("{} paths for {} edges", cert.paths.len(), small.m()));
    }
    if let Some(&x) = cert.vmap.iter().find(|&&x| x >= host.n()) {
        return bad(format!("vertex image {x} outside the host"));
    }
    if let Some(c) = cert.center.filter(|&c| c >= host.n()) {
        return bad(format!("center {c} outside the host"));
    }
    for (e, p) in cert.paths.iter().enumerate() {
        if p.len() < 2 {
            return bad(format!("path of edge #{e} has fewer than two vertices"));
        }
        for w in p.windows(2) {
            if w[0] >= host.n() || w[1] >= host.n() || !host.has_edge(w[0], w[1]) {
                return bad(format!(
                    "path edge {}-{} of edge #{e} is absent from the host",
                    w[0], w[1]
                ));
            }
        }
    }
    Ok(())
}

impl ImmersionCertificate {
    /// The identity immersion of `g` into itself.
    pub fn identity(g: &Graph, center: Option<usize>) -> ImmersionCertificate {
        ImmersionCertificate {
            small: g.clone(),
            host: g.clone(),
            vmap: (0..g.n()).collect(),
            paths: g.edges().iter().map(|&(u, v)| vec![u, v]).collect(),
            center,
        }
    }

    /// The subgraph of the host formed by all path edges.
    pub fn image(&self) -> Graph {
        let mut seen = HashSet::new();
        let edges = self
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .filter(|e| seen.insert(*e))
            .collect::<Vec<_>>();
        Graph::from_edges(self.host.n(), edges).expect("paths use host edges")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<ImmersionCertificate, ImmersionError> {
        serde_json::from_str(text).map_err(|e| ImmersionError::Malformed(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::construct_named;

    fn subdivided_k5() -> ImmersionCertificate {
        let k5 = construct_named("K5").unwrap();
        let mut host_edges = Vec::new();
        let mut paths = Vec::new();
        for (i, &(u, v)) in k5.edges().iter().enumerate() {
            let w = 5 + i;
            host_edges.extend([(u, w), (w, v)]);
            paths.push(vec![u, w, v]);
        }
        ImmersionCertificate {
            small: k5,
            host: Graph::from_edges(15, host_edges).unwrap(),
            vmap: (0..5).collect(),
            paths,
            center: None,
        }
    }

    #[test]
    fn identity_k6() {
        let k6 = construct_named("K6").unwrap();
        let cert = ImmersionCertificate::identity(&k6, Some(0));
        let all = ImmersionFlags {
            essential: true,
            v_immersion: true,
            embedding: true,
            onto: true,
        };
        assert!(verify_immersion(&cert, all).unwrap());
        let bigger = ImmersionCertificate {
            host: construct_named("K7").unwrap(),
            ..cert.clone()
        };
        assert!(verify_immersion(&bigger, ImmersionFlags::v_immersion()).unwrap());
        assert!(!verify_immersion(&bigger, all).unwrap());
    }

    #[test]
    fn subdivision_is_an_embedding() {
        let cert = subdivided_k5();
        let flags = ImmersionFlags {
            essential: true,
            embedding: true,
            onto: true,
            ..Default::default()
        };
        assert!(verify_immersion(&cert, flags).unwrap());
        // Paths of length two at every vertex rule out a v-immersion.
        let centered = ImmersionCertificate {
            center: Some(0),
            ..cert
        };
        assert_eq!(
            check_immersion(&centered, ImmersionFlags::v_immersion())
                .unwrap_err()
                .clause(),
            Some("v-immersion")
        );
    }

    #[test]
    fn shared_inner_vertex_breaks_essential() {
        // K6 edges 0-1 and 2-3 both routed through a new vertex 6.
        let k6 = construct_named("K6").unwrap();
        let mut host_edges: Vec<(usize, usize)> = k6
            .edges()
            .iter()
            .copied()
            .filter(|&e| e != (0, 1) && e != (2, 3))
            .collect();
        host_edges.extend([(0, 6), (6, 1), (2, 6), (6, 3)]);
        let host = Graph::from_edges(7, host_edges).unwrap();
        let paths = k6
            .edges()
            .iter()
            .map(|&(u, v)| match (u, v) {
                (0, 1) => vec![0, 6, 1],
                (2, 3) => vec![2, 6, 3],
                _ => vec![u, v],
            })
            .collect();
        let cert = ImmersionCertificate {
            small: k6,
            host,
            vmap: (0..6).collect(),
            paths,
            center: None,
        };
        assert!(verify_immersion(&cert, ImmersionFlags::default()).unwrap());
        let err = check_immersion(&cert, ImmersionFlags::essential()).unwrap_err();
        assert_eq!(err.clause(), Some("essential"));
    }

    #[test]
    fn malformed_and_violations() {
        let mut cert = subdivided_k5();
        cert.paths[0] = vec![0, 1];
        assert!(matches!(
            verify_immersion(&cert, ImmersionFlags::default()),
            Err(ImmersionError::Malformed(_))
        ));
        let mut cert = subdivided_k5();
        cert.vmap[1] = 0;
        assert_eq!(
            check_immersion(&cert, ImmersionFlags::default()).unwrap_err().clause(),
            Some("injective")
        );
        let mut cert = subdivided_k5();
        cert.paths[1] = cert.paths[0].clone();
        assert_eq!(
            check_immersion(&cert, ImmersionFlags::default()).unwrap_err().clause(),
            Some("endpoints")
        );
    }

    #[test]
    fn json_round_trip() {
        let cert = ImmersionCertificate::identity(&construct_named("K4").unwrap(), None);
        let text = cert.to_json();
        assert!(text.contains("\"vmap\"") && text.contains("\"center\":null"));
        assert_eq!(ImmersionCertificate::from_json(&text).unwrap(), cert);
    }
}
