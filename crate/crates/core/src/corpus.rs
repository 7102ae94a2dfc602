//! Reproducible corpora of small graphs with solver-verified crossing numbers.
//!
//! Candidate `i` is drawn from stream `i` of a ChaCha8 generator seeded with
//! the corpus seed, so a corpus depends only on its spec.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    clique_number, is_isomorphic, serialize_graph, vertex_connectivity, vertex_connectivity_at_least, Graph,
    GraphFormat,
};
use crate::planarity::euler_lower_bound;
use crate::random::gnp;
use crate::solver::{crossing_number_at_most, SolverConfig, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Largest crossing number admitted, at most 3.
    pub crossing_cap: usize,
    pub omega_max: Option<usize>,
    pub connectivity_min: Option<usize>,
    #[serde(default)]
    pub exclude_iso: Vec<Graph>,
}

impl CorpusSpec {
    pub fn new(seed: u64, count: usize, n_max: usize, crossing_cap: usize) -> CorpusSpec {
        CorpusSpec {
            seed,
            count,
            n_min: 3,
            n_max,
            crossing_cap,
            omega_max: None,
            connectivity_min: None,
            exclude_iso: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    /// Index of the generator stream the graph came from.
    pub index: u64,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub nu: usize,
    pub omega: usize,
    pub connectivity: usize,
}

impl CorpusEntry {
    pub fn graph(&self) -> Graph {
        crate::graph::parse_graph(&self.graph6, GraphFormat::Graph6).expect("entries hold valid graph6")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("invalid corpus spec: {0}")]
    Spec(String),
    #[error("only {found} of {wanted} graphs found in {tried} candidates")]
    Exhausted { wanted: usize, found: usize, tried: u64 },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Candidates tried per requested graph before giving up.
const ATTEMPTS_PER_ENTRY: u64 = 2000;

pub fn gen_corpus(spec: &CorpusSpec, solver: &SolverConfig) -> Result<Vec<CorpusEntry>, CorpusError> {
    if spec.crossing_cap > 3 {
        return Err(CorpusError::Spec(format!(
            "crossing cap {} exceeds 3",
            spec.crossing_cap
        )));
    }
    if spec.n_min < 1 || spec.n_min > spec.n_max {
        return Err(CorpusError::Spec(format!(
            "empty vertex range {}..={}",
            spec.n_min, spec.n_max
        )));
    }
    let mut out = Vec::with_capacity(spec.count);
    let limit = ATTEMPTS_PER_ENTRY * spec.count as u64;
    let mut index = 0;
    while out.len() < spec.count {
        if index == limit {
            return Err(CorpusError::Exhausted {
                wanted: spec.count,
                found: out.len(),
                tried: index,
            });
        }
        let g = candidate(spec, index);
        if let Some(entry) = admit(spec, solver, index, g)? {
            out.push(entry);
        }
        index += 1;
    }
    Ok(out)
}

/// One JSON object per line.
pub fn corpus_to_jsonl(entries: &[CorpusEntry]) -> String {
    entries
        .iter()
        .map(|e| serde_json::to_string(e).expect("entry serializes") + "\n")
        .collect()
}

fn admit(spec: &CorpusSpec, solver: &SolverConfig, index: u64, g: Graph) -> Result<Option<CorpusEntry>, CorpusError> {
    if g.n() >= 3 && euler_lower_bound(&g).unwrap_or(0) > spec.crossing_cap {
        return Ok(None);
    }
    let omega = if g.n() == 0 {
        0
    } else {
        clique_number(&g).expect("nonempty")
    };
    if spec.omega_max.is_some_and(|w| omega > w) {
        return Ok(None);
    }
    if spec
        .connectivity_min
        .is_some_and(|k| !vertex_connectivity_at_least(&g, k))
    {
        return Ok(None);
    }
    if spec.exclude_iso.iter().any(|h| is_isomorphic(&g, h)) {
        return Ok(None);
    }
    let Some(result) = crossing_number_at_most(&g, spec.crossing_cap, solver)? else {
        return Ok(None);
    };
    Ok(Some(CorpusEntry {
        index,
        graph6: serialize_graph(&g, GraphFormat::Graph6),
        n: g.n(),
        m: g.m(),
        nu: result.value,
        omega,
        connectivity: vertex_connectivity(&g),
    }))
}

/// Candidate graph number `index`: G(n, p), a random triangulation with a
/// few edges added or removed, or a triangulation padded with edges at its
/// lowest-degree vertices until the minimum degree reaches five.
pub fn candidate(spec: &CorpusSpec, index: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rng.set_stream(index);
    let n = rng.random_range(spec.n_min..=spec.n_max);
    let family = if n < 4 { 0 } else { rng.random_range(0..3) };
    if family == 0 {
        let p = rng.random_range(0.2..0.95);
        return gnp(n, p, &mut rng);
    }
    let mut edges = triangulation(n, &mut rng);
    let mut non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|e| !edges.contains(e))
        .collect();
    non_edges.shuffle(&mut rng);
    if family == 1 {
        let extra = rng.random_range(0..=spec.crossing_cap + 1);
        edges.extend(non_edges.into_iter().take(extra));
        let removed = if rng.random_bool(0.3) {
            rng.random_range(1..=3)
        } else {
            0
        };
        edges.shuffle(&mut rng);
        edges.truncate(edges.len() - removed.min(edges.len()));
    } else {
        let mut degree = vec![0; n];
        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        while let Some(i) = non_edges.iter().position(|&(u, v)| {
            degree[u].min(degree[v]) < 5 && degree[u].min(degree[v]) == *degree.iter().min().unwrap()
        }) {
            let (u, v) = non_edges.swap_remove(i);
            degree[u] += 1;
            degree[v] += 1;
            edges.push((u, v));
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    Graph::from_edges(n, edges).expect("distinct pairs").relabel(&perm)
}

/// Edges of a random maximal planar graph on `n >= 3` vertices: repeated
/// vertex insertion into a face, then random edge flips.
fn triangulation<R: Rng>(n: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for v in 3..n {
        let f = faces.swap_remove(rng.random_range(0..faces.len()));
        faces.extend([[f[0], f[1], v], [f[1], f[2], v], [f[2], f[0], v]]);
    }
    let has_edge = |faces: &[[usize; 3]], a: usize, b: usize| {
        faces.iter().any(|f| (0..3).any(|i| f[i] == a && f[(i + 1) % 3] == b))
    };
    for _ in 0..3 * n {
        // Flip the edge `a b` shared by faces `a b c` and `b a d` into `c d`.
        let fi = rng.random_range(0..faces.len());
        let r = rng.random_range(0..3);
        let (a, b, c) = (faces[fi][r], faces[fi][(r + 1) % 3], faces[fi][(r + 2) % 3]);
        let gi = faces
            .iter()
            .position(|f| (0..3).any(|i| f[i] == b && f[(i + 1) % 3] == a))
            .expect("every edge borders two faces");
        let g = faces[gi];
        let d = (0..3).map(|i| g[i]).find(|&x| x != a && x != b).unwrap();
        if c == d || has_edge(&faces, c, d) || has_edge(&faces, d, c) {
            continue;
        }
        faces[fi] = [c, a, d];
        faces[gi] = [d, b, c];
    }
    let mut edges: Vec<(usize, usize)> = faces
        .iter()
        .flat_map(|f| (0..3).map(move |i| (f[i].min(f[(i + 1) % 3]), f[i].max(f[(i + 1) % 3]))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::is_planar;

    #[test]
    fn triangulations_are_maximal_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=12 {
            for _ in 0..20 {
                let g = Graph::from_edges(n, triangulation(n, &mut rng)).unwrap();
                assert_eq!(g.m(), 3 * n - 6);
                assert!(is_planar(&g));
            }
        }
    }

    #[test]
    fn corpus_is_reproducible_and_filtered() {
        let mut spec = CorpusSpec::new(1, 12, 8, 2);
        spec.omega_max = Some(4);
        let solver = SolverConfig::default();
        let a = gen_corpus(&spec, &solver).unwrap();
        let b = gen_corpus(&spec, &solver).unwrap();
        assert_eq!(corpus_to_jsonl(&a), corpus_to_jsonl(&b));
        assert_eq!(a.len(), 12);
        for e in &a {
            assert!(e.nu <= 2 && e.omega <= 4);
            assert_eq!(e.graph().n(), e.n);
        }
    }

    #[test]
    fn planar_corpus() {
        let spec = CorpusSpec::new(5, 10, 9, 0);
        for e in gen_corpus(&spec, &SolverConfig::default()).unwrap() {
            assert!(is_planar(&e.graph()));
            assert_eq!(e.nu, 0);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        let solver = SolverConfig::default();
        assert!(matches!(
            gen_corpus(&CorpusSpec::new(1, 1, 8, 4), &solver),
            Err(CorpusError::Spec(_))
        ));
        let mut spec = CorpusSpec::new(1, 1, 8, 1);
        spec.n_min = 9;
        assert!(matches!(gen_corpus(&spec, &solver), Err(CorpusError::Spec(_))));
    }
}
