//! Left-right planarity test (de Fraysseix–Rosenstiehl, in Brandes'
//! formulation) with construction of a combinatorial embedding.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default, Debug)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn single(e: usize) -> Interval {
        Interval {
            low: Some(e),
            high: Some(e),
        }
    }

    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default, Debug)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

/// Cyclic clockwise neighbor lists under construction.
struct Rotation {
    order: Vec<Vec<usize>>,
    first: Vec<Option<usize>>,
}

impl Rotation {
    fn position(&self, v: usize, w: usize) -> usize {
        self.order[v]
            .iter()
            .position(|&x| x == w)
            .expect("reference half-edge present")
    }

    fn add_cw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => {
                debug_assert!(self.order[v].is_empty());
                self.order[v].push(w);
                self.first[v] = Some(w);
            }
            Some(r) => {
                let p = self.position(v, r);
                self.order[v].insert(p + 1, w);
            }
        }
    }

    fn add_ccw(&mut self, v: usize, w: usize, reference: Option<usize>) {
        match reference {
            None => self.add_cw(v, w, None),
            Some(r) => {
                let p = self.position(v, r);
                self.order[v].insert(p, w);
                if self.first[v] == Some(r) {
                    self.first[v] = Some(w);
                }
            }
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        let r = self.first[v];
        self.add_ccw(v, w, r);
    }
}

struct State<'a> {
    adj: &'a [Vec<(usize, usize)>],
    height: Vec<usize>,
    parent_edge: Vec<Option<usize>>,
    oriented: Vec<bool>,
    src: Vec<usize>,
    dst: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    lowpt: Vec<i64>,
    lowpt2: Vec<i64>,
    nesting_depth: Vec<i64>,
    reference: Vec<Option<usize>>,
    side: Vec<i64>,
    stack: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    left_ref: Vec<usize>,
    right_ref: Vec<usize>,
    roots: Vec<usize>,
    rotation: Rotation,
}

/// Returns a clockwise rotation system of a planar embedding, or `None` if the
/// graph is not planar. `adj[v]` lists `(neighbor, edge id)` for a simple
/// graph whose edge ids are `0..m`.
pub(crate) fn embed(adj: &[Vec<(usize, usize)>], m: usize) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    if n > 2 && m > 3 * n - 6 {
        return None;
    }
    let mut st = State {
        adj,
        height: vec![NONE; n],
        parent_edge: vec![None; n],
        oriented: vec![false; m],
        src: vec![NONE; m],
        dst: vec![NONE; m],
        out_edges: vec![Vec::new(); n],
        lowpt: vec![0; m],
        lowpt2: vec![0; m],
        nesting_depth: vec![0; m],
        reference: vec![None; m],
        side: vec![1; m],
        stack: Vec::new(),
        stack_bottom: vec![0; m],
        lowpt_edge: vec![None; m],
        left_ref: vec![NONE; n],
        right_ref: vec![NONE; n],
        roots: Vec::new(),
        rotation: Rotation {
            order: vec![Vec::new(); n],
            first: vec![None; n],
        },
    };
    for v in 0..n {
        if st.height[v] == NONE {
            st.height[v] = 0;
            st.roots.push(v);
            st.orient(v);
        }
    }
    for v in 0..n {
        let nd = &st.nesting_depth;
        st.out_edges[v].sort_by_key(|&e| nd[e]);
    }
    for i in 0..st.roots.len() {
        let r = st.roots[i];
        if !st.test(r) {
            return None;
        }
    }
    for e in 0..m {
        let s = st.sign(e);
        st.nesting_depth[e] *= s;
    }
    for v in 0..n {
        let nd = &st.nesting_depth;
        st.out_edges[v].sort_by_key(|&e| nd[e]);
        let mut prev = None;
        for i in 0..st.out_edges[v].len() {
            let w = st.dst[st.out_edges[v][i]];
            st.rotation.add_cw(v, w, prev);
            prev = Some(w);
        }
    }
    for i in 0..st.roots.len() {
        let r = st.roots[i];
        st.embed_from(r);
    }
    Some(st.rotation.order)
}

impl State<'_> {
    fn orient(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        for &(w, e) in &self.adj[v] {
            if self.oriented[e] {
                continue;
            }
            self.oriented[e] = true;
            self.src[e] = v;
            self.dst[e] = w;
            self.out_edges[v].push(e);
            let hv = self.height[v] as i64;
            self.lowpt[e] = hv;
            self.lowpt2[e] = hv;
            if self.height[w] == NONE {
                self.parent_edge[w] = Some(e);
                self.height[w] = self.height[v] + 1;
                self.orient(w);
            } else {
                self.lowpt[e] = self.height[w] as i64;
            }
            self.nesting_depth[e] = 2 * self.lowpt[e];
            if self.lowpt2[e] < hv {
                self.nesting_depth[e] += 1;
            }
            if let Some(pe) = parent {
                if self.lowpt[e] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                    self.lowpt[pe] = self.lowpt[e];
                } else if self.lowpt[e] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> i64 {
        match (p.left.low, p.right.low) {
            (None, Some(r)) => self.lowpt[r],
            (Some(l), None) => self.lowpt[l],
            (Some(l), Some(r)) => self.lowpt[l].min(self.lowpt[r]),
            (None, None) => unreachable!("empty conflict pair on stack"),
        }
    }

    fn test(&mut self, v: usize) -> bool {
        let parent = self.parent_edge[v];
        let hv = self.height[v] as i64;
        for idx in 0..self.out_edges[v].len() {
            let ei = self.out_edges[v][idx];
            let w = self.dst[ei];
            self.stack_bottom[ei] = self.stack.len();
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge[ei] = Some(ei);
                self.stack.push(ConflictPair {
                    left: Interval::default(),
                    right: Interval::single(ei),
                });
            }
            if self.lowpt[ei] < hv {
                let e = parent.expect("only non-roots have return edges below them");
                if idx == 0 {
                    self.lowpt_edge[e] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = parent {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        loop {
            let mut q = self.stack.pop().expect("return edges of ei are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let qlow = q.right.low.expect("nonempty interval");
            if self.lowpt[qlow] > self.lowpt[e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.reference[p.right.low.unwrap()] = q.right.high;
                }
                p.right.low = q.right.low;
            } else {
                self.reference[qlow] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            if let Some(l) = p.right.low {
                self.reference[l] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.reference[p.left.low.unwrap()] = q.left.high;
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: usize) {
        let u = self.src[e];
        let hu = self.height[u] as i64;
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.stack.pop().unwrap();
            if let Some(l) = p.left.low {
                self.side[l] = -1;
            }
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] != u {
                    break;
                }
                p.left.high = self.reference[h];
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.reference[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] != u {
                    break;
                }
                p.right.high = self.reference[h];
            }
            if p.right.high.is_none() {
                if let Some(r) = p.right.low {
                    self.reference[r] = p.left.low;
                    self.side[r] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
        if self.lowpt[e] < hu {
            let top = self.stack.last().expect("return edge keeps a pair on the stack");
            let (hl, hr) = (top.left.high, top.right.high);
            self.reference[e] = match (hl, hr) {
                (Some(l), None) => Some(l),
                (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                _ => hr,
            };
        }
    }

    fn sign(&mut self, e: usize) -> i64 {
        // Follow the reference chain iteratively, then fold the signs back.
        let mut chain = vec![e];
        while let Some(r) = self.reference[*chain.last().unwrap()] {
            chain.push(r);
        }
        for i in (0..chain.len() - 1).rev() {
            let (a, b) = (chain[i], chain[i + 1]);
            self.side[a] *= self.side[b];
            self.reference[a] = None;
        }
        self.side[e]
    }

    fn embed_from(&mut self, v: usize) {
        for idx in 0..self.out_edges[v].len() {
            let ei = self.out_edges[v][idx];
            let w = self.dst[ei];
            if self.parent_edge[w] == Some(ei) {
                self.rotation.add_first(w, v);
                self.left_ref[v] = w;
                self.right_ref[v] = w;
                self.embed_from(w);
            } else if self.side[ei] == 1 {
                let r = self.right_ref[w];
                self.rotation.add_cw(w, v, Some(r));
            } else {
                let l = self.left_ref[w];
                self.rotation.add_ccw(w, v, Some(l));
                self.left_ref[w] = v;
            }
        }
    }
}
