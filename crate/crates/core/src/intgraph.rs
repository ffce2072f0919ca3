//! Integer-weighted working graphs for the exact solvers.
//!
//! Rational weights are scaled by their common denominator so that every
//! solver runs on `u64` capacities. The cut machinery is built on maximum
//! adjacency orderings: when vertex `x` is scanned and an edge `(x, y)`
//! raises `y`'s attachment to `r`, the local connectivity between `x` and `y`
//! is at least `r`. Contracting such edges is therefore safe for every cut
//! whose value is below `r`.

use std::collections::{BinaryHeap, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

#[derive(Clone, Debug)]
pub(crate) struct IntGraph {
    pub adj: Vec<Vec<(usize, u64)>>,
}

impl IntGraph {
    /// Graph on `n` nodes; parallel edges are merged and self-loops dropped.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut merged: HashMap<(usize, usize), u64> = HashMap::new();
        for (u, v, w) in edges {
            if u != v && w > 0 {
                *merged.entry((u.min(v), u.max(v))).or_default() += w;
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut list: Vec<_> = merged.into_iter().collect();
        list.sort_unstable();
        for ((u, v), w) in list {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        Self { adj }
    }

    /// Integer copy of `g` and the factor its weights were multiplied by.
    pub fn from_weighted(g: &WeightedGraph) -> Result<(Self, i64)> {
        let scale = g.common_denominator()?;
        let edges = g.scaled_integer_edges(scale)?;
        Ok((Self::from_edges(g.n(), edges), scale))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.adj[v].iter().map(|e| e.1).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| l.iter().filter(move |e| e.0 > u).map(move |&(v, w)| (u, v, w)))
    }

    /// Connected-component label of every node, labels `0..count`.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            queue.push_back(s);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x] {
                    if label[y] == usize::MAX {
                        label[y] = count;
                        queue.push_back(y);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// One maximum adjacency ordering; returns `(x, y, r)` for every edge,
    /// where `r` certifies `lambda(x, y) >= r`.
    pub fn ma_certificates(&self) -> Vec<(usize, usize, u64)> {
        let n = self.n();
        let mut attach = vec![0u64; n];
        let mut done = vec![false; n];
        let mut heap: BinaryHeap<(u64, usize)> = BinaryHeap::new();
        let mut out = Vec::new();
        let mut next_start = 0;
        let mut scanned = 0;
        while scanned < n {
            let x = match heap.pop() {
                Some((r, x)) if !done[x] && r == attach[x] => x,
                Some(_) => continue,
                None => {
                    while done[next_start] {
                        next_start += 1;
                    }
                    next_start
                }
            };
            done[x] = true;
            scanned += 1;
            for &(y, w) in &self.adj[x] {
                if !done[y] {
                    attach[y] += w;
                    out.push((x, y, attach[y]));
                    heap.push((attach[y], y));
                }
            }
        }
        out
    }

    /// Subgraph induced by `nodes`; node `i` of the result is `nodes[i]`.
    pub fn induced(&self, nodes: &[usize]) -> IntGraph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &x) in nodes.iter().enumerate() {
            index[x] = i;
        }
        let edges = nodes.iter().enumerate().flat_map(|(i, &x)| {
            let index = &index;
            self.adj[x].iter().filter(move |e| index[e.0] != usize::MAX && index[e.0] > i).map(move |&(y, w)| (i, index[y], w))
        });
        IntGraph::from_edges(nodes.len(), edges)
    }

    /// Contracts the node classes given by `label` (values `0..k`).
    pub fn quotient(&self, label: &[usize], k: usize) -> IntGraph {
        IntGraph::from_edges(k, self.edges().map(|(u, v, w)| (label[u], label[v], w)))
    }
}

/// Union-find over node ids.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a.max(b)] = a.min(b);
        true
    }

    /// Dense labels `0..k` in order of each class's smallest member.
    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut label = vec![0; n];
        let mut k = 0;
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = k;
                k += 1;
            }
            label[x] = id[r];
        }
        (label, k)
    }
}

/// A graph whose nodes stand for groups of the nodes of an input graph.
#[derive(Clone, Debug)]
pub(crate) struct Shrunk {
    pub graph: IntGraph,
    pub members: Vec<Vec<usize>>,
}

impl Shrunk {
    pub fn identity(g: &IntGraph) -> Self {
        Self { graph: g.clone(), members: (0..g.n()).map(|v| vec![v]).collect() }
    }

    /// Contracts every certified edge accepted by `accept`. Returns whether anything merged.
    fn contract_where(&mut self, accept: impl Fn(u64) -> bool) -> bool {
        let n = self.graph.n();
        let mut dsu = Dsu::new(n);
        let mut merged = false;
        for (x, y, r) in self.graph.ma_certificates() {
            if accept(r) {
                merged |= dsu.union(x, y);
            }
        }
        if merged {
            self.apply(&mut dsu);
        }
        merged
    }

    pub fn apply(&mut self, dsu: &mut Dsu) {
        let (label, k) = dsu.labels();
        let mut members = vec![Vec::new(); k];
        for (x, m) in self.members.drain(..).enumerate() {
            members[label[x]].extend(m);
        }
        for m in &mut members {
            m.sort_unstable();
        }
        self.graph = self.graph.quotient(&label, k);
        self.members = members;
    }
}

/// Exact global minimum cut: `(value, side)` with `side` a proper subset of
/// the nodes. A disconnected graph yields a zero cut around one component.
pub(crate) fn min_cut(g: &IntGraph) -> Result<(u64, Vec<usize>)> {
    if g.n() < 2 {
        return Err(Error::Precondition("a cut needs at least two vertices".into()));
    }
    let (label, count) = g.components();
    if count > 1 {
        return Ok((0, (0..g.n()).filter(|&v| label[v] == label[0]).collect()));
    }
    let mut s = Shrunk::identity(g);
    let mut best = (u64::MAX, Vec::new());
    while s.graph.n() > 1 {
        for v in 0..s.graph.n() {
            let d = s.graph.degree(v);
            if d < best.0 {
                best = (d, s.members[v].clone());
            }
        }
        let bound = best.0;
        s.contract_where(|r| r >= bound);
    }
    Ok(best)
}

/// Some cut of value at most `threshold`, if one exists.
pub(crate) fn cut_at_most(g: &IntGraph, threshold: u64) -> Option<(u64, Vec<usize>)> {
    if g.n() < 2 {
        return None;
    }
    let (label, count) = g.components();
    if count > 1 {
        return Some((0, (0..g.n()).filter(|&v| label[v] == label[0]).collect()));
    }
    let mut s = Shrunk::identity(g);
    while s.graph.n() > 1 {
        for v in 0..s.graph.n() {
            let d = s.graph.degree(v);
            if d <= threshold {
                return Some((d, s.members[v].clone()));
            }
        }
        s.contract_where(|r| r > threshold);
    }
    None
}

/// Contracts node pairs whose connectivity provably exceeds `threshold`.
/// Every cut of value at most `threshold` survives as a cut of the result.
pub(crate) fn precontract(g: &IntGraph, threshold: u64) -> Shrunk {
    let mut s = Shrunk::identity(g);
    while s.graph.n() > 1 && s.contract_where(|r| r > threshold) {}
    s
}

/// Flow network over an [`IntGraph`] in which nodes are attached to the
/// super-source or super-sink one at a time. Attaching a node keeps the
/// current flow feasible, so a search that grows its terminal sets can carry
/// the residual capacities down and only augment the difference.
pub(crate) struct TerminalNetwork {
    n: usize,
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    base: Vec<u64>,
}

/// Residual capacities and flow value on a [`TerminalNetwork`].
#[derive(Clone)]
pub(crate) struct FlowState {
    res: Vec<u64>,
    flow: u64,
}

const INF: u64 = u64::MAX / 4;

impl TerminalNetwork {
    pub fn new(g: &IntGraph) -> Self {
        let n = g.n();
        let mut net = Self { n, head: vec![usize::MAX; n + 2], to: Vec::new(), next: Vec::new(), base: Vec::new() };
        for (u, v, w) in g.edges() {
            net.add(u, v, w, w);
        }
        // Arc 2 * (m + x) joins the source to x, arc 2 * (m + n + x) joins x to the sink.
        for x in 0..n {
            net.add(n, x, 0, 0);
        }
        for x in 0..n {
            net.add(x, n + 1, 0, 0);
        }
        net
    }

    fn add(&mut self, u: usize, v: usize, cu: u64, cv: u64) {
        for (a, b, c) in [(u, v, cu), (v, u, cv)] {
            self.to.push(b);
            self.base.push(c);
            self.next.push(self.head[a]);
            self.head[a] = self.to.len() - 1;
        }
    }

    pub fn empty(&self) -> FlowState {
        FlowState { res: self.base.clone(), flow: 0 }
    }

    /// Ties `x` to the source (`source == true`) or the sink.
    pub fn attach(&self, st: &mut FlowState, x: usize, source: bool) {
        let terminals = self.to.len() - 4 * self.n;
        let arc = terminals + 2 * x + if source { 0 } else { 2 * self.n };
        st.res[arc] = INF;
    }

    /// Augments until the flow is maximum or exceeds `cap`. Returns the
    /// source side of a minimum cut when the maximum is at most `cap`.
    pub fn augment(&self, st: &mut FlowState, cap: u64) -> Option<Vec<bool>> {
        let (s, t) = (self.n, self.n + 1);
        let mut prev_arc = vec![usize::MAX; self.n + 2];
        loop {
            let mut seen = vec![false; self.n + 2];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                let mut a = self.head[x];
                while a != usize::MAX {
                    let y = self.to[a];
                    if st.res[a] > 0 && !seen[y] {
                        seen[y] = true;
                        prev_arc[y] = a;
                        queue.push_back(y);
                    }
                    a = self.next[a];
                }
            }
            if !seen[t] {
                seen.truncate(self.n);
                return Some(seen);
            }
            let mut bottleneck = INF;
            let mut y = t;
            while y != s {
                let a = prev_arc[y];
                bottleneck = bottleneck.min(st.res[a]);
                y = self.to[a ^ 1];
            }
            let mut y = t;
            while y != s {
                let a = prev_arc[y];
                st.res[a] -= bottleneck;
                st.res[a ^ 1] += bottleneck;
                y = self.to[a ^ 1];
            }
            st.flow = st.flow.saturating_add(bottleneck);
            if st.flow > cap {
                return None;
            }
        }
    }
}

/// Maximum flow value between node sets `sources` and `sinks`, stopping as
/// soon as it exceeds `cap`. Returns the value (or `cap + 1`) and, when the
/// flow is at most `cap`, the source side of a minimum cut.
#[cfg(test)]
pub(crate) fn capped_flow(g: &IntGraph, sources: &[usize], sinks: &[usize], cap: u64) -> (u64, Option<Vec<bool>>) {
    let net = TerminalNetwork::new(g);
    let mut st = net.empty();
    for &x in sources {
        net.attach(&mut st, x, true);
    }
    for &x in sinks {
        net.attach(&mut st, x, false);
    }
    match net.augment(&mut st, cap) {
        Some(side) => (st.flow, Some(side)),
        None => (cap + 1, None),
    }
}
