//! Exact maximum s-t flow on weighted graphs.
//!
//! Weights are scaled to integers by their common denominator, a blocking
//! flow algorithm runs on `u64` capacities, and circulations are cancelled
//! afterwards so the support of the returned flow is acyclic.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Rational, VertexId, VertexSet, WeightedGraph};

/// A feasible s-t flow. Each entry of `edges` is `(u, v, capacity, flow)`
/// with `u < v`; a negative flow runs from `v` to `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowAssignment {
    pub n: usize,
    pub s: VertexId,
    pub t: VertexId,
    pub value: Rational,
    pub edges: Vec<(VertexId, VertexId, Rational, Rational)>,
    /// Vertices reachable from `s` in the residual network: the source side
    /// of a minimum s-t cut.
    pub source_side: VertexSet,
}

impl FlowAssignment {
    /// Checks capacities, conservation, the flow value and that the
    /// support has no directed cycle.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Precondition(msg));
        let mut net = vec![Rational::zero(); self.n];
        for &(u, v, cap, f) in &self.edges {
            if f.abs() > cap {
                return bad(format!("flow {f} exceeds capacity {cap} on {u}-{v}"));
            }
            net[u] -= f;
            net[v] += f;
        }
        for (x, d) in net.iter().enumerate() {
            let expect = if x == self.s {
                -self.value
            } else if x == self.t {
                self.value
            } else {
                Rational::zero()
            };
            if *d != expect {
                return bad(format!("conservation fails at {x}: net inflow {d}"));
            }
        }
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for (a, b) in self.support() {
            out[a].push(b);
            indeg[b] += 1;
        }
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&x| indeg[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = queue.pop_front() {
            seen += 1;
            for &y in &out[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    queue.push_back(y);
                }
            }
        }
        if seen != self.n {
            return bad("flow support contains a directed cycle".into());
        }
        Ok(())
    }

    /// Directed arcs carrying positive flow.
    pub fn support(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().filter(|e| !e.3.is_zero()).map(|&(u, v, _, f)| if f > Rational::zero() { (u, v) } else { (v, u) })
    }
}

/// Total capacity of the edges that carry nonzero flow.
pub fn flow_cover_weight(flow: &FlowAssignment) -> Rational {
    flow.edges.iter().filter(|e| !e.3.is_zero()).fold(Rational::zero(), |acc, e| acc + e.2)
}

/// Exact maximum flow from `s` to `t` in `h`.
pub fn max_flow(h: &WeightedGraph, s: VertexId, t: VertexId) -> Result<FlowAssignment> {
    let n = h.n();
    for x in [s, t] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if s == t {
        return Err(Error::Precondition("source and sink coincide".into()));
    }
    let scale = h.common_denominator()?;
    let edges = h.scaled_integer_edges(scale)?;
    let mut net = Network::new(n, &edges);
    let value = net.run(s, t);
    let reach = net.reachable(s);
    let mut flows: Vec<i128> = edges.iter().enumerate().map(|(i, e)| e.2 as i128 - net.res[2 * i] as i128).collect();
    cancel_cycles(n, &edges, &mut flows);
    let to_rat = |x: i128| -> Result<Rational> {
        let x = i64::try_from(x).map_err(|_| Error::Overflow)?;
        Ok(Rational::new(x, scale))
    };
    let mut out = Vec::with_capacity(edges.len());
    for ((u, v, w), f) in edges.iter().zip(&flows) {
        out.push((*u, *v, to_rat(*w as i128)?, to_rat(*f)?));
    }
    Ok(FlowAssignment {
        n,
        s,
        t,
        value: to_rat(value as i128)?,
        edges: out,
        source_side: VertexSet::new((0..n).filter(|&x| reach[x])),
    })
}

/// Residual network with arcs `2i` (u to v) and `2i + 1` (v to u) for edge `i`.
struct Network {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    res: Vec<u64>,
}

impl Network {
    fn new(n: usize, edges: &[(usize, usize, u64)]) -> Self {
        let mut head = vec![Vec::new(); n];
        let mut to = Vec::with_capacity(2 * edges.len());
        let mut res = Vec::with_capacity(2 * edges.len());
        for &(u, v, w) in edges {
            head[u].push(to.len());
            to.push(v);
            res.push(w);
            head[v].push(to.len());
            to.push(u);
            res.push(w);
        }
        Self { head, to, res }
    }

    fn levels(&self, s: usize) -> Vec<u32> {
        let mut level = vec![u32::MAX; self.head.len()];
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.head[x] {
                let y = self.to[a];
                if self.res[a] > 0 && level[y] == u32::MAX {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        level
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        self.levels(s).into_iter().map(|l| l != u32::MAX).collect()
    }

    fn run(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t] == u32::MAX {
                return total;
            }
            let mut iter = vec![0usize; self.head.len()];
            loop {
                let pushed = self.augment(s, t, u64::MAX, &level, &mut iter);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn augment(&mut self, x: usize, t: usize, limit: u64, level: &[u32], iter: &mut [usize]) -> u64 {
        if x == t {
            return limit;
        }
        while iter[x] < self.head[x].len() {
            let a = self.head[x][iter[x]];
            let y = self.to[a];
            if self.res[a] > 0 && level[y] == level[x] + 1 {
                let pushed = self.augment(y, t, limit.min(self.res[a]), level, iter);
                if pushed > 0 {
                    self.res[a] -= pushed;
                    self.res[a ^ 1] += pushed;
                    return pushed;
                }
            }
            iter[x] += 1;
        }
        0
    }
}

/// Removes every directed cycle from the flow support by cancelling the
/// bottleneck around it. `flows[i]` is the flow on edge `i` from its first
/// to its second endpoint.
fn cancel_cycles(n: usize, edges: &[(usize, usize, u64)], flows: &mut [i128]) {
    // out[x]: (edge index, head, direction sign)
    let mut out: Vec<Vec<(usize, usize, i128)>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        out[u].push((i, v, 1));
        out[v].push((i, u, -1));
    }
    let positive = |flows: &[i128], (i, _, sign): (usize, usize, i128)| flows[i] * sign > 0;
    const FRESH: u8 = 0;
    const ON_STACK: u8 = 1;
    const DONE: u8 = 2;
    let mut state = vec![FRESH; n];
    let mut pos = vec![0usize; n];
    let mut ptr = vec![0usize; n];
    for start in 0..n {
        if state[start] != FRESH {
            continue;
        }
        let mut stack = vec![start];
        state[start] = ON_STACK;
        while let Some(&x) = stack.last() {
            while ptr[x] < out[x].len() {
                let arc = out[x][ptr[x]];
                if positive(flows, arc) && state[arc.1] != DONE {
                    break;
                }
                ptr[x] += 1;
            }
            if ptr[x] == out[x].len() {
                state[x] = DONE;
                stack.pop();
                continue;
            }
            let y = out[x][ptr[x]].1;
            if state[y] == ON_STACK {
                let from = pos[y];
                let arcs: Vec<(usize, usize, i128)> = stack[from..].iter().map(|&z| out[z][ptr[z]]).collect();
                let delta = arcs.iter().map(|&(i, _, sign)| flows[i] * sign).min().expect("cycle has arcs");
                for &(i, _, sign) in &arcs {
                    flows[i] -= delta * sign;
                }
                for &z in &stack[from + 1..] {
                    state[z] = FRESH;
                }
                stack.truncate(from + 1);
            } else {
                state[y] = ON_STACK;
                pos[y] = stack.len();
                stack.push(y);
            }
        }
    }
}
