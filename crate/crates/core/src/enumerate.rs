//! Enumeration of all cuts below a threshold in a known weighted graph, and
//! the partition those cuts induce.
//!
//! Nodes whose connectivity provably exceeds the threshold are merged first.
//! What remains is enumerated exhaustively when small, by flow-bounded
//! branching when moderate, and by repeated recursive random contraction
//! otherwise. The first two modes are complete; the third finds each cut
//! with a probability that grows with the number of runs.

use std::collections::{BTreeSet, HashMap};

use num_traits::{ToPrimitive, Zero};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Cut, Rational, VertexSet, WeightedGraph};
use crate::intgraph::{self, Dsu, FlowState, IntGraph, Shrunk, TerminalNetwork};
use crate::params::EnumerationConfig;
use crate::rng::Rng;

/// Which enumeration strategy handled the (pre-contracted) graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Trivial,
    Exhaustive,
    Branching,
    RandomContraction,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub cuts: Vec<Cut>,
    pub mode: Mode,
    /// Nodes left after the sound pre-contraction.
    pub nodes_after_precontraction: usize,
    /// The cut limit was hit; `cuts` is then only part of the answer.
    pub truncated: bool,
}

/// All cuts of `g` with value at most `threshold`, each with its side
/// normalised to contain node 0.
pub fn enumerate_near_min_cuts(g: &WeightedGraph, threshold: Rational, rng: &mut Rng) -> Result<Vec<Cut>> {
    let sizes = vec![1; g.n()];
    Ok(enumerate_cuts(g, &sizes, threshold, 1, &EnumerationConfig::default(), rng)?.cuts)
}

/// Cuts of value at most `threshold` whose sides each carry total size at
/// least `min_side`, where node `i` has size `sizes[i]`.
pub fn enumerate_cuts(
    g: &WeightedGraph,
    sizes: &[usize],
    threshold: Rational,
    min_side: usize,
    config: &EnumerationConfig,
    rng: &mut Rng,
) -> Result<Enumeration> {
    let n = g.n();
    if sizes.len() != n {
        return Err(Error::Precondition(format!("{} sizes for {n} nodes", sizes.len())));
    }
    let empty = |mode, k| Ok(Enumeration { cuts: Vec::new(), mode, nodes_after_precontraction: k, truncated: false });
    if n < 2 || threshold < Rational::zero() {
        return empty(Mode::Trivial, n);
    }
    let (ig, scale) = IntGraph::from_weighted(g)?;
    let limit = (threshold * Rational::from_integer(scale)).floor().to_integer();
    let limit = u64::try_from(limit).map_err(|_| Error::Overflow)?;
    let shrunk = intgraph::precontract(&ig, limit);
    let k = shrunk.graph.n();
    if k < 2 {
        return empty(Mode::Trivial, k);
    }
    let node_sizes: Vec<usize> = shrunk.members.iter().map(|m| m.iter().map(|&v| sizes[v]).sum()).collect();
    let total: usize = node_sizes.iter().sum();
    let spec = Filter { sizes: &node_sizes, total, min_side, limit, max_cuts: config.max_cuts };
    let (mode, found) = if k <= config.exhaustive_limit {
        (Mode::Exhaustive, exhaustive(&shrunk.graph, &spec))
    } else if k <= config.branching_limit {
        (Mode::Branching, branching(&shrunk.graph, &spec))
    } else {
        let runs = config.contraction_runs.unwrap_or(2 * ceil_log2(k).max(1));
        (Mode::RandomContraction, random_contraction(&shrunk, &spec, runs, rng))
    };
    let truncated = found.len() > config.max_cuts;
    let mut cuts = Vec::with_capacity(found.len());
    for (value, side_nodes) in found {
        let side = VertexSet::new(side_nodes.iter().flat_map(|&x| shrunk.members[x].iter().copied()));
        let value = Rational::new(value as i64, scale);
        cuts.push(Cut::canonical(side, n, value));
    }
    cuts.sort_by(|a, b| (a.value, &a.side).cmp(&(b.value, &b.side)));
    Ok(Enumeration { cuts, mode, nodes_after_precontraction: k, truncated })
}

fn ceil_log2(k: usize) -> usize {
    (usize::BITS - (k.max(1) - 1).leading_zeros()) as usize
}

struct Filter<'a> {
    sizes: &'a [usize],
    total: usize,
    min_side: usize,
    limit: u64,
    max_cuts: usize,
}

impl Filter<'_> {
    fn full(&self, out: &BTreeSet<(u64, Vec<usize>)>) -> bool {
        out.len() > self.max_cuts
    }

    fn accepts(&self, value: u64, side_size: usize) -> bool {
        value <= self.limit && side_size >= self.min_side && self.total - side_size >= self.min_side
    }
}

/// Every side containing node 0, visited in Gray-code order.
fn exhaustive(g: &IntGraph, f: &Filter<'_>) -> BTreeSet<(u64, Vec<usize>)> {
    let k = g.n();
    let mut w = vec![vec![0u64; k]; k];
    for (u, v, x) in g.edges() {
        w[u][v] = x;
        w[v][u] = x;
    }
    let deg: Vec<u64> = (0..k).map(|v| g.degree(v)).collect();
    let mut in_b = vec![false; k];
    let mut conn_b = vec![0u64; k];
    let mut cut: i64 = 0;
    let mut size_b = 0usize;
    let mut out = BTreeSet::new();
    for i in 1u64..(1u64 << (k - 1)) {
        let v = i.trailing_zeros() as usize + 1;
        if in_b[v] {
            cut += 2 * conn_b[v] as i64 - deg[v] as i64;
            in_b[v] = false;
            size_b -= f.sizes[v];
            for u in 0..k {
                conn_b[u] -= w[u][v];
            }
        } else {
            cut += deg[v] as i64 - 2 * conn_b[v] as i64;
            in_b[v] = true;
            size_b += f.sizes[v];
            for u in 0..k {
                conn_b[u] += w[u][v];
            }
        }
        let value = cut as u64;
        if f.accepts(value, f.total - size_b) {
            out.insert((value, (0..k).filter(|&x| !in_b[x]).collect()));
            if f.full(&out) {
                break;
            }
        }
    }
    out
}

/// Branch over node assignments, pruning whenever the minimum cut
/// separating the assigned sides exceeds the limit. Each cut is reached
/// from exactly one root: its smallest node on the far side of node 0.
fn branching(g: &IntGraph, f: &Filter<'_>) -> BTreeSet<(u64, Vec<usize>)> {
    let k = g.n();
    let net = TerminalNetwork::new(g);
    let mut out = BTreeSet::new();
    let mut side = vec![0u8; k];
    for t in 1..k {
        let mut st = net.empty();
        side[..t].fill(1);
        for x in 0..t {
            net.attach(&mut st, x, true);
        }
        side[t] = 2;
        net.attach(&mut st, t, false);
        side[t + 1..].fill(0);
        if let Some(witness) = net.augment(&mut st, f.limit) {
            branch(g, &net, f, &mut side, t + 1, st, witness, &mut out);
        }
        if f.full(&out) {
            break;
        }
    }
    out
}

/// `side`: 1 = with node 0, 2 = far side, 0 = unassigned. `st` is a maximum
/// flow for the current assignment and `witness` the source side of a
/// minimum cut that respects it.
#[allow(clippy::too_many_arguments)]
fn branch(g: &IntGraph, net: &TerminalNetwork, f: &Filter<'_>, side: &mut Vec<u8>, next: usize, st: FlowState, witness: Vec<bool>, out: &mut BTreeSet<(u64, Vec<usize>)>) {
    let k = g.n();
    if f.full(out) {
        return;
    }
    if next == k {
        let members: Vec<usize> = (0..k).filter(|&x| side[x] == 1).collect();
        let size: usize = members.iter().map(|&x| f.sizes[x]).sum();
        let value: u64 = g.edges().filter(|&(u, v, _)| (side[u] == 1) != (side[v] == 1)).map(|e| e.2).sum();
        if f.accepts(value, size) {
            out.insert((value, members));
        }
        return;
    }
    let near = witness[next];
    // The branch that agrees with the witness keeps the same minimum cut, so
    // only the other one needs more augmenting.
    let (agree, disagree) = if near { (1u8, 2u8) } else { (2u8, 1u8) };
    let mut other = st.clone();
    let mut st = st;
    side[next] = agree;
    net.attach(&mut st, next, near);
    branch(g, net, f, side, next + 1, st, witness, out);
    side[next] = disagree;
    net.attach(&mut other, next, !near);
    if let Some(w) = net.augment(&mut other, f.limit) {
        branch(g, net, f, side, next + 1, other, w, out);
    }
    side[next] = 0;
}

/// Recursive random contraction: each level contracts to about `k / sqrt 2`
/// nodes twice independently; small graphs are enumerated exhaustively.
fn random_contraction(s: &Shrunk, f: &Filter<'_>, runs: usize, rng: &mut Rng) -> BTreeSet<(u64, Vec<usize>)> {
    const LEAF: usize = 12;
    let mut out = BTreeSet::new();
    let start = Shrunk { graph: s.graph.clone(), members: (0..s.graph.n()).map(|v| vec![v]).collect() };
    for _ in 0..runs {
        if f.full(&out) {
            break;
        }
        recurse(&start, f, LEAF, rng, &mut out);
    }
    out
}

fn recurse(s: &Shrunk, f: &Filter<'_>, leaf: usize, rng: &mut Rng, out: &mut BTreeSet<(u64, Vec<usize>)>) {
    if f.full(out) {
        return;
    }
    // Contraction raises degrees, so sound pre-contraction keeps paying off
    // below the root and often collapses a branch entirely.
    let inner = intgraph::precontract(&s.graph, f.limit);
    let s = &Shrunk {
        members: inner.members.iter().map(|m| m.iter().flat_map(|&x| s.members[x].iter().copied()).collect()).collect(),
        graph: inner.graph,
    };
    let k = s.graph.n();
    if k <= leaf {
        let sizes: Vec<usize> = s.members.iter().map(|m| m.iter().map(|&x| f.sizes[x]).sum()).collect();
        let local = Filter { sizes: &sizes, total: f.total, min_side: f.min_side, limit: f.limit, max_cuts: f.max_cuts.saturating_sub(out.len()) };
        if k >= 2 {
            for (value, nodes) in exhaustive(&s.graph, &local) {
                let mut side: Vec<usize> = nodes.iter().flat_map(|&x| s.members[x].iter().copied()).collect();
                side.sort_unstable();
                let side = if side.contains(&0) { side } else { complement(&side, f.sizes.len()) };
                out.insert((value, side));
            }
        }
        return;
    }
    let target = ((1.0 + k as f64 / std::f64::consts::SQRT_2).ceil() as usize).clamp(leaf.min(k - 1), k - 1);
    for _ in 0..2 {
        let child = contract_randomly(s, target, rng);
        recurse(&child, f, leaf, rng, out);
    }
}

fn complement(side: &[usize], n: usize) -> Vec<usize> {
    let mut mark = vec![false; n];
    for &x in side {
        mark[x] = true;
    }
    (0..n).filter(|&x| !mark[x]).collect()
}

/// Weighted random contraction down to `target` nodes, via exponential
/// clocks: contracting edges in increasing `Exp(w)` order is the same
/// process as repeatedly contracting a weight-proportional random edge.
fn contract_randomly(s: &Shrunk, target: usize, rng: &mut Rng) -> Shrunk {
    let mut keyed: Vec<(f64, usize, usize)> = s
        .graph
        .edges()
        .map(|(u, v, w)| {
            let u01: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
            (-u01.ln() / w.to_f64().unwrap_or(f64::MAX), u, v)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut dsu = Dsu::new(s.graph.n());
    let mut nodes = s.graph.n();
    for (_, u, v) in keyed {
        if nodes <= target {
            break;
        }
        if dsu.union(u, v) {
            nodes -= 1;
        }
    }
    // A disconnected graph runs out of edges first; its components are
    // then joined at random, as if by edges of weight zero.
    while nodes > target {
        let (label, k) = dsu.labels();
        let mut first = vec![usize::MAX; k];
        for (x, &l) in label.iter().enumerate() {
            if first[l] == usize::MAX {
                first[l] = x;
            }
        }
        let a = rng.random_range(0..k);
        let b = (a + rng.random_range(1..k)) % k;
        dsu.union(first[a], first[b]);
        nodes -= 1;
    }
    let mut child = s.clone();
    child.apply(&mut dsu);
    child
}

/// Classes of nodes that lie on the same side of every listed cut. Nodes
/// are `0..n`; the result is ordered by smallest member.
pub fn separation_classes(n: usize, cuts: &[Cut]) -> Vec<Vec<usize>> {
    let mut class = vec![0usize; n];
    let mut count = usize::from(n > 0);
    for cut in cuts {
        if count == n {
            break;
        }
        let mut split: HashMap<(usize, bool), usize> = HashMap::new();
        let mut next = 0;
        for v in 0..n {
            let key = (class[v], cut.side.contains(v));
            let id = *split.entry(key).or_insert_with(|| {
                next += 1;
                next - 1
            });
            class[v] = id;
        }
        count = next;
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); count];
    for v in 0..n {
        groups[class[v]].push(v);
    }
    groups.retain(|g| !g.is_empty());
    groups.sort();
    groups
}
