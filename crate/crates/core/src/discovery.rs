//! Query primitives built on edge counting.
//!
//! Everything here follows one pattern: the number of edges between a unit
//! `a` and a set `T` costs three queries, so a set known to contain `k`
//! neighbors of `a` can be halved repeatedly until the neighbor is isolated.
//! Units are whatever the access handle exposes: original vertices for a
//! [`CutOracle`](crate::CutOracle), super-vertices for a contracted view.

use std::collections::HashSet;

use rand::seq::index;
use rand::Rng as _;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};
use crate::oracle::{CutAccess, CutOracle};
use crate::rng::Rng;

/// Outcome of a learning run that may stop early.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Learned<T> {
    Complete(T),
    /// More than the allowed number of edges exist; `learned` were found first.
    Aborted { learned: u64 },
}

impl<T> Learned<T> {
    pub fn complete(self) -> Option<T> {
        match self {
            Learned::Complete(t) => Some(t),
            Learned::Aborted { .. } => None,
        }
    }
}

pub fn ceil_log2(k: usize) -> u32 {
    if k <= 1 {
        0
    } else {
        usize::BITS - (k - 1).leading_zeros()
    }
}

/// Query bound of [`find_neighbor`] for `k` candidates: `3 ceil(log2 k) + 3`.
pub fn find_neighbor_query_bound(k: usize) -> u64 {
    3 * ceil_log2(k) as u64 + 3
}

/// Some neighbor of unit `v` among `candidates \ exclude`, or `None`.
///
/// The remaining candidates are halved into the lower `floor(k/2)` ids and
/// the upper `ceil(k/2)` ids; the search descends into the lower half when it
/// holds a neighbor and into the upper half otherwise.
pub fn find_neighbor<Q: CutAccess>(q: &mut Q, v: usize, candidates: &VertexSet, exclude: &VertexSet) -> Result<Option<usize>> {
    if candidates.contains(v) {
        return Err(Error::Precondition(format!("unit {v} is among its own candidates")));
    }
    let mut set: Vec<usize> = candidates.iter().filter(|&x| !exclude.contains(x)).collect();
    if set.is_empty() {
        return Ok(None);
    }
    let mut count = q.unit_edges_between(v, &set)?;
    if count == 0 {
        return Ok(None);
    }
    while set.len() > 1 {
        let lower = set.len() / 2;
        let c1 = q.unit_edges_between(v, &set[..lower])?;
        if c1 > 0 {
            set.truncate(lower);
            count = c1;
        } else {
            set.drain(..lower);
        }
    }
    debug_assert!(count > 0);
    Ok(Some(set[0]))
}

/// Walks a sorted unit list known to hold `count` edges from `a`, recording
/// each neighbor with its multiplicity. Returns `false` once the learner's
/// budget is exceeded.
fn split_units<Q: CutAccess>(q: &mut Q, a: usize, set: &[usize], count: u64, learner: &mut Learner, out: &mut Vec<(usize, u64)>) -> Result<bool> {
    if count == 0 {
        return Ok(true);
    }
    if set.len() == 1 {
        out.push((set[0], count));
        return Ok(learner.add(count));
    }
    if learner.simple && count == set.len() as u64 {
        out.extend(set.iter().map(|&u| (u, 1)));
        return Ok(learner.add(count));
    }
    let (s1, s2) = set.split_at(set.len() / 2);
    let c1 = q.unit_edges_between(a, s1)?;
    if !split_units(q, a, s1, c1, learner, out)? {
        return Ok(false);
    }
    split_units(q, a, s2, count - c1, learner, out)
}

struct Learner {
    simple: bool,
    abort_above: Option<u64>,
    learned: u64,
}

impl Learner {
    fn add(&mut self, k: u64) -> bool {
        self.learned += k;
        self.abort_above.is_none_or(|limit| self.learned <= limit)
    }
}

/// The exact neighbor set of vertex `v` within `candidates`.
pub fn learn_vertex_edges(o: &mut CutOracle<'_>, v: VertexId, candidates: &VertexSet) -> Result<VertexSet> {
    candidates.check_range(o.n())?;
    if candidates.contains(v) {
        return Err(Error::Precondition(format!("vertex {v} is among its own candidates")));
    }
    let set = candidates.members();
    let count = if set.is_empty() { 0 } else { o.edges_between(v, candidates)? };
    let mut learner = Learner { simple: true, abort_above: None, learned: 0 };
    let mut out = Vec::new();
    split_units(o, v, set, count, &mut learner, &mut out)?;
    Ok(VertexSet::new(out.into_iter().map(|(u, _)| u)))
}

/// Learns every edge between units of `q`, with multiplicities, as triples
/// `(a, b, multiplicity)` with `a < b`. All unit degrees are queried first,
/// so a graph with more than `abort_above` edges is rejected before any
/// neighbor search; otherwise the search also stops as soon as the count is
/// exceeded.
pub fn learn_multigraph<Q: CutAccess>(q: &mut Q, abort_above: Option<u64>) -> Result<Learned<Vec<(usize, usize, u64)>>> {
    let units = q.units();
    let mut total = 0u64;
    for &u in &units {
        total += q.unit_degree(u)?;
    }
    if let Some(limit) = abort_above {
        if total / 2 > limit {
            return Ok(Learned::Aborted { learned: 0 });
        }
    }
    let mut learner = Learner { simple: q.is_simple(), abort_above, learned: 0 };
    let mut edges = Vec::new();
    let mut found = Vec::new();
    for (i, &a) in units.iter().enumerate() {
        let later = &units[i + 1..];
        if later.is_empty() {
            break;
        }
        let count = q.unit_edges_between(a, later)?;
        found.clear();
        let ok = split_units(q, a, later, count, &mut learner, &mut found)?;
        edges.extend(found.iter().map(|&(b, k)| (a, b, k)));
        if !ok {
            return Ok(Learned::Aborted { learned: learner.learned });
        }
    }
    Ok(Learned::Complete(edges))
}

/// Learns the whole hidden graph, or aborts once more than `abort_above`
/// edges are known to exist.
pub fn learn_graph(o: &mut CutOracle<'_>, abort_above: Option<u64>) -> Result<Learned<SimpleGraph>> {
    let n = o.n();
    Ok(match learn_multigraph(o, abort_above)? {
        Learned::Complete(edges) => Learned::Complete(SimpleGraph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))?),
        Learned::Aborted { learned } => Learned::Aborted { learned },
    })
}

/// Descends from `others` (holding `count` edges of `a`) to a single unit,
/// choosing each half with probability proportional to its edge count.
/// Returns the unit and the number of edges between it and `a`.
fn weighted_descent<Q: CutAccess>(q: &mut Q, a: usize, mut others: Vec<usize>, mut count: u64, rng: &mut Rng) -> Result<(usize, u64)> {
    while others.len() > 1 {
        let lower = others.len() / 2;
        let c1 = q.unit_edges_between(a, &others[..lower])?;
        if rng.random_range(0..count) < c1 {
            others.truncate(lower);
            count = c1;
        } else {
            others.drain(..lower);
            count -= c1;
        }
    }
    Ok((others[0], count))
}

/// Neighbor of unit `a` drawn with probability proportional to the number of
/// edges joining them, among `others` (sorted), which hold `count > 0` edges.
pub fn sample_neighbor<Q: CutAccess>(q: &mut Q, a: usize, others: Vec<usize>, count: u64, rng: &mut Rng) -> Result<(usize, u64)> {
    if count == 0 || others.is_empty() {
        return Err(Error::NoEdges);
    }
    weighted_descent(q, a, others, count, rng)
}

fn pick_weighted(prefix: &[u64], rng: &mut Rng) -> usize {
    let total = *prefix.last().expect("nonempty prefix sums");
    let r = rng.random_range(0..total);
    prefix.partition_point(|&s| s <= r)
}

/// A uniformly random edge between units, given the current degree of every
/// unit (aligned with `q.units()`). Returns the unit pair in ascending order.
pub fn sample_uniform_edge<Q: CutAccess>(q: &mut Q, degrees: &[u64], rng: &mut Rng) -> Result<(usize, usize)> {
    let units = q.units();
    if degrees.len() != units.len() {
        return Err(Error::Precondition(format!("{} degrees for {} units", degrees.len(), units.len())));
    }
    let mut prefix = Vec::with_capacity(degrees.len());
    let mut acc = 0u64;
    for &d in degrees {
        acc += d;
        prefix.push(acc);
    }
    if acc == 0 {
        return Err(Error::NoEdges);
    }
    let i = pick_weighted(&prefix, rng);
    let a = units[i];
    let others: Vec<usize> = units.iter().copied().filter(|&u| u != a).collect();
    let (b, _) = weighted_descent(q, a, others, degrees[i], rng)?;
    Ok((a.min(b), a.max(b)))
}

/// Number of edges between different units of `scope`, and each unit's
/// degree into the rest of the scope, computed by one edge count per unit.
pub fn scope_degrees<Q: CutAccess>(q: &mut Q, scope: &[usize]) -> Result<(u64, Vec<u64>)> {
    let mut degrees = Vec::with_capacity(scope.len());
    let mut rest: Vec<usize> = Vec::with_capacity(scope.len());
    for (i, &a) in scope.iter().enumerate() {
        rest.clear();
        rest.extend_from_slice(&scope[..i]);
        rest.extend_from_slice(&scope[i + 1..]);
        degrees.push(if rest.is_empty() { 0 } else { q.unit_edges_between(a, &rest)? });
    }
    let sum: u64 = degrees.iter().sum();
    Ok((sum / 2, degrees))
}

/// Resolves a unit-level edge draw `(a, b)` with `count` parallel edges to a
/// uniformly chosen underlying vertex pair.
fn resolve_vertex_edge<Q: CutAccess>(q: &mut Q, a: usize, b: usize, count: u64, rng: &mut Rng) -> Result<(VertexId, VertexId)> {
    let mut side_a = q.unit_members(a);
    let side_b = q.unit_members(b);
    let mut count = count;
    while side_a.len() > 1 {
        let lower = side_a.len() / 2;
        let c1 = q.vertex_sets_between(&side_a[..lower], &side_b);
        if rng.random_range(0..count) < c1 {
            side_a.truncate(lower);
            count = c1;
        } else {
            side_a.drain(..lower);
            count -= c1;
        }
    }
    let x = side_a[0];
    let mut side_b = side_b;
    while side_b.len() > 1 {
        let lower = side_b.len() / 2;
        let c1 = q.vertex_sets_between(&[x], &side_b[..lower]);
        if rng.random_range(0..count) < c1 {
            side_b.truncate(lower);
            count = c1;
        } else {
            side_b.drain(..lower);
            count -= c1;
        }
    }
    let y = side_b[0];
    Ok((x.min(y), x.max(y)))
}

/// `k` distinct, uniformly chosen edges of the original graph that join two
/// different units of `scope` (sorted unit ids). Draws are repeated on
/// duplicates, up to `50 k ceil(log2 n)` draws in total.
pub fn sample_k_distinct_edges<Q: CutAccess>(q: &mut Q, scope: &[usize], k: u64, rng: &mut Rng) -> Result<Vec<(VertexId, VertexId)>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let (edges, degrees) = scope_degrees(q, scope)?;
    sample_distinct_with_degrees(q, scope, &degrees, edges, k, rng)
}

fn sample_distinct_with_degrees<Q: CutAccess>(
    q: &mut Q,
    scope: &[usize],
    degrees: &[u64],
    edges: u64,
    k: u64,
    rng: &mut Rng,
) -> Result<Vec<(VertexId, VertexId)>> {
    if k > edges {
        return Err(Error::Infeasible(format!("{k} distinct edges requested from a scope holding {edges}")));
    }
    let mut prefix = Vec::with_capacity(degrees.len());
    let mut acc = 0u64;
    for &d in degrees {
        acc += d;
        prefix.push(acc);
    }
    let n: usize = scope.iter().map(|&u| q.unit_members(u).len()).sum();
    let max_draws = 50 * k * u64::from(ceil_log2(n).max(1));
    let mut chosen = HashSet::with_capacity(k as usize);
    let mut out = Vec::with_capacity(k as usize);
    let mut draws = 0u64;
    while (out.len() as u64) < k {
        if draws == max_draws {
            return Err(Error::Infeasible(format!("only {} distinct edges after {draws} draws", out.len())));
        }
        draws += 1;
        let i = pick_weighted(&prefix, rng);
        let a = scope[i];
        let others: Vec<usize> = scope.iter().copied().filter(|&u| u != a).collect();
        let (b, mult) = weighted_descent(q, a, others, degrees[i], rng)?;
        let e = resolve_vertex_edge(q, a, b, mult, rng)?;
        if chosen.insert(e) {
            out.push(e);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Every original edge joining two different units of `scope`, in ascending order.
pub fn learn_scope_edges<Q: CutAccess>(q: &mut Q, scope: &[usize]) -> Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::new();
    for (i, &a) in scope.iter().enumerate() {
        let later = &scope[i + 1..];
        if later.is_empty() {
            break;
        }
        let count = q.unit_edges_between(a, later)?;
        if count == 0 {
            continue;
        }
        let side_a = q.unit_members(a);
        let mut side_b: Vec<VertexId> = later.iter().flat_map(|&u| q.unit_members(u)).collect();
        side_b.sort_unstable();
        split_pairs(q, &side_a, &side_b, count, &mut out)?;
    }
    let mut out: Vec<_> = out.into_iter().map(|(x, y): (usize, usize)| (x.min(y), x.max(y))).collect();
    out.sort_unstable();
    Ok(out)
}

fn split_pairs<Q: CutAccess>(q: &mut Q, a: &[VertexId], b: &[VertexId], count: u64, out: &mut Vec<(VertexId, VertexId)>) -> Result<()> {
    if count == 0 {
        return Ok(());
    }
    if count == (a.len() * b.len()) as u64 {
        for &x in a {
            out.extend(b.iter().map(|&y| (x, y)));
        }
        return Ok(());
    }
    if a.len() >= b.len() {
        let (a1, a2) = a.split_at(a.len() / 2);
        let c1 = q.vertex_sets_between(a1, b);
        split_pairs(q, a1, b, c1, out)?;
        split_pairs(q, a2, b, count - c1, out)
    } else {
        let (b1, b2) = b.split_at(b.len() / 2);
        let c1 = q.vertex_sets_between(a, b1);
        split_pairs(q, a, b1, c1, out)?;
        split_pairs(q, a, b2, count - c1, out)
    }
}

/// Keeps every original edge joining two different units of `scope`
/// independently with probability `p`.
///
/// Realised as a `Binomial(e, p)` count followed by a uniform subset of that
/// size: by rejection sampling when the count is at most half the edges, and
/// by learning the scope's edges and choosing a subset otherwise.
pub fn subsample_scope<Q: CutAccess>(q: &mut Q, scope: &[usize], p: f64, rng: &mut Rng) -> Result<Vec<(VertexId, VertexId)>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("sampling probability {p} is outside (0, 1]")));
    }
    let (edges, degrees) = scope_degrees(q, scope)?;
    if edges == 0 {
        return Ok(Vec::new());
    }
    let k = if p >= 1.0 {
        edges
    } else {
        Binomial::new(edges, p).map_err(|e| Error::InvalidParameter(e.to_string()))?.sample(rng)
    };
    if k == 0 {
        return Ok(Vec::new());
    }
    if 2 * k <= edges {
        return sample_distinct_with_degrees(q, scope, &degrees, edges, k, rng);
    }
    let all = learn_scope_edges(q, scope)?;
    if k as usize == all.len() {
        return Ok(all);
    }
    let mut picked: Vec<_> = index::sample(rng, all.len(), k as usize).into_iter().map(|i| all[i]).collect();
    picked.sort_unstable();
    Ok(picked)
}
