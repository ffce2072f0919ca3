//! Strength classes by multi-resolution subsampling, and the weighted
//! sparsifier sampled alongside them.
//!
//! Iteration `j` works at connectivity scale `kappa = n / 2^j`. It samples
//! the still-uncontracted edges at rate `q`, peels off every cut of the
//! sample that is light for that scale, and treats what is left as strongly
//! connected: the edges inside each remaining component get strength
//! `kappa / 2`, are sampled into the sparsifier, and the component is
//! contracted so later iterations never see those edges again.

use num_traits::{ToPrimitive, Zero};

use crate::discovery;
use crate::error::{Error, Result};
use crate::graph::{ContractionState, GroupId, Rational, VertexId, WeightedGraph};
use crate::intgraph::{self, IntGraph};
use crate::oracle::{ContractedView, CutOracle, LedgerSnapshot};
use crate::params::Constants;
use crate::rng::Rng;

/// Components left after repeatedly removing cuts of weight at most
/// `threshold`. Each component is a sorted list of nodes; components are
/// ordered by smallest node. Every returned component with two or more
/// nodes has minimum cut above `threshold`.
pub fn strength_decompose_known(g: &WeightedGraph, threshold: Rational) -> Result<Vec<Vec<usize>>> {
    let (ig, scale) = IntGraph::from_weighted(g)?;
    if threshold < Rational::zero() {
        let mut all = vec![(0..g.n()).collect::<Vec<_>>()];
        all.retain(|c| !c.is_empty());
        return Ok(all);
    }
    let limit = (threshold * Rational::from_integer(scale)).floor().to_integer();
    let limit = u64::try_from(limit).map_err(|_| Error::Overflow)?;
    Ok(decompose(&ig, limit))
}

pub(crate) fn decompose(g: &IntGraph, limit: u64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut pending = vec![(0..g.n()).collect::<Vec<usize>>()];
    while let Some(nodes) = pending.pop() {
        if nodes.len() < 2 {
            out.extend((!nodes.is_empty()).then_some(nodes));
            continue;
        }
        let sub = g.induced(&nodes);
        match intgraph::cut_at_most(&sub, limit) {
            Some((_, side)) => {
                let mut inside = vec![false; nodes.len()];
                for &x in &side {
                    inside[x] = true;
                }
                let (a, b): (Vec<usize>, Vec<usize>) = (0..nodes.len()).partition(|&x| inside[x]);
                pending.push(a.into_iter().map(|x| nodes[x]).collect());
                pending.push(b.into_iter().map(|x| nodes[x]).collect());
            }
            None => out.push(nodes),
        }
    }
    out.sort();
    out
}

/// Approximate strengths, one level per iteration. An edge's strength is
/// the value of the first level at which both endpoints share a component.
#[derive(Clone, Debug, PartialEq)]
pub struct StrengthMap {
    levels: Vec<(Rational, Vec<usize>)>,
}

impl StrengthMap {
    pub fn get(&self, u: VertexId, v: VertexId) -> Option<Rational> {
        self.levels.iter().find(|(_, label)| label[u] == label[v]).map(|(k, _)| *k)
    }

    /// `(strength, component label of every vertex)` after each iteration.
    pub fn levels(&self) -> &[(Rational, Vec<usize>)] {
        &self.levels
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationStats {
    pub j: usize,
    pub kappa: f64,
    /// Subsampling rate for the decomposition.
    pub q: f64,
    /// Rate at which component edges enter the sparsifier; the reciprocal of
    /// `weight`.
    pub sparsifier_rate: f64,
    pub weight: u64,
    pub groups_before: usize,
    /// Edges of the original graph between super-vertices before the iteration.
    pub edges_before: u64,
    pub sampled: usize,
    pub components_contracted: usize,
    pub sparsifier_edges_added: usize,
    pub queries: LedgerSnapshot,
}

#[derive(Clone, Debug)]
pub struct SparsifierRun {
    pub strengths: StrengthMap,
    pub h: WeightedGraph,
    pub iterations: Vec<IterationStats>,
}

/// Runs every iteration and returns strengths, the sparsifier and
/// per-iteration statistics. The last iteration samples at rate 1 so every
/// remaining edge is classified.
pub fn approximate_strengths(o: &mut CutOracle<'_>, epsilon: f64, constants: &Constants, rng: &mut Rng) -> Result<SparsifierRun> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} is outside (0, 1)")));
    }
    let n = o.n();
    let last = discovery::ceil_log2(n.max(2)) as usize;
    let mut view = ContractedView::new(o, ContractionState::identity(n))?;
    let mut h_edges: Vec<(VertexId, VertexId, Rational)> = Vec::new();
    let mut levels = Vec::with_capacity(last + 1);
    let mut iterations = Vec::with_capacity(last + 1);
    for j in 0..=last {
        let before = view.oracle().snapshot();
        let kappa_exact = Rational::new(n as i64, 1i64 << j);
        let kappa = kappa_exact.to_f64().expect("finite");
        let q = if j == last { 1.0 } else { constants.strength_probability(n, kappa) };
        let raw = constants.sparsifier_probability(q, epsilon);
        let weight = (1.0 / raw).floor().max(1.0) as u64;

        view.refresh_degrees()?;
        let groups = view.state().groups();
        let edges_before = view.state().inter_group_edges().expect("degrees refreshed");
        let sample = discovery::subsample_scope(&mut view, &groups, q, rng)?;
        let index = group_index(view.state(), &groups);
        let sampled = IntGraph::from_edges(
            groups.len(),
            sample.iter().map(|&(u, v)| (index[view.state().group_of(u)], index[view.state().group_of(v)], 1)),
        );
        let limit = (q * constants.removal_fraction * kappa).floor() as u64;
        let components = decompose(&sampled, limit);

        let mut contracted = 0;
        let mut added = 0;
        for comp in components.iter().filter(|c| c.len() > 1) {
            let members: Vec<GroupId> = comp.iter().map(|&i| groups[i]).collect();
            let kept = discovery::subsample_scope(&mut view, &members, 1.0 / weight as f64, rng)?;
            added += kept.len();
            h_edges.extend(kept.into_iter().map(|(u, v)| (u, v, Rational::from_integer(weight as i64))));
            let mut merged = members[0];
            for &g in &members[1..] {
                merged = view.contract(merged, g)?;
            }
            contracted += 1;
        }
        let state = view.state();
        levels.push((kappa_exact / 2, (0..n).map(|v| state.group_of(v)).collect()));
        iterations.push(IterationStats {
            j,
            kappa,
            q,
            sparsifier_rate: 1.0 / weight as f64,
            weight,
            groups_before: groups.len(),
            edges_before,
            sampled: sample.len(),
            components_contracted: contracted,
            sparsifier_edges_added: added,
            queries: view.oracle().snapshot().since(&before),
        });
    }
    let h = WeightedGraph::from_edges(n, h_edges)?;
    Ok(SparsifierRun { strengths: StrengthMap { levels }, h, iterations })
}

/// The sparsifier alone.
pub fn build_sparsifier(o: &mut CutOracle<'_>, epsilon: f64, constants: &Constants, rng: &mut Rng) -> Result<WeightedGraph> {
    Ok(approximate_strengths(o, epsilon, constants, rng)?.h)
}

fn group_index(state: &ContractionState, groups: &[GroupId]) -> Vec<usize> {
    let mut index = vec![usize::MAX; state.n()];
    for (i, &g) in groups.iter().enumerate() {
        index[g] = i;
    }
    index
}
