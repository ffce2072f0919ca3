//! Exact global minimum cut through the oracle.
//!
//! Both algorithms first read every singleton cut. They then find a small
//! weighted graph whose near-minimum cuts include the true minimum cut,
//! merge vertices that no such cut separates, and learn the few edges left
//! between the merged groups. The first compresses by random contraction and
//! uniform subsampling over a range of guesses of the cut value; the second
//! uses the strength sparsifier directly.

use num_traits::{FromPrimitive, ToPrimitive};

use crate::contraction;
use crate::discovery::{self, Learned};
use crate::enumerate::{self, separation_classes};
use crate::error::{Error, Result};
use crate::graph::{ContractionState, Cut, CutGraph, Rational, SimpleGraph, VertexSet, WeightedGraph};
use crate::oracle::{ContractedView, CutOracle, LedgerSnapshot};
use crate::params::{self, Constants, EnumerationConfig};
use crate::reference;
use crate::rng::Rng;
use crate::sparsify;

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalConfig {
    pub epsilon: f64,
    pub constants: Constants,
    pub enumeration: EnumerationConfig,
    /// Inner repetitions per guess; `None` means `ceil(log2 n)`.
    pub repetitions: Option<usize>,
    /// Learning aborts above this many edges; `None` means `n ceil(ln n)`.
    pub learn_limit: Option<u64>,
}

impl Default for GlobalConfig {
    fn default() -> Self {
        Self { epsilon: 0.25, constants: Constants::default(), enumeration: EnumerationConfig::default(), repetitions: None, learn_limit: None }
    }
}

impl GlobalConfig {
    fn learn_limit(&self, n: usize) -> u64 {
        self.learn_limit.unwrap_or(n as u64 * params::ln(n).ceil() as u64)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GlobalResult {
    pub cut: Cut,
    pub queries: LedgerSnapshot,
    /// Compression rounds attempted.
    pub trials: usize,
    /// Rounds whose learning step hit the edge limit.
    pub aborted: usize,
    /// Largest number of edges learned in one round.
    pub learned_edges: u64,
}

/// Groups of vertices that lie on the same side of every listed cut.
pub fn contract_safe(n: usize, cuts: &[Cut]) -> Result<ContractionState> {
    let classes: Vec<VertexSet> = separation_classes(n, cuts).into_iter().map(VertexSet::new).collect();
    ContractionState::from_partition(n, &classes)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 / 3.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("epsilon {epsilon} is outside (0, 1/3)")))
    }
}

/// Best singleton cut, from one query per vertex.
fn singleton_cuts(o: &mut CutOracle<'_>) -> Result<Cut> {
    let n = o.n();
    if n < 2 {
        return Err(Error::Precondition("a cut needs at least two vertices".into()));
    }
    let mut best: Option<Cut> = None;
    for v in 0..n {
        let d = o.query(&VertexSet::singleton(v))?;
        let cut = Cut::canonical(VertexSet::singleton(v), n, Rational::from_integer(d as i64));
        if best.as_ref().is_none_or(|b| cut.better_than(b)) {
            best = Some(cut);
        }
    }
    Ok(best.expect("n >= 2"))
}

/// Learns the edges between the groups of `state` (unless more than `limit`
/// exist) and returns the minimum cut of the learned multigraph, expanded to
/// original vertices, with the number of edges learned.
fn learn_and_solve(o: &mut CutOracle<'_>, state: ContractionState, limit: u64) -> Result<Option<(Cut, u64)>> {
    let n = o.n();
    if state.group_count() < 2 {
        return Ok(None);
    }
    let mut view = ContractedView::new(o, state)?;
    let edges = match discovery::learn_multigraph(&mut view, Some(limit))? {
        Learned::Complete(edges) => edges,
        Learned::Aborted { .. } => return Ok(None),
    };
    let state = view.into_state();
    let groups = state.groups();
    let mut index = vec![usize::MAX; n];
    for (i, &g) in groups.iter().enumerate() {
        index[g] = i;
    }
    let learned: u64 = edges.iter().map(|e| e.2).sum();
    let g4 = WeightedGraph::from_multiplicities(groups.len(), edges.iter().map(|&(a, b, k)| (index[a], index[b], k)))?;
    let cut = reference::deterministic_min_cut(&g4)?;
    let side_groups: Vec<usize> = cut.side.iter().map(|i| groups[i]).collect();
    Ok(Some((Cut::canonical(state.expand(&side_groups), n, cut.value), learned)))
}

/// Random contraction, uniform subsampling and safe contraction, repeated
/// over guesses `c = 1, 2, 4, ...` of the cut value.
///
/// Guesses above twice the best cut found so far are skipped: the round
/// that matters has `c` within a factor two of the true value, which is at
/// most the best cut already known.
pub fn global_min_cut_v1(o: &mut CutOracle<'_>, config: &GlobalConfig, rng: &mut Rng) -> Result<GlobalResult> {
    check_epsilon(config.epsilon)?;
    let start = o.snapshot();
    let n = o.n();
    let mut best = singleton_cuts(o)?;
    let eps = config.epsilon;
    let reps = config.repetitions.unwrap_or(discovery::ceil_log2(n).max(1) as usize);
    let limit = config.learn_limit(n);
    let (mut trials, mut aborted, mut learned_max) = (0, 0, 0);
    for j in 0..=discovery::ceil_log2(n) {
        let c = 1u64 << j;
        if Rational::from_integer(c as i64) > best.value * 2 {
            break;
        }
        for _ in 0..reps {
            trials += 1;
            let mut view = ContractedView::new(o, ContractionState::identity(n))?;
            contraction::karger_on_view(&mut view, c * n as u64, rng)?;
            let p = config.constants.uniform_probability(n, eps, c as f64);
            let sub = contraction::uniform_subsample(&mut view, p, rng)?;
            let state = view.into_state();
            let sizes: Vec<usize> = sub.groups.iter().map(|&g| state.members(g).len()).collect();
            let threshold = Rational::from_integer(((1.0 + 3.0 * eps) * p * c as f64).floor() as i64);
            let found = enumerate::enumerate_cuts(&sub.graph, &sizes, threshold, 2, &config.enumeration, rng)?;
            let cuts: Vec<Cut> = found
                .cuts
                .into_iter()
                .map(|cut| {
                    let groups: Vec<usize> = cut.side.iter().map(|i| sub.groups[i]).collect();
                    Cut { side: state.expand(&groups), value: cut.value }
                })
                .collect();
            // A truncated list could merge a pair that some missed cut
            // separates, so nothing is merged.
            let safe = if found.truncated { ContractionState::identity(n) } else { contract_safe(n, &cuts)? };
            if safe.group_count() < 2 {
                continue;
            }
            match learn_and_solve(o, safe, limit)? {
                Some((cut, learned)) => {
                    learned_max = learned_max.max(learned);
                    if cut.better_than(&best) {
                        best = cut;
                    }
                }
                None => aborted += 1,
            }
        }
    }
    Ok(GlobalResult { cut: best, queries: o.snapshot().since(&start), trials, aborted, learned_edges: learned_max })
}

/// Sparsify, keep the vertex pairs separated by some near-minimum
/// non-singleton cut of the sparsifier, and learn what remains.
pub fn global_min_cut_v2(o: &mut CutOracle<'_>, config: &GlobalConfig, rng: &mut Rng) -> Result<GlobalResult> {
    check_epsilon(config.epsilon)?;
    let start = o.snapshot();
    let n = o.n();
    let mut best = singleton_cuts(o)?;
    let eps = config.epsilon;
    let h = sparsify::build_sparsifier(o, eps, &config.constants, rng)?;
    let lambda_h = reference::deterministic_min_cut(&h)?.value;
    let factor = Rational::from_f64(1.0 + 3.0 * eps).ok_or_else(|| Error::InvalidParameter("epsilon".into()))?;
    let found = enumerate::enumerate_cuts(&h, &vec![1; n], lambda_h * factor, 2, &config.enumeration, rng)?;
    let safe = if found.truncated { ContractionState::identity(n) } else { contract_safe(n, &found.cuts)? };
    let (mut aborted, mut learned_max) = (0, 0);
    if safe.group_count() >= 2 {
        match learn_and_solve(o, safe, config.learn_limit(n))? {
            Some((cut, learned)) => {
                learned_max = learned;
                if cut.better_than(&best) {
                    best = cut;
                }
            }
            None => aborted = 1,
        }
    }
    Ok(GlobalResult { cut: best, queries: o.snapshot().since(&start), trials: 1, aborted, learned_edges: learned_max })
}

/// Size of the union of all non-singleton cuts of value at most
/// `c + epsilon d` (`c` the minimum cut, `d` the minimum degree), by
/// exhaustive enumeration.
pub fn cover_edge_count(g: &SimpleGraph, epsilon: f64) -> Result<usize> {
    const LIMIT: usize = 16;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::TooLarge { n, limit: LIMIT });
    }
    if n < 4 {
        return Ok(0);
    }
    let c = reference::brute_force_min_cut(g, None)?.value.to_f64().expect("finite");
    let bound = c + epsilon * g.min_degree() as f64;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut covered = vec![false; edges.len()];
    for mask in 0u32..(1 << (n - 1)) {
        let side_size = 1 + (n - 1 - mask.count_ones() as usize);
        if side_size < 2 || n - side_size < 2 {
            continue;
        }
        let far = |v: usize| v != 0 && mask >> (v - 1) & 1 == 1;
        let crossing: Vec<usize> = (0..edges.len()).filter(|&i| far(edges[i].0) != far(edges[i].1)).collect();
        if crossing.len() as f64 <= bound {
            for i in crossing {
                covered[i] = true;
            }
        }
    }
    Ok(covered.iter().filter(|&&x| x).count())
}

/// Whether `cut` is a cut of `g` with the stated value.
pub fn verify_cut(g: &SimpleGraph, cut: &Cut) -> Result<bool> {
    Ok(cut.is_proper(g.n()) && g.cut_value(&cut.side)? == cut.value)
}
