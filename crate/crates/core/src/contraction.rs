//! Random contraction driven through the oracle, and uniform subsampling of
//! the contracted multigraph.

use std::collections::HashMap;

use rand::Rng as _;

use crate::discovery;
use crate::oracle::CutAccess;
use crate::error::Result;
use crate::graph::{ContractionState, GroupId, WeightedGraph};
use crate::oracle::{ContractedView, CutOracle};
use crate::rng::Rng;

/// Prefix sums over group slots, weighted by super-degree.
struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    fn new(values: &[u64]) -> Self {
        let mut f = Self { tree: vec![0; values.len() + 1] };
        for (i, &v) in values.iter().enumerate() {
            f.add(i, v as i64);
        }
        f
    }

    fn add(&mut self, i: usize, delta: i64) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] = (self.tree[i] as i64 + delta) as u64;
            i += i & i.wrapping_neg();
        }
    }

    /// Smallest slot whose inclusive prefix sum exceeds `r`.
    fn find(&self, mut r: u64) -> usize {
        let mut pos = 0;
        let mut step = (self.tree.len() - 1).next_power_of_two();
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] <= r {
                pos = next;
                r -= self.tree[next];
            }
            step >>= 1;
        }
        pos
    }
}

/// Karger's contraction from singletons until at most `target_edges` edges
/// run between super-vertices (or two super-vertices remain).
pub fn karger_until(o: &mut CutOracle<'_>, target_edges: u64, rng: &mut Rng) -> Result<ContractionState> {
    let n = o.n();
    let mut view = ContractedView::new(o, ContractionState::identity(n))?;
    karger_on_view(&mut view, target_edges, rng)?;
    Ok(view.into_state())
}

/// Continues Karger's contraction on an existing view. Each step draws a
/// uniformly random inter-group edge (parallel edges counted separately),
/// merges its endpoints and refreshes the merged super-degree with one
/// query. Returns the number of merges performed.
pub fn karger_on_view(view: &mut ContractedView<'_, '_>, target_edges: u64, rng: &mut Rng) -> Result<usize> {
    view.refresh_degrees()?;
    let n = view.state().n();
    let mut slots = vec![0u64; n];
    let mut alive = view.state().groups();
    let mut total = 0u64;
    for &g in &alive {
        slots[g] = view.degree(g)?;
        total += slots[g];
    }
    if total / 2 <= target_edges {
        return Ok(0);
    }
    let mut fenwick = Fenwick::new(&slots);
    let mut merges = 0;
    while total / 2 > target_edges && alive.len() > 2 {
        let a = fenwick.find(rng.random_range(0..total));
        let b = sample_neighbor_group(view, a, slots[a], rng);
        let merged = view.contract(a, b)?;
        let gone = if merged == a { b } else { a };
        let d = view.degree(merged)?;
        fenwick.add(gone, -(slots[gone] as i64));
        fenwick.add(merged, d as i64 - slots[merged] as i64);
        total = total - slots[a] - slots[b] + d;
        slots[gone] = 0;
        slots[merged] = d;
        let pos = alive.binary_search(&gone).expect("merged group was alive");
        alive.remove(pos);
        merges += 1;
    }
    Ok(merges)
}

/// A group adjacent to `a`, drawn with probability proportional to the
/// number of edges joining them; `count` is the degree of `a`.
///
/// The search halves a fixed range of original vertex ids rather than the
/// list of live groups. Ranges that avoid `a` are the same sets in every
/// step and every run, so their cut values are answered from the memo and
/// each level costs one fresh query.
fn sample_neighbor_group(view: &mut ContractedView<'_, '_>, a: GroupId, count: u64, rng: &mut Rng) -> GroupId {
    let members = view.state().members(a).to_vec();
    let (mut lo, mut hi) = (0, view.state().n());
    let mut count = count;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        let left: Vec<usize> = (lo..mid).filter(|x| members.binary_search(x).is_err()).collect();
        let c1 = if left.is_empty() { 0 } else { view.vertex_sets_between(&members, &left) };
        if rng.random_range(0..count) < c1 {
            hi = mid;
            count = c1;
        } else {
            lo = mid;
            count -= c1;
        }
    }
    view.state().group_of(lo)
}

/// A contracted multigraph: node `i` of `graph` is super-vertex `groups[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperGraph {
    pub groups: Vec<GroupId>,
    pub graph: WeightedGraph,
}

/// Keeps every inter-group edge independently with probability `p` and
/// returns the sample as an integer-weighted multigraph on the groups.
pub fn uniform_subsample(view: &mut ContractedView<'_, '_>, p: f64, rng: &mut Rng) -> Result<SuperGraph> {
    let groups = view.state().groups();
    let sample = discovery::subsample_scope(view, &groups, p, rng)?;
    let index: HashMap<GroupId, usize> = groups.iter().enumerate().map(|(i, &g)| (g, i)).collect();
    let state = view.state();
    let edges = sample.into_iter().map(|(u, v)| (index[&state.group_of(u)], index[&state.group_of(v)], 1u64));
    let graph = WeightedGraph::from_multiplicities(groups.len(), edges)?;
    Ok(SuperGraph { groups, graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::graph::{CutGraph, SimpleGraph, VertexSet};
    use crate::rng;

    #[test]
    fn fenwick_finds_by_weight() {
        let f = Fenwick::new(&[0, 3, 0, 2, 5]);
        assert_eq!(f.find(0), 1);
        assert_eq!(f.find(2), 1);
        assert_eq!(f.find(3), 3);
        assert_eq!(f.find(4), 3);
        assert_eq!(f.find(5), 4);
        assert_eq!(f.find(9), 4);
    }

    #[test]
    fn large_target_leaves_identity() {
        let g = generate::gnp(12, 0.5, 1).unwrap();
        let mut o = CutOracle::new(&g);
        let s = karger_until(&mut o, g.m() as u64, &mut rng::from_seed(1)).unwrap();
        assert_eq!(s.group_count(), 12);
    }

    #[test]
    fn c4_full_run_ends_with_two_groups() {
        let g = SimpleGraph::cycle(4);
        for seed in 0..10 {
            let mut o = CutOracle::new(&g);
            let s = karger_until(&mut o, 0, &mut rng::from_seed(seed)).unwrap();
            assert_eq!(s.group_count(), 2);
            assert_eq!(s.inter_group_edges(), Some(2));
        }
    }

    #[test]
    fn degrees_stay_consistent_and_edges_decrease() {
        let g = generate::gnp(30, 0.4, 2).unwrap();
        let mut o = CutOracle::new(&g);
        let mut view = ContractedView::new(&mut o, ContractionState::identity(30)).unwrap();
        let mut r = rng::from_seed(3);
        let mut last = g.m() as u64;
        for target in (0..g.m() as u64).rev().step_by(17) {
            karger_on_view(&mut view, target, &mut r).unwrap();
            let st = view.state();
            let inter = st.inter_group_edges().unwrap();
            assert_eq!(inter, st.count_inter_group_edges(&g));
            assert!(inter <= last);
            assert!(inter <= target || st.group_count() == 2);
            last = inter;
        }
    }

    #[test]
    fn query_cost_is_logarithmic_per_merge() {
        let g = generate::gnp(64, 0.5, 4).unwrap();
        let mut o = CutOracle::new(&g);
        let mut view = ContractedView::new(&mut o, ContractionState::identity(64)).unwrap();
        let merges = karger_on_view(&mut view, 2 * 64, &mut rng::from_seed(5)).unwrap() as u64;
        let q = view.oracle().ledger().distinct_queries();
        assert!(q <= 3 * merges * 6 + 64, "{q} queries for {merges} merges");
    }

    #[test]
    fn full_subsample_is_the_contracted_multigraph() {
        let g = generate::gnp(20, 0.5, 6).unwrap();
        let mut o = CutOracle::new(&g);
        let mut r = rng::from_seed(7);
        let mut view = ContractedView::new(&mut o, ContractionState::identity(20)).unwrap();
        karger_on_view(&mut view, 40, &mut r).unwrap();
        let expect = view.state().contracted_multigraph(&g);
        let sub = uniform_subsample(&mut view, 1.0, &mut r).unwrap();
        assert_eq!(sub.graph, expect);
    }

    #[test]
    fn subsample_mean_on_k20() {
        let g = SimpleGraph::complete(20);
        let mut o = CutOracle::new(&g);
        let mut view = ContractedView::new(&mut o, ContractionState::identity(20)).unwrap();
        let mut r = rng::from_seed(8);
        let p = 0.1;
        let trials = 500;
        let total: usize = (0..trials).map(|_| uniform_subsample(&mut view, p, &mut r).unwrap().graph.edge_count()).sum();
        let mean = total as f64 / trials as f64;
        assert!((mean - p * 190.0).abs() <= 0.05 * p * 190.0, "mean {mean}");
    }

    #[test]
    fn cycle_subsample_contiguous_cuts_concentrate() {
        let g = SimpleGraph::cycle(30);
        let p = 0.9;
        let eps = (40.0 * 30f64.ln() / (p * 2.0)).sqrt();
        let mut good = 0;
        for seed in 0..100 {
            let mut o = CutOracle::new(&g);
            let mut view = ContractedView::new(&mut o, ContractionState::identity(30)).unwrap();
            let sub = uniform_subsample(&mut view, p, &mut rng::from_seed(seed)).unwrap();
            let ok = (0..30).all(|i| {
                (i + 2..30).all(|j| {
                    let side = VertexSet::new(i..j);
                    let v = sub.graph.cut_value(&side).unwrap().to_integer() as f64;
                    (v - 2.0 * p).abs() <= eps * 2.0 * p
                })
            });
            good += ok as usize;
        }
        assert!(good >= 95, "{good}");
    }
}
