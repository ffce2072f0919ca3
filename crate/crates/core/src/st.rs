//! Exact minimum s-t cut through the oracle.
//!
//! A sparsifier `H` is built with `epsilon = n^(-1/3)`, a maximum flow of
//! `H` is subtracted from it, and every component that stays highly
//! connected in the residue is contracted: no minimum s-t cut of the hidden
//! graph can split such a component. The edges between the remaining
//! groups are learned and the cut is solved exactly.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::discovery::{self, Learned};
use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{ContractionState, Cut, CutGraph, Rational, VertexId, VertexSet, WeightedGraph};
use crate::intgraph::IntGraph;
use crate::oracle::{ContractedView, CutOracle, LedgerSnapshot};
use crate::params::Constants;
use crate::reference;
use crate::rng::Rng;
use crate::sparsify;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct StConfig {
    /// Sparsifier accuracy; `None` means `n^(-1/3)`.
    pub epsilon: Option<f64>,
    pub constants: Constants,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StResult {
    /// The side contains `s`.
    pub cut: Cut,
    pub queries: LedgerSnapshot,
    pub epsilon: f64,
    pub sparsifier_edges: usize,
    /// Maximum flow value in the sparsifier.
    pub flow_h: Rational,
    /// `min(n - 1, ceil((1 + epsilon) flow_h))`.
    pub flow_bound: u64,
    /// Residual components at least this connected were contracted.
    pub threshold: f64,
    /// Whether the flow value equalled the cut it certifies in `H`.
    pub flow_certified: bool,
    pub groups: usize,
    pub learned_edges: u64,
    /// Components that held both `s` and `t` and had to be split.
    pub split_components: usize,
}

/// Residual graph: each edge keeps `weight - |flow|`, zero residues dropped.
pub fn residual(h: &WeightedGraph, f: &flow::FlowAssignment) -> Result<WeightedGraph> {
    let edges = f.edges.iter().map(|&(u, v, w, x)| (u, v, w - x.abs())).filter(|e| e.2 > Rational::zero());
    WeightedGraph::from_edges(h.n(), edges)
}

/// Components of `g` in which every cut has value at least `threshold`,
/// found by removing all cuts of smaller value.
fn connected_at_least(g: &WeightedGraph, threshold: f64) -> Result<Vec<Vec<usize>>> {
    let (ig, scale) = IntGraph::from_weighted(g)?;
    let scaled = threshold * scale as f64;
    if scaled <= 0.0 {
        let (label, count) = ig.components();
        let mut comps = vec![Vec::new(); count];
        for (v, &c) in label.iter().enumerate() {
            comps[c].push(v);
        }
        return Ok(comps);
    }
    Ok(sparsify::decompose(&ig, scaled.ceil() as u64 - 1))
}

pub fn st_min_cut(o: &mut CutOracle<'_>, s: VertexId, t: VertexId, config: &StConfig, rng: &mut Rng) -> Result<StResult> {
    let n = o.n();
    for x in [s, t] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if s == t {
        return Err(Error::Precondition("source and sink coincide".into()));
    }
    let start = o.snapshot();
    let epsilon = config.epsilon.unwrap_or((n as f64).powf(-1.0 / 3.0));
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} is outside (0, 1)")));
    }
    let h = sparsify::build_sparsifier(o, epsilon, &config.constants, rng)?;
    let f = flow::max_flow(&h, s, t)?;
    let flow_certified = h.cut_value(&f.source_side)? == f.value;
    let residue = residual(&h, &f)?;
    let flow_h = f.value.to_f64().expect("finite");
    let flow_bound = ((1.0 + epsilon) * flow_h).ceil().min((n - 1) as f64) as u64;
    let threshold = 3.0 * epsilon * flow_bound as f64;

    let mut split_components = 0;
    let mut groups: Vec<VertexSet> = Vec::new();
    for comp in connected_at_least(&residue, threshold)? {
        if comp.contains(&s) && comp.contains(&t) {
            split_components += 1;
            groups.push(VertexSet::singleton(t));
            groups.push(comp.into_iter().filter(|&x| x != t).collect());
        } else {
            groups.push(VertexSet::new(comp));
        }
    }
    let state = ContractionState::from_partition(n, &groups)?;
    let group_count = state.group_count();
    let mut view = ContractedView::new(o, state)?;
    let edges = match discovery::learn_multigraph(&mut view, None)? {
        Learned::Complete(edges) => edges,
        Learned::Aborted { .. } => unreachable!("learning without a limit never aborts"),
    };
    let state = view.into_state();
    let ids = state.groups();
    let mut index = vec![usize::MAX; n];
    for (i, &g) in ids.iter().enumerate() {
        index[g] = i;
    }
    let learned_edges = edges.iter().map(|e| e.2).sum();
    let g_prime = WeightedGraph::from_multiplicities(ids.len(), edges.iter().map(|&(a, b, k)| (index[a], index[b], k)))?;
    let local = reference::exact_st_min_cut(&g_prime, index[state.group_of(s)], index[state.group_of(t)])?;
    let side_groups: Vec<usize> = local.side.iter().map(|i| ids[i]).collect();
    Ok(StResult {
        cut: Cut { side: state.expand(&side_groups), value: local.value },
        queries: o.snapshot().since(&start),
        epsilon,
        sparsifier_edges: h.edge_count(),
        flow_h: f.value,
        flow_bound,
        threshold,
        flow_certified,
        groups: group_count,
        learned_edges,
        split_components,
    })
}
