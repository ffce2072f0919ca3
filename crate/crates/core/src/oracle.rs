//! The cut-query oracle: the only way algorithms may look at the hidden graph.
//!
//! Every query is recorded in a [`QueryLedger`]. Repeated queries are
//! recognised through a 128-bit additive fingerprint of the queried set, so
//! the ledger can tell `S` and `V \ S` apart from genuinely new questions
//! without storing the sets themselves.
//!
//! Answers are always exact. Some operations (`edges_between`, contraction
//! refreshes) are charged for the queries the textbook identity needs but are
//! evaluated directly on the adjacency lists; the answer is identical and the
//! ledger sees the same queries.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{ContractionState, GroupId, SimpleGraph, VertexId, VertexSet};
use crate::rng::splitmix64;

/// Random-looking 128-bit key of vertex `v`; a set's key is the wrapping sum.
pub fn vertex_key(v: VertexId) -> u128 {
    let hi = splitmix64((v as u64).wrapping_mul(2)) as u128;
    let lo = splitmix64((v as u64).wrapping_mul(2).wrapping_add(1)) as u128;
    (hi << 64) | lo
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LedgerSnapshot {
    pub total_calls: u64,
    pub distinct_queries: u64,
}

impl LedgerSnapshot {
    pub const CSV_HEADER: &'static str = "total_calls,distinct_queries";

    pub fn csv_fields(&self) -> String {
        format!("{},{}", self.total_calls, self.distinct_queries)
    }

    /// Queries spent between `earlier` and `self`.
    pub fn since(&self, earlier: &LedgerSnapshot) -> LedgerSnapshot {
        LedgerSnapshot {
            total_calls: self.total_calls - earlier.total_calls,
            distinct_queries: self.distinct_queries - earlier.distinct_queries,
        }
    }
}

#[derive(Clone, Debug)]
pub struct QueryLedger {
    total_calls: u64,
    seen: HashSet<u128>,
    full_key: u128,
    log: Option<Vec<(VertexSet, u64)>>,
}

impl QueryLedger {
    fn new(n: usize) -> Self {
        let full_key = (0..n).fold(0u128, |acc, v| acc.wrapping_add(vertex_key(v)));
        Self { total_calls: 0, seen: HashSet::new(), full_key, log: None }
    }

    pub fn total_calls(&self) -> u64 {
        self.total_calls
    }

    pub fn distinct_queries(&self) -> u64 {
        self.seen.len() as u64
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        LedgerSnapshot { total_calls: self.total_calls, distinct_queries: self.distinct_queries() }
    }

    pub fn log(&self) -> Option<&[(VertexSet, u64)]> {
        self.log.as_deref()
    }

    /// Charges a query for the set with fingerprint `key`. `set` is only
    /// materialised when logging is on.
    fn record(&mut self, key: u128, value: u64, set: impl FnOnce() -> VertexSet) {
        if key == 0 || key == self.full_key {
            return;
        }
        self.total_calls += 1;
        let other = self.full_key.wrapping_sub(key);
        self.seen.insert(key.min(other));
        if let Some(log) = self.log.as_mut() {
            log.push((set(), value));
        }
    }
}

/// Answers `c(S)` on a hidden [`SimpleGraph`] and accounts for every query.
#[derive(Clone, Debug)]
pub struct CutOracle<'g> {
    graph: &'g SimpleGraph,
    ledger: QueryLedger,
    prefix_key: Vec<u128>,
    mark: Vec<bool>,
}

impl<'g> CutOracle<'g> {
    pub fn new(graph: &'g SimpleGraph) -> Self {
        let n = graph.n();
        let mut prefix_key = Vec::with_capacity(n + 1);
        prefix_key.push(0u128);
        for v in 0..n {
            prefix_key.push(prefix_key[v].wrapping_add(vertex_key(v)));
        }
        Self { graph, ledger: QueryLedger::new(n), prefix_key, mark: Vec::new() }
    }

    /// Turns query logging on or off. Turning it on starts an empty log.
    pub fn set_logging(&mut self, on: bool) {
        self.ledger.log = if on { Some(Vec::new()) } else { None };
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn ledger(&self) -> &QueryLedger {
        &self.ledger
    }

    pub fn snapshot(&self) -> LedgerSnapshot {
        self.ledger.snapshot()
    }

    /// The hidden graph. Only reference solvers and tests should call this.
    pub fn hidden(&self) -> &'g SimpleGraph {
        self.graph
    }

    /// `c(S)`: the number of edges with exactly one endpoint in `s`.
    pub fn query(&mut self, s: &VertexSet) -> Result<u64> {
        s.check_range(self.n())?;
        Ok(self.query_members(s.members()))
    }

    /// `c(S)` for a sorted, duplicate-free, in-range slice.
    pub(crate) fn query_members(&mut self, members: &[VertexId]) -> u64 {
        let value = self.graph.cut_of_members(members, &mut self.mark);
        let key = self.key_of(members);
        self.ledger.record(key, value, || VertexSet::from_sorted(members.to_vec()));
        value
    }

    /// Number of edges from `v` into `t`, as `(c({v}) + c(t) - c(t + v)) / 2`.
    pub fn edges_between(&mut self, v: VertexId, t: &VertexSet) -> Result<u64> {
        let n = self.n();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        t.check_range(n)?;
        if t.contains(v) {
            return Err(Error::Precondition(format!("vertex {v} is inside the target set")));
        }
        Ok(self.between_members(v, t.members()))
    }

    /// `edges_between` on a sorted, duplicate-free slice not containing `v`.
    pub(crate) fn between_members(&mut self, v: VertexId, t: &[VertexId]) -> u64 {
        let adj = self.graph.neighbors(v);
        let contiguous = match (t.first(), t.last()) {
            (Some(&a), Some(&b)) => b - a + 1 == t.len(),
            _ => true,
        };
        let count = if t.is_empty() {
            0
        } else if contiguous {
            let lo = adj.partition_point(|&y| y < t[0]);
            let hi = adj.partition_point(|&y| y <= t[t.len() - 1]);
            (hi - lo) as u64
        } else if adj.len() * 8 < t.len() {
            adj.iter().filter(|y| t.binary_search(y).is_ok()).count() as u64
        } else {
            let mut i = 0;
            let mut c = 0u64;
            for &x in t {
                while i < adj.len() && adj[i] < x {
                    i += 1;
                }
                if i < adj.len() && adj[i] == x {
                    c += 1;
                }
            }
            c
        };
        self.charge_between(v, t, count);
        count
    }

    fn charge_between(&mut self, v: VertexId, t: &[VertexId], count: u64) {
        let kv = vertex_key(v);
        let kt = self.key_of(t);
        let dv = self.graph.degree(v) as u64;
        let ct = if self.ledger.log.is_some() { self.graph.cut_of_members(t, &mut self.mark) } else { 0 };
        self.ledger.record(kv, dv, || VertexSet::singleton(v));
        self.ledger.record(kt, ct, || VertexSet::from_sorted(t.to_vec()));
        self.ledger.record(kt.wrapping_add(kv), (ct + dv).saturating_sub(2 * count), || {
            let mut s = VertexSet::from_sorted(t.to_vec()).into_vec();
            s.push(v);
            VertexSet::new(s)
        });
    }

    /// True iff `{u, v}` is an edge: `c({u}) + c({v}) - c({u, v}) > 0`.
    pub fn has_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        if u == v {
            return Err(Error::Precondition("edge test needs two distinct vertices".into()));
        }
        let cu = self.query(&VertexSet::singleton(u))?;
        let cv = self.query(&VertexSet::singleton(v))?;
        let cuv = self.query(&VertexSet::new([u, v]))?;
        Ok(cu + cv > cuv)
    }

    /// Edges between two disjoint vertex sets (sorted, duplicate-free),
    /// charged as `c(A)`, `c(B)`, `c(A + B)`.
    pub(crate) fn between_sets(&mut self, a: &[VertexId], b: &[VertexId]) -> u64 {
        let g = self.graph;
        if a.len() == 1 {
            return self.between_members(a[0], b);
        }
        if b.len() == 1 {
            return self.between_members(b[0], a);
        }
        let vol_a: usize = a.iter().map(|&x| g.degree(x)).sum();
        let vol_b: usize = b.iter().map(|&x| g.degree(x)).sum();
        let (small, big) = if vol_a <= vol_b { (a, b) } else { (b, a) };
        if self.mark.len() != g.n() {
            self.mark.clear();
            self.mark.resize(g.n(), false);
        }
        for &x in big {
            self.mark[x] = true;
        }
        let count: u64 = small.iter().map(|&x| g.neighbors(x).iter().filter(|&&y| self.mark[y]).count() as u64).sum();
        for &x in big {
            self.mark[x] = false;
        }
        let ka = self.key_of(a);
        let kb = self.key_of(b);
        let logging = self.ledger.log.is_some();
        let (ca, cb) = if logging {
            (g.cut_of_members(a, &mut self.mark), g.cut_of_members(b, &mut self.mark))
        } else {
            (0, 0)
        };
        self.ledger.record(ka, ca, || VertexSet::from_sorted(a.to_vec()));
        self.ledger.record(kb, cb, || VertexSet::from_sorted(b.to_vec()));
        self.ledger.record(ka.wrapping_add(kb), (ca + cb).saturating_sub(2 * count), || VertexSet::new(a.iter().chain(b).copied()));
        count
    }

    fn key_of(&self, members: &[VertexId]) -> u128 {
        match (members.first(), members.last()) {
            (Some(&a), Some(&b)) if b - a + 1 == members.len() => self.prefix_key[b + 1].wrapping_sub(self.prefix_key[a]),
            _ => members.iter().fold(0u128, |acc, &v| acc.wrapping_add(vertex_key(v))),
        }
    }
}

/// Query access to a graph whose vertices ("units") are either the original
/// vertices or the super-vertices of a contraction.
pub trait CutAccess {
    /// Current unit ids in ascending order.
    fn units(&self) -> Vec<usize>;

    /// `c(unit)`; may be served from a cache of earlier answers.
    fn unit_degree(&mut self, u: usize) -> Result<u64>;

    /// Edges between unit `u` and the units in `others`, which must be sorted,
    /// distinct and must not contain `u`.
    fn unit_edges_between(&mut self, u: usize, others: &[usize]) -> Result<u64>;

    /// `c` of the union of the listed units.
    fn unit_cut(&mut self, units: &[usize]) -> Result<u64>;

    /// Original vertices making up unit `u`.
    fn unit_members(&self, u: usize) -> Vec<VertexId>;

    /// Edges between two disjoint sets of original vertices, each sorted.
    fn vertex_sets_between(&mut self, a: &[VertexId], b: &[VertexId]) -> u64;

    /// True when every unit is a single original vertex, so that no two
    /// units are joined by more than one edge.
    fn is_simple(&self) -> bool;

    fn snapshot(&self) -> LedgerSnapshot;
}

impl CutAccess for CutOracle<'_> {
    fn units(&self) -> Vec<usize> {
        (0..self.n()).collect()
    }

    fn unit_degree(&mut self, u: usize) -> Result<u64> {
        if u >= self.n() {
            return Err(Error::VertexOutOfRange { vertex: u, n: self.n() });
        }
        Ok(self.query_members(&[u]))
    }

    fn unit_edges_between(&mut self, u: usize, others: &[usize]) -> Result<u64> {
        debug_assert!(others.windows(2).all(|w| w[0] < w[1]) && others.binary_search(&u).is_err());
        Ok(self.between_members(u, others))
    }

    fn unit_cut(&mut self, units: &[usize]) -> Result<u64> {
        debug_assert!(units.windows(2).all(|w| w[0] < w[1]));
        Ok(self.query_members(units))
    }

    fn unit_members(&self, u: usize) -> Vec<VertexId> {
        vec![u]
    }

    fn vertex_sets_between(&mut self, a: &[VertexId], b: &[VertexId]) -> u64 {
        self.between_sets(a, b)
    }

    fn is_simple(&self) -> bool {
        true
    }

    fn snapshot(&self) -> LedgerSnapshot {
        self.ledger.snapshot()
    }
}

/// The oracle seen through a contraction: queries on super-vertex sets are
/// expanded to original vertices and charged to the shared ledger.
pub struct ContractedView<'a, 'g> {
    oracle: &'a mut CutOracle<'g>,
    state: ContractionState,
    volume: Vec<u64>,
    profile_of: Option<GroupId>,
    profile: Vec<u64>,
    touched: Vec<GroupId>,
    mark: Vec<bool>,
}

/// A view of `oracle` through `state`.
pub fn restricted_view<'a, 'g>(oracle: &'a mut CutOracle<'g>, state: ContractionState) -> Result<ContractedView<'a, 'g>> {
    ContractedView::new(oracle, state)
}

impl<'a, 'g> ContractedView<'a, 'g> {
    pub fn new(oracle: &'a mut CutOracle<'g>, state: ContractionState) -> Result<Self> {
        let n = oracle.n();
        if state.n() != n {
            return Err(Error::Precondition(format!("contraction over {} vertices used with an oracle over {n}", state.n())));
        }
        let g = oracle.graph;
        let mut volume = vec![0u64; n];
        for gid in state.groups() {
            volume[gid] = state.members(gid).iter().map(|&v| g.degree(v) as u64).sum();
        }
        Ok(Self { oracle, state, volume, profile_of: None, profile: vec![0; n], touched: Vec::new(), mark: vec![false; n] })
    }

    pub fn state(&self) -> &ContractionState {
        &self.state
    }

    pub fn into_state(self) -> ContractionState {
        self.state
    }

    pub fn oracle(&self) -> &CutOracle<'g> {
        self.oracle
    }

    pub fn group_count(&self) -> usize {
        self.state.group_count()
    }

    /// Super-degree of `g`, queried once and cached in the state.
    pub fn degree(&mut self, g: GroupId) -> Result<u64> {
        self.check_group(g)?;
        if let Some(d) = self.state.degree(g) {
            return Ok(d);
        }
        let d = self.oracle.query_members(self.state.members(g));
        self.state.set_degree(g, d);
        Ok(d)
    }

    /// Queries every live super-degree that is not cached yet.
    pub fn refresh_degrees(&mut self) -> Result<()> {
        for g in self.state.groups() {
            self.degree(g)?;
        }
        Ok(())
    }

    /// `c` of the union of `groups`.
    pub fn cut_groups(&mut self, groups: &[GroupId]) -> Result<u64> {
        for &g in groups {
            self.check_group(g)?;
        }
        let members = self.state.expand(groups);
        Ok(self.oracle.query_members(members.members()))
    }

    /// Edges between super-vertex `a` and the union of `groups`, charged as
    /// the three queries `c(a)`, `c(T)`, `c(T + a)`.
    pub fn edges_between(&mut self, a: GroupId, groups: &[GroupId]) -> Result<u64> {
        self.check_group(a)?;
        for &g in groups {
            self.check_group(g)?;
            if g == a {
                return Err(Error::Precondition(format!("group {a} is inside the target set")));
            }
        }
        let count = if self.profile_of == Some(a) {
            groups.iter().map(|&g| self.profile[g]).sum()
        } else {
            let vol_t: u64 = groups.iter().map(|&g| self.volume[g]).sum();
            if self.volume[a] <= vol_t {
                self.build_profile(a);
                groups.iter().map(|&g| self.profile[g]).sum()
            } else {
                self.count_from_targets(a, groups)
            }
        };
        self.charge_between(a, groups, count);
        Ok(count)
    }

    /// Merges `a` and `b` and refreshes the merged super-degree with one query.
    pub fn contract(&mut self, a: GroupId, b: GroupId) -> Result<GroupId> {
        self.check_group(a)?;
        self.check_group(b)?;
        if a == b {
            return Err(Error::InvalidContraction(format!("cannot contract group {a} with itself")));
        }
        let da = self.degree(a)?;
        let db = self.degree(b)?;
        let (small, other) = if self.volume[a] <= self.volume[b] { (a, b) } else { (b, a) };
        let g = self.oracle.graph;
        let between: u64 = self
            .state
            .members(small)
            .iter()
            .map(|&x| g.neighbors(x).iter().filter(|&&y| self.state.group_of(y) == other).count() as u64)
            .sum();
        let key = self.state.key(a).wrapping_add(self.state.key(b));
        let merged_degree = da + db - 2 * between;
        let merged = self.state.contract(a, b)?;
        let state = &self.state;
        self.oracle.ledger.record(key, merged_degree, || VertexSet::new(state.members(merged).iter().copied()));
        self.volume[merged] = self.volume[a] + self.volume[b];
        let gone = if merged == a { b } else { a };
        self.volume[gone] = 0;
        self.state.set_degree(merged, merged_degree);
        self.invalidate_profile();
        Ok(merged)
    }

    fn check_group(&self, g: GroupId) -> Result<()> {
        if self.state.is_alive(g) {
            Ok(())
        } else {
            Err(Error::InvalidContraction(format!("group {g} does not exist")))
        }
    }

    fn invalidate_profile(&mut self) {
        for g in self.touched.drain(..) {
            self.profile[g] = 0;
        }
        self.profile_of = None;
    }

    fn build_profile(&mut self, a: GroupId) {
        self.invalidate_profile();
        let g = self.oracle.graph;
        for &x in self.state.members(a) {
            for &y in g.neighbors(x) {
                let gy = self.state.group_of(y);
                if gy != a {
                    if self.profile[gy] == 0 {
                        self.touched.push(gy);
                    }
                    self.profile[gy] += 1;
                }
            }
        }
        self.profile_of = Some(a);
    }

    fn count_from_targets(&mut self, a: GroupId, groups: &[GroupId]) -> u64 {
        let g = self.oracle.graph;
        let mut c = 0u64;
        for &t in groups {
            for &x in self.state.members(t) {
                c += g.neighbors(x).iter().filter(|&&y| self.state.group_of(y) == a).count() as u64;
            }
        }
        c
    }

    fn charge_between(&mut self, a: GroupId, groups: &[GroupId], count: u64) {
        let ka = self.state.key(a);
        let kt = groups.iter().fold(0u128, |acc, &g| acc.wrapping_add(self.state.key(g)));
        let logging = self.oracle.ledger.log.is_some();
        let da = if logging { self.degree_uncharged(a) } else { 0 };
        let ct = if logging {
            let members = self.state.expand(groups);
            self.oracle.graph.cut_of_members(members.members(), &mut self.mark)
        } else {
            0
        };
        let state = &self.state;
        let ledger = &mut self.oracle.ledger;
        ledger.record(ka, da, || VertexSet::new(state.members(a).iter().copied()));
        ledger.record(kt, ct, || state.expand(groups));
        ledger.record(ka.wrapping_add(kt), (ct + da).saturating_sub(2 * count), || {
            let mut all = groups.to_vec();
            all.push(a);
            state.expand(&all)
        });
    }

    fn degree_uncharged(&mut self, a: GroupId) -> u64 {
        match self.state.degree(a) {
            Some(d) => d,
            None => self.oracle.graph.cut_of_members(self.state.members(a), &mut self.mark),
        }
    }
}

impl CutAccess for ContractedView<'_, '_> {
    fn units(&self) -> Vec<usize> {
        self.state.groups()
    }

    fn unit_degree(&mut self, u: usize) -> Result<u64> {
        self.degree(u)
    }

    fn unit_edges_between(&mut self, u: usize, others: &[usize]) -> Result<u64> {
        self.edges_between(u, others)
    }

    fn unit_cut(&mut self, units: &[usize]) -> Result<u64> {
        self.cut_groups(units)
    }

    fn unit_members(&self, u: usize) -> Vec<VertexId> {
        self.state.members(u).to_vec()
    }

    fn vertex_sets_between(&mut self, a: &[VertexId], b: &[VertexId]) -> u64 {
        self.oracle.between_sets(a, b)
    }

    fn is_simple(&self) -> bool {
        self.state.group_count() == self.state.n()
    }

    fn snapshot(&self) -> LedgerSnapshot {
        self.oracle.snapshot()
    }
}
