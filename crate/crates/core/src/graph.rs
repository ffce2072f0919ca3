//! Graph types shared by every algorithm: the hidden simple graph, weighted
//! graphs with exact rational weights, vertex sets, cuts and the bookkeeping
//! for contracted super-vertices.

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, One, Zero};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type Rational = Ratio<i64>;

/// Slot index of a super-vertex inside a [`ContractionState`].
pub type GroupId = usize;

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new<I: IntoIterator<Item = VertexId>>(members: I) -> Self {
        let mut v: Vec<VertexId> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn full(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn singleton(v: VertexId) -> Self {
        Self(vec![v])
    }

    pub(crate) fn from_sorted(v: Vec<VertexId>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Self(v)
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<VertexId> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn complement(&self, n: usize) -> Self {
        let mut out = Vec::with_capacity(n.saturating_sub(self.len()));
        let mut it = self.0.iter().peekable();
        for v in 0..n {
            if it.peek() == Some(&&v) {
                it.next();
            } else {
                out.push(v);
            }
        }
        Self(out)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= n => Err(Error::VertexOutOfRange { vertex: v, n }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Self::new(iter)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Anything whose cut function can be evaluated exactly.
pub trait CutGraph {
    fn vertex_count(&self) -> usize;

    /// Total weight of edges with exactly one endpoint in `side`.
    fn cut_value(&self, side: &VertexSet) -> Result<Rational>;

    /// Every edge once, with its weight.
    fn weighted_edges(&self) -> Vec<(VertexId, VertexId, Rational)>;
}

/// Unweighted, undirected graph without self-loops or parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    m: usize,
    adj: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::ParallelEdge(u.min(w[0]), u.max(w[0])));
            }
            m += list.len();
        }
        Ok(Self { n, m: m / 2, adj })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, m: 0, adj: vec![Vec::new(); n] }
    }

    pub fn complete(n: usize) -> Self {
        Self::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph")
    }

    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|v| (v - 1, v))).expect("path graph")
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle graph")
    }

    pub fn star(leaves: usize) -> Self {
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Cut value of a set given as distinct member ids, all in range.
    pub(crate) fn cut_of_members(&self, members: &[VertexId], mark: &mut Vec<bool>) -> u64 {
        if mark.len() != self.n {
            mark.clear();
            mark.resize(self.n, false);
        }
        for &v in members {
            mark[v] = true;
        }
        let mut c = 0u64;
        for &v in members {
            c += self.adj[v].iter().filter(|&&y| !mark[y]).count() as u64;
        }
        for &v in members {
            mark[v] = false;
        }
        c
    }

    pub fn cut_size(&self, side: &VertexSet) -> Result<u64> {
        side.check_range(self.n)?;
        let mut mark = Vec::new();
        Ok(self.cut_of_members(side.members(), &mut mark))
    }

    pub fn to_weighted(&self) -> WeightedGraph {
        WeightedGraph::from_edges(self.n, self.edges().map(|(u, v)| (u, v, Rational::one()))).expect("simple graph edges are valid")
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[VertexId]) -> SimpleGraph {
        let index: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &y in &self.adj[v] {
                if let Some(&j) = index.get(&y) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        SimpleGraph::new(vertices.len(), edges).expect("induced subgraph of a simple graph")
    }
}

impl CutGraph for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn cut_value(&self, side: &VertexSet) -> Result<Rational> {
        Ok(Rational::from_integer(self.cut_size(side)? as i64))
    }

    fn weighted_edges(&self) -> Vec<(VertexId, VertexId, Rational)> {
        self.edges().map(|(u, v)| (u, v, Rational::from_integer(1))).collect()
    }
}

/// Undirected graph with exact positive rational weights. Parallel edges are
/// merged by adding weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(VertexId, VertexId, Rational)>,
}

impl WeightedGraph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Rational)>,
    {
        let mut merged: HashMap<(VertexId, VertexId), Rational> = HashMap::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if w <= Rational::zero() {
                return Err(Error::NonPositiveWeight(u, v));
            }
            let key = (u.min(v), u.max(v));
            let slot = merged.entry(key).or_insert_with(Rational::zero);
            *slot = slot.checked_add(&w).ok_or(Error::Overflow)?;
        }
        let mut edges: Vec<_> = merged.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        edges.sort_unstable_by_key(|e| (e.0, e.1));
        Ok(Self { n, edges })
    }

    /// Integer-weighted multigraph, e.g. a contracted graph with multiplicities.
    pub fn from_multiplicities<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u64)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v, w)| (u, v, Rational::from_integer(w as i64))))
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId, Rational)] {
        &self.edges
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<Rational> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search_by_key(&key, |e| (e.0, e.1)).ok().map(|i| self.edges[i].2)
    }

    pub fn total_weight(&self) -> Rational {
        self.edges.iter().fold(Rational::zero(), |acc, e| acc + e.2)
    }

    pub fn max_weight(&self) -> Rational {
        self.edges.iter().map(|e| e.2).max().unwrap_or_else(Rational::zero)
    }

    pub fn weighted_degrees(&self) -> Vec<Rational> {
        let mut d = vec![Rational::zero(); self.n];
        for &(u, v, w) in &self.edges {
            d[u] += w;
            d[v] += w;
        }
        d
    }

    /// Least common denominator of all weights, so that `w * lcd` is an integer.
    pub fn common_denominator(&self) -> Result<i64> {
        let mut l: i64 = 1;
        for e in &self.edges {
            let d = *e.2.denom();
            let g = l.gcd(&d);
            l = (l / g).checked_mul(d).ok_or(Error::Overflow)?;
        }
        Ok(l)
    }

    /// Weights multiplied by `scale` (which must clear every denominator).
    pub(crate) fn scaled_integer_edges(&self, scale: i64) -> Result<Vec<(VertexId, VertexId, u64)>> {
        self.edges
            .iter()
            .map(|&(u, v, w)| {
                let x = w.numer().checked_mul(scale / w.denom()).ok_or(Error::Overflow)?;
                Ok((u, v, x as u64))
            })
            .collect()
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()`.
    pub fn induced(&self, vertices: &[VertexId]) -> WeightedGraph {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.0] != usize::MAX && index[e.1] != usize::MAX)
            .map(|&(u, v, w)| (index[u], index[v], w))
            .collect::<Vec<_>>();
        WeightedGraph::from_edges(vertices.len(), edges).expect("induced subgraph is valid")
    }
}

impl CutGraph for WeightedGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn cut_value(&self, side: &VertexSet) -> Result<Rational> {
        side.check_range(self.n)?;
        let mut mark = vec![false; self.n];
        for v in side.iter() {
            mark[v] = true;
        }
        Ok(self.edges.iter().filter(|e| mark[e.0] != mark[e.1]).fold(Rational::zero(), |acc, e| acc + e.2))
    }

    fn weighted_edges(&self) -> Vec<(VertexId, VertexId, Rational)> {
        self.edges.clone()
    }
}

/// A cut given by one of its sides, together with its value in the graph it
/// was evaluated against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub side: VertexSet,
    pub value: Rational,
}

impl Cut {
    /// Cut with the side normalised to the one containing vertex 0.
    pub fn canonical(side: VertexSet, n: usize, value: Rational) -> Self {
        let side = if side.contains(0) { side } else { side.complement(n) };
        Self { side, value }
    }

    pub fn is_proper(&self, n: usize) -> bool {
        !self.side.is_empty() && self.side.len() < n
    }

    /// Smaller value first; equal values are ordered by the canonical side.
    pub fn better_than(&self, other: &Cut) -> bool {
        (self.value, &self.side) < (other.value, &other.side)
    }
}

/// Exact cut value of `s` in `g`.
pub fn exact_cut_value<G: CutGraph>(g: &G, s: &VertexSet) -> Result<Rational> {
    g.cut_value(s)
}

/// Partition of the original vertices into super-vertices, with the cached
/// cut value of each super-vertex once it has been queried.
#[derive(Clone, Debug)]
pub struct ContractionState {
    group_of: Vec<GroupId>,
    members: Vec<Vec<VertexId>>,
    degree: Vec<Option<u64>>,
    key: Vec<u128>,
    alive: usize,
}

impl ContractionState {
    /// Every vertex in its own group, with no degrees known yet.
    pub fn identity(n: usize) -> Self {
        Self {
            group_of: (0..n).collect(),
            members: (0..n).map(|v| vec![v]).collect(),
            degree: vec![None; n],
            key: (0..n).map(crate::oracle::vertex_key).collect(),
            alive: n,
        }
    }

    /// State whose groups are the given disjoint, covering vertex sets.
    pub fn from_partition(n: usize, groups: &[VertexSet]) -> Result<Self> {
        let mut s = Self::identity(n);
        let mut seen = vec![false; n];
        for g in groups {
            g.check_range(n)?;
            if g.is_empty() {
                return Err(Error::InvalidContraction("empty group".into()));
            }
            for v in g.iter() {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidContraction(format!("vertex {v} appears in two groups")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidContraction(format!("vertex {v} is not covered")));
        }
        for g in groups {
            let ids: Vec<GroupId> = g.iter().map(|v| s.group_of[v]).collect();
            s.contract_many(&ids)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.group_of.len()
    }

    pub fn group_count(&self) -> usize {
        self.alive
    }

    /// Live group ids in ascending order.
    pub fn groups(&self) -> Vec<GroupId> {
        (0..self.members.len()).filter(|&g| !self.members[g].is_empty()).collect()
    }

    pub fn is_alive(&self, g: GroupId) -> bool {
        g < self.members.len() && !self.members[g].is_empty()
    }

    pub fn group_of(&self, v: VertexId) -> GroupId {
        self.group_of[v]
    }

    pub fn members(&self, g: GroupId) -> &[VertexId] {
        &self.members[g]
    }

    pub fn degree(&self, g: GroupId) -> Option<u64> {
        self.degree[g]
    }

    pub fn set_degree(&mut self, g: GroupId, d: u64) {
        self.degree[g] = Some(d);
    }

    pub(crate) fn key(&self, g: GroupId) -> u128 {
        self.key[g]
    }

    /// `(sum of super-degrees) / 2`, once every live degree is known.
    pub fn inter_group_edges(&self) -> Option<u64> {
        let mut sum = 0;
        for g in self.groups() {
            sum += self.degree[g]?;
        }
        Some(sum / 2)
    }

    /// Merges groups `a` and `b`; the merged degree is unknown until refreshed.
    pub fn contract(&mut self, a: GroupId, b: GroupId) -> Result<GroupId> {
        if a == b {
            return Err(Error::InvalidContraction(format!("cannot contract group {a} with itself")));
        }
        for g in [a, b] {
            if !self.is_alive(g) {
                return Err(Error::InvalidContraction(format!("group {g} does not exist")));
            }
        }
        let (big, small) = if self.members[a].len() >= self.members[b].len() { (a, b) } else { (b, a) };
        let moved = std::mem::take(&mut self.members[small]);
        for &v in &moved {
            self.group_of[v] = big;
        }
        self.members[big].extend(moved);
        self.members[big].sort_unstable();
        self.key[big] = self.key[big].wrapping_add(self.key[small]);
        self.key[small] = 0;
        self.degree[big] = None;
        self.degree[small] = None;
        self.alive -= 1;
        Ok(big)
    }

    /// Merges every listed group into one and returns its id.
    pub fn contract_many(&mut self, groups: &[GroupId]) -> Result<GroupId> {
        let mut ids = groups.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let mut cur = *ids.first().ok_or_else(|| Error::InvalidContraction("no groups to contract".into()))?;
        if !self.is_alive(cur) {
            return Err(Error::InvalidContraction(format!("group {cur} does not exist")));
        }
        for &g in &ids[1..] {
            cur = self.contract(cur, g)?;
        }
        Ok(cur)
    }

    /// The partition as vertex sets, ordered by smallest member.
    pub fn partition(&self) -> Vec<VertexSet> {
        let mut parts: Vec<VertexSet> = self.groups().into_iter().map(|g| VertexSet::new(self.members[g].iter().copied())).collect();
        parts.sort();
        parts
    }

    /// Union of the members of `groups`.
    pub fn expand(&self, groups: &[GroupId]) -> VertexSet {
        VertexSet::new(groups.iter().flat_map(|&g| self.members[g].iter().copied()))
    }

    /// True iff no group contains both endpoints of an edge of `cut_edges`.
    pub fn separates_all<I: IntoIterator<Item = (VertexId, VertexId)>>(&self, cut_edges: I) -> bool {
        cut_edges.into_iter().all(|(u, v)| self.group_of[u] != self.group_of[v])
    }

    /// Edges of `g` running between different groups, counted directly.
    pub fn count_inter_group_edges(&self, g: &SimpleGraph) -> u64 {
        g.edges().filter(|&(u, v)| self.group_of[u] != self.group_of[v]).count() as u64
    }

    /// The contracted multigraph of `g` on the live groups (indexed in
    /// ascending group order), computed directly from the edge list.
    pub fn contracted_multigraph(&self, g: &SimpleGraph) -> WeightedGraph {
        let groups = self.groups();
        let mut index = vec![usize::MAX; self.members.len()];
        for (i, &gid) in groups.iter().enumerate() {
            index[gid] = i;
        }
        let edges = g
            .edges()
            .filter(|&(u, v)| self.group_of[u] != self.group_of[v])
            .map(|(u, v)| (index[self.group_of[u]], index[self.group_of[v]], 1u64));
        WeightedGraph::from_multiplicities(groups.len(), edges).expect("contracted multigraph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn r(x: i64) -> Rational {
        Rational::from_integer(x)
    }

    #[test]
    fn k3_singleton_cut() {
        let g = SimpleGraph::complete(3);
        assert_eq!(exact_cut_value(&g, &VertexSet::singleton(0)).unwrap(), r(2));
    }

    #[test]
    fn empty_and_full_sets_cut_nothing() {
        let g = SimpleGraph::complete(5);
        assert_eq!(exact_cut_value(&g, &VertexSet::empty()).unwrap(), r(0));
        assert_eq!(exact_cut_value(&g, &VertexSet::full(5)).unwrap(), r(0));
    }

    #[test]
    fn out_of_range_vertex_is_a_domain_error() {
        let g = SimpleGraph::complete(3);
        assert!(matches!(g.cut_value(&VertexSet::singleton(3)), Err(Error::VertexOutOfRange { vertex: 3, n: 3 })));
    }

    #[test]
    fn rejects_self_loops_and_parallel_edges() {
        assert!(matches!(SimpleGraph::new(3, [(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(SimpleGraph::new(3, [(0, 1), (1, 0)]), Err(Error::ParallelEdge(0, 1))));
    }

    #[test]
    fn gnp_cut_matches_edge_enumeration() {
        let g = crate::generate::gnp(12, 0.3, 1).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let s = VertexSet::new((0..12).filter(|_| rng.random_bool(0.5)));
            let direct = g.edges().filter(|&(u, v)| s.contains(u) != s.contains(v)).count() as i64;
            assert_eq!(exact_cut_value(&g, &s).unwrap(), r(direct));
        }
    }

    #[test]
    fn weighted_graph_merges_parallel_edges() {
        let h = WeightedGraph::from_edges(3, [(0, 1, r(1)), (1, 0, Rational::new(1, 2)), (1, 2, r(2))]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.weight(1, 0), Some(Rational::new(3, 2)));
        assert_eq!(h.cut_value(&VertexSet::singleton(1)).unwrap(), Rational::new(7, 2));
        assert_eq!(h.common_denominator().unwrap(), 2);
    }

    #[test]
    fn contract_on_a_path() {
        let g = SimpleGraph::path(4);
        let mut s = ContractionState::identity(4);
        let merged = s.contract(1, 2).unwrap();
        assert_eq!(s.partition(), vec![VertexSet::new([0]), VertexSet::new([1, 2]), VertexSet::new([3])]);
        let d = g.cut_size(&s.expand(&[merged])).unwrap();
        assert_eq!(d, 2);
    }

    #[test]
    fn contract_everything_leaves_zero_degree() {
        let g = SimpleGraph::complete(5);
        let mut s = ContractionState::identity(5);
        let all = s.groups();
        let root = s.contract_many(&all).unwrap();
        assert_eq!(s.group_count(), 1);
        assert_eq!(g.cut_size(&s.expand(&[root])).unwrap(), 0);
    }

    #[test]
    fn self_contraction_is_rejected() {
        let mut s = ContractionState::identity(4);
        assert!(matches!(s.contract(2, 2), Err(Error::InvalidContraction(_))));
    }

    #[test]
    fn from_partition_validates_cover() {
        let parts = [VertexSet::new([0, 1]), VertexSet::new([2])];
        assert!(ContractionState::from_partition(4, &parts).is_err());
        let parts = [VertexSet::new([0, 3]), VertexSet::new([1, 2])];
        let s = ContractionState::from_partition(4, &parts).unwrap();
        assert_eq!(s.group_count(), 2);
        assert_eq!(s.group_of(0), s.group_of(3));
    }

    #[test]
    fn vertex_set_complement_and_display() {
        let s = VertexSet::new([3, 1, 1]);
        assert_eq!(s.members(), &[1, 3]);
        assert_eq!(s.complement(5).members(), &[0, 2, 4]);
        assert_eq!(s.to_string(), "{1,3}");
    }
}
