//! Ground-truth solvers. They read graphs directly and never touch an
//! oracle, so they contribute nothing to any query count.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::flow;
use crate::graph::{Cut, CutGraph, Rational, SimpleGraph, VertexId, VertexSet, WeightedGraph};
use crate::intgraph::{self, IntGraph};

/// Largest graph the exhaustive solver accepts.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// Exact strengths keyed by edge `(u, v)` with `u < v`.
pub type Strengths = BTreeMap<(VertexId, VertexId), Rational>;

/// Minimum over every side, or in s-t mode over sides containing `s` and
/// not `t`. Ties go to the lexicographically smallest side; the reported
/// side contains vertex 0 (global mode) or `s` (s-t mode).
pub fn brute_force_min_cut<G: CutGraph>(g: &G, st: Option<(VertexId, VertexId)>) -> Result<Cut> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge { n, limit: BRUTE_FORCE_LIMIT });
    }
    if n < 2 {
        return Err(Error::Precondition("a cut needs at least two vertices".into()));
    }
    let (anchor, sink) = match st {
        Some((s, t)) => {
            for x in [s, t] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if s == t {
                return Err(Error::Precondition("source and sink coincide".into()));
            }
            (s, Some(t))
        }
        None => (0, None),
    };
    let weighted = WeightedGraph::from_edges(n, g.weighted_edges())?;
    let scale = weighted.common_denominator()?;
    let mut w = vec![vec![0u64; n]; n];
    for (u, v, x) in weighted.scaled_integer_edges(scale)? {
        w[u][v] = x;
        w[v][u] = x;
    }
    let deg: Vec<u64> = w.iter().map(|r| r.iter().sum()).collect();
    let free: Vec<usize> = (0..n).filter(|&x| x != anchor && Some(x) != sink).collect();
    // Far side starts as {t} in s-t mode and empty otherwise.
    let mut far = vec![false; n];
    let mut conn = vec![0u64; n];
    let mut value: i64 = 0;
    let mut far_count = 0;
    let flip = |x: usize, far: &mut Vec<bool>, conn: &mut Vec<u64>, value: &mut i64, far_count: &mut usize| {
        if far[x] {
            *value += 2 * conn[x] as i64 - deg[x] as i64;
            far[x] = false;
            *far_count -= 1;
            for y in 0..n {
                conn[y] -= w[y][x];
            }
        } else {
            *value += deg[x] as i64 - 2 * conn[x] as i64;
            far[x] = true;
            *far_count += 1;
            for y in 0..n {
                conn[y] += w[y][x];
            }
        }
    };
    if let Some(t) = sink {
        flip(t, &mut far, &mut conn, &mut value, &mut far_count);
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut consider = |far: &[bool], value: i64, far_count: usize| {
        if far_count == 0 {
            return;
        }
        let value = value as u64;
        if best.as_ref().is_some_and(|b| value > b.0) {
            return;
        }
        let side: Vec<usize> = (0..n).filter(|&x| !far[x]).collect();
        if best.as_ref().is_none_or(|b| (value, &side) < (b.0, &b.1)) {
            best = Some((value, side));
        }
    };
    consider(&far, value, far_count);
    for i in 1u64..(1u64 << free.len()) {
        let x = free[i.trailing_zeros() as usize];
        flip(x, &mut far, &mut conn, &mut value, &mut far_count);
        consider(&far, value, far_count);
    }
    let (value, side) = best.expect("at least one proper side");
    Ok(Cut { side: VertexSet::from_sorted(side), value: Rational::new(value as i64, scale) })
}

/// Exact global minimum cut in polynomial time. A disconnected graph gives
/// a zero cut around the component of vertex 0.
pub fn deterministic_min_cut(g: &WeightedGraph) -> Result<Cut> {
    let (ig, scale) = IntGraph::from_weighted(g)?;
    let (value, side) = intgraph::min_cut(&ig)?;
    let value = i64::try_from(value).map_err(|_| Error::Overflow)?;
    Ok(Cut::canonical(VertexSet::new(side), g.n(), Rational::new(value, scale)))
}

/// Exact minimum s-t cut via maximum flow; the side contains `s`.
pub fn exact_st_min_cut(g: &WeightedGraph, s: VertexId, t: VertexId) -> Result<Cut> {
    let f = flow::max_flow(g, s, t)?;
    Ok(Cut { side: f.source_side, value: f.value })
}

/// Exact edge strengths by recursive splitting: a component's connectivity
/// lower-bounds the strength of every edge inside it, and the edges of a
/// minimum cut get the largest such bound among the components that held
/// them.
pub fn exact_strengths(g: &SimpleGraph) -> Strengths {
    let mut out = Strengths::new();
    let all: Vec<usize> = (0..g.n()).collect();
    split(g, all, Rational::zero(), &mut out);
    out
}

fn split(g: &SimpleGraph, vertices: Vec<usize>, inherited: Rational, out: &mut Strengths) {
    if vertices.len() < 2 {
        return;
    }
    let sub = g.induced(&vertices);
    let ig = IntGraph::from_edges(sub.n(), sub.edges().map(|(u, v)| (u, v, 1)));
    let (label, count) = ig.components();
    if count > 1 {
        for c in 0..count {
            let part = (0..sub.n()).filter(|&x| label[x] == c).map(|x| vertices[x]).collect();
            split(g, part, inherited, out);
        }
        return;
    }
    let (lambda, side) = intgraph::min_cut(&ig).expect("at least two vertices");
    let level = inherited.max(Rational::from_integer(lambda as i64));
    let mut inside = vec![false; sub.n()];
    for &x in &side {
        inside[x] = true;
    }
    for (u, v) in sub.edges() {
        if inside[u] != inside[v] {
            let (a, b) = (vertices[u], vertices[v]);
            out.insert((a.min(b), a.max(b)), level);
        }
    }
    let (near, far): (Vec<usize>, Vec<usize>) = (0..sub.n()).partition(|&x| inside[x]);
    split(g, near.into_iter().map(|x| vertices[x]).collect(), level, out);
    split(g, far.into_iter().map(|x| vertices[x]).collect(), level, out);
}

/// Strengths straight from the definition: the best connectivity over all
/// vertex-induced subgraphs containing the edge. Exponential; small `n` only.
pub fn definitional_strengths(g: &SimpleGraph) -> Result<Strengths> {
    const LIMIT: usize = 16;
    let n = g.n();
    if n > LIMIT {
        return Err(Error::TooLarge { n, limit: LIMIT });
    }
    let mut out: Strengths = g.edges().map(|e| (e, Rational::zero())).collect();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let vertices: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let sub = g.induced(&vertices);
        if sub.m() == 0 {
            continue;
        }
        let ig = IntGraph::from_edges(sub.n(), sub.edges().map(|(u, v)| (u, v, 1)));
        let lambda = Rational::from_integer(intgraph::min_cut(&ig)?.0 as i64);
        for (u, v) in sub.edges() {
            let e = (vertices[u], vertices[v]);
            let slot = out.get_mut(&e).expect("edge of g");
            if lambda > *slot {
                *slot = lambda;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use rand::{Rng, SeedableRng};

    #[test]
    fn small_examples() {
        assert_eq!(brute_force_min_cut(&SimpleGraph::cycle(5), None).unwrap().value, 2.into());
        assert_eq!(brute_force_min_cut(&SimpleGraph::complete(4), Some((0, 3))).unwrap().value, 3.into());
        let bar = generate::barbell(5).unwrap();
        assert_eq!(deterministic_min_cut(&bar.to_weighted()).unwrap().value, 1.into());
        let split = WeightedGraph::from_edges(4, [(0, 1, 1.into()), (2, 3, 1.into())]).unwrap();
        let cut = deterministic_min_cut(&split).unwrap();
        assert_eq!(cut.value, 0.into());
        assert_eq!(cut.side, VertexSet::new([0, 1]));
    }

    #[test]
    fn brute_force_side_is_lexicographic_and_consistent() {
        let g = SimpleGraph::cycle(6);
        let cut = brute_force_min_cut(&g, None).unwrap();
        assert_eq!(cut.side, VertexSet::new([0]));
        assert_eq!(g.cut_value(&cut.side).unwrap(), cut.value);
        let st = brute_force_min_cut(&g, Some((2, 4))).unwrap();
        assert!(st.side.contains(2) && !st.side.contains(4));
        assert_eq!(st.value, 2.into());
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(brute_force_min_cut(&SimpleGraph::cycle(25), None), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn deterministic_agrees_with_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for i in 0..500 {
            let n = rng.random_range(2..=16);
            let p = rng.random_range(0.15..0.9);
            let g = generate::gnp(n, p, i).unwrap();
            let brute = brute_force_min_cut(&g, None).unwrap();
            let det = deterministic_min_cut(&g.to_weighted()).unwrap();
            assert_eq!(brute.value, det.value, "instance {i}");
            assert_eq!(g.cut_value(&det.side).unwrap(), det.value);
        }
    }

    #[test]
    fn weighted_brute_force_and_st() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        for _ in 0..50 {
            let n = rng.random_range(3..=10);
            let mut edges = Vec::new();
            for (u, v) in (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))) {
                if rng.random_bool(0.5) {
                    edges.push((u, v, Rational::new(rng.random_range(1..6), rng.random_range(1..5))));
                }
            }
            let h = WeightedGraph::from_edges(n, edges).unwrap();
            assert_eq!(brute_force_min_cut(&h, None).unwrap().value, deterministic_min_cut(&h).unwrap().value);
            assert_eq!(brute_force_min_cut(&h, Some((0, n - 1))).unwrap().value, exact_st_min_cut(&h, 0, n - 1).unwrap().value);
        }
    }

    #[test]
    fn strengths_examples() {
        let k4_pendant = SimpleGraph::new(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let s = exact_strengths(&k4_pendant);
        assert_eq!(s[&(3, 4)], 1.into());
        assert!(s.iter().filter(|(e, _)| **e != (3, 4)).all(|(_, k)| *k == 3.into()));
        let tree = SimpleGraph::path(6);
        assert!(exact_strengths(&tree).values().all(|k| *k == 1.into()));
    }

    #[test]
    fn strengths_match_definition() {
        // every graph on 5 vertices, then random ones up to 10
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let g = SimpleGraph::new(5, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            assert_eq!(exact_strengths(&g), definitional_strengths(&g).unwrap());
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for i in 0..200 {
            let g = generate::gnp(rng.random_range(2..=10), rng.random_range(0.2..0.8), 1000 + i).unwrap();
            assert_eq!(exact_strengths(&g), definitional_strengths(&g).unwrap());
        }
    }
}
