//! Independent helpers shared by the integration tests. Nothing here calls
//! into the algorithms under test; cut values are recomputed from edge lists.

#![allow(dead_code)]

use cutquery::{SimpleGraph, VertexSet};

/// Cut value of `side` in `g`, counted edge by edge.
pub fn cut_by_edges(g: &SimpleGraph, side: &[bool]) -> u64 {
    g.edges().filter(|&(u, v)| side[u] != side[v]).count() as u64
}

/// Every proper cut of `g` as `(value, side containing vertex 0)`, visited
/// in Gray-code order.
pub fn all_cuts(g: &SimpleGraph) -> Vec<(u64, Vec<bool>)> {
    let n = g.n();
    let mut side = vec![true; n];
    let mut value: i64 = 0;
    let mut out = Vec::with_capacity((1usize << (n - 1)) - 1);
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize + 1;
        let inside = side[v];
        let same: i64 = g.neighbors(v).iter().filter(|&&y| side[y] == inside).count() as i64;
        let other = g.degree(v) as i64 - same;
        value += same - other;
        side[v] = !inside;
        out.push((value as u64, side.clone()));
    }
    out
}

pub fn min_cut_value(g: &SimpleGraph) -> u64 {
    all_cuts(g).into_iter().map(|c| c.0).min().unwrap_or(0)
}

pub fn side_set(side: &[bool]) -> VertexSet {
    VertexSet::new(side.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v))
}

/// Connectivity by union-find over the edge list.
pub fn is_connected(g: &SimpleGraph) -> bool {
    let n = g.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut parts = n;
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            parts -= 1;
        }
    }
    parts <= 1
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn fitted_exponent(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
