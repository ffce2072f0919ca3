//! Seeded instance generators. Every generator returns a simple graph and is
//! a pure function of its parameters and seed.

use rand::seq::{index, SliceRandom};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{SimpleGraph, VertexId, VertexSet};
use crate::rng::{self, stage};

#[derive(Clone, Debug, PartialEq)]
pub enum Kind {
    Gnp { n: usize, p: f64 },
    Barbell { clique: usize },
    Cycle { n: usize },
    PlantedCut { n: usize, k: usize, p_in: f64 },
    CliquePlusPath { clique: usize, path: usize },
}

pub fn generate(kind: &Kind, seed: u64) -> Result<SimpleGraph> {
    match *kind {
        Kind::Gnp { n, p } => gnp(n, p, seed),
        Kind::Barbell { clique } => barbell(clique),
        Kind::Cycle { n } => cycle(n),
        Kind::PlantedCut { n, k, p_in } => planted_cut(n, k, p_in, seed).map(|(g, _)| g),
        Kind::CliquePlusPath { clique, path } => clique_plus_path(clique, path),
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("probability {p} is outside [0, 1]")))
    }
}

/// Erdős–Rényi graph: each of the `n(n-1)/2` pairs independently with probability `p`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<SimpleGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("gnp needs n >= 2, got {n}")));
    }
    check_probability(p)?;
    let mut rng = rng::stream(seed, stage::GENERATE);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, edges)
}

/// Two `K_clique` joined by the bridge `(clique - 1, clique)`.
pub fn barbell(clique: usize) -> Result<SimpleGraph> {
    if clique < 2 {
        return Err(Error::InvalidParameter(format!("barbell needs clique >= 2, got {clique}")));
    }
    let mut edges = Vec::new();
    for base in [0, clique] {
        for u in 0..clique {
            for v in u + 1..clique {
                edges.push((base + u, base + v));
            }
        }
    }
    edges.push((clique - 1, clique));
    SimpleGraph::new(2 * clique, edges)
}

pub fn cycle(n: usize) -> Result<SimpleGraph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(SimpleGraph::cycle(n))
}

/// Random bisection with `k` distinct crossing edges and intra-side edge
/// probability `p_in`. Returns the graph and the side holding vertex 0.
pub fn planted_cut(n: usize, k: usize, p_in: f64, seed: u64) -> Result<(SimpleGraph, VertexSet)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("planted_cut needs n >= 2, got {n}")));
    }
    check_probability(p_in)?;
    let half = n / 2;
    let pairs = half * (n - half);
    if k > pairs {
        return Err(Error::InvalidParameter(format!("{k} crossing edges do not fit between sides of {half} and {}", n - half)));
    }
    let mut rng = rng::stream(seed, stage::GENERATE);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let (a, b) = order.split_at(half);
    let mut edges = Vec::new();
    for side in [a, b] {
        for i in 0..side.len() {
            for j in i + 1..side.len() {
                if rng.random_bool(p_in) {
                    edges.push((side[i], side[j]));
                }
            }
        }
    }
    for idx in index::sample(&mut rng, pairs, k) {
        edges.push((a[idx / b.len()], b[idx % b.len()]));
    }
    let side = VertexSet::new(a.iter().copied());
    let side = if side.contains(0) { side } else { side.complement(n) };
    Ok((SimpleGraph::new(n, edges)?, side))
}

/// `K_clique` on `0..clique` with a path of `path` further vertices hanging
/// off vertex `clique - 1`.
pub fn clique_plus_path(clique: usize, path: usize) -> Result<SimpleGraph> {
    if clique < 1 {
        return Err(Error::InvalidParameter("clique_plus_path needs a nonempty clique".into()));
    }
    let n = clique + path;
    let mut edges = Vec::new();
    for u in 0..clique {
        for v in u + 1..clique {
            edges.push((u, v));
        }
    }
    for v in clique..n {
        edges.push((v - 1, v));
    }
    SimpleGraph::new(n, edges)
}
