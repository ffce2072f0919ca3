//! WebAssembly bindings for the static demo page in `www/`. Every entry point
//! takes an edge list as text and returns a JSON report.

use cutquery::discovery::{self, Learned};
use cutquery::global::{self, GlobalConfig};
use cutquery::rng::{self, stage};
use cutquery::st::{self, StConfig};
use cutquery::{generate, io, reference, Constants, CutOracle, SimpleGraph};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Debug, Serialize, PartialEq)]
pub struct CutReport {
    pub value: String,
    /// Vertices on the reported side.
    pub side: Vec<usize>,
    pub distinct_queries: u64,
    pub total_calls: u64,
    /// Distinct queries spent learning the whole graph, for comparison.
    pub learn_all_queries: u64,
    /// Value from the exact solver.
    pub exact: String,
}

fn parse(edges: &str) -> Result<SimpleGraph, String> {
    io::read_edge_list(edges.as_bytes()).map_err(|e| e.to_string())
}

fn learn_all(g: &SimpleGraph) -> u64 {
    let mut o = CutOracle::new(g);
    match discovery::learn_graph(&mut o, None) {
        Ok(Learned::Complete(_)) => o.ledger().distinct_queries(),
        _ => 0,
    }
}

/// Edge list of a generated instance: `gnp`, `barbell`, `cycle` or `planted`.
pub fn generate_graph(kind: &str, n: usize, p: f64, seed: u64) -> Result<String, String> {
    let g = match kind {
        "gnp" => generate::gnp(n, p, seed),
        "barbell" => generate::barbell((n / 2).max(2)),
        "cycle" => generate::cycle(n),
        "planted" => generate::planted_cut(n, 2, p, seed).map(|(g, _)| g),
        other => return Err(format!("unknown kind {other}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(io::edge_list_string(&g))
}

pub fn global_report(edges: &str, algo: &str, seed: u64, scale: f64) -> Result<CutReport, String> {
    let g = parse(edges)?;
    if g.n() < 2 {
        return Err("need at least two vertices".into());
    }
    let config = GlobalConfig { constants: Constants::scaled(scale), ..Default::default() };
    let mut o = CutOracle::new(&g);
    let r = match algo {
        "v1" => global::global_min_cut_v1(&mut o, &config, &mut rng::stream(seed, stage::GLOBAL_V1)),
        "v2" => global::global_min_cut_v2(&mut o, &config, &mut rng::stream(seed, stage::GLOBAL_V2)),
        other => return Err(format!("unknown algorithm {other}")),
    }
    .map_err(|e| e.to_string())?;
    let exact = reference::deterministic_min_cut(&g.to_weighted()).map_err(|e| e.to_string())?.value;
    Ok(CutReport {
        value: r.cut.value.to_string(),
        side: r.cut.side.iter().collect(),
        distinct_queries: r.queries.distinct_queries,
        total_calls: r.queries.total_calls,
        learn_all_queries: learn_all(&g),
        exact: exact.to_string(),
    })
}

pub fn st_report(edges: &str, s: usize, t: usize, seed: u64, scale: f64) -> Result<CutReport, String> {
    let g = parse(edges)?;
    let config = StConfig { epsilon: None, constants: Constants::scaled(scale) };
    let mut o = CutOracle::new(&g);
    let r = st::st_min_cut(&mut o, s, t, &config, &mut rng::stream(seed, stage::ST)).map_err(|e| e.to_string())?;
    let exact = reference::exact_st_min_cut(&g.to_weighted(), s, t).map_err(|e| e.to_string())?.value;
    Ok(CutReport {
        value: r.cut.value.to_string(),
        side: r.cut.side.iter().collect(),
        distinct_queries: r.queries.distinct_queries,
        total_calls: r.queries.total_calls,
        learn_all_queries: learn_all(&g),
        exact: exact.to_string(),
    })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.and_then(|x| serde_json::to_string(&x).map_err(|e| e.to_string())).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn generate_instance(kind: &str, n: usize, p: f64, seed: u64) -> Result<String, JsValue> {
    generate_graph(kind, n, p, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn global_min_cut(edges: &str, algo: &str, seed: u64, scale: f64) -> Result<String, JsValue> {
    to_js(global_report(edges, algo, seed, scale))
}

#[wasm_bindgen]
pub fn st_min_cut(edges: &str, s: usize, t: usize, seed: u64, scale: f64) -> Result<String, JsValue> {
    to_js(st_report(edges, s, t, seed, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barbell_bridge() {
        let edges = generate_graph("barbell", 10, 0.0, 0).unwrap();
        for algo in ["v1", "v2"] {
            let r = global_report(&edges, algo, 1, 1.0).unwrap();
            assert_eq!(r.value, "1");
            assert_eq!(r.exact, "1");
            assert!(r.side.len() == 5);
        }
    }

    #[test]
    fn st_on_cycle() {
        let edges = generate_graph("cycle", 9, 0.0, 0).unwrap();
        let r = st_report(&edges, 0, 4, 2, 1.0).unwrap();
        assert_eq!(r.value, "2");
        assert!(r.side.contains(&0) && !r.side.contains(&4));
        assert!(r.learn_all_queries > 0);
    }

    #[test]
    fn bad_input_is_reported() {
        assert!(global_report("3 1\n0 7\n", "v2", 0, 1.0).is_err());
        assert!(global_report("3 1\n0 1\n", "v7", 0, 1.0).is_err());
        assert!(generate_graph("torus", 5, 0.5, 0).is_err());
    }
}
