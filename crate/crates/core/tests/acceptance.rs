//! Acceptance run: one PASS/FAIL line per criterion, with the measured
//! numbers next to the pinned tolerance. `ACCEPTANCE_ONLY=4,7` restricts the
//! run to the listed criteria. Failures are listed at the end; with
//! `ACCEPTANCE_STRICT=1` they also make the process exit nonzero.

mod common;

use std::time::Instant;

use cutquery::discovery::{self, Learned};
use cutquery::generate;
use cutquery::global::{self, GlobalConfig};
use cutquery::params::Constants;
use cutquery::rng::{self, stage};
use cutquery::sparsify;
use cutquery::st::{self, StConfig};
use cutquery::{contraction, flow, reference};
use cutquery::{CutGraph, CutOracle, Rational, SimpleGraph, VertexSet, WeightedGraph};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{all_cuts, cut_by_edges, fitted_exponent, is_connected, min_cut_value, side_set};

// Pinned tolerances.
const EXACT_RATE: f64 = 0.99;
const EXACT_SCALE: f64 = 0.01;
const GLOBAL_TIME_LIMIT_S: f64 = 300.0;
const ST_TIME_LIMIT_S: f64 = 600.0;
const GLOBAL_EXPONENT_MAX: f64 = 1.35;
const ST_EXPONENT_MAX: f64 = 1.95;
const SCALING_SIZES: [usize; 5] = [64, 128, 256, 512, 1024];
const SCALING_DENSITY: f64 = 0.5;
const V1_SCALE: f64 = 0.001;
const V2_SCALE: f64 = 0.00001;
const ST_SCALE: f64 = 0.00001;
const SURVIVAL_MIN: f64 = 0.20;
const TRIALS: usize = 100;
const GOOD_TRIALS_MIN: usize = 95;
const COVER_CONSTANT_MAX: f64 = 20.0;
const SPARSIFIER_EPSILON: f64 = 0.3;
const SPARSIFIER_SIZE_CONSTANT: f64 = 2.0;
const STRENGTH_SCALE: f64 = 0.0005;
const SPARSIFIER_SCALE: f64 = 0.00002;
const FLOW_COVER_MAX: f64 = 4.0;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

type Check = fn() -> Outcome;

fn main() {
    let only: Option<Vec<usize>> = std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let checks: [(usize, &str, Check); 11] = [
        (1, "global exactness", global_exactness),
        (2, "s-t exactness", st_exactness),
        (3, "query micro-bounds", micro_bounds),
        (4, "query scaling", scaling),
        (5, "contraction survival", survival),
        (6, "subsample concentration", concentration),
        (7, "near-min cut counting", cut_counting),
        (8, "cover size", cover),
        (9, "strength sandwich", sandwich),
        (10, "sparsifier quality", sparsifier_quality),
        (11, "flow cover weight", flow_cover),
    ];
    let mut failed = Vec::new();
    for (id, name, check) in checks {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        let start = Instant::now();
        let r = check();
        let verdict = if r.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2} {name:<26} {verdict}  {} [{:.1}s]", r.detail, start.elapsed().as_secs_f64());
        if !r.pass {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("all criteria passed");
    } else {
        println!("failed criteria: {failed:?}");
        if std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
            std::process::exit(1);
        }
    }
}

fn instance_rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed_0000 + salt)
}

/// 200 instances: random graphs over a range of sizes and densities, then
/// barbells, cycles and planted cuts.
fn global_instances() -> Vec<SimpleGraph> {
    let mut r = instance_rng(1);
    let mut out = Vec::new();
    for seed in 0..140 {
        let n = r.random_range(10..=40);
        let p = r.random_range(0.2..=0.7);
        out.push(generate::gnp(n, p, seed).unwrap());
    }
    for clique in 3..=10 {
        out.push(generate::barbell(clique).unwrap());
    }
    for i in 0..12 {
        out.push(generate::cycle(5 + 3 * i).unwrap());
    }
    for seed in 0..40 {
        let n = r.random_range(10..=40);
        let k = r.random_range(1..=3);
        out.push(generate::planted_cut(n, k, 0.6, 1000 + seed).unwrap().0);
    }
    out
}

fn global_exactness() -> Outcome {
    let start = Instant::now();
    let instances = global_instances();
    let config = GlobalConfig { constants: Constants::scaled(EXACT_SCALE), ..Default::default() };
    let mut single = [0usize; 2];
    let mut best_of_three = [0usize; 2];
    let mut spent = [0.0f64; 2];
    for (i, g) in instances.iter().enumerate() {
        let truth = reference::deterministic_min_cut(&g.to_weighted()).unwrap().value;
        for (a, algo) in [global::global_min_cut_v1, global::global_min_cut_v2].into_iter().enumerate() {
            let stage = if a == 0 { stage::GLOBAL_V1 } else { stage::GLOBAL_V2 };
            let mut values = Vec::new();
            let clock = Instant::now();
            for rep in 0..3u64 {
                let mut o = CutOracle::new(g);
                let r = algo(&mut o, &config, &mut rng::stream(i as u64 * 3 + rep, stage)).unwrap();
                assert_eq!(g.cut_value(&r.cut.side).unwrap(), r.cut.value, "reported value must match its side");
                values.push(r.cut.value);
            }
            spent[a] += clock.elapsed().as_secs_f64();
            single[a] += usize::from(values[0] == truth);
            best_of_three[a] += usize::from(values.iter().min() == Some(&truth));
        }
    }
    let total = instances.len();
    let secs = start.elapsed().as_secs_f64();
    let pass = single.iter().all(|&s| s as f64 >= EXACT_RATE * total as f64) && best_of_three.iter().all(|&b| b == total) && secs < GLOBAL_TIME_LIMIT_S;
    outcome(
        pass,
        format!(
            "v1 {}/{total} single, {}/{total} best of 3; v2 {}/{total} single, {}/{total} best of 3 (need >= {EXACT_RATE}, all; scale {EXACT_SCALE}; v1 {:.0}s + v2 {:.0}s, total {secs:.0}s < {GLOBAL_TIME_LIMIT_S}s)",
            single[0], best_of_three[0], single[1], best_of_three[1], spent[0], spent[1]
        ),
    )
}

/// Minimum s-t cut by brute force over sides containing `s`.
fn st_truth(g: &SimpleGraph, s: usize, t: usize) -> u64 {
    let w = g.to_weighted();
    reference::exact_st_min_cut(&w, s, t).unwrap().value.to_integer() as u64
}

fn st_exactness() -> Outcome {
    let start = Instant::now();
    let mut r = instance_rng(2);
    let mut instances: Vec<(SimpleGraph, usize, usize)> = Vec::new();
    for seed in 0..150 {
        let n = r.random_range(10..=40);
        let p = r.random_range(0.2..=0.7);
        let g = generate::gnp(n, p, 5000 + seed).unwrap();
        let s = r.random_range(0..n);
        let t = (s + r.random_range(1..n)) % n;
        instances.push((g, s, t));
    }
    for seed in 0..50 {
        let n = r.random_range(10..=40);
        let k = r.random_range(1..=4);
        let (g, side) = generate::planted_cut(n, k, 0.6, 6000 + seed).unwrap();
        let inside: Vec<usize> = side.iter().collect();
        let outside: Vec<usize> = side.complement(n).iter().collect();
        let s = inside[r.random_range(0..inside.len())];
        let t = outside[r.random_range(0..outside.len())];
        instances.push((g, s, t));
    }
    let config = StConfig { constants: Constants::scaled(EXACT_SCALE), ..Default::default() };
    let mut correct = 0;
    let mut certified = 0;
    for (i, (g, s, t)) in instances.iter().enumerate() {
        let truth = st_truth(g, *s, *t);
        let mut o = CutOracle::new(g);
        let res = st::st_min_cut(&mut o, *s, *t, &config, &mut rng::stream(i as u64, stage::ST)).unwrap();
        let side_ok = res.cut.side.contains(*s) && !res.cut.side.contains(*t);
        let value_ok = g.cut_value(&res.cut.side).unwrap() == res.cut.value;
        correct += usize::from(side_ok && value_ok && res.cut.value == Rational::from_integer(truth as i64));
        certified += usize::from(res.flow_certified);
    }
    let total = instances.len();
    let secs = start.elapsed().as_secs_f64();
    let pass = correct as f64 >= EXACT_RATE * total as f64 && secs < ST_TIME_LIMIT_S;
    outcome(pass, format!("{correct}/{total} exact, {certified}/{total} sparsifier flows certified (need >= {EXACT_RATE}; scale {EXACT_SCALE}; {secs:.0}s < {ST_TIME_LIMIT_S}s)"))
}

fn ceil_log2(n: usize) -> u64 {
    discovery::ceil_log2(n) as u64
}

fn micro_bounds() -> Outcome {
    let mut r = instance_rng(3);
    let mut edge_tests = 0;
    let mut edge_bad = 0;
    let mut fn_calls = 0;
    let mut fn_worst = 0.0f64;
    let mut fn_bad = 0;
    let mut learn_runs = 0;
    let mut learn_worst = 0.0f64;
    let mut learn_bad = 0;
    // From n = 3 on: with two vertices c({u}) and c({v}) are one complement
    // pair and c({u, v}) = c(V) is free, so the memo sees a single query.
    for seed in 0..60 {
        let n = r.random_range(3..=60);
        let p = r.random_range(0.0..=1.0);
        let g = generate::gnp(n, p, 7000 + seed).unwrap();
        for _ in 0..10 {
            let u = r.random_range(0..n);
            let v = (u + r.random_range(1..n.max(2))) % n;
            if u == v {
                continue;
            }
            let mut o = CutOracle::new(&g);
            let present = o.has_edge(u, v).unwrap();
            edge_tests += 1;
            edge_bad += usize::from(o.ledger().distinct_queries() != 3 || present != g.has_edge(u, v));
        }
        for _ in 0..10 {
            let v = r.random_range(0..n);
            let candidates = VertexSet::new((0..n).filter(|&x| x != v && r.random_bool(0.7)));
            let exclude = VertexSet::new(candidates.iter().filter(|_| r.random_bool(0.2)));
            let mut o = CutOracle::new(&g);
            let found = discovery::find_neighbor(&mut o, v, &candidates, &exclude).unwrap();
            let used = o.ledger().distinct_queries();
            let bound = 3 * ceil_log2(n) + 3;
            fn_calls += 1;
            fn_worst = fn_worst.max(used as f64 / bound as f64);
            let live: Vec<usize> = candidates.iter().filter(|&x| !exclude.contains(x)).collect();
            let answer_ok = match found {
                Some(x) => live.contains(&x) && g.has_edge(v, x),
                None => live.iter().all(|&x| !g.has_edge(v, x)),
            };
            fn_bad += usize::from(used > bound || !answer_ok);
        }
        let mut o = CutOracle::new(&g);
        let learned = match discovery::learn_graph(&mut o, None).unwrap() {
            Learned::Complete(h) => h,
            Learned::Aborted { .. } => unreachable!("no limit"),
        };
        let used = o.ledger().distinct_queries();
        let bound = 4 * (n as u64 + g.m() as u64 * ceil_log2(n));
        learn_runs += 1;
        learn_worst = learn_worst.max(used as f64 / bound as f64);
        learn_bad += usize::from(used > bound || learned != g);
    }
    let pass = edge_bad == 0 && fn_bad == 0 && learn_bad == 0;
    outcome(
        pass,
        format!(
            "edge test: {edge_bad}/{edge_tests} off 3 queries (n >= 3); neighbor search: {fn_bad}/{fn_calls} over 3ceil(log2 n)+3 (worst {fn_worst:.2} of bound); learning: {learn_bad}/{learn_runs} over 4(n+m ceil(log2 n)) (worst {learn_worst:.2} of bound)"
        ),
    )
}

fn scaling() -> Outcome {
    let mut rows = Vec::new();
    let mut series: [Vec<(f64, f64)>; 4] = Default::default();
    for &n in &SCALING_SIZES {
        let g = generate::gnp(n, SCALING_DENSITY, 8000 + n as u64).unwrap();
        let mut o = CutOracle::new(&g);
        assert!(matches!(discovery::learn_graph(&mut o, None).unwrap(), Learned::Complete(_)));
        let learn = o.ledger().distinct_queries();
        let v1_config = GlobalConfig { constants: Constants::scaled(V1_SCALE), ..Default::default() };
        let mut o = CutOracle::new(&g);
        let v1 = global::global_min_cut_v1(&mut o, &v1_config, &mut rng::stream(n as u64, stage::GLOBAL_V1)).unwrap().queries.distinct_queries;
        let v2_config = GlobalConfig { constants: Constants::scaled(V2_SCALE), ..Default::default() };
        let mut o = CutOracle::new(&g);
        let v2 = global::global_min_cut_v2(&mut o, &v2_config, &mut rng::stream(n as u64, stage::GLOBAL_V2)).unwrap().queries.distinct_queries;
        let st_config = StConfig { constants: Constants::scaled(ST_SCALE), ..Default::default() };
        let mut o = CutOracle::new(&g);
        let st = st::st_min_cut(&mut o, 0, n - 1, &st_config, &mut rng::stream(n as u64, stage::ST)).unwrap().queries.distinct_queries;
        for (k, q) in [learn, v1, v2, st].into_iter().enumerate() {
            series[k].push((n as f64, q as f64));
        }
        rows.push(format!("n={n}: learn {learn}, v1 {v1}, v2 {v2}, st {st}"));
    }
    let e: Vec<f64> = series.iter().map(|s| fitted_exponent(s)).collect();
    let pass = e[1] <= GLOBAL_EXPONENT_MAX && e[2] <= GLOBAL_EXPONENT_MAX && e[3] <= ST_EXPONENT_MAX && e[1..].iter().all(|&x| x < 2.0);
    outcome(
        pass,
        format!(
            "exponents: v1 {:.3}, v2 {:.3} (need <= {GLOBAL_EXPONENT_MAX}), st {:.3} (need <= {ST_EXPONENT_MAX}), learn-all baseline {:.3}; gnp p={SCALING_DENSITY}, scales v1 {V1_SCALE} v2 {V2_SCALE} st {ST_SCALE}; {}",
            e[1],
            e[2],
            e[3],
            e[0],
            rows.join("; ")
        ),
    )
}

fn survival() -> Outcome {
    let (g, side) = generate::planted_cut(40, 2, 0.6, 9000).unwrap();
    let crossing: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| side.contains(u) != side.contains(v)).collect();
    let c = reference::deterministic_min_cut(&g.to_weighted()).unwrap().value.to_integer() as u64;
    assert_eq!(c, crossing.len() as u64, "the planted cut must be a minimum cut");
    let trials = 1000;
    let mut survived = 0;
    for seed in 0..trials {
        let mut o = CutOracle::new(&g);
        let state = contraction::karger_until(&mut o, c * g.n() as u64, &mut rng::from_seed(seed)).unwrap();
        survived += usize::from(state.separates_all(crossing.iter().copied()));
    }
    let rate = survived as f64 / trials as f64;
    outcome(rate >= SURVIVAL_MIN, format!("planted 2-edge cut survived {survived}/{trials} = {rate:.3} (need >= {SURVIVAL_MIN})"))
}

fn concentration() -> Outcome {
    let epsilon = 0.25;
    let constants = Constants::default();
    let mut lines = Vec::new();
    let mut pass = true;
    for (n, k, seed) in [(12usize, 3usize, 1u64), (14, 4, 2)] {
        let (g, _) = generate::planted_cut(n, k, 0.8, 9100 + seed).unwrap();
        let c = min_cut_value(&g);
        let p = constants.concentration_probability(n, epsilon, c as f64);
        let cuts = all_cuts(&g);
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let mut good = 0;
        for trial in 0..TRIALS as u64 {
            let mut r = rng::from_seed(trial * 31 + seed);
            let kept: Vec<bool> = edges.iter().map(|_| r.random_bool(p)).collect();
            let ok = cuts.iter().all(|(value, side)| {
                let sampled = edges.iter().zip(&kept).filter(|(&(u, v), &keep)| keep && side[u] != side[v]).count() as f64;
                let expect = p * *value as f64;
                (sampled - expect).abs() <= epsilon * expect
            });
            good += usize::from(ok);
        }
        pass &= good >= GOOD_TRIALS_MIN;
        lines.push(format!("n={n} c={c} p={p:.3}: {good}/{TRIALS}"));
    }
    outcome(pass, format!("{} (need >= {GOOD_TRIALS_MIN}; p from 40 ln n/(eps^2 c), eps {epsilon})", lines.join(", ")))
}

/// Violations of `#{cuts <= l c} <= (2n)^(2l)` over every threshold `l`.
fn counting_violations(g: &SimpleGraph) -> usize {
    let n = g.n() as f64;
    let mut values: Vec<u64> = all_cuts(g).into_iter().map(|c| c.0).collect();
    values.sort_unstable();
    let c = values[0] as f64;
    let mut bad = 0;
    for (i, &v) in values.iter().enumerate() {
        if values.get(i + 1) == Some(&v) {
            continue;
        }
        let l = v as f64 / c;
        if (i + 1) as f64 > (2.0 * n).powf(2.0 * l) {
            bad += 1;
        }
    }
    bad
}

fn cut_counting() -> Outcome {
    let mut graphs = 0usize;
    let mut bad = 0usize;
    for n in 2..=7usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for mask in 0u64..(1 << pairs.len()) {
            let g = SimpleGraph::new(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e)).unwrap();
            if !is_connected(&g) {
                continue;
            }
            graphs += 1;
            bad += counting_violations(&g);
        }
    }
    let mut r = instance_rng(7);
    let mut random = 0;
    while random < 500 {
        let n = r.random_range(2..=8);
        let g = generate::gnp(n, r.random_range(0.2..=1.0), r.random()).unwrap();
        if is_connected(&g) {
            random += 1;
            bad += counting_violations(&g);
        }
    }
    outcome(bad == 0, format!("{bad} violations over {graphs} connected graphs with n <= 7 and {random} random graphs with n <= 8"))
}

fn cover() -> Outcome {
    let epsilon = 0.25;
    let mut r = instance_rng(8);
    let mut worst_by_n = Vec::new();
    for n in 4..=14usize {
        let mut worst = 0.0f64;
        for i in 0..20 {
            let g = match i % 4 {
                0 => generate::gnp(n, r.random_range(0.3..=0.9), r.random()).unwrap(),
                1 => generate::planted_cut(n, r.random_range(1..=3), 0.7, r.random()).unwrap().0,
                2 => generate::cycle(n).unwrap(),
                _ => generate::clique_plus_path((n / 2).max(2), n - (n / 2).max(2)).unwrap(),
            };
            let covered = global::cover_edge_count(&g, epsilon).unwrap();
            worst = worst.max(covered as f64 / n as f64);
        }
        worst_by_n.push((n, worst));
    }
    let overall = worst_by_n.iter().map(|w| w.1).fold(0.0, f64::max);
    // Growth check: the worst ratio in the upper half of sizes may not
    // exceed the lower half's by more than the constant allows.
    let half = worst_by_n.len() / 2;
    let low = worst_by_n[..half].iter().map(|w| w.1).fold(0.0, f64::max);
    let high = worst_by_n[half..].iter().map(|w| w.1).fold(0.0, f64::max);
    let pass = overall <= COVER_CONSTANT_MAX && high <= low.max(1.0) * 2.0;
    let per_n: Vec<String> = worst_by_n.iter().map(|(n, w)| format!("{n}:{w:.2}")).collect();
    outcome(pass, format!("C = {overall:.2} (need <= {COVER_CONSTANT_MAX}); worst cover/n by n {}", per_n.join(" ")))
}

fn sandwich() -> Outcome {
    let g = generate::gnp(14, 0.5, 8).unwrap();
    let exact = reference::exact_strengths(&g);
    let constants = Constants::scaled(STRENGTH_SCALE);
    let mut good = 0;
    let mut below_one = 0;
    for seed in 0..TRIALS as u64 {
        let mut o = CutOracle::new(&g);
        let run = sparsify::approximate_strengths(&mut o, SPARSIFIER_EPSILON, &constants, &mut rng::stream(seed, stage::SPARSIFY)).unwrap();
        below_one += usize::from(run.iterations.iter().any(|it| it.q < 1.0));
        let ok = exact.iter().all(|(&(u, v), &k)| run.strengths.get(u, v).is_some_and(|a| a * Rational::from_integer(4) >= k && a <= k));
        good += usize::from(ok);
    }
    let mut r = instance_rng(9);
    let mut checked = 0;
    let mut mismatched = 0;
    for _ in 0..200 {
        let n = r.random_range(2..=8);
        let g = generate::gnp(n, r.random_range(0.2..=0.9), r.random()).unwrap();
        checked += 1;
        mismatched += usize::from(reference::exact_strengths(&g) != reference::definitional_strengths(&g).unwrap());
    }
    let pass = good >= GOOD_TRIALS_MIN && mismatched == 0;
    outcome(
        pass,
        format!("{good}/{TRIALS} trials with every edge in [k/4, k] (need >= {GOOD_TRIALS_MIN}; scale {STRENGTH_SCALE}, {below_one} trials sampled below rate 1); exact vs definitional strengths: {mismatched}/{checked} mismatches")
    )
}

fn sparsifier_quality() -> Outcome {
    let g = generate::gnp(14, 0.9, 6).unwrap();
    let cuts = all_cuts(&g);
    let constants = Constants::scaled(SPARSIFIER_SCALE);
    let n = g.n() as f64;
    let size_bound = SPARSIFIER_SIZE_CONSTANT * n * n.ln() / (SPARSIFIER_EPSILON * SPARSIFIER_EPSILON);
    let mut good = 0;
    let mut largest = 0usize;
    let mut reweighted = 0;
    for seed in 0..TRIALS as u64 {
        let mut o = CutOracle::new(&g);
        let h = sparsify::build_sparsifier(&mut o, SPARSIFIER_EPSILON, &constants, &mut rng::stream(seed, stage::SPARSIFY)).unwrap();
        largest = largest.max(h.edge_count());
        reweighted += usize::from(h.max_weight() > Rational::from_integer(1));
        let ok = cuts.iter().all(|(value, side)| {
            let hv = h.cut_value(&side_set(side)).unwrap().to_f64().unwrap();
            let v = *value as f64;
            (hv - v).abs() <= SPARSIFIER_EPSILON * v
        });
        good += usize::from(ok);
    }
    let pass = good >= GOOD_TRIALS_MIN && largest as f64 <= size_bound;
    outcome(
        pass,
        format!(
            "{good}/{TRIALS} trials with all cuts within 1 +- {SPARSIFIER_EPSILON} (need >= {GOOD_TRIALS_MIN}; scale {SPARSIFIER_SCALE}, {reweighted} trials reweighted); max |E(H)| {largest} <= {SPARSIFIER_SIZE_CONSTANT} n ln n / eps^2 = {size_bound:.0} (m = {})",
            g.m()
        ),
    )
}

/// Random layered graph: `s`, `layers` layers of `width` vertices, `t`;
/// consecutive layers are joined at random with integer capacities up to `w`.
fn layered(layers: usize, width: usize, density: f64, w: i64, r: &mut ChaCha8Rng) -> (WeightedGraph, usize, usize) {
    let n = layers * width + 2;
    let (s, t) = (0, n - 1);
    let id = |layer: usize, i: usize| 1 + layer * width + i;
    let mut edges = Vec::new();
    for i in 0..width {
        edges.push((s, id(0, i), Rational::from_integer(r.random_range(1..=w))));
        edges.push((id(layers - 1, i), t, Rational::from_integer(r.random_range(1..=w))));
    }
    for layer in 0..layers - 1 {
        for i in 0..width {
            for j in 0..width {
                if r.random_bool(density) {
                    edges.push((id(layer, i), id(layer + 1, j), Rational::from_integer(r.random_range(1..=w))));
                }
            }
        }
    }
    (WeightedGraph::from_edges(n, edges).unwrap(), s, t)
}

fn flow_cover() -> Outcome {
    let mut r = instance_rng(11);
    let mut worst = 0.0f64;
    let mut instances = 0;
    let mut invalid = 0;
    for _ in 0..300 {
        let layers = r.random_range(2..=12);
        let width = r.random_range(1..=58 / layers);
        let w = if r.random_bool(0.5) { 1 } else { r.random_range(2..=5) };
        let (h, s, t) = layered(layers, width, r.random_range(0.2..=0.9), w, &mut r);
        let f = flow::max_flow(&h, s, t).unwrap();
        invalid += usize::from(f.validate().is_err());
        let value = f.value.to_f64().unwrap();
        if value == 0.0 {
            continue;
        }
        instances += 1;
        let big_w = h.max_weight().to_f64().unwrap();
        let cover = flow::flow_cover_weight(&f).to_f64().unwrap();
        worst = worst.max(cover / (h.n() as f64 * (value * big_w).sqrt()));
    }
    let pass = worst <= FLOW_COVER_MAX && invalid == 0;
    outcome(pass, format!("max cover / (n sqrt(fW)) = {worst:.3} over {instances} layered instances with n <= 60 (need <= {FLOW_COVER_MAX}); {invalid} invalid flows"))
}

#[allow(dead_code)]
fn unused(g: &SimpleGraph, side: &[bool]) -> u64 {
    cut_by_edges(g, side)
}
