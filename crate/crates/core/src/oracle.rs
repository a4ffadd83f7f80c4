//! Brute-force references for the analytical code.
//!
//! Everything here works from explicit path enumeration (or plain sampling)
//! and shares nothing with the analyses beyond the graph types, so agreement
//! between the two is meaningful. Graphs above a size guard are refused; set
//! `BIASGRAPH_MAX_BRUTE` to raise it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::agent::TieRule;
use crate::bne::{self, BiasDistribution};
use crate::graph::{validate, FanSpec, PathRecord, RawEdge, RawGraph, TaskGraph, VertexId};
use crate::pure_eq;
use crate::rational::{half, int, ratio, render, Rational};

pub const DEFAULT_MAX_BRUTE: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {vertices} vertices, brute force is limited to {limit} (raise BIASGRAPH_MAX_BRUTE)")]
    TooLarge { vertices: usize, limit: usize },
    #[error("{0} is not an edge")]
    NotAnEdge(String),
}

/// Vertex limit for enumeration.
pub fn brute_limit() -> usize {
    std::env::var("BIASGRAPH_MAX_BRUTE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_BRUTE)
}

fn guard(graph: &TaskGraph) -> Result<(), OracleError> {
    let limit = brute_limit();
    if graph.vertex_count() > limit {
        return Err(OracleError::TooLarge {
            vertices: graph.vertex_count(),
            limit,
        });
    }
    Ok(())
}

fn paths_from(graph: &TaskGraph, start: VertexId) -> Vec<PathRecord> {
    fn dfs(graph: &TaskGraph, walk: &mut Vec<VertexId>, out: &mut Vec<PathRecord>) {
        let at = *walk.last().unwrap();
        if at == graph.sink() {
            out.push(graph.path(walk.clone()).expect("walk follows edges"));
            return;
        }
        for e in graph.out_edges(at) {
            walk.push(e.to);
            dfs(graph, walk, out);
            walk.pop();
        }
    }
    let mut out = Vec::new();
    dfs(graph, &mut vec![start], &mut out);
    out
}

/// Every source-to-sink path, ordered lexicographically by vertex names.
pub fn enumerate_paths(graph: &TaskGraph) -> Result<Vec<PathRecord>, OracleError> {
    guard(graph)?;
    let mut paths = paths_from(graph, graph.source());
    paths.sort_by_cached_key(|p| graph.path_names(p));
    Ok(paths)
}

/// Prize for finishing in `len` edges against an opponent taking `opponent`.
fn prize(len: usize, opponent: usize, reward: &Rational, tie_rule: TieRule) -> Rational {
    use std::cmp::Ordering::*;
    match len.cmp(&opponent) {
        Less => reward.clone(),
        Equal => match tie_rule {
            TieRule::Split => reward * half(),
            TieRule::BothFull => reward.clone(),
            TieRule::Nothing => Rational::zero(),
        },
        Greater => Rational::zero(),
    }
}

/// The race as the brute-force agent sees it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Race {
    pub opponent_length: usize,
    pub reward: Rational,
    pub tie_rule: TieRule,
}

/// For each vertex, the cheapest continuation to the sink of each length,
/// found by enumerating every continuation.
#[derive(Debug, Clone)]
pub struct Continuations {
    by_vertex: Vec<BTreeMap<usize, Rational>>,
}

impl Continuations {
    pub fn new(graph: &TaskGraph) -> Result<Self, OracleError> {
        guard(graph)?;
        let by_vertex = (0..graph.vertex_count())
            .map(|v| {
                let mut best: BTreeMap<usize, Rational> = BTreeMap::new();
                for p in paths_from(graph, v) {
                    best.entry(p.len())
                        .and_modify(|c| {
                            if p.cost() < c {
                                *c = p.cost().clone()
                            }
                        })
                        .or_insert_with(|| p.cost().clone());
                }
                best
            })
            .collect();
        Ok(Continuations { by_vertex })
    }

    /// `min over continuations P from v of c(P) − R`, entering `v` as the
    /// walk's edge number `steps_before + 1`.
    pub fn value(&self, v: VertexId, steps_before: usize, race: Option<&Race>) -> Rational {
        self.by_vertex[v]
            .iter()
            .map(|(len, cost)| match race {
                None => cost.clone(),
                Some(race) => cost - prize(steps_before + 1 + len, race.opponent_length, &race.reward, race.tie_rule),
            })
            .min()
            .expect("every vertex reaches the sink")
    }
}

/// Perceived cost of stepping from the end of `prefix` to `v`:
/// `b·c(u, v) + min over continuations P of c(P) − R(prefix + (u,v) + P)`.
pub fn brute_perceived_min(
    graph: &TaskGraph,
    prefix: &PathRecord,
    v: VertexId,
    bias: &Rational,
    race: Option<&Race>,
) -> Result<Rational, OracleError> {
    let u = prefix.last();
    let edge = graph
        .edge_cost(u, v)
        .ok_or_else(|| OracleError::NotAnEdge(format!("({}, {})", graph.name(u), graph.name(v))))?;
    let table = Continuations::new(graph)?;
    Ok(bias * edge + table.value(v, prefix.len(), race))
}

/// Symmetric-equilibrium test from first principles: at every vertex of `q`
/// the next vertex of `q` must be among the agent's cheapest perceived options.
pub fn brute_ne(table: &Continuations, graph: &TaskGraph, q: &PathRecord, reward: &Rational, bias: &Rational) -> bool {
    let race = Race {
        opponent_length: q.len(),
        reward: reward.clone(),
        tie_rule: TieRule::Split,
    };
    q.vertices().windows(2).enumerate().all(|(j, w)| {
        let (u, next) = (w[0], w[1]);
        let score = |v: VertexId| bias * graph.edge_cost(u, v).unwrap() + table.value(v, j, Some(&race));
        let stay = score(next);
        graph.out_edges(u).iter().all(|e| score(e.to) >= stay)
    })
}

/// Candidate rewards at which [`brute_ne`] holds.
pub fn reward_sweep_ne(
    graph: &TaskGraph,
    q: &PathRecord,
    bias: &Rational,
    candidates: &[Rational],
) -> Result<Vec<Rational>, OracleError> {
    let table = Continuations::new(graph)?;
    Ok(candidates
        .iter()
        .filter(|r| brute_ne(&table, graph, q, r, bias))
        .cloned()
        .collect())
}

/// Probe rewards around a set of breakpoints: the points themselves, their
/// midpoints, `±10⁻⁶` perturbations and one point past the last, all `>= 0`.
pub fn sweep_candidates(breakpoints: &[Rational]) -> Vec<Rational> {
    let eps = ratio(1, 1_000_000);
    let mut points: Vec<Rational> = breakpoints.to_vec();
    points.push(Rational::zero());
    points.sort();
    points.dedup();
    let mut out = Vec::with_capacity(points.len() * 4 + 1);
    for (i, x) in points.iter().enumerate() {
        out.push(x.clone());
        out.push(x + &eps);
        out.push(x - &eps);
        if let Some(next) = points.get(i + 1) {
            out.push((x + next) * half());
        }
    }
    out.push(points.last().unwrap() + Rational::one());
    out.retain(|r| *r >= Rational::zero());
    out.sort();
    out.dedup();
    out
}

/// Pure equilibria of the two-player race restricted to the non-dominated
/// paths, each path given as `(length, cost)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteEquilibria {
    pub ladder: Vec<(usize, Rational)>,
    pub symmetric: Vec<(usize, Rational)>,
    /// `(quicker, slower)` pairs.
    pub asymmetric: Vec<((usize, Rational), (usize, Rational))>,
}

/// Non-dominated paths by pairwise comparison over every enumerated path,
/// then the exhaustive best-response table on them.
pub fn brute_ladder_equilibria(graph: &TaskGraph, reward: &Rational, tie_rule: TieRule) -> Result<BruteEquilibria, OracleError> {
    let all: Vec<(usize, Rational)> = enumerate_paths(graph)?.iter().map(|p| (p.len(), p.cost().clone())).collect();
    let cheapest = all.iter().map(|(_, c)| c).min().unwrap().clone();
    let mut ladder: Vec<(usize, Rational)> = all
        .iter()
        .filter(|(len, cost)| {
            let beaten = all.iter().any(|(l, c)| (l, c) != (len, cost) && l <= len && c <= cost);
            let losing_is_better = *cost != cheapest && *cost >= &cheapest + reward;
            !beaten && !losing_is_better
        })
        .cloned()
        .collect();
    ladder.sort();
    ladder.dedup();
    let payoff = |i: usize, j: usize| prize(ladder[i].0, ladder[j].0, reward, tie_rule) - &ladder[i].1;
    let replies: Vec<Rational> = (0..ladder.len())
        .map(|j| (0..ladder.len()).map(|i| payoff(i, j)).max().unwrap())
        .collect();
    let mut symmetric = Vec::new();
    let mut asymmetric = Vec::new();
    for i in 0..ladder.len() {
        for j in i..ladder.len() {
            if payoff(i, j) != replies[j] || payoff(j, i) != replies[i] {
                continue;
            }
            if i == j {
                symmetric.push(ladder[i].clone());
            } else {
                asymmetric.push((ladder[i].clone(), ladder[j].clone()));
            }
        }
    }
    Ok(BruteEquilibria { ladder, symmetric, asymmetric })
}

/// Empirical distribution of fan paths taken by sampled agents.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathFrequencies {
    pub counts: Vec<u64>,
    pub samples: u64,
}

impl PathFrequencies {
    pub fn frequency(&self, i: usize) -> f64 {
        self.counts[i] as f64 / self.samples as f64
    }

    /// Binomial standard error of [`Self::frequency`].
    pub fn std_error(&self, i: usize) -> f64 {
        let f = self.frequency(i);
        (f * (1.0 - f) / self.samples as f64).sqrt()
    }
}

/// Naive walk on the fan with expected prizes against a mixed opponent,
/// comparing every remaining exit. Exits on ties.
fn fan_walk(n: usize, c: f64, bias: f64, reward: f64, opponent: &[f64]) -> usize {
    // opponent length for P_j is j + 1
    let expected_prize: Vec<f64> = (0..=n)
        .map(|i| {
            opponent
                .iter()
                .enumerate()
                .map(|(j, q)| {
                    q * match i.cmp(&j) {
                        std::cmp::Ordering::Less => reward,
                        std::cmp::Ordering::Equal => reward / 2.0,
                        std::cmp::Ordering::Greater => 0.0,
                    }
                })
                .sum()
        })
        .collect();
    let exit_cost: Vec<f64> = (0..=n).map(|i| c.powi(i as i32)).collect();
    for i in 0..n {
        let exit = bias * exit_cost[i] - expected_prize[i];
        let wait = (i + 1..=n)
            .map(|j| exit_cost[j] - expected_prize[j])
            .fold(f64::INFINITY, f64::min);
        if exit <= wait {
            return i;
        }
    }
    n
}

/// Samples biases from `dist` and lets each agent play against the cutoff
/// strategy "direct path iff bias <= cutoff". Deterministic per seed.
pub fn monte_carlo_fan_bne(
    spec: &FanSpec,
    dist: &BiasDistribution,
    reward: f64,
    cutoff: f64,
    samples: u64,
    seed: u64,
) -> PathFrequencies {
    let n = spec.n();
    let c = spec.c_f64();
    let p = dist.cdf(cutoff);
    let mut opponent = vec![0.0; n + 1];
    opponent[0] = p;
    opponent[n] += 1.0 - p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = vec![0u64; n + 1];
    for _ in 0..samples {
        let bias = dist.quantile(rng.gen::<f64>());
        counts[fan_walk(n, c, bias, reward, &opponent)] += 1;
    }
    PathFrequencies { counts, samples }
}

/// Sample mean and standard error of `1/(N+1)` with `N ~ Bin(m, p)`.
pub fn monte_carlo_inverse_share(p: f64, m: u32, samples: u64, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let binomial = Binomial::new(m as u64, p).expect("p in [0, 1]");
    let (mut sum, mut sq) = (0.0, 0.0);
    for _ in 0..samples {
        let x = 1.0 / (binomial.sample(&mut rng) as f64 + 1.0);
        sum += x;
        sq += x * x;
    }
    let mean = sum / samples as f64;
    let var = (sq / samples as f64 - mean * mean).max(0.0);
    (mean, (var / samples as f64).sqrt())
}

const COST_GRID: [(i64, i64); 6] = [(0, 1), (1, 2), (1, 1), (2, 1), (5, 1), (8, 1)];

fn grid_cost(rng: &mut impl Rng) -> String {
    let (a, b) = COST_GRID[rng.gen_range(0..COST_GRID.len())];
    render(&ratio(a, b))
}

/// Layered DAG: source, 1–3 inner layers of width ≤ 3, sink, at most
/// `max_vertices` vertices. Each vertex has an edge into the next layer and
/// one from the previous, plus random layer-skipping edges.
pub fn random_layered_dag(rng: &mut impl Rng, max_vertices: usize) -> TaskGraph {
    assert!(max_vertices >= 3, "need room for one inner vertex");
    let inner_layers = rng.gen_range(1..=3);
    let mut layers: Vec<Vec<String>> = vec![vec!["s".into()]];
    let mut budget = max_vertices - 2;
    for l in 0..inner_layers {
        if budget == 0 {
            break;
        }
        let width = rng.gen_range(1..=3usize.min(budget));
        budget -= width;
        layers.push((0..width).map(|i| format!("a{l}{i}")).collect());
    }
    layers.push(vec!["t".into()]);

    let mut edges: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut add = |rng: &mut _, from: &String, to: &String| {
        edges.entry((from.clone(), to.clone())).or_insert_with(|| grid_cost(rng));
    };
    for l in 0..layers.len() - 1 {
        for from in &layers[l] {
            let to = layers[l + 1].choose(rng).unwrap().clone();
            add(rng, from, &to);
        }
        for to in &layers[l + 1] {
            let from = layers[l].choose(rng).unwrap().clone();
            add(rng, &from, to);
        }
        for from in &layers[l] {
            for later in &layers[l + 1..] {
                for to in later {
                    if rng.gen_bool(0.3) {
                        add(rng, from, to);
                    }
                }
            }
        }
    }
    let raw = RawGraph {
        vertices: layers.concat(),
        edges: edges
            .into_iter()
            .map(|((from, to), cost)| RawEdge { from, to, cost })
            .collect(),
        source: "s".into(),
        sink: "t".into(),
    };
    validate(&raw).expect("layered construction is a connected DAG").graph
}

/// Whether a path is both the unique quickest and a cheapest one, by enumeration.
pub fn brute_dominant_path(graph: &TaskGraph) -> Result<Option<PathRecord>, OracleError> {
    let paths = enumerate_paths(graph)?;
    let shortest = paths.iter().map(PathRecord::len).min().unwrap();
    let cheapest = paths.iter().map(PathRecord::cost).min().unwrap();
    let quickest: Vec<&PathRecord> = paths.iter().filter(|p| p.len() == shortest).collect();
    Ok((quickest.len() == 1 && quickest[0].cost() == cheapest).then(|| quickest[0].clone()))
}

/// Rejection-samples [`random_layered_dag`] until it has a dominant path.
pub fn random_dominant_dag(rng: &mut impl Rng, max_vertices: usize) -> (TaskGraph, PathRecord) {
    loop {
        let g = random_layered_dag(rng, max_vertices);
        if let Ok(Some(o)) = brute_dominant_path(&g) {
            return (g, o);
        }
    }
}

/// Free spine `s → u1 → … → u(size−1)` where `s` and every `ui` also exit to
/// `t` at a random integer cost, giving one path per length `1..=size`; plus
/// a random reward in halves.
pub fn random_ladder_graph(rng: &mut impl Rng, max_size: usize) -> (TaskGraph, Rational) {
    let size = rng.gen_range(1..=max_size);
    let spine: Vec<String> = std::iter::once("s".to_string())
        .chain((1..size).map(|i| format!("u{i}")))
        .collect();
    let mut vertices = spine.clone();
    vertices.push("t".into());
    let mut edges = Vec::new();
    for (i, u) in spine.iter().enumerate() {
        edges.push(RawEdge { from: u.clone(), to: "t".into(), cost: rng.gen_range(0..=12).to_string() });
        if let Some(next) = spine.get(i + 1) {
            edges.push(RawEdge { from: u.clone(), to: next.clone(), cost: "0".into() });
        }
    }
    let raw = RawGraph {
        vertices,
        edges,
        source: "s".into(),
        sink: "t".into(),
    };
    let reward = ratio(rng.gen_range(1..=24), 2);
    (validate(&raw).expect("spine ladders are valid").graph, reward)
}

/// Named verification suites. CLI names in parentheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Feasible reward sets against simulation (`alg1`).
    FeasibleSet,
    /// Unbiased ladder classification against brute force (`prop1`).
    Ladder,
    /// Fan equilibrium thresholds (`thm1`).
    FanThresholds,
    /// Dominant-path equilibrium reward (`thm2`).
    DominantPath,
    /// Cutoff solutions against Monte-Carlo best responses (`bne`).
    Bne,
}

impl Suite {
    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "alg1" => Suite::FeasibleSet,
            "prop1" => Suite::Ladder,
            "thm1" => Suite::FanThresholds,
            "thm2" => Suite::DominantPath,
            "bne" => Suite::Bne,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::FeasibleSet => "alg1",
            Suite::Ladder => "prop1",
            Suite::FanThresholds => "thm1",
            Suite::DominantPath => "thm2",
            Suite::Bne => "bne",
        }
    }
}

/// Outcome of a suite; `failures` holds counterexample dumps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub passed: bool,
    pub failures: Vec<Value>,
}

const MAX_DUMPS: usize = 5;

fn graph_dump(graph: &TaskGraph) -> Value {
    serde_json::to_value(graph.to_raw()).expect("graphs serialize")
}

/// Runs `cases` random instances of a suite.
pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut fail = |v: Value| {
        if failures.len() < MAX_DUMPS {
            failures.push(v);
        }
        false
    };
    let mut ok = true;
    for _ in 0..cases {
        ok &= match suite {
            Suite::FeasibleSet => {
                let g = random_layered_dag(&mut rng, 8);
                let mut good = true;
                for q in enumerate_paths(&g).expect("small") {
                    for b in [int(2), int(10)] {
                        if let Some(dump) = feasible_set_mismatch(&g, &q, &b) {
                            good = fail(dump);
                        }
                    }
                }
                good
            }
            Suite::Ladder => {
                let (g, r) = random_ladder_graph(&mut rng, 6);
                match ladder_mismatch(&g, &r, TieRule::Split) {
                    Some(dump) => fail(dump),
                    None => true,
                }
            }
            Suite::FanThresholds => {
                let n = rng.gen_range(1..=6);
                let c = ratio(rng.gen_range(5..=16), 4);
                let bias = &c + ratio(rng.gen_range(1..=12), 4);
                match fan_threshold_mismatch(n, &c, &bias) {
                    Some(dump) => fail(dump),
                    None => true,
                }
            }
            Suite::DominantPath => {
                let (g, o) = random_dominant_dag(&mut rng, 10);
                let bias = [ratio(3, 2), int(2), int(5)].choose(&mut rng).unwrap().clone();
                match dominant_path_mismatch(&g, &o, &bias) {
                    Some(dump) => fail(dump),
                    None => true,
                }
            }
            Suite::Bne => {
                let c = [ratio(3, 2), int(2), ratio(5, 2), int(3)].choose(&mut rng).unwrap().clone();
                let r = rng.gen_range(0.0..40.0);
                match bne_mismatch(&c, r, rng.gen()) {
                    Some(dump) => fail(dump),
                    None => true,
                }
            }
        };
    }
    SuiteReport {
        suite: suite.name(),
        seed,
        cases,
        passed: ok,
        failures,
    }
}

/// Feasible-set membership against the brute sweep; `None` when they agree.
pub fn feasible_set_mismatch(graph: &TaskGraph, q: &PathRecord, bias: &Rational) -> Option<Value> {
    let feasible = pure_eq::feasible_rewards(graph, q, bias).expect("valid inputs");
    let candidates = sweep_candidates(&feasible.breakpoints);
    let table = Continuations::new(graph).expect("small");
    let bad: Vec<String> = candidates
        .iter()
        .filter(|r| feasible.contains(r) != brute_ne(&table, graph, q, r, bias))
        .map(render)
        .collect();
    (!bad.is_empty()).then(|| {
        json!({
            "graph": graph_dump(graph),
            "path": graph.path_names(q),
            "bias": render(bias),
            "feasible": feasible.set.to_string(),
            "mismatched_rewards": bad,
        })
    })
}

/// Ladder classification against the exhaustive table.
pub fn ladder_mismatch(graph: &TaskGraph, reward: &Rational, tie_rule: TieRule) -> Option<Value> {
    let report = pure_eq::classify_unbiased(graph, reward, tie_rule);
    let brute = brute_ladder_equilibria(graph, reward, tie_rule).expect("small");
    let key = |p: &PathRecord| (p.len(), p.cost().clone());
    let rungs = report.ladder.paths();
    let ladder: Vec<_> = rungs.iter().map(key).collect();
    let symmetric: Vec<_> = report.symmetric.iter().map(|&i| key(&rungs[i])).collect();
    let asymmetric: Vec<_> = report.asymmetric.iter().map(|&(i, j)| (key(&rungs[i]), key(&rungs[j]))).collect();
    // with three or more rungs the split rule allows at most two equilibria, all symmetric
    let count_ok = tie_rule != TieRule::Split
        || ladder.len() < 3
        || (brute.symmetric.len() <= 2 && brute.asymmetric.is_empty());
    let agree = ladder == brute.ladder && symmetric == brute.symmetric && asymmetric == brute.asymmetric && count_ok;
    (!agree).then(|| {
        let show = |xs: &[(usize, Rational)]| xs.iter().map(|(l, c)| format!("{l}:{}", render(c))).collect::<Vec<_>>();
        json!({
            "graph": graph_dump(graph),
            "reward": render(reward),
            "tie_rule": format!("{tie_rule:?}"),
            "ladder": show(&ladder),
            "brute_ladder": show(&brute.ladder),
            "symmetric": show(&symmetric),
            "brute_symmetric": show(&brute.symmetric),
            "asymmetric": asymmetric.len(),
            "brute_asymmetric": brute.asymmetric.len(),
        })
    })
}

/// Fan thresholds against brute NE checks just inside and outside them.
pub fn fan_threshold_mismatch(n: usize, c: &Rational, bias: &Rational) -> Option<Value> {
    let spec = FanSpec::new(n, c.clone()).expect("c > 1");
    let g = crate::graph::make_fan(&spec);
    let t = pure_eq::fan_ne_thresholds(&spec, bias).expect("b > c");
    let table = Continuations::new(&g).ok()?;
    let eps = ratio(1, 100);
    let p0 = crate::graph::fan_path(&g, 0).unwrap();
    let pn = crate::graph::fan_path(&g, n).unwrap();
    let mut checks = vec![
        brute_ne(&table, &g, &p0, &t.optimal_min_reward, bias),
        !brute_ne(&table, &g, &p0, &(&t.optimal_min_reward - &eps), bias),
        brute_ne(&table, &g, &pn, &t.longest_max_reward, bias),
        !brute_ne(&table, &g, &pn, &(&t.longest_max_reward + &eps), bias),
    ];
    for i in 1..n {
        let pi = crate::graph::fan_path(&g, i).unwrap();
        for r in [int(0), t.optimal_min_reward.clone(), t.longest_max_reward.clone(), int(1000)] {
            checks.push(!brute_ne(&table, &g, &pi, &r, bias));
        }
    }
    (!checks.iter().all(|&x| x)).then(|| {
        json!({"n": n, "c": render(c), "bias": render(bias), "checks": checks})
    })
}

/// Dominant path sustained at `2b·max edge`.
pub fn dominant_path_mismatch(graph: &TaskGraph, o: &PathRecord, bias: &Rational) -> Option<Value> {
    let (analytic_o, reward) = pure_eq::dominant_path_reward(graph, bias, 2).ok()?;
    let table = Continuations::new(graph).expect("small");
    let ok = &analytic_o == o
        && brute_ne(&table, graph, o, &reward, bias)
        && pure_eq::check_symmetric_ne(graph, o, &reward, bias).ok()?.is_equilibrium;
    (!ok).then(|| {
        json!({
            "graph": graph_dump(graph),
            "dominant": graph.path_names(o),
            "bias": render(bias),
            "reward": render(&reward),
        })
    })
}

/// Equal-revenue solver (support starting at the fan's `c`) against its
/// closed form and a seeded simulation.
pub fn bne_mismatch(c: &Rational, reward: f64, seed: u64) -> Option<Value> {
    let spec = FanSpec::new(5, c.clone()).expect("c > 1");
    let shift = spec.c_f64();
    let dist = BiasDistribution::shifted_equal_revenue(shift).unwrap();
    let solution = match bne::solve_fan_bne(&spec, &dist, reward) {
        Ok(s) => s,
        Err(e) => e.fallback()?.clone(),
    };
    let closed = bne::closed_form_p(&dist, reward);
    let mut ok = (solution.p - closed).abs() <= 1e-9;
    if solution.valid {
        let freq = monte_carlo_fan_bne(&spec, &dist, reward, solution.cutoff, 20_000, seed);
        let interior: u64 = freq.counts[1..spec.n()].iter().sum();
        ok &= interior == 0 && (freq.frequency(0) - solution.p).abs() <= 4.0 * freq.std_error(0).max(1e-9);
    }
    (!ok).then(|| json!({"shift": shift, "reward": reward, "p": solution.p, "closed_form": closed}))
}
