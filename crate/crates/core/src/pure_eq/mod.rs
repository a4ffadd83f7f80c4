//! Pure-strategy equilibria of the two-agent race.
//!
//! Without bias the game reduces to a ladder of non-dominated paths (one
//! cheapest path per length, longer ones strictly cheaper) and equilibria
//! follow from cost gaps along it. With bias the question is whether a
//! naive agent racing an opponent committed to `Q` walks `Q` itself; that
//! is answered by simulation ([`check_symmetric_ne`]) or, for every reward
//! at once, by [`feasible_rewards`].

mod feasible;

pub use feasible::{feasible_rewards, min_reward_for_ne, FeasibleRewards};

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::agent::{AgentConfig, AgentError, Simulator, TieRule, TraversalTrace};
use crate::graph::{cheapest_per_length, FanSpec, PathRecord, TaskGraph, VertexId};
use crate::rational::{half, int, pow, render, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PureEqError {
    #[error("{0} is not a source-to-sink path")]
    InvalidPath(String),
    #[error(transparent)]
    Agent(#[from] AgentError),
    #[error("no reward makes this path an equilibrium")]
    EmptyFeasibleSet,
    #[error("bias {bias} is below the fan growth factor {c}")]
    BiasNotAboveC { bias: String, c: String },
    #[error("graph has no dominant path (a cheapest path that is also the unique quickest)")]
    NoDominantPath,
    #[error("need at least two competing agents, got {0}")]
    TooFewAgents(usize),
}

fn check_inputs(graph: &TaskGraph, q: &PathRecord, bias: &Rational) -> Result<(), PureEqError> {
    if q.first() != graph.source() || q.last() != graph.sink() || q.is_empty() || graph.path(q.vertices().to_vec()).is_err()
    {
        return Err(PureEqError::InvalidPath(graph.describe(q.vertices())));
    }
    if *bias < Rational::one() {
        return Err(AgentError::BiasBelowOne(render(bias)).into());
    }
    Ok(())
}

/// Paths `P1..Pn` with strictly increasing length and strictly decreasing cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondominatedLadder {
    paths: Vec<PathRecord>,
    reward: Rational,
}

impl NondominatedLadder {
    pub fn paths(&self) -> &[PathRecord] {
        &self.paths
    }

    pub fn reward(&self) -> &Rational {
        &self.reward
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn costs(&self) -> Vec<Rational> {
        self.paths.iter().map(|p| p.cost().clone()).collect()
    }
}

/// Removes a path when a weakly shorter path is weakly cheaper, or when
/// losing on the cheapest path beats winning on it (`c(P') >= c_min + r`).
pub fn nondominated_ladder(graph: &TaskGraph, reward: &Rational) -> NondominatedLadder {
    let mut paths: Vec<PathRecord> = Vec::new();
    for path in cheapest_per_length(graph).into_values() {
        if paths.last().is_none_or(|prev| path.cost() < prev.cost()) {
            paths.push(path);
        }
    }
    let cheapest = paths.last().expect("validated graphs have a path").cost().clone();
    let last = paths.len() - 1;
    let mut kept: Vec<PathRecord> = paths
        .into_iter()
        .enumerate()
        .filter(|(i, p)| *i == last || *p.cost() < &cheapest + reward)
        .map(|(_, p)| p)
        .collect();
    kept.shrink_to_fit();
    NondominatedLadder {
        paths: kept,
        reward: reward.clone(),
    }
}

/// Equilibria of the unbiased race, as indices into the ladder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnbiasedEqReport {
    pub ladder: NondominatedLadder,
    /// Ladder indices `i` where both agents on `P_i` is an equilibrium.
    pub symmetric: Vec<usize>,
    /// `(quicker, cheaper)` pair when one agent on each is an equilibrium.
    pub asymmetric: Option<(usize, usize)>,
    pub tie_rule: TieRule,
}

/// Equilibria over a ladder given by its costs (ordered quickest first).
pub fn classify_ladder(costs: &[Rational], reward: &Rational, tie_rule: TieRule) -> (Vec<usize>, Option<(usize, usize)>) {
    let n = costs.len();
    if n == 0 {
        return (Vec::new(), None);
    }
    if n == 1 {
        return (vec![0], None);
    }
    match tie_rule {
        TieRule::Split => {
            let half_r = reward * half();
            let symmetric = (0..n)
                .filter(|&i| {
                    if i == 0 {
                        &costs[0] - &costs[n - 1] <= half_r
                    } else {
                        &costs[i - 1] - &costs[i] >= half_r
                    }
                })
                .collect();
            let asymmetric = (n == 2 && &costs[0] - &costs[1] == half_r).then_some((0, 1));
            (symmetric, asymmetric)
        }
        TieRule::BothFull => ((0..n).collect(), None),
        TieRule::Nothing => (Vec::new(), (n == 2).then_some((0, 1))),
    }
}

pub fn classify_unbiased(graph: &TaskGraph, reward: &Rational, tie_rule: TieRule) -> UnbiasedEqReport {
    let ladder = nondominated_ladder(graph, reward);
    let (symmetric, asymmetric) = classify_ladder(&ladder.costs(), reward, tie_rule);
    UnbiasedEqReport {
        ladder,
        symmetric,
        asymmetric,
        tie_rule,
    }
}

/// Where the agent left the reference path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    /// Last vertex shared with the reference path.
    pub at: VertexId,
    /// Number of edges walked before leaving.
    pub step: usize,
    pub trace: TraversalTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeCheckResult {
    pub is_equilibrium: bool,
    /// Present exactly when `is_equilibrium` is false.
    pub witness: Option<Deviation>,
}

/// Symmetric equilibrium test by simulation: against an opponent on `q`,
/// does the biased agent (staying on `q` whenever that is among its best
/// options) walk exactly `q`?
pub fn check_symmetric_ne(
    graph: &TaskGraph,
    q: &PathRecord,
    reward: &Rational,
    bias: &Rational,
) -> Result<NeCheckResult, PureEqError> {
    check_symmetric_ne_with(&Simulator::new(graph), q, reward, bias)
}

/// [`check_symmetric_ne`] reusing a simulator's hop tables.
pub fn check_symmetric_ne_with(
    sim: &Simulator<'_>,
    q: &PathRecord,
    reward: &Rational,
    bias: &Rational,
) -> Result<NeCheckResult, PureEqError> {
    check_inputs(sim.graph(), q, bias)?;
    let config = AgentConfig::new(bias.clone())?;
    let trace = sim.traverse(&config, Some(q), reward)?;
    if trace.path.vertices() == q.vertices() {
        return Ok(NeCheckResult {
            is_equilibrium: true,
            witness: None,
        });
    }
    let step = trace
        .path
        .vertices()
        .iter()
        .zip(q.vertices())
        .position(|(a, b)| a != b)
        .expect("distinct s-t paths diverge")
        - 1;
    Ok(NeCheckResult {
        is_equilibrium: false,
        witness: Some(Deviation {
            at: q.vertices()[step],
            step,
            trace,
        }),
    })
}

/// Reward thresholds on the n-fan: the direct path is an equilibrium for
/// `r >= 2(b − c)` and the longest path for `r <= 2(b − c)·c^(n−1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FanThresholds {
    #[serde(with = "crate::rational::serde_text")]
    pub optimal_min_reward: Rational,
    #[serde(with = "crate::rational::serde_text")]
    pub longest_max_reward: Rational,
}

pub fn fan_ne_thresholds(spec: &FanSpec, bias: &Rational) -> Result<FanThresholds, PureEqError> {
    let excess = bias - spec.c();
    if excess < Rational::zero() {
        return Err(PureEqError::BiasNotAboveC {
            bias: render(bias),
            c: render(spec.c()),
        });
    }
    let optimal_min_reward = int(2) * &excess;
    let longest_max_reward = &optimal_min_reward * pow(spec.c(), spec.n() - 1);
    Ok(FanThresholds {
        optimal_min_reward,
        longest_max_reward,
    })
}

/// A cheapest source-to-sink path that is also the unique quickest one.
pub fn dominant_path(graph: &TaskGraph) -> Option<PathRecord> {
    let per_length = cheapest_per_length(graph);
    let (&shortest, quickest) = per_length.iter().next()?;
    let cheapest = per_length.values().map(PathRecord::cost).min()?;
    if quickest.cost() != cheapest || count_paths_of_length(graph, shortest) != 1 {
        return None;
    }
    Some(quickest.clone())
}

/// Number of source-to-sink paths with exactly `len` edges, saturating at 2.
fn count_paths_of_length(graph: &TaskGraph, len: usize) -> u8 {
    let n = graph.vertex_count();
    let mut counts = vec![0u8; n];
    counts[graph.sink()] = 1;
    for _ in 0..len {
        let mut next = vec![0u8; n];
        for (v, slot) in next.iter_mut().enumerate() {
            for e in graph.out_edges(v) {
                *slot = slot.saturating_add(counts[e.to]).min(2);
            }
        }
        counts = next;
    }
    counts[graph.source()]
}

/// Reward `agents · b · max edge cost on O` that sustains everyone on the
/// dominant path `O` (`2b·max` for two agents).
pub fn dominant_path_reward(graph: &TaskGraph, bias: &Rational, agents: usize) -> Result<(PathRecord, Rational), PureEqError> {
    if agents < 2 {
        return Err(PureEqError::TooFewAgents(agents));
    }
    let o = dominant_path(graph).ok_or(PureEqError::NoDominantPath)?;
    let max_edge = o
        .vertices()
        .windows(2)
        .map(|w| graph.edge_cost(w[0], w[1]).expect("path edge"))
        .max()
        .cloned()
        .unwrap_or_else(Rational::zero);
    let reward = int(agents as i64) * bias * max_edge;
    Ok((o, reward))
}
