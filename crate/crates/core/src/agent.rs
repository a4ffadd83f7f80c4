//! Naive present-biased traversal, with or without a competitor.
//!
//! At vertex `u` the agent values each successor `v` as
//!
//! ```text
//! C(u, v) = b·c(u, v) + min over continuations P from v of [ c(P) − R(walked ∪ (u,v) ∪ P) ]
//! ```
//!
//! where the reward `R` depends only on the total length compared with the
//! opponent's committed path length `k`: full reward when strictly shorter,
//! the tie share when equal, nothing when longer. The minimum is evaluated
//! through three hop-bounded cheapest costs (any length, at most `k'`, fewer
//! than `k'` edges remaining) instead of enumerating continuations.

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{HopTable, PathRecord, TaskGraph, VertexId};
use crate::rational::{half, render, Rational};

/// How a tied finish is paid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieRule {
    /// Each agent gets `r/2`.
    #[default]
    Split,
    /// Each agent gets `r`.
    BothFull,
    /// Nobody is paid.
    Nothing,
}

impl TieRule {
    pub fn tie_reward(self, reward: &Rational) -> Rational {
        match self {
            TieRule::Split => reward * half(),
            TieRule::BothFull => reward.clone(),
            TieRule::Nothing => Rational::zero(),
        }
    }

    /// Reward for finishing with `length` edges against an opponent of length `opponent`.
    pub fn payout(self, length: usize, opponent: usize, reward: &Rational) -> Rational {
        use std::cmp::Ordering::*;
        match length.cmp(&opponent) {
            Less => reward.clone(),
            Equal => self.tie_reward(reward),
            Greater => Rational::zero(),
        }
    }
}

/// Which successor wins when perceived costs are equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preference {
    /// Prefer the next vertex of the reference path (the opponent's path when
    /// checking an equilibrium), falling back to the smallest vertex index.
    #[default]
    StayOnReference,
    Lexicographic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentConfig {
    pub bias: Rational,
    pub tie_rule: TieRule,
    pub preference: Preference,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgentError {
    #[error("bias must be at least 1, got {0}")]
    BiasBelowOne(String),
    #[error("reward must be nonnegative, got {0}")]
    NegativeReward(String),
    #[error("cheapest path costs 0, so the cost ratio is undefined")]
    ZeroOptimalCost,
    #[error("no continuation from {0} reaches the sink")]
    NoContinuation(String),
}

impl AgentConfig {
    pub fn new(bias: Rational) -> Result<Self, AgentError> {
        if bias < Rational::one() {
            return Err(AgentError::BiasBelowOne(render(&bias)));
        }
        Ok(AgentConfig {
            bias,
            tie_rule: TieRule::Split,
            preference: Preference::StayOnReference,
        })
    }

    pub fn with_tie_rule(mut self, rule: TieRule) -> Self {
        self.tie_rule = rule;
        self
    }

    pub fn with_preference(mut self, preference: Preference) -> Self {
        self.preference = preference;
        self
    }
}

/// The race the agent is in: opponent's committed length and the prize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Competition {
    pub opponent_length: usize,
    pub reward: Rational,
}

impl Competition {
    pub fn new(opponent_length: usize, reward: Rational) -> Result<Self, AgentError> {
        if reward < Rational::zero() {
            return Err(AgentError::NegativeReward(render(&reward)));
        }
        Ok(Competition {
            opponent_length,
            reward,
        })
    }

    pub fn against(opponent: &PathRecord, reward: Rational) -> Result<Self, AgentError> {
        Self::new(opponent.len(), reward)
    }
}

/// Where the agent stands: the walked prefix ends at the current vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraversalState {
    prefix: PathRecord,
}

impl TraversalState {
    pub fn start(graph: &TaskGraph) -> Self {
        TraversalState {
            prefix: PathRecord::trivial(graph.source()),
        }
    }

    /// State after walking `prefix` (which must start at the source).
    pub fn after(prefix: PathRecord) -> Self {
        TraversalState { prefix }
    }

    pub fn at(&self) -> VertexId {
        self.prefix.last()
    }

    pub fn steps_taken(&self) -> usize {
        self.prefix.len()
    }

    pub fn prefix(&self) -> &PathRecord {
        &self.prefix
    }

    fn advance(&mut self, to: VertexId, cost: &Rational) {
        self.prefix = self.prefix.extended(to, cost);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alternative {
    #[serde(serialize_with = "ser_vertex")]
    pub vertex: (VertexId, String),
    #[serde(with = "crate::rational::serde_text")]
    pub perceived: Rational,
}

fn ser_vertex<S: serde::Serializer>(v: &(VertexId, String), s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.1)
}

/// One decision of the agent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    #[serde(serialize_with = "ser_vertex")]
    pub at: (VertexId, String),
    #[serde(serialize_with = "ser_vertex")]
    pub chose: (VertexId, String),
    #[serde(with = "crate::rational::serde_text")]
    pub perceived: Rational,
    /// Every other successor with its perceived cost, cheapest first.
    pub alternatives: Vec<Alternative>,
}

impl TraceStep {
    pub fn runner_up(&self) -> Option<&Alternative> {
        self.alternatives.first()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraversalTrace {
    pub path: PathRecord,
    pub steps: Vec<TraceStep>,
}

/// Traversal engine bound to one graph; caches the hop tables.
#[derive(Debug, Clone)]
pub struct Simulator<'g> {
    graph: &'g TaskGraph,
    hops: HopTable,
}

impl<'g> Simulator<'g> {
    pub fn new(graph: &'g TaskGraph) -> Self {
        Simulator {
            graph,
            hops: HopTable::new(graph),
        }
    }

    pub fn graph(&self) -> &'g TaskGraph {
        self.graph
    }

    pub fn hops(&self) -> &HopTable {
        &self.hops
    }

    /// Minimum over continuations from `v` of `c(P) − R`, when `v` is entered
    /// as edge number `steps_before + 1` of the agent's walk.
    pub fn continuation_value(
        &self,
        v: VertexId,
        steps_before: usize,
        tie_rule: TieRule,
        competition: Option<&Competition>,
    ) -> Option<Rational> {
        let cheapest = self.hops.cheapest(v, crate::graph::HopBound::Unbounded)?.clone();
        let Some(comp) = competition else {
            return Some(cheapest);
        };
        // edges left from v to tie the opponent exactly
        let budget = comp.opponent_length as i64 - steps_before as i64 - 1;
        let table = self.hops.costs(v, budget);
        let mut best = cheapest;
        if let Some(tie_or_win) = table.at_most {
            best = best.min(tie_or_win - tie_rule.tie_reward(&comp.reward));
        }
        if let Some(win) = table.fewer {
            best = best.min(win - &comp.reward);
        }
        Some(best)
    }

    pub fn perceived_cost(
        &self,
        state: &TraversalState,
        v: VertexId,
        config: &AgentConfig,
        competition: Option<&Competition>,
    ) -> Result<Rational, AgentError> {
        let u = state.at();
        let edge = self
            .graph
            .edge_cost(u, v)
            .unwrap_or_else(|| panic!("({u}, {v}) is not an edge"));
        let rest = self
            .continuation_value(v, state.steps_taken(), config.tie_rule, competition)
            .ok_or_else(|| AgentError::NoContinuation(self.graph.name(v).to_string()))?;
        Ok(&config.bias * edge + rest)
    }

    /// All successors of the current vertex with their perceived costs.
    pub fn evaluate(
        &self,
        state: &TraversalState,
        config: &AgentConfig,
        competition: Option<&Competition>,
    ) -> Result<Vec<(VertexId, Rational)>, AgentError> {
        self.graph
            .out_edges(state.at())
            .iter()
            .map(|e| Ok((e.to, self.perceived_cost(state, e.to, config, competition)?)))
            .collect()
    }

    /// Chooses the successor of the current vertex. `reference` is consulted
    /// only under [`Preference::StayOnReference`] and only while the walked
    /// prefix still agrees with it.
    pub fn step(
        &self,
        state: &TraversalState,
        config: &AgentConfig,
        competition: Option<&Competition>,
        reference: Option<&PathRecord>,
    ) -> Result<TraceStep, AgentError> {
        let u = state.at();
        assert!(u != self.graph.sink(), "the sink has no successor");
        let scored = self.evaluate(state, config, competition)?;
        let preferred = match (config.preference, reference) {
            (Preference::StayOnReference, Some(q)) => {
                let walked = state.prefix().vertices();
                let on_track = q.vertices().len() > walked.len() && q.vertices().starts_with(walked);
                on_track.then(|| q.vertices()[walked.len()])
            }
            _ => None,
        };
        let min = scored.iter().map(|(_, c)| c).min().expect("validated vertices have successors");
        let chosen = preferred
            .filter(|p| scored.iter().any(|(v, c)| v == p && c == min))
            .or_else(|| scored.iter().find(|(_, c)| c == min).map(|(v, _)| *v))
            .expect("the minimum is attained");

        let mut perceived = None;
        let mut alternatives = Vec::with_capacity(scored.len().saturating_sub(1));
        for (v, c) in scored {
            if v == chosen {
                perceived = Some(c);
            } else {
                alternatives.push(Alternative {
                    vertex: (v, self.graph.name(v).to_string()),
                    perceived: c,
                });
            }
        }
        alternatives.sort_by(|a, b| a.perceived.cmp(&b.perceived).then(a.vertex.0.cmp(&b.vertex.0)));
        Ok(TraceStep {
            at: (u, self.graph.name(u).to_string()),
            chose: (chosen, self.graph.name(chosen).to_string()),
            perceived: perceived.expect("chosen successor was scored"),
            alternatives,
        })
    }

    /// Walks from the source to the sink, replanning at every vertex. With an
    /// opponent path, that path is both the race to beat and the reference
    /// for tie-breaking.
    pub fn traverse(
        &self,
        config: &AgentConfig,
        opponent: Option<&PathRecord>,
        reward: &Rational,
    ) -> Result<TraversalTrace, AgentError> {
        let competition = opponent
            .map(|q| Competition::against(q, reward.clone()))
            .transpose()?;
        let mut state = TraversalState::start(self.graph);
        let mut steps = Vec::new();
        while state.at() != self.graph.sink() {
            let step = self.step(&state, config, competition.as_ref(), opponent)?;
            let to = step.chose.0;
            let cost = self.graph.edge_cost(state.at(), to).expect("chosen along an edge").clone();
            state.advance(to, &cost);
            steps.push(step);
        }
        Ok(TraversalTrace {
            path: state.prefix,
            steps,
        })
    }

    /// Biased traversal cost over cheapest cost, both without competition.
    pub fn cost_ratio(&self, config: &AgentConfig) -> Result<Rational, AgentError> {
        let optimal = self
            .hops
            .cheapest(self.graph.source(), crate::graph::HopBound::Unbounded)
            .expect("validated graphs reach the sink")
            .clone();
        if optimal.is_zero() {
            return Err(AgentError::ZeroOptimalCost);
        }
        let walked = self.traverse(config, None, &Rational::zero())?;
        Ok(walked.path.cost() / optimal)
    }
}

pub fn traverse(
    graph: &TaskGraph,
    config: &AgentConfig,
    opponent: Option<&PathRecord>,
    reward: &Rational,
) -> Result<TraversalTrace, AgentError> {
    Simulator::new(graph).traverse(config, opponent, reward)
}

pub fn cost_ratio(graph: &TaskGraph, config: &AgentConfig) -> Result<Rational, AgentError> {
    Simulator::new(graph).cost_ratio(config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fan_path, make_fan, make_named_instance, FanSpec, NamedInstance};
    use crate::rational::{int, pow, ratio};

    fn fan5() -> TaskGraph {
        make_fan(&FanSpec::new(5, ratio(3, 2)).unwrap())
    }

    #[test]
    fn fan_perceived_costs_against_direct_path() {
        let g = fan5();
        let sim = Simulator::new(&g);
        let cfg = AgentConfig::new(int(2)).unwrap();
        let comp = Competition::new(1, int(1)).unwrap();
        let s = TraversalState::start(&g);
        let to_t = sim.perceived_cost(&s, g.sink(), &cfg, Some(&comp)).unwrap();
        let to_v1 = sim.perceived_cost(&s, g.vertex("v1").unwrap(), &cfg, Some(&comp)).unwrap();
        assert_eq!(to_t, ratio(3, 2));
        assert_eq!(to_v1, ratio(3, 2));
    }

    #[test]
    fn fig1_first_step_values() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        let sim = Simulator::new(&g);
        let cfg = AgentConfig::new(int(2)).unwrap();
        let s = TraversalState::start(&g);
        assert_eq!(sim.perceived_cost(&s, g.vertex("x").unwrap(), &cfg, None).unwrap(), int(12));
        assert_eq!(sim.perceived_cost(&s, g.vertex("v").unwrap(), &cfg, None).unwrap(), int(11));
        let first = sim.step(&s, &cfg, None, None).unwrap();
        assert_eq!(first.chose.1, "v");
        assert_eq!(first.runner_up().unwrap().perceived, int(12));
    }

    #[test]
    fn fig1_agent_deviates_at_v() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        let sim = Simulator::new(&g);
        let cfg = AgentConfig::new(int(2)).unwrap();
        let at_v = TraversalState::after(g.path(vec![g.source(), g.vertex("v").unwrap()]).unwrap());
        assert_eq!(sim.step(&at_v, &cfg, None, None).unwrap().chose.1, "z");
    }

    #[test]
    fn fig1_traversal_costs_21() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        let trace = traverse(&g, &AgentConfig::new(int(2)).unwrap(), None, &int(0)).unwrap();
        assert_eq!(g.describe(trace.path.vertices()), "(s,v,z,t)");
        assert_eq!(trace.path.cost(), &int(21));
        assert_eq!(trace.steps.len(), trace.path.len());
        assert_eq!(cost_ratio(&g, &AgentConfig::new(int(2)).unwrap()).unwrap(), ratio(7, 2));
    }

    #[test]
    fn fan_agent_procrastinates_fully() {
        let g = fan5();
        let trace = traverse(&g, &AgentConfig::new(int(2)).unwrap(), None, &int(0)).unwrap();
        assert_eq!(trace.path, fan_path(&g, 5).unwrap());
        assert_eq!(trace.path.cost(), &pow(&ratio(3, 2), 5));
        assert_eq!(cost_ratio(&g, &AgentConfig::new(int(2)).unwrap()).unwrap(), pow(&ratio(3, 2), 5));
    }

    #[test]
    fn unbiased_agent_is_optimal() {
        for g in [fan5(), make_named_instance(&NamedInstance::Fig1).unwrap()] {
            assert_eq!(cost_ratio(&g, &AgentConfig::new(int(1)).unwrap()).unwrap(), int(1));
        }
    }

    #[test]
    fn zero_cost_optimum_has_no_ratio() {
        let g = crate::graph::validate(&crate::graph::RawGraph {
            vertices: vec!["s".into(), "t".into()],
            edges: vec![crate::graph::RawEdge { from: "s".into(), to: "t".into(), cost: "0".into() }],
            source: "s".into(),
            sink: "t".into(),
        })
        .unwrap()
        .graph;
        assert_eq!(cost_ratio(&g, &AgentConfig::new(int(3)).unwrap()), Err(AgentError::ZeroOptimalCost));
    }

    #[test]
    fn zero_reward_race_matches_plain_walk() {
        let g = fan5();
        let cfg = AgentConfig::new(int(2)).unwrap();
        let plain = traverse(&g, &cfg, None, &int(0)).unwrap();
        for i in 0..=5 {
            let q = fan_path(&g, i).unwrap();
            let raced = traverse(&g, &cfg.clone().with_preference(Preference::Lexicographic), Some(&q), &int(0)).unwrap();
            assert_eq!(raced.path, plain.path);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(AgentConfig::new(ratio(1, 2)), Err(AgentError::BiasBelowOne(_))));
        assert!(matches!(Competition::new(1, int(-1)), Err(AgentError::NegativeReward(_))));
    }

    #[test]
    fn tie_rules_pay_out() {
        let r = int(4);
        assert_eq!(TieRule::Split.payout(3, 3, &r), int(2));
        assert_eq!(TieRule::BothFull.payout(3, 3, &r), int(4));
        assert_eq!(TieRule::Nothing.payout(3, 3, &r), int(0));
        assert_eq!(TieRule::Nothing.payout(2, 3, &r), int(4));
        assert_eq!(TieRule::Split.payout(4, 3, &r), int(0));
    }

    #[test]
    fn fan_bias_threshold_decides_path() {
        let c = ratio(3, 2);
        for n in 1..=5 {
            let g = make_fan(&FanSpec::new(n, c.clone()).unwrap());
            for (b, expect) in [(ratio(5, 4), 0), (ratio(3, 2), 0), (ratio(8, 5), n), (int(3), n)] {
                let trace = traverse(&g, &AgentConfig::new(b).unwrap(), None, &int(0)).unwrap();
                assert_eq!(trace.path, fan_path(&g, expect).unwrap(), "n={n}");
            }
        }
    }
}
