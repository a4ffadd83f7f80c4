//! Exact set of rewards that make a given path a symmetric equilibrium.
//!
//! Assume the opponent commits to `Q`. Walking `Q` edge by edge, the agent at
//! `u` stays on `(u, v)` rather than leaving for `(u, v')` iff
//!
//! ```text
//! b·c(u,v) + c*(r) <= b·c(u,v') + d*(r)
//! ```
//!
//! where `c*(r) = min(c_any, c_le − r/2, c_lt − r)` uses hop-bounded cheapest
//! costs from `v` (and `d*` the same from `v'`), with the hop budget set by the
//! edges `Q` has left. Each of `c*`, `d*` is the lower envelope of at most three
//! lines with slopes `0, −1/2, −1`. Between consecutive crossing points both
//! are linear, so the stay condition cuts a single closed subinterval out of
//! each piece. The answer is the intersection over every edge of `Q` and every
//! alternative successor.

use num_traits::{One, Zero};

use super::PureEqError;
use crate::graph::{HopCostTable, HopTable, PathRecord, TaskGraph};
use crate::interval::{Interval, IntervalSet};
use crate::rational::{half, Rational};

/// Feasible rewards plus every breakpoint the computation touched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleRewards {
    pub set: IntervalSet,
    /// Sorted, deduplicated piece boundaries and solved endpoints. Useful as
    /// probe points when cross-checking the set.
    pub breakpoints: Vec<Rational>,
}

impl FeasibleRewards {
    pub fn minimum(&self) -> Option<&Rational> {
        self.set.minimum()
    }

    pub fn contains(&self, reward: &Rational) -> bool {
        self.set.contains(reward)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Line {
    intercept: Rational,
    slope: Rational,
}

impl Line {
    fn at(&self, r: &Rational) -> Rational {
        &self.intercept + &self.slope * r
    }

    fn crossing(&self, other: &Line) -> Option<Rational> {
        (self.slope != other.slope).then(|| (&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }
}

/// `min` over the win/tie/lose regimes, absent regimes dropped.
fn envelope(costs: &HopCostTable) -> Vec<Line> {
    let mut lines = Vec::with_capacity(3);
    if let Some(any) = &costs.any {
        lines.push(Line {
            intercept: any.clone(),
            slope: Rational::zero(),
        });
    }
    if let Some(le) = &costs.at_most {
        lines.push(Line {
            intercept: le.clone(),
            slope: -half(),
        });
    }
    if let Some(lt) = &costs.fewer {
        lines.push(Line {
            intercept: lt.clone(),
            slope: -Rational::one(),
        });
    }
    lines
}

fn active<'a>(lines: &'a [Line], r: &Rational) -> &'a Line {
    lines
        .iter()
        .min_by(|a, b| a.at(r).cmp(&b.at(r)))
        .expect("the unbounded cheapest path always exists")
}

fn crossings(lines: &[Line], out: &mut Vec<Rational>) {
    for (i, a) in lines.iter().enumerate() {
        for b in &lines[i + 1..] {
            if let Some(x) = a.crossing(b) {
                if x > Rational::zero() {
                    out.push(x);
                }
            }
        }
    }
}

/// Rewards at which the agent (weakly) prefers the `stay` successor over the
/// `leave` successor, given the envelopes and the bias-weighted edge gap
/// `gap = b·(c(u,v) − c(u,v'))`.
fn preference_set(
    stay: &[Line],
    leave: &[Line],
    gap: &Rational,
    breakpoints: &mut Vec<Rational>,
) -> IntervalSet {
    let mut cuts = vec![Rational::zero()];
    crossings(stay, &mut cuts);
    crossings(leave, &mut cuts);
    cuts.sort();
    cuts.dedup();
    breakpoints.extend(cuts.iter().cloned());

    let mut pieces = Vec::with_capacity(cuts.len());
    for (i, lo) in cuts.iter().enumerate() {
        let hi = cuts.get(i + 1);
        let probe = match hi {
            Some(h) => (lo + h) * half(),
            None => lo + Rational::one(),
        };
        let c_line = active(stay, &probe);
        let d_line = active(leave, &probe);
        // f(r) = d*(r) − c*(r) − gap = alpha + beta·r on this piece; need f >= 0
        let alpha = &d_line.intercept - &c_line.intercept - gap;
        let beta = &d_line.slope - &c_line.slope;
        let piece = if beta.is_zero() {
            (alpha >= Rational::zero()).then(|| Interval::new(lo.clone(), hi.cloned()))
        } else {
            let root = -&alpha / &beta;
            breakpoints.push(root.clone());
            if beta > Rational::zero() {
                // f increasing: r >= root
                let start = root.max(lo.clone());
                Some(Interval::new(start, hi.cloned()))
            } else {
                // f decreasing: r <= root
                let end = match hi {
                    Some(h) => root.min(h.clone()),
                    None => root,
                };
                Some(Interval::closed(lo.clone(), end))
            }
        };
        if let Some(Some(iv)) = piece {
            pieces.push(iv);
        }
    }
    IntervalSet::from_intervals(pieces)
}

/// All rewards `r >= 0` under which both agents committing to `q` is a
/// symmetric equilibrium for bias `b` (ties resolved in favour of staying).
pub fn feasible_rewards(graph: &TaskGraph, q: &PathRecord, bias: &Rational) -> Result<FeasibleRewards, PureEqError> {
    let hops = HopTable::new(graph);
    feasible_rewards_with(graph, &hops, q, bias)
}

pub(crate) fn feasible_rewards_with(
    graph: &TaskGraph,
    hops: &HopTable,
    q: &PathRecord,
    bias: &Rational,
) -> Result<FeasibleRewards, PureEqError> {
    super::check_inputs(graph, q, bias)?;
    let mut feasible = IntervalSet::nonnegative();
    let mut breakpoints = Vec::new();
    let k = q.len() as i64;
    for (j, hop) in q.vertices().windows(2).enumerate() {
        let (u, v) = (hop[0], hop[1]);
        // edges Q still has after v
        let budget = k - j as i64 - 1;
        let stay = envelope(&hops.costs(v, budget));
        let stay_edge = graph.edge_cost(u, v).expect("q follows edges");
        for e in graph.out_edges(u).iter().filter(|e| e.to != v) {
            let leave = envelope(&hops.costs(e.to, budget));
            let gap = bias * (stay_edge - &e.cost);
            let prefers = preference_set(&stay, &leave, &gap, &mut breakpoints);
            feasible = feasible.intersect(&prefers);
        }
    }
    breakpoints.retain(|x| *x >= Rational::zero());
    for iv in feasible.intervals() {
        breakpoints.push(iv.lo().clone());
        if let Some(h) = iv.hi() {
            breakpoints.push(h.clone());
        }
    }
    breakpoints.sort();
    breakpoints.dedup();
    Ok(FeasibleRewards { set: feasible, breakpoints })
}

/// The feasible set when it is nonempty; its minimum is the cheapest reward
/// that makes `q` an equilibrium.
pub fn min_reward_for_ne(graph: &TaskGraph, q: &PathRecord, bias: &Rational) -> Result<FeasibleRewards, PureEqError> {
    let result = feasible_rewards(graph, q, bias)?;
    if result.set.is_empty() {
        Err(PureEqError::EmptyFeasibleSet)
    } else {
        Ok(result)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fan_path, make_fan, make_named_instance, FanSpec, NamedInstance};
    use crate::pure_eq::check_symmetric_ne;
    use crate::rational::{int, ratio};

    #[test]
    fn fan_direct_path_needs_twice_the_excess_bias() {
        let g = make_fan(&FanSpec::new(5, ratio(3, 2)).unwrap());
        let q = fan_path(&g, 0).unwrap();
        let res = min_reward_for_ne(&g, &q, &int(2)).unwrap();
        assert_eq!(res.set, IntervalSet::from_intervals([Interval::at_least(int(1))]));
        assert_eq!(res.minimum(), Some(&int(1)));
    }

    #[test]
    fn fan_longest_path_is_bounded_above() {
        let g = make_fan(&FanSpec::new(5, ratio(3, 2)).unwrap());
        let q = fan_path(&g, 5).unwrap();
        let res = min_reward_for_ne(&g, &q, &int(2)).unwrap();
        assert_eq!(res.set, IntervalSet::from_intervals([Interval::closed(int(0), ratio(81, 16)).unwrap()]));
    }

    #[test]
    fn fan_middle_paths_never_work() {
        let g = make_fan(&FanSpec::new(5, ratio(3, 2)).unwrap());
        for i in 1..5 {
            let q = fan_path(&g, i).unwrap();
            assert_eq!(min_reward_for_ne(&g, &q, &int(2)), Err(PureEqError::EmptyFeasibleSet), "P{i}");
        }
    }

    #[test]
    fn higher_reward_can_break_an_equilibrium() {
        let g = make_named_instance(&NamedInstance::Fig7a).unwrap();
        let q = g.path_by_names(&["s", "q1", "q2", "t"]).unwrap();
        let res = feasible_rewards(&g, &q, &int(10)).unwrap();
        assert!(res.contains(&int(1)));
        assert!(!res.contains(&int(300)));
    }

    #[test]
    fn single_edge_path() {
        let g = make_named_instance(&NamedInstance::ModifiedThreeFan { c: int(2), c2: int(5), c3: int(26) }).unwrap();
        let q = fan_path(&g, 0).unwrap();
        let res = feasible_rewards(&g, &q, &int(3)).unwrap();
        // at s: direct costs 3 − r/2, waiting costs c = 2 with no way to win or tie
        assert_eq!(res.minimum(), Some(&int(2)));
    }

    #[test]
    fn agrees_with_traversal_on_named_instances() {
        let cases = [
            (make_named_instance(&NamedInstance::Fig7a).unwrap(), vec!["s", "q1", "q2", "t"]),
            (make_named_instance(&NamedInstance::Fig7b).unwrap(), vec!["s", "q1", "q2", "t"]),
            (make_named_instance(&NamedInstance::Fig7b).unwrap(), vec!["s", "v1", "v2", "v3", "t"]),
            (make_named_instance(&NamedInstance::Fig1).unwrap(), vec!["s", "v", "y", "t"]),
        ];
        for (g, names) in cases {
            let q = g.path_by_names(&names).unwrap();
            for b in [int(1), int(2), int(10)] {
                let res = feasible_rewards(&g, &q, &b).unwrap();
                let mut probes = res.breakpoints.clone();
                probes.extend((0..40).map(|i| ratio(i * 37, 4)));
                for r in probes {
                    assert_eq!(
                        res.contains(&r),
                        check_symmetric_ne(&g, &q, &r, &b).unwrap().is_equilibrium,
                        "{names:?} b={b} r={r}"
                    );
                }
            }
        }
    }
}
