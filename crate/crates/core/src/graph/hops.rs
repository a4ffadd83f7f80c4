//! Hop-bounded cheapest paths to the sink.
//!
//! Both tables are Bellman-Ford style dynamic programs over the number of
//! edges. In a DAG no simple path has more than `|V| - 1` edges, so bounds at
//! or beyond that collapse to the unbounded answer.

use std::collections::BTreeMap;

use super::{PathRecord, TaskGraph, VertexId};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HopBound {
    Unbounded,
    AtMost(usize),
}

/// Costs of the cheapest `v → t` paths under the three hop regimes used by
/// the reward analysis. `None` means no such path exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopCostTable {
    /// Any number of edges.
    pub any: Option<Rational>,
    /// At most `k` edges.
    pub at_most: Option<Rational>,
    /// Strictly fewer than `k` edges.
    pub fewer: Option<Rational>,
}

/// `at_most[h][v]`: cheapest `v → t` cost using at most `h` edges.
#[derive(Debug, Clone)]
pub struct HopTable {
    at_most: Vec<Vec<Option<Rational>>>,
}

impl HopTable {
    pub fn new(graph: &TaskGraph) -> Self {
        let n = graph.vertex_count();
        let max_hops = n.saturating_sub(1);
        let mut at_most: Vec<Vec<Option<Rational>>> = Vec::with_capacity(max_hops + 1);
        let mut row = vec![None; n];
        row[graph.sink()] = Some(Rational::from_integer(0.into()));
        at_most.push(row);
        for h in 1..=max_hops {
            let prev = &at_most[h - 1];
            let mut row = prev.clone();
            for (v, best) in row.iter_mut().enumerate() {
                for e in graph.out_edges(v) {
                    if let Some(rest) = &prev[e.to] {
                        let candidate = &e.cost + rest;
                        if best.as_ref().is_none_or(|b| candidate < *b) {
                            *best = Some(candidate);
                        }
                    }
                }
            }
            at_most.push(row);
        }
        HopTable { at_most }
    }

    pub fn max_hops(&self) -> usize {
        self.at_most.len() - 1
    }

    pub fn cheapest(&self, v: VertexId, bound: HopBound) -> Option<&Rational> {
        let h = match bound {
            HopBound::Unbounded => self.max_hops(),
            HopBound::AtMost(k) => k.min(self.max_hops()),
        };
        self.at_most[h][v].as_ref()
    }

    /// Cheapest cost with at most `k` edges; negative `k` admits nothing.
    pub fn at_most(&self, v: VertexId, k: i64) -> Option<&Rational> {
        if k < 0 {
            None
        } else {
            self.cheapest(v, HopBound::AtMost(k as usize))
        }
    }

    pub fn costs(&self, v: VertexId, k: i64) -> HopCostTable {
        HopCostTable {
            any: self.cheapest(v, HopBound::Unbounded).cloned(),
            at_most: self.at_most(v, k).cloned(),
            fewer: self.at_most(v, k - 1).cloned(),
        }
    }
}

/// Cost of the cheapest `v → t` path within the bound, or `None`.
pub fn hop_bounded_cheapest(graph: &TaskGraph, v: VertexId, bound: HopBound) -> Option<Rational> {
    HopTable::new(graph).cheapest(v, bound).cloned()
}

/// For every achievable source-to-sink length, one cheapest path of exactly
/// that length. Equal costs go to the lexicographically smallest vertex
/// sequence.
pub fn cheapest_per_length(graph: &TaskGraph) -> BTreeMap<usize, PathRecord> {
    let n = graph.vertex_count();
    let max_len = n.saturating_sub(1);
    // exact[l][v] = (cost, successor) of the best v → t path with exactly l edges
    let mut exact: Vec<Vec<Option<(Rational, VertexId)>>> = vec![vec![None; n]];
    for l in 1..=max_len {
        let prev = &exact[l - 1];
        let reaches = |w: VertexId| -> Option<Rational> {
            if l == 1 {
                (w == graph.sink()).then(|| Rational::from_integer(0.into()))
            } else {
                prev[w].as_ref().map(|(c, _)| c.clone())
            }
        };
        let mut row: Vec<Option<(Rational, VertexId)>> = vec![None; n];
        for (v, slot) in row.iter_mut().enumerate() {
            // out-edges are sorted by target, so strict improvement keeps the
            // smallest successor among ties, which is the lexicographic minimum
            for e in graph.out_edges(v) {
                if let Some(rest) = reaches(e.to) {
                    let candidate = &e.cost + rest;
                    if slot.as_ref().is_none_or(|(best, _)| candidate < *best) {
                        *slot = Some((candidate, e.to));
                    }
                }
            }
        }
        exact.push(row);
    }

    let mut result = BTreeMap::new();
    for l in 1..=max_len {
        if exact[l][graph.source()].is_none() {
            continue;
        }
        let mut vertices = vec![graph.source()];
        let mut at = graph.source();
        for remaining in (1..=l).rev() {
            let (_, next) = exact[remaining][at].as_ref().expect("suffix exists by construction");
            at = *next;
            vertices.push(at);
        }
        let path = graph.path(vertices).expect("DP follows edges");
        result.insert(l, path);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_fan, make_named_instance, FanSpec, NamedInstance};
    use crate::rational::{int, pow, ratio};

    #[test]
    fn fig1_cheapest_from_source_is_six() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        assert_eq!(hop_bounded_cheapest(&g, g.source(), HopBound::Unbounded), Some(int(6)));
    }

    #[test]
    fn sink_with_zero_hops_costs_nothing() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        assert_eq!(hop_bounded_cheapest(&g, g.sink(), HopBound::AtMost(0)), Some(int(0)));
        assert_eq!(hop_bounded_cheapest(&g, g.source(), HopBound::AtMost(0)), None);
    }

    #[test]
    fn fan_vertex_exits_directly() {
        let g = make_fan(&FanSpec::new(5, ratio(3, 2)).unwrap());
        let v1 = g.vertex("v1").unwrap();
        assert_eq!(hop_bounded_cheapest(&g, v1, HopBound::Unbounded), Some(ratio(3, 2)));
    }

    #[test]
    fn fan_lengths_cost_powers_of_c() {
        let c = int(2);
        let g = make_fan(&FanSpec::new(3, c.clone()).unwrap());
        let per_len = cheapest_per_length(&g);
        let costs: Vec<(usize, Rational)> = per_len.iter().map(|(l, p)| (*l, p.cost().clone())).collect();
        assert_eq!(
            costs,
            vec![(1, int(1)), (2, c.clone()), (3, pow(&c, 2)), (4, pow(&c, 3))]
        );
        assert_eq!(g.describe(per_len[&2].vertices()), "(s,v1,t)");
    }

    #[test]
    fn fig1_lengths() {
        let g = make_named_instance(&NamedInstance::Fig1).unwrap();
        let per_len = cheapest_per_length(&g);
        assert_eq!(per_len.len(), 2);
        assert_eq!(per_len[&2].cost(), &int(6));
        assert_eq!(g.describe(per_len[&3].vertices()), "(s,v,y,t)");
        assert_eq!(per_len[&3].cost(), &int(11));
    }

    #[test]
    fn table_regimes_are_ordered() {
        let g = make_fan(&FanSpec::new(4, ratio(3, 2)).unwrap());
        let table = HopTable::new(&g);
        let v2 = g.vertex("v2").unwrap();
        let c = table.costs(v2, 1);
        assert_eq!(c.any, Some(ratio(9, 4)));
        assert_eq!(c.at_most, Some(ratio(9, 4)));
        assert_eq!(c.fewer, None);
    }
}
