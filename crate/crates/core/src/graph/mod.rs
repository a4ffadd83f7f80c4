//! Task graphs: weighted DAGs with a designated source and sink.
//!
//! A [`RawGraph`] is the serialized form (the JSON graph file). [`validate`]
//! turns it into an immutable [`TaskGraph`]: costs are parsed exactly, the
//! graph is checked for cycles, and vertices that do not lie on any
//! source-to-sink path are pruned. Vertex indices follow insertion order and
//! that order is the tie-breaker everywhere in the crate.

mod hops;
mod instances;

pub use hops::{cheapest_per_length, hop_bounded_cheapest, HopBound, HopCostTable, HopTable};
pub use instances::{
    fan_path, make_deviation_spine, make_fan, make_named_instance, FanSpec, NamedInstance,
};

use std::collections::HashMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{parse_rational, render, Rational};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph contains a cycle through {0:?}")]
    CycleDetected(String),
    #[error("no path from source to sink")]
    NoSourceSinkPath,
    #[error("edge {from}->{to} has negative cost {cost}")]
    NegativeCost { from: String, to: String, cost: String },
    #[error("edge {from}->{to}: {reason}")]
    InvalidCost { from: String, to: String, reason: String },
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex {0:?} declared twice")]
    DuplicateVertex(String),
    #[error("self loop on {0:?}")]
    SelfLoop(String),
    #[error("source and sink are both {0:?}")]
    SourceIsSink(String),
    #[error("{0} is not a path of this graph")]
    InvalidPath(String),
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    #[error("invalid instance parameters: {0}")]
    InvalidParameters(String),
}

/// Graph file contents, as read from or written to JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub source: String,
    pub sink: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEdge {
    pub from: String,
    pub to: String,
    pub cost: String,
}

impl RawGraph {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("raw graphs always serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub to: VertexId,
    pub cost: Rational,
}

/// Validated, immutable task graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskGraph {
    names: Vec<String>,
    out: Vec<Vec<Edge>>,
    source: VertexId,
    sink: VertexId,
    topo: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Validated {
    pub graph: TaskGraph,
    /// Names of vertices removed because no source-to-sink path uses them.
    pub pruned: Vec<String>,
}

pub fn validate(raw: &RawGraph) -> Result<Validated, GraphError> {
    let mut index = HashMap::with_capacity(raw.vertices.len());
    for (i, name) in raw.vertices.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(GraphError::DuplicateVertex(name.clone()));
        }
    }
    let lookup = |name: &str| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    };
    let source = lookup(&raw.source)?;
    let sink = lookup(&raw.sink)?;
    if source == sink {
        return Err(GraphError::SourceIsSink(raw.source.clone()));
    }

    let n = raw.vertices.len();
    let mut out: Vec<Vec<Edge>> = vec![Vec::new(); n];
    for e in &raw.edges {
        let from = lookup(&e.from)?;
        let to = lookup(&e.to)?;
        if from == to {
            return Err(GraphError::SelfLoop(e.from.clone()));
        }
        let cost = parse_rational(&e.cost).map_err(|err| GraphError::InvalidCost {
            from: e.from.clone(),
            to: e.to.clone(),
            reason: err.to_string(),
        })?;
        if cost.is_negative() {
            return Err(GraphError::NegativeCost {
                from: e.from.clone(),
                to: e.to.clone(),
                cost: e.cost.clone(),
            });
        }
        // parallel edges: only the cheapest one matters to any agent
        match out[from].iter_mut().find(|edge| edge.to == to) {
            Some(existing) if cost < existing.cost => existing.cost = cost,
            Some(_) => {}
            None => out[from].push(Edge { to, cost }),
        }
    }

    let order = topological_order(&out).map_err(|v| GraphError::CycleDetected(raw.vertices[v].clone()))?;

    let forward = reachable(&out, source);
    let reverse_adj = reverse(&out);
    let backward = reachable_in(&reverse_adj, sink);
    if !forward[sink] {
        return Err(GraphError::NoSourceSinkPath);
    }

    let keep: Vec<bool> = (0..n).map(|v| forward[v] && backward[v]).collect();
    let mut remap = vec![usize::MAX; n];
    let mut names = Vec::new();
    for v in 0..n {
        if keep[v] {
            remap[v] = names.len();
            names.push(raw.vertices[v].clone());
        }
    }
    let pruned = (0..n)
        .filter(|&v| !keep[v])
        .map(|v| raw.vertices[v].clone())
        .collect();

    let mut new_out = vec![Vec::new(); names.len()];
    for v in (0..n).filter(|&v| keep[v]) {
        let mut edges: Vec<Edge> = out[v]
            .iter()
            .filter(|e| keep[e.to])
            .map(|e| Edge {
                to: remap[e.to],
                cost: e.cost.clone(),
            })
            .collect();
        edges.sort_by_key(|e| e.to);
        new_out[remap[v]] = edges;
    }
    let topo = order.into_iter().filter(|&v| keep[v]).map(|v| remap[v]).collect();

    Ok(Validated {
        graph: TaskGraph {
            names,
            out: new_out,
            source: remap[source],
            sink: remap[sink],
            topo,
        },
        pruned,
    })
}

/// Kahn's algorithm; on failure returns some vertex on a cycle.
fn topological_order(out: &[Vec<Edge>]) -> Result<Vec<VertexId>, VertexId> {
    let n = out.len();
    let mut indegree = vec![0usize; n];
    for edges in out {
        for e in edges {
            indegree[e.to] += 1;
        }
    }
    // smallest-index-first keeps the order deterministic
    let mut ready: std::collections::BTreeSet<VertexId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for e in &out[v] {
            indegree[e.to] -= 1;
            if indegree[e.to] == 0 {
                ready.insert(e.to);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&v| indegree[v] > 0).expect("leftover vertex"))
    }
}

fn reachable(out: &[Vec<Edge>], from: VertexId) -> Vec<bool> {
    let adj: Vec<Vec<VertexId>> = out.iter().map(|es| es.iter().map(|e| e.to).collect()).collect();
    reachable_in(&adj, from)
}

fn reverse(out: &[Vec<Edge>]) -> Vec<Vec<VertexId>> {
    let mut rev = vec![Vec::new(); out.len()];
    for (v, edges) in out.iter().enumerate() {
        for e in edges {
            rev[e.to].push(v);
        }
    }
    rev
}

fn reachable_in(adj: &[Vec<VertexId>], from: VertexId) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

impl TaskGraph {
    pub fn from_json(text: &str) -> Result<Validated, GraphLoadError> {
        let raw = RawGraph::from_json(text)?;
        Ok(validate(&raw)?)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.names.iter().position(|n| n == name)
    }

    /// Out-edges of `v`, sorted by target index.
    pub fn out_edges(&self, v: VertexId) -> &[Edge] {
        &self.out[v]
    }

    pub fn edge_cost(&self, from: VertexId, to: VertexId) -> Option<&Rational> {
        self.out[from].iter().find(|e| e.to == to).map(|e| &e.cost)
    }

    /// Vertices in topological order (sources first).
    pub fn topological_order(&self) -> &[VertexId] {
        &self.topo
    }

    /// Builds a record for `vertices`, checking that every hop is an edge.
    pub fn path(&self, vertices: Vec<VertexId>) -> Result<PathRecord, GraphError> {
        if vertices.is_empty() || vertices.iter().any(|&v| v >= self.vertex_count()) {
            return Err(GraphError::InvalidPath(format!("{vertices:?}")));
        }
        let mut cost = Rational::zero();
        for hop in vertices.windows(2) {
            match self.edge_cost(hop[0], hop[1]) {
                Some(c) => cost += c,
                None => return Err(GraphError::InvalidPath(self.describe(&vertices))),
            }
        }
        Ok(PathRecord { vertices, cost })
    }

    /// Like [`TaskGraph::path`] but also requires the path to run from source to sink.
    pub fn st_path(&self, vertices: Vec<VertexId>) -> Result<PathRecord, GraphError> {
        let p = self.path(vertices)?;
        if p.first() != self.source || p.last() != self.sink || p.is_empty() {
            return Err(GraphError::InvalidPath(self.describe(p.vertices())));
        }
        Ok(p)
    }

    pub fn path_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<PathRecord, GraphError> {
        let ids = names
            .iter()
            .map(|n| {
                self.vertex(n.as_ref())
                    .ok_or_else(|| GraphError::UnknownVertex(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        self.st_path(ids)
    }

    pub fn describe(&self, vertices: &[VertexId]) -> String {
        let names: Vec<&str> = vertices.iter().map(|&v| self.name(v)).collect();
        format!("({})", names.join(","))
    }

    pub fn path_names(&self, path: &PathRecord) -> Vec<String> {
        path.vertices.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn to_raw(&self) -> RawGraph {
        let mut edges = Vec::with_capacity(self.edge_count());
        for (v, out) in self.out.iter().enumerate() {
            for e in out {
                edges.push(RawEdge {
                    from: self.names[v].clone(),
                    to: self.names[e.to].clone(),
                    cost: render(&e.cost),
                });
            }
        }
        RawGraph {
            vertices: self.names.clone(),
            edges,
            source: self.names[self.source].clone(),
            sink: self.names[self.sink].clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum GraphLoadError {
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

/// A walk through the graph with its cached cost.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathRecord {
    vertices: Vec<VertexId>,
    cost: Rational,
}

impl PathRecord {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().expect("paths are never empty")
    }

    /// The path that starts with this one and continues along `(last, to)`.
    pub fn extended(&self, to: VertexId, edge_cost: &Rational) -> PathRecord {
        let mut vertices = self.vertices.clone();
        vertices.push(to);
        PathRecord {
            vertices,
            cost: &self.cost + edge_cost,
        }
    }

    pub(crate) fn trivial(at: VertexId) -> PathRecord {
        PathRecord {
            vertices: vec![at],
            cost: Rational::zero(),
        }
    }
}

impl fmt::Display for PathRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} cost {}", self.vertices, render(&self.cost))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn raw(vertices: &[&str], edges: &[(&str, &str, &str)]) -> RawGraph {
        RawGraph {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(f, t, c)| RawEdge {
                    from: f.to_string(),
                    to: t.to_string(),
                    cost: c.to_string(),
                })
                .collect(),
            source: "s".into(),
            sink: "t".into(),
        }
    }

    #[test]
    fn single_edge_is_valid() {
        let v = validate(&raw(&["s", "t"], &[("s", "t", "0")])).unwrap();
        assert!(v.pruned.is_empty());
        assert_eq!(v.graph.edge_count(), 1);
    }

    #[test]
    fn back_edge_is_a_cycle() {
        let err = validate(&raw(&["s", "t"], &[("s", "t", "1"), ("t", "s", "1")])).unwrap_err();
        assert!(matches!(err, GraphError::CycleDetected(_)));
    }

    #[test]
    fn negative_costs_rejected() {
        let err = validate(&raw(&["s", "t"], &[("s", "t", "-0.5")])).unwrap_err();
        assert!(matches!(err, GraphError::NegativeCost { .. }));
    }

    #[test]
    fn disconnected_sink_rejected() {
        let err = validate(&raw(&["s", "a", "t"], &[("s", "a", "1")])).unwrap_err();
        assert_eq!(err, GraphError::NoSourceSinkPath);
    }

    #[test]
    fn self_loops_and_bad_names_rejected() {
        assert!(matches!(
            validate(&raw(&["s", "t"], &[("s", "s", "1"), ("s", "t", "1")])),
            Err(GraphError::SelfLoop(_))
        ));
        assert!(matches!(
            validate(&raw(&["s", "t"], &[("s", "q", "1")])),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            validate(&raw(&["s", "s", "t"], &[("s", "t", "1")])),
            Err(GraphError::DuplicateVertex(_))
        ));
        assert!(matches!(
            validate(&raw(&["s", "t"], &[("s", "t", "x")])),
            Err(GraphError::InvalidCost { .. })
        ));
    }

    #[test]
    fn dead_ends_are_pruned_and_indices_compacted() {
        let v = validate(&raw(
            &["s", "dead", "a", "orphan", "t"],
            &[("s", "dead", "1"), ("s", "a", "1"), ("a", "t", "2"), ("orphan", "t", "1")],
        ))
        .unwrap();
        assert_eq!(v.pruned, vec!["dead".to_string(), "orphan".to_string()]);
        let g = &v.graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.vertex("a"), Some(1));
        assert_eq!(g.path_by_names(&["s", "a", "t"]).unwrap().cost(), &int(3));
    }

    #[test]
    fn parallel_edges_keep_the_cheapest() {
        let v = validate(&raw(&["s", "t"], &[("s", "t", "3"), ("s", "t", "1.5"), ("s", "t", "2")])).unwrap();
        assert_eq!(v.graph.edge_count(), 1);
        assert_eq!(v.graph.edge_cost(0, 1).unwrap(), &crate::rational::ratio(3, 2));
    }

    #[test]
    fn validation_is_idempotent() {
        let first = validate(&raw(
            &["s", "b", "a", "x", "t"],
            &[("s", "a", "1"), ("s", "b", "1/3"), ("b", "t", "0.25"), ("a", "t", "2"), ("x", "a", "1")],
        ))
        .unwrap();
        let again = validate(&first.graph.to_raw()).unwrap();
        assert_eq!(again.graph, first.graph);
        assert!(again.pruned.is_empty());
    }

    #[test]
    fn paths_must_follow_edges() {
        let g = validate(&raw(&["s", "a", "t"], &[("s", "a", "1"), ("a", "t", "1"), ("s", "t", "5")]))
            .unwrap()
            .graph;
        assert!(g.path_by_names(&["s", "t"]).is_ok());
        assert!(g.path_by_names(&["a", "t"]).is_err());
        assert!(g.st_path(vec![0, 2, 1]).is_err());
    }
}
