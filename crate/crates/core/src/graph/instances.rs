//! Generators for the graph families the analyses are built around.

use num_traits::One;

use super::{validate, GraphError, PathRecord, RawEdge, RawGraph, TaskGraph};
use crate::rational::{int, pow, render, Rational};

/// Shape of an n-fan: a direct edge `s → t` of cost 1, a free spine
/// `s → v1 → … → vn`, and exit edges `(vi, t)` of cost `c^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanSpec {
    n: usize,
    c: Rational,
}

impl FanSpec {
    pub fn new(n: usize, c: Rational) -> Result<Self, GraphError> {
        if n < 1 {
            return Err(GraphError::InvalidParameters("a fan needs n >= 1".into()));
        }
        if c <= Rational::one() {
            return Err(GraphError::InvalidParameters(format!(
                "fan growth factor must exceed 1, got {}",
                render(&c)
            )));
        }
        Ok(FanSpec { n, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn c_f64(&self) -> f64 {
        crate::rational::to_f64(&self.c)
    }
}

fn edge(from: &str, to: &str, cost: &Rational) -> RawEdge {
    RawEdge {
        from: from.into(),
        to: to.into(),
        cost: render(cost),
    }
}

fn build(vertices: &[&str], edges: Vec<RawEdge>) -> TaskGraph {
    let raw = RawGraph {
        vertices: vertices.iter().map(|s| s.to_string()).collect(),
        edges,
        source: "s".into(),
        sink: "t".into(),
    };
    validate(&raw).expect("generated graphs are valid").graph
}

pub fn make_fan(spec: &FanSpec) -> TaskGraph {
    let spine: Vec<String> = (1..=spec.n).map(|i| format!("v{i}")).collect();
    // the sink precedes the spine so that exact ties resolve toward finishing now
    let mut names = vec!["s", "t"];
    names.extend(spine.iter().map(String::as_str));

    let zero = int(0);
    let mut edges = vec![edge("s", "t", &int(1)), edge("s", "v1", &zero)];
    for i in 1..spec.n {
        edges.push(edge(&spine[i - 1], &spine[i], &zero));
    }
    for (i, v) in spine.iter().enumerate() {
        edges.push(edge(v, "t", &pow(&spec.c, i + 1)));
    }
    build(&names, edges)
}

/// Fan path `P_i`: exit at `v_i`, or the direct edge for `i = 0`. Works on any
/// graph using the fan's vertex names (including the modified 3-fan).
pub fn fan_path(graph: &TaskGraph, i: usize) -> Result<PathRecord, GraphError> {
    let mut names = vec!["s".to_string()];
    names.extend((1..=i).map(|j| format!("v{j}")));
    names.push("t".to_string());
    graph.path_by_names(&names)
}

/// Small hand-built instances with documented, frozen costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NamedInstance {
    /// `fig1`: branching instance. Cheapest path `(s,x,t)` costs 6, a bias-2
    /// agent walks `(s,v,z,t)` for 21 after valuing `x` at 12 and `v` at 11.
    Fig1,
    /// `fig7a`: raising the reward from 1 to 300 pushes a bias-10 agent off
    /// `Q = (s,q1,q2,t)` onto the slower `V = (s,v1,v2,v3,t)`.
    Fig7a,
    /// `fig7b`: a bias-10 agent stays on `Q` at reward 10 but at reward 2
    /// leaves for `v1` and ends on the tied path `X = (s,v1,x,t)`.
    Fig7b,
    /// `mod3fan`: 3-fan with exit costs `c, c2, c3` where
    /// `1 < c < c² < c2 < c2² < c3`.
    ModifiedThreeFan { c: Rational, c2: Rational, c3: Rational },
}

impl NamedInstance {
    pub fn from_name(name: &str) -> Result<Self, GraphError> {
        match name {
            "fig1" => Ok(NamedInstance::Fig1),
            "fig7a" => Ok(NamedInstance::Fig7a),
            "fig7b" => Ok(NamedInstance::Fig7b),
            other => Err(GraphError::UnknownInstance(other.to_string())),
        }
    }
}

pub fn make_named_instance(instance: &NamedInstance) -> Result<TaskGraph, GraphError> {
    let c = |v: i64| int(v);
    Ok(match instance {
        NamedInstance::Fig1 => build(
            &["s", "x", "v", "y", "z", "t"],
            vec![
                edge("s", "x", &c(6)),
                edge("x", "t", &c(0)),
                edge("s", "v", &c(0)),
                edge("v", "y", &c(11)),
                edge("y", "t", &c(0)),
                edge("v", "z", &c(0)),
                edge("z", "t", &c(21)),
            ],
        ),
        NamedInstance::Fig7a => build(
            &["s", "q1", "q2", "v1", "v2", "v3", "t"],
            vec![
                edge("s", "q1", &c(0)),
                edge("q1", "q2", &c(2)),
                edge("q2", "t", &c(0)),
                edge("s", "v1", &c(0)),
                edge("v1", "t", &c(100)),
                edge("v1", "v2", &c(0)),
                edge("v2", "v3", &c(0)),
                edge("v3", "t", &c(10)),
            ],
        ),
        NamedInstance::Fig7b => build(
            &["s", "q1", "q2", "v1", "x", "v2", "v3", "t"],
            vec![
                edge("s", "q1", &c(0)),
                edge("q1", "q2", &c(8)),
                edge("q2", "t", &c(0)),
                edge("s", "v1", &c(0)),
                edge("v1", "x", &c(0)),
                edge("x", "t", &c(11)),
                edge("v1", "v2", &c(5)),
                edge("v2", "v3", &c(0)),
                edge("v3", "t", &c(0)),
            ],
        ),
        NamedInstance::ModifiedThreeFan { c: c1, c2, c3 } => {
            let sq = |x: &Rational| x * x;
            let ordered = Rational::one() < *c1 && sq(c1) < *c2 && sq(c2) < *c3;
            if !ordered {
                return Err(GraphError::InvalidParameters(format!(
                    "need 1 < c < c^2 < c2 < c2^2 < c3, got c={}, c2={}, c3={}",
                    render(c1),
                    render(c2),
                    render(c3)
                )));
            }
            let zero = c(0);
            build(
                &["s", "v1", "v2", "v3", "t"],
                vec![
                    edge("s", "t", &c(1)),
                    edge("s", "v1", &zero),
                    edge("v1", "v2", &zero),
                    edge("v2", "v3", &zero),
                    edge("v1", "t", c1),
                    edge("v2", "t", c2),
                    edge("v3", "t", c3),
                ],
            )
        }
    })
}

/// Unit-cost spine `s = u0 → u1 → … → un = t` where every `ui` (i ≤ n-2)
/// also offers a free first step onto a three-edge detour rejoining at
/// `u(i+2)` for total cost 3. The spine is the dominant path; an unrewarded
/// agent with bias above 2 takes every detour.
pub fn make_deviation_spine(n: usize) -> Result<TaskGraph, GraphError> {
    if n < 2 {
        return Err(GraphError::InvalidParameters("spine needs at least 2 edges".into()));
    }
    let spine: Vec<String> = (0..=n)
        .map(|i| match i {
            0 => "s".to_string(),
            i if i == n => "t".to_string(),
            i => format!("u{i}"),
        })
        .collect();
    let mut names: Vec<String> = spine.clone();
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push(edge(&spine[i], &spine[i + 1], &int(1)));
    }
    for i in 0..n - 1 {
        let (w, y) = (format!("w{i}"), format!("y{i}"));
        edges.push(edge(&spine[i], &w, &int(0)));
        edges.push(edge(&w, &y, &int(0)));
        edges.push(edge(&y, &spine[i + 2], &int(3)));
        names.push(w);
        names.push(y);
    }
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(build(&names, edges))
}
