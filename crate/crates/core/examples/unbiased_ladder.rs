// Equilibria between unbiased agents under the three tie rules.
use biasgraph::agent::TieRule;
use biasgraph::graph::TaskGraph;
use biasgraph::pure_eq::classify_unbiased;
use biasgraph::rational::{int, render};

const GRAPH: &str = r#"{
  "vertices": ["s", "a", "b", "t"],
  "edges": [
    {"from": "s", "to": "t", "cost": "7"},
    {"from": "s", "to": "a", "cost": "0"},
    {"from": "a", "to": "t", "cost": "6"},
    {"from": "a", "to": "b", "cost": "0"},
    {"from": "b", "to": "t", "cost": "0"}
  ],
  "source": "s",
  "sink": "t"
}"#;

fn main() {
    let g = TaskGraph::from_json(GRAPH).unwrap().graph;
    for r in [1, 8, 14] {
        for rule in [TieRule::Split, TieRule::BothFull, TieRule::Nothing] {
            let report = classify_unbiased(&g, &int(r), rule);
            let rungs = report.ladder.paths();
            let costs: Vec<String> = report.ladder.costs().iter().map(render).collect();
            let sym: Vec<String> = report.symmetric.iter().map(|&i| g.describe(rungs[i].vertices())).collect();
            let asym = report.asymmetric.map(|(i, j)| {
                format!(" asymmetric {} vs {}", g.describe(rungs[i].vertices()), g.describe(rungs[j].vertices()))
            });
            println!("r={r:<3} {rule:<8?} ladder [{}] symmetric {sym:?}{}", costs.join(", "), asym.unwrap_or_default());
        }
    }
}
