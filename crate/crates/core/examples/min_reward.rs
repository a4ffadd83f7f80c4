// Exact reward sets that hold both agents on a chosen path.
use biasgraph::graph::{make_deviation_spine, make_named_instance, NamedInstance};
use biasgraph::pure_eq::{check_symmetric_ne, dominant_path_reward, feasible_rewards, min_reward_for_ne};
use biasgraph::rational::{int, render};

fn main() {
    // a larger prize is not always better
    let g = make_named_instance(&NamedInstance::Fig7a).unwrap();
    let q = g.path_by_names(&["s", "q1", "q2", "t"]).unwrap();
    let set = feasible_rewards(&g, &q, &int(10)).unwrap();
    println!("fig7a, Q = {}: feasible rewards {}", g.describe(q.vertices()), set.set);

    // nor is a smaller one
    let g = make_named_instance(&NamedInstance::Fig7b).unwrap();
    let q = g.path_by_names(&["s", "q1", "q2", "t"]).unwrap();
    for r in [2, 10] {
        let res = check_symmetric_ne(&g, &q, &int(r), &int(10)).unwrap();
        match res.witness {
            None => println!("fig7b, r={r}: agent stays on Q"),
            Some(w) => println!("fig7b, r={r}: agent walks {}", g.describe(w.trace.path.vertices())),
        }
    }

    // the generic dominant-path prize against the exact minimum
    let g = make_deviation_spine(8).unwrap();
    for b in [3, 5, 10] {
        let (o, generic) = dominant_path_reward(&g, &int(b), 2).unwrap();
        let exact = min_reward_for_ne(&g, &o, &int(b)).unwrap();
        println!("spine, b={b}: generic {} vs exact {}", render(&generic), render(exact.minimum().unwrap()));
    }
}
