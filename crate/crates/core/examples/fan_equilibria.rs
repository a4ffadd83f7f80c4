// Which fan paths both agents can settle on, as the prize varies.
use biasgraph::graph::{fan_path, make_fan, FanSpec};
use biasgraph::pure_eq::{check_symmetric_ne, fan_ne_thresholds};
use biasgraph::rational::{int, ratio, render};

fn main() {
    let spec = FanSpec::new(5, ratio(3, 2)).unwrap();
    let bias = int(2);
    let g = make_fan(&spec);
    let t = fan_ne_thresholds(&spec, &bias).unwrap();
    println!(
        "direct path from r >= {}, longest path up to r <= {}",
        render(&t.optimal_min_reward),
        render(&t.longest_max_reward)
    );

    let rewards = [ratio(1, 2), int(1), int(3), ratio(81, 16), int(6)];
    print!("{:>6}", "r");
    for i in 0..=spec.n() {
        print!("{:>5}", format!("P{i}"));
    }
    println!();
    for r in &rewards {
        print!("{:>6}", render(r));
        for i in 0..=spec.n() {
            let q = fan_path(&g, i).unwrap();
            let ne = check_symmetric_ne(&g, &q, r, &bias).unwrap().is_equilibrium;
            print!("{:>5}", if ne { "NE" } else { "." });
        }
        println!();
    }
}
