// Cutoff equilibria on the fan when biases are private, checked by simulation.
use biasgraph::bne::{closed_form_p, solve_fan_bne, BiasDistribution};
use biasgraph::graph::FanSpec;
use biasgraph::oracle::monte_carlo_fan_bne;
use biasgraph::rational::int;

fn main() {
    let spec = FanSpec::new(5, int(2)).unwrap();
    let dists = [
        ("equal revenue", BiasDistribution::shifted_equal_revenue(2.0).unwrap()),
        ("exponential", BiasDistribution::shifted_exponential(2.0, 1.0).unwrap()),
        ("uniform [2,4]", BiasDistribution::uniform(2.0, 4.0).unwrap()),
    ];
    for (name, dist) in dists {
        println!("{name}");
        for r in [2.0, 4.0, 10.0, 40.0] {
            let sol = match solve_fan_bne(&spec, &dist, r) {
                Ok(s) => s,
                Err(e) => e.fallback().unwrap().clone(),
            };
            let mut line = format!(
                "  r={r:<4} p={:.6} (closed form {:.6}) valid={} cost ratio {:.3}",
                sol.p,
                closed_form_p(&dist, r),
                sol.valid,
                sol.cost_ratio
            );
            if sol.valid {
                let f = monte_carlo_fan_bne(&spec, &dist, r, sol.cutoff, 20_000, 1);
                line += &format!(", simulated {:.4} ± {:.4}", f.frequency(0), f.std_error(0));
            }
            println!("{line}");
        }
    }
}
