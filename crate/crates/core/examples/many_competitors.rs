// More competitors at a fixed per-agent prize barely help.
use biasgraph::bne::{equal_revenue_share_bound, expected_inverse_share, solve_fan_bne_multi, BiasDistribution};
use biasgraph::graph::FanSpec;
use biasgraph::oracle::monte_carlo_inverse_share;
use biasgraph::rational::int;

fn main() {
    let spec = FanSpec::new(5, int(2)).unwrap();
    let dist = BiasDistribution::shifted_equal_revenue(2.0).unwrap();
    for s in [1.0, 4.0, 16.0] {
        print!("per-agent prize {s:>4}: bound {:.4} |", equal_revenue_share_bound(s));
        for m in [1u32, 5, 20, 100] {
            let p = match solve_fan_bne_multi(&spec, &dist, s * (m as f64 + 1.0), m) {
                Ok(sol) => sol.p,
                Err(e) => e.fallback().unwrap().p,
            };
            print!(" m={m}: {p:.4}");
        }
        println!();
    }

    let (p, m) = (0.3, 8);
    let (mean, se) = monte_carlo_inverse_share(p, m, 200_000, 5);
    println!("E[1/(N+1)], N~Bin({m},{p}): {:.5} exact, {mean:.5} ± {se:.5} sampled", expected_inverse_share(p, m));
}
