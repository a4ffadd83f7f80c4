// Each analysis against its brute-force counterpart on random instances.
use biasgraph::oracle::{run_suite, Suite};

fn main() {
    for suite in [Suite::FeasibleSet, Suite::Ladder, Suite::FanThresholds, Suite::DominantPath, Suite::Bne] {
        let report = run_suite(suite, 25, 42);
        println!(
            "{:<14} {} cases: {}",
            format!("{suite:?}"),
            report.cases,
            if report.passed { "ok" } else { "FAILED" }
        );
        for dump in &report.failures {
            println!("  {dump}");
        }
    }
}
