//! A small benchmark run with per-group summaries; the full suite is
//! `multicover bench`.
//!
//! `cargo run --release --example benchmark`

use multicover::bench::{self, BenchConfig};

fn main() -> multicover::Result<()> {
    let cfg = BenchConfig::suite("small", (1..=10).collect())?;
    let report = bench::run_benchmark(&cfg)?;
    for g in report.summary() {
        let mean = g
            .mean_ratio()
            .map_or("n/a".to_string(), |r| format!("{r:.4}"));
        println!(
            "{:<15} {:<8} t={}  {}/{} feasible  mean ratio vs opt {mean}",
            g.problem.name(),
            g.shape.name(),
            g.t,
            g.feasible,
            g.instances
        );
    }
    Ok(())
}
