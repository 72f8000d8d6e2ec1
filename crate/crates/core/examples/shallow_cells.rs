//! Shallow cell counts of a t-object instance against those of its
//! one-part-per-column expansion, plus the growth trend in the depth.
//!
//! `cargo run --example shallow_cells`

use multicover::baselines::{self, GenParams};
use multicover::cover;
use multicover::geom::ShapeKind;
use multicover::instance::ProblemKind;
use multicover::scc;

fn main() -> multicover::Result<()> {
    let params = GenParams::for_shape(ShapeKind::Disk);
    let inst =
        baselines::gen_cover_instance(ProblemKind::Mwds, ShapeKind::Disk, 20, 30, 3, &params, 2)?;
    let x = cover::solve_cover_lp(&inst)?;
    let report = scc::verify_scc_lemma(&inst, &x, 12, 2)?;
    println!("{:>3} {:>3} {:>8} {:>8}", "n", "k", "g", "f");
    for s in &report.samples {
        println!("{:>3} {:>3} {:>8} {:>8}", s.n, s.k, s.g_count, s.f_count);
    }
    println!("violations: {}", report.violations.len());

    let reduced = cover::reduce_instance(&inst, &x)?;
    let parts = scc::constituent_instance(&reduced)?;
    let trend = scc::scc_trend(&parts.matrix, 16, 20, 2);
    println!(
        "log-log slope of shallow count in k: {:.3} (flagged: {})",
        trend.slope, trend.flagged
    );
    Ok(())
}
