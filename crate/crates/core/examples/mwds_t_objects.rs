//! Red-blue dominating set with t-intervals and t-disks: LP, reduction to
//! single parts, rounding, and comparison with the exhaustive optimum.
//!
//! `cargo run --example mwds_t_objects`

use multicover::baselines::{self, GenParams};
use multicover::cover;
use multicover::geom::ShapeKind;
use multicover::instance::ProblemKind;

fn main() -> multicover::Result<()> {
    for shape in [ShapeKind::Interval, ShapeKind::Disk] {
        for t in 2..=4 {
            let params = GenParams::for_shape(shape);
            let inst =
                baselines::gen_cover_instance(ProblemKind::Mwds, shape, 14, 12, t, &params, 11)?;
            let x = cover::solve_cover_lp(&inst)?;
            let reduced = cover::reduce_instance(&inst, &x)?;
            let sol = cover::solve_mwds(&inst, 11)?;
            let opt = baselines::brute_force_cover(&inst)?;
            println!(
                "{:<8} t={t}  lp {:>8.4}  scaled lp {:>8.4}  rounded {:>8.4}  opt {:>8.4}  cover {:?}",
                shape.name(),
                x.objective,
                reduced.scaled_cost(),
                sol.cost,
                opt.value,
                sol.cover
            );
        }
    }
    Ok(())
}
