//! Plain intervals: the covering LP optimum equals the exact dominating set
//! cost, and the preprocessed incidence matrix has consecutive ones.
//!
//! `cargo run --example interval_integrality`

use multicover::baselines::{self, GenParams};
use multicover::cover;
use multicover::geom::ShapeKind;
use multicover::instance::{self, ProblemKind};

fn main() -> multicover::Result<()> {
    let params = GenParams::for_shape(ShapeKind::Interval);
    println!(
        "{:>4} {:>4} {:>4} {:>12} {:>12} {:>6}",
        "seed", "n", "m", "lp", "exact", "c1p"
    );
    for seed in 0..10 {
        let inst = baselines::gen_cover_instance(
            ProblemKind::Mwds,
            ShapeKind::Interval,
            20,
            15,
            1,
            &params,
            seed,
        )?;
        let lp = cover::solve_cover_lp(&inst)?;
        let exact = cover::exact_interval_mwds(&inst)?;
        let c1p = cover::check_consecutive_ones(&sorted(&inst));
        println!(
            "{seed:>4} {:>4} {:>4} {:>12.6} {:>12.6} {c1p:>6}",
            inst.reds.len(),
            inst.blues.len(),
            lp.objective,
            exact.cost
        );
    }
    Ok(())
}

fn sorted(inst: &instance::CoverInstance) -> instance::IncidenceMatrix {
    let ivs = |objs: &[multicover::geom::TObject]| -> Vec<_> {
        objs.iter()
            .map(|o| *o.parts[0].as_interval().unwrap())
            .collect()
    };
    let instance::Blues::Objects(blues) = &inst.blues else {
        unreachable!()
    };
    cover::sorted_interval_incidence(
        &ivs(&inst.reds),
        &cover::preprocess_blue_intervals(&ivs(blues)),
    )
}
