//! Packing with point capacities: every witness point may lie in at most
//! its capacity of chosen objects.
//!
//! `cargo run --example region_packing`

use multicover::baselines::{self, GenParams};
use multicover::geom::ShapeKind;
use multicover::instance::ProblemKind;
use multicover::pack;

fn main() -> multicover::Result<()> {
    let params = GenParams::for_shape(ShapeKind::Disk);
    for (lo, hi) in [(1, 1), (1, 3), (2, 4)] {
        let inst = baselines::gen_pack_instance(
            ProblemKind::RegionPacking,
            ShapeKind::Disk,
            14,
            2,
            (lo, hi),
            &params,
            3,
        )?;
        let r = pack::solve_region_packing(&inst, 3)?;
        let opt = baselines::brute_force_packing(&inst)?;
        println!(
            "capacities {lo}..={hi} over {} points: lp {:.3}  rounded {:.3}  opt {:.3}  feasible {}",
            inst.points.len(),
            r.lp_value,
            r.weight,
            opt.value,
            pack::respects_capacities(&inst, &r.chosen)?
        );
    }
    Ok(())
}
