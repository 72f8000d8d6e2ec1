//! Maximum weight independent set of t-objects by LP rounding.
//!
//! `cargo run --example independent_set`

use multicover::baselines::{self, GenParams};
use multicover::geom::ShapeKind;
use multicover::pack;

fn main() -> multicover::Result<()> {
    for shape in [ShapeKind::Interval, ShapeKind::Disk] {
        let params = GenParams::for_shape(shape);
        let objects = match shape {
            ShapeKind::Interval => baselines::gen_t_intervals(16, 3, &params, 7)?,
            ShapeKind::Disk => baselines::gen_t_disks(16, 3, &params, 7)?,
        };
        let graph = pack::conflict_graph(&objects)?;
        let edges: usize = graph.iter().map(Vec::len).sum::<usize>() / 2;
        let r = pack::solve_mwis(&objects, 7)?;
        let opt = baselines::brute_force_independent_set(&objects)?;
        println!(
            "{:<8} {edges} conflicts  lp {:.3}  rounded {:.3}  opt {:.3}  chosen {:?}",
            shape.name(),
            r.lp_value,
            r.weight,
            opt.value,
            r.chosen
        );
        assert!(pack::is_independent(&objects, &r.chosen)?);
    }
    Ok(())
}
