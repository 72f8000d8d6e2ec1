//! Boundary vertex counts of disk unions against the linear bound.
//!
//! `cargo run --example union_complexity`

use multicover::baselines::{self, GenParams};
use multicover::geom::{self, BaseShape, ShapeKind};

fn main() -> multicover::Result<()> {
    let params = GenParams::for_shape(ShapeKind::Disk);
    println!("{:>4} {:>9} {:>6}", "m", "vertices", "bound");
    for m in [3, 5, 10, 20, 40, 80] {
        let shapes: Vec<BaseShape> = baselines::gen_t_disks(m, 1, &params, m as u64)?
            .into_iter()
            .flat_map(|o| o.parts)
            .collect();
        let c = geom::union_vertex_count(&shapes)?;
        println!(
            "{m:>4} {:>9} {:>6}",
            c.vertices,
            geom::union_complexity_bound(ShapeKind::Disk, m)
        );
    }
    Ok(())
}
