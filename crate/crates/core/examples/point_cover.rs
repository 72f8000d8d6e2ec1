//! Covering points with weighted t-objects.
//!
//! `cargo run --example point_cover`

use multicover::cover;
use multicover::geom::{BaseShape, Point, ShapeKind, TObject};
use multicover::instance::{Blues, CoverInstance};

fn main() -> multicover::Result<()> {
    let reds = vec![
        TObject::new(
            0,
            vec![
                BaseShape::interval(0.0, 2.0),
                BaseShape::interval(10.0, 12.0),
            ],
            3.0,
        ),
        TObject::new(1, vec![BaseShape::interval(1.0, 4.0)], 1.0),
        TObject::new(2, vec![BaseShape::interval(3.0, 11.0)], 2.5),
        TObject::new(3, vec![BaseShape::interval(11.5, 13.0)], 1.0),
    ];
    let points = [0.5, 3.5, 10.5, 12.5].map(Point::Line).to_vec();
    let inst = CoverInstance {
        t: 2,
        shape: ShapeKind::Interval,
        reds,
        blues: Blues::Points(points),
    };
    let sol = cover::solve_mwsc(&inst, 1)?;
    println!(
        "lp value {:.4}, cover {:?} costing {}",
        sol.lp_value, sol.cover, sol.cost
    );
    Ok(())
}
