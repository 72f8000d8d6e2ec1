//! Intersection predicates and the witness points used as LP rows.
//!
//! `cargo run --example geometry`

use multicover::geom::{self, BaseShape, Point, TObject};

fn main() -> multicover::Result<()> {
    let a = TObject::new(
        0,
        vec![BaseShape::interval(0.0, 1.0), BaseShape::interval(5.0, 6.0)],
        1.0,
    );
    let b = TObject::new(
        1,
        vec![BaseShape::interval(2.0, 3.0), BaseShape::interval(6.0, 7.0)],
        1.0,
    );
    let c = TObject::new(2, vec![BaseShape::interval(1.5, 1.8)], 1.0);
    println!("a meets b: {}", geom::t_intersects(&a, &b)?);
    println!("a meets c: {}", geom::t_intersects(&a, &c)?);
    println!(
        "a contains 5.5: {}",
        geom::contains_point(&a, &Point::Line(5.5))?
    );

    let d = BaseShape::disk(0.0, 0.0, 1.0);
    let e = BaseShape::disk(1.5, 0.0, 1.0);
    println!("unit disks 1.5 apart meet: {}", geom::intersects(&d, &e)?);
    for (x, y) in geom::circle_intersections(d.as_disk().unwrap(), e.as_disk().unwrap()) {
        println!("  boundary crossing at ({x:.4}, {y:.4})");
    }

    let disks = vec![
        TObject::new(0, vec![d], 1.0),
        TObject::new(1, vec![e], 1.0),
        TObject::new(2, vec![BaseShape::disk(0.75, 1.2, 0.8)], 1.0),
    ];
    let points = geom::constraint_points(&disks)?;
    println!("{} witness points for three disks:", points.len());
    for p in points {
        let inside: Vec<usize> = disks
            .iter()
            .filter(|o| geom::contains_point(o, &p).unwrap())
            .map(|o| o.id)
            .collect();
        println!("  {:?} lies in {:?}", p.coords(), inside);
    }
    Ok(())
}
