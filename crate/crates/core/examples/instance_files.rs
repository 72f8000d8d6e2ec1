//! Writing, reading and validating JSON instance files.
//!
//! `cargo run --example instance_files`

use multicover::baselines::{self, GenParams};
use multicover::geom::ShapeKind;
use multicover::instance::{self, Instance, ProblemKind};

fn main() -> multicover::Result<()> {
    let params = GenParams::for_shape(ShapeKind::Interval);
    let cover =
        baselines::gen_cover_instance(ProblemKind::Mwds, ShapeKind::Interval, 3, 2, 2, &params, 5)?;
    let text = instance::instance_to_string(&Instance::Cover(cover));
    println!("{text}");

    let back = instance::parse_instance(&text)?;
    println!(
        "round trip kind: {}, violations: {}",
        back.kind(),
        back.validate().len()
    );

    let bad = r#"{"kind": "mwds", "t": 1, "shape": "interval",
        "reds": [{"id": 0, "weight": -2, "parts": [[0, 1]]}],
        "blues": [{"id": 0, "weight": 0, "parts": [[5, 6]]}]}"#;
    match instance::parse_instance(bad) {
        Ok(inst) => {
            for v in inst.validate() {
                println!("violation: {v}");
            }
        }
        Err(e) => println!("rejected: {e}"),
    }

    let uncoverable = r#"{"kind": "mwds", "t": 1, "shape": "interval",
        "reds": [{"id": 0, "weight": 1, "parts": [[0, 1]]}],
        "blues": [{"id": 0, "weight": 0, "parts": [[5, 6]]}]}"#;
    for v in instance::parse_instance(uncoverable)?.validate() {
        println!("violation: {v}");
    }
    Ok(())
}
