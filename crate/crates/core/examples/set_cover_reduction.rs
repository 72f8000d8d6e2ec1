//! Any set system with element frequency f becomes a dominating set
//! instance with f-objects made of points, and the optima coincide.
//!
//! `cargo run --example set_cover_reduction`

use multicover::baselines;

fn main() -> multicover::Result<()> {
    for seed in 0..5 {
        let sc = baselines::gen_f_uniform_setcover(10, 8, 3, (1.0, 5.0), seed)?;
        let direct = baselines::brute_force_set_cover(&sc)?;
        let inst = baselines::reduce_setcover_to_mwds(&sc)?;
        let via = baselines::brute_force_cover(&inst)?;
        println!(
            "seed {seed}: t = {}, set cover {:.6} {:?}, dominating set {:.6} {:?}",
            inst.t, direct.value, direct.chosen, via.value, via.chosen
        );
    }
    Ok(())
}
