//! Maximum-weight independent set of t-objects and capacitated region
//! packing, both by LP relaxation followed by sample-and-prune rounding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::baselines;
use crate::error::{Error, Result};
use crate::geom::{self, ShapeKind, TObject};
use crate::instance::{PackInstance, ProblemKind};
use crate::lp::{self, LpModel, LpSolution};

pub const DEFAULT_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct PackingResult {
    /// Sorted object indices.
    pub chosen: Vec<usize>,
    pub weight: f64,
    pub lp_value: f64,
    pub trials_used: usize,
}

fn shape_of(objects: &[TObject]) -> ShapeKind {
    objects
        .iter()
        .find_map(TObject::kind)
        .unwrap_or(ShapeKind::Interval)
}

fn mwis_instance(objects: &[TObject]) -> Result<PackInstance> {
    let t = objects
        .iter()
        .map(|o| o.parts.len())
        .max()
        .unwrap_or(1)
        .max(1);
    PackInstance::mwis(t, shape_of(objects), objects.to_vec())
}

/// Packing LP with a unit-capacity row per witness point of `objects`.
pub fn build_mwis_lp(objects: &[TObject]) -> Result<LpModel> {
    lp::build_packing_lp(&mwis_instance(objects)?)
}

/// Adjacency lists of the pairwise intersection graph.
pub fn conflict_graph(objects: &[TObject]) -> Result<Vec<Vec<usize>>> {
    let n = objects.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if geom::t_intersects(&objects[i], &objects[j])? {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    Ok(adj)
}

pub fn is_independent(objects: &[TObject], chosen: &[usize]) -> Result<bool> {
    for (a, &i) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            if geom::t_intersects(&objects[i], &objects[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn respects_capacities(inst: &PackInstance, chosen: &[usize]) -> Result<bool> {
    for (p, &cap) in inst.points.iter().zip(&inst.capacities) {
        let mut load = 0u32;
        for &i in chosen {
            if geom::contains_point(&inst.objects[i], p)? {
                load += 1;
            }
        }
        if load > cap {
            return Ok(false);
        }
    }
    Ok(true)
}

fn total_weight(objects: &[TObject], chosen: &[usize]) -> f64 {
    chosen.iter().map(|&i| objects[i].weight).sum()
}

/// Best-of merge: heavier wins, equal weights prefer the lexicographically
/// smaller set.
fn keep_better(best: &mut Option<(Vec<usize>, f64)>, chosen: Vec<usize>, weight: f64) {
    let better = match best {
        None => true,
        Some((set, w)) => weight > *w + 1e-12 || ((weight - *w).abs() <= 1e-12 && chosen < *set),
    };
    if better {
        *best = Some((chosen, weight));
    }
}

/// Objects by decreasing LP value, ties to the smaller index. Used to
/// extend a pruned sample to a maximal feasible one.
fn completion_order(x: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].total_cmp(&x[a]).then(a.cmp(&b)));
    order
}

fn trial_rngs(seed: u64, trials: usize) -> impl Iterator<Item = ChaCha8Rng> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).map(move |_| ChaCha8Rng::seed_from_u64(master.gen()))
}

/// Sample-and-prune rounding for independent set.
///
/// Each trial draws a priority per object and keeps object `i` as a
/// candidate with probability `x_i / 4`; candidates are scanned by
/// increasing priority and kept when they meet no kept object. The result
/// is then extended greedily, by decreasing `x_i`, to a maximal independent
/// set. The heaviest of `trials` outcomes is returned. When `trials >= 2^n` (and
/// `n <= 20`) the search is exhaustive instead.
pub fn round_mwis(
    objects: &[TObject],
    x: &LpSolution,
    seed: u64,
    trials: usize,
) -> Result<PackingResult> {
    let n = objects.len();
    if x.values.len() != n {
        return Err(Error::Precondition(
            "solution length differs from object count".into(),
        ));
    }
    if n <= baselines::BRUTE_FORCE_LIMIT && trials as u64 >= 1u64 << n {
        let opt = baselines::brute_force_independent_set(objects)?;
        return Ok(PackingResult {
            chosen: opt.chosen,
            weight: opt.value,
            lp_value: x.objective,
            trials_used: 1 << n,
        });
    }
    let adj = conflict_graph(objects)?;
    let mut best = None;
    for mut rng in trial_rngs(seed, trials) {
        let mut candidates: Vec<(f64, usize)> = Vec::new();
        for (i, &xi) in x.values.iter().enumerate() {
            let priority: f64 = rng.gen();
            let draw: f64 = rng.gen();
            if draw < xi / 4.0 {
                candidates.push((priority, i));
            }
        }
        candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let mut kept = vec![false; n];
        for &(_, i) in &candidates {
            if adj[i].iter().all(|&j| !kept[j]) {
                kept[i] = true;
            }
        }
        for i in completion_order(&x.values) {
            if !kept[i] && adj[i].iter().all(|&j| !kept[j]) {
                kept[i] = true;
            }
        }
        let chosen: Vec<usize> = (0..n).filter(|&i| kept[i]).collect();
        let weight = total_weight(objects, &chosen);
        keep_better(&mut best, chosen, weight);
    }
    let (chosen, weight) = best.unwrap_or_default();
    debug_assert!(is_independent(objects, &chosen)?);
    Ok(PackingResult {
        chosen,
        weight,
        lp_value: x.objective,
        trials_used: trials,
    })
}

/// LP relaxation over witness points, then [`round_mwis`] with 20 trials.
pub fn solve_mwis(objects: &[TObject], seed: u64) -> Result<PackingResult> {
    let x = lp::solve_lp(&build_mwis_lp(objects)?)?;
    round_mwis(objects, &x, seed, DEFAULT_TRIALS)
}

/// Capacitated packing.
///
/// Each of 20 trials samples object `i` with probability `x_i * alpha`,
/// `alpha = min(1, t^(-1/C))` with `C` the smallest capacity, then walks the
/// points in order and drops the lightest chosen objects at any point loaded
/// beyond its capacity. Objects that still fit are then added by decreasing
/// `x_i`. The heaviest outcome is returned.
pub fn solve_region_packing(inst: &PackInstance, seed: u64) -> Result<PackingResult> {
    if !matches!(inst.kind, ProblemKind::Mwis | ProblemKind::RegionPacking) {
        return Err(Error::Precondition(format!(
            "{} is not a packing problem",
            inst.kind
        )));
    }
    if inst.capacities.contains(&0) {
        return Err(Error::Precondition("capacities must be at least 1".into()));
    }
    let x = lp::solve_lp(&lp::build_packing_lp(inst)?)?;
    let alpha = (inst.t as f64)
        .powf(-1.0 / f64::from(inst.min_capacity()))
        .min(1.0);
    let matrix = inst.incidence()?;
    let columns = matrix.columns();
    let n = inst.objects.len();
    let mut best = None;
    for mut rng in trial_rngs(seed, DEFAULT_TRIALS) {
        let mut on: Vec<bool> = x
            .values
            .iter()
            .map(|&xi| rng.gen::<f64>() < xi * alpha)
            .collect();
        for (row, &cap) in matrix.rows.iter().zip(&inst.capacities) {
            let mut here: Vec<usize> = row.iter().copied().filter(|&i| on[i]).collect();
            if here.len() > cap as usize {
                // heaviest first, ties to the smaller index
                here.sort_by(|&a, &b| {
                    inst.objects[b]
                        .weight
                        .total_cmp(&inst.objects[a].weight)
                        .then(a.cmp(&b))
                });
                for &i in &here[cap as usize..] {
                    on[i] = false;
                }
            }
        }
        let mut load: Vec<u32> = matrix
            .rows
            .iter()
            .map(|row| row.iter().filter(|&&i| on[i]).count() as u32)
            .collect();
        for i in completion_order(&x.values) {
            if !on[i] && columns[i].iter().all(|&p| load[p] < inst.capacities[p]) {
                on[i] = true;
                for &p in &columns[i] {
                    load[p] += 1;
                }
            }
        }
        let chosen: Vec<usize> = (0..n).filter(|&i| on[i]).collect();
        let weight = total_weight(&inst.objects, &chosen);
        keep_better(&mut best, chosen, weight);
    }
    let (chosen, weight) = best.unwrap_or_default();
    debug_assert!(respects_capacities(inst, &chosen)?);
    Ok(PackingResult {
        chosen,
        weight,
        lp_value: x.objective,
        trials_used: DEFAULT_TRIALS,
    })
}
