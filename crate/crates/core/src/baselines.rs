//! Exhaustive oracles, random instance generators and the reduction from
//! f-uniform set cover to red-blue dominating set on points.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{self, BaseShape, Point, ShapeKind, TObject};
use crate::instance::{self, Blues, CoverInstance, IncidenceMatrix, PackInstance, ProblemKind};

/// Largest column count accepted by the exhaustive searches.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Exhaustive optimum: chosen columns (sorted) and objective value.
#[derive(Clone, Debug, PartialEq)]
pub struct Optimum {
    pub chosen: Vec<usize>,
    pub value: f64,
}

fn mask_to_set(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

fn check_limit(n: usize) -> Result<()> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit {
            limit: BRUTE_FORCE_LIMIT,
            got: n,
        });
    }
    Ok(())
}

/// Keeps `candidate` if it beats `best`; equal values prefer the
/// lexicographically smaller set.
fn consider(best: &mut Option<Optimum>, chosen: Vec<usize>, value: f64, minimize: bool) {
    let better = match best {
        None => true,
        Some(b) => {
            let diff = if minimize {
                b.value - value
            } else {
                value - b.value
            };
            diff > 1e-9 || (diff.abs() <= 1e-9 && chosen < b.chosen)
        }
    };
    if better {
        *best = Some(Optimum { chosen, value });
    }
}

/// Walks all subsets of `n` columns in Gray-code order. `step` sees the
/// toggled column (absent for the empty start set) and the current mask.
fn gray_walk(n: usize, mut step: impl FnMut(Option<(usize, bool)>, u32)) {
    let mut mask = 0u32;
    step(None, mask);
    for g in 1u32..(1u32 << n) {
        let bit = g.trailing_zeros() as usize;
        mask ^= 1 << bit;
        step(Some((bit, mask >> bit & 1 == 1)), mask);
    }
}

/// Minimum-weight set of columns covering every row.
pub fn min_weight_cover(matrix: &IncidenceMatrix, weights: &[f64]) -> Result<Option<Optimum>> {
    let n = matrix.ncols;
    check_limit(n)?;
    let columns = matrix.columns();
    let mut hits = vec![0u32; matrix.nrows()];
    let mut uncovered = matrix.nrows();
    let mut best = None;
    gray_walk(n, |toggle, mask| {
        if let Some((col, on)) = toggle {
            for &r in &columns[col] {
                if on {
                    if hits[r] == 0 {
                        uncovered -= 1;
                    }
                    hits[r] += 1;
                } else {
                    hits[r] -= 1;
                    if hits[r] == 0 {
                        uncovered += 1;
                    }
                }
            }
        }
        if uncovered == 0 {
            let chosen = mask_to_set(mask, n);
            let value = chosen.iter().map(|&i| weights[i]).sum();
            consider(&mut best, chosen, value, true);
        }
    });
    Ok(best)
}

/// Maximum-weight set of columns whose row loads stay within `capacities`.
pub fn max_weight_packing(
    matrix: &IncidenceMatrix,
    weights: &[f64],
    capacities: &[u32],
) -> Result<Optimum> {
    let n = matrix.ncols;
    check_limit(n)?;
    let columns = matrix.columns();
    let mut load = vec![0u32; matrix.nrows()];
    let mut over = 0usize;
    let mut best = None;
    gray_walk(n, |toggle, mask| {
        if let Some((col, on)) = toggle {
            for &r in &columns[col] {
                if on {
                    load[r] += 1;
                    if load[r] == capacities[r] + 1 {
                        over += 1;
                    }
                } else {
                    if load[r] == capacities[r] + 1 {
                        over -= 1;
                    }
                    load[r] -= 1;
                }
            }
        }
        if over == 0 {
            let chosen = mask_to_set(mask, n);
            let value = chosen.iter().map(|&i| weights[i]).sum();
            consider(&mut best, chosen, value, false);
        }
    });
    Ok(best.expect("the empty set is always a packing"))
}

/// Exhaustive optimal cover of a covering instance with at most 20 reds.
pub fn brute_force_cover(inst: &CoverInstance) -> Result<Optimum> {
    check_limit(inst.reds.len())?;
    let matrix = instance::incidence(inst)?;
    min_weight_cover(&matrix, &inst.weights())?
        .ok_or_else(|| Error::Infeasible("no subset of reds covers every blue".into()))
}

/// Exhaustive optimal packing under the instance's point capacities.
pub fn brute_force_packing(inst: &PackInstance) -> Result<Optimum> {
    check_limit(inst.objects.len())?;
    max_weight_packing(&inst.incidence()?, &inst.weights(), &inst.capacities)
}

/// Exhaustive maximum-weight pairwise-disjoint subset, using the pairwise
/// intersection predicate only.
pub fn brute_force_independent_set(objects: &[TObject]) -> Result<Optimum> {
    let n = objects.len();
    check_limit(n)?;
    let mut conflicts = vec![0u32; n];
    for i in 0..n {
        for j in i + 1..n {
            if geom::t_intersects(&objects[i], &objects[j])? {
                conflicts[i] |= 1 << j;
                conflicts[j] |= 1 << i;
            }
        }
    }
    let mut best = None;
    for mask in 0u32..(1u32 << n) {
        let independent = (0..n).all(|i| mask >> i & 1 == 0 || conflicts[i] & mask == 0);
        if independent {
            let chosen = mask_to_set(mask, n);
            let value = chosen.iter().map(|&i| objects[i].weight).sum();
            consider(&mut best, chosen, value, false);
        }
    }
    Ok(best.expect("the empty set is independent"))
}

// ---------------------------------------------------------------------------
// Generators

/// Sampling ranges for random t-objects. `extent` is the interval length or
/// the disk radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenParams {
    pub coord: (f64, f64),
    pub extent: (f64, f64),
    pub weight: (f64, f64),
}

impl GenParams {
    pub fn for_shape(shape: ShapeKind) -> Self {
        match shape {
            ShapeKind::Interval => Self {
                coord: (0.0, 100.0),
                extent: (2.0, 12.0),
                weight: (1.0, 10.0),
            },
            ShapeKind::Disk => Self {
                coord: (0.0, 20.0),
                extent: (1.0, 3.0),
                weight: (1.0, 10.0),
            },
        }
    }

    fn check(&self) -> Result<()> {
        let ok = |(lo, hi): (f64, f64)| lo.is_finite() && hi.is_finite() && lo <= hi;
        if !ok(self.coord) || !ok(self.extent) || !ok(self.weight) {
            return Err(Error::InvalidParameter(
                "ranges must be finite with lo <= hi".into(),
            ));
        }
        if self.extent.0 < 0.0 || self.weight.0 < 0.0 {
            return Err(Error::InvalidParameter(
                "extent and weight ranges must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Snaps to a 1e-6 grid so files stay short and values round-trip.
fn snap(v: f64) -> f64 {
    (v * 1e6).round() / 1e6
}

fn uniform(rng: &mut ChaCha8Rng, (lo, hi): (f64, f64)) -> f64 {
    if lo == hi {
        lo
    } else {
        rng.gen_range(lo..hi)
    }
}

fn random_part(rng: &mut ChaCha8Rng, shape: ShapeKind, p: &GenParams) -> BaseShape {
    match shape {
        ShapeKind::Interval => {
            let lo = snap(uniform(rng, p.coord));
            let len = snap(uniform(rng, p.extent));
            BaseShape::interval(lo, snap(lo + len))
        }
        ShapeKind::Disk => {
            let cx = snap(uniform(rng, p.coord));
            let cy = snap(uniform(rng, p.coord));
            let r = snap(uniform(rng, p.extent)).max(1e-6);
            BaseShape::disk(cx, cy, r)
        }
    }
}

fn random_objects(
    rng: &mut ChaCha8Rng,
    shape: ShapeKind,
    n: usize,
    t: usize,
    p: &GenParams,
) -> Vec<TObject> {
    (0..n)
        .map(|id| {
            let parts = (0..t).map(|_| random_part(rng, shape, p)).collect();
            let weight = snap(uniform(rng, p.weight));
            TObject::new(id, parts, weight)
        })
        .collect()
}

fn check_t(t: usize) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameter("t must be at least 1".into()));
    }
    Ok(())
}

/// `n` random t-intervals with exactly `t` parts each.
pub fn gen_t_intervals(n: usize, t: usize, params: &GenParams, seed: u64) -> Result<Vec<TObject>> {
    check_t(t)?;
    params.check()?;
    Ok(random_objects(
        &mut ChaCha8Rng::seed_from_u64(seed),
        ShapeKind::Interval,
        n,
        t,
        params,
    ))
}

/// `n` random t-disks with exactly `t` parts each.
pub fn gen_t_disks(n: usize, t: usize, params: &GenParams, seed: u64) -> Result<Vec<TObject>> {
    check_t(t)?;
    params.check()?;
    if params.extent.0 <= 0.0 {
        return Err(Error::InvalidParameter(
            "disk radius range must be positive".into(),
        ));
    }
    Ok(random_objects(
        &mut ChaCha8Rng::seed_from_u64(seed),
        ShapeKind::Disk,
        n,
        t,
        params,
    ))
}

fn point_inside(rng: &mut ChaCha8Rng, part: &BaseShape) -> Point {
    match part {
        BaseShape::Interval(iv) => {
            Point::Line(snap(uniform(rng, (iv.lo, iv.hi))).clamp(iv.lo, iv.hi))
        }
        BaseShape::Disk(d) => {
            let rho = 0.999 * d.r * rng.gen::<f64>().sqrt();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let x = snap(d.cx + rho * theta.cos());
            let y = snap(d.cy + rho * theta.sin());
            if d.contains(x, y) {
                Point::Plane(x, y)
            } else {
                Point::Plane(d.cx, d.cy)
            }
        }
    }
}

/// Random feasible covering instance.
///
/// `mwds`: `m` blue t-objects, each resampled (up to 1000 times) until it
/// meets some red. `mwsc`: `m` points, each drawn inside a random part of a
/// random red.
pub fn gen_cover_instance(
    kind: ProblemKind,
    shape: ShapeKind,
    n: usize,
    m: usize,
    t: usize,
    params: &GenParams,
    seed: u64,
) -> Result<CoverInstance> {
    check_t(t)?;
    params.check()?;
    if n == 0 && m > 0 {
        return Err(Error::InvalidParameter(
            "cannot cover blues without reds".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reds = random_objects(&mut rng, shape, n, t, params);
    let blues = match kind {
        ProblemKind::Mwds => {
            let mut blues = Vec::with_capacity(m);
            for id in 0..m {
                let mut blue = TObject::new(id, Vec::new(), 0.0);
                for _ in 0..1000 {
                    blue.parts = (0..t)
                        .map(|_| random_part(&mut rng, shape, params))
                        .collect();
                    let mut hit = false;
                    for red in &reds {
                        if geom::t_intersects(red, &blue)? {
                            hit = true;
                            break;
                        }
                    }
                    if hit {
                        break;
                    }
                }
                blues.push(blue);
            }
            Blues::Objects(blues)
        }
        ProblemKind::Mwsc => Blues::Points(
            (0..m)
                .map(|_| {
                    let red = &reds[rng.gen_range(0..n)];
                    let part = red.parts[rng.gen_range(0..red.parts.len())];
                    point_inside(&mut rng, &part)
                })
                .collect(),
        ),
        other => {
            return Err(Error::InvalidParameter(format!(
                "{other} is not a covering problem"
            )))
        }
    };
    Ok(CoverInstance {
        t,
        shape,
        reds,
        blues,
    })
}

/// Random packing instance over the witness points of `n` random
/// t-objects. `mwis` uses unit capacities; `region_packing` draws each
/// capacity uniformly from `capacity`.
pub fn gen_pack_instance(
    kind: ProblemKind,
    shape: ShapeKind,
    n: usize,
    t: usize,
    capacity: (u32, u32),
    params: &GenParams,
    seed: u64,
) -> Result<PackInstance> {
    check_t(t)?;
    params.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objects = random_objects(&mut rng, shape, n, t, params);
    match kind {
        ProblemKind::Mwis => PackInstance::mwis(t, shape, objects),
        ProblemKind::RegionPacking => {
            if capacity.0 == 0 || capacity.0 > capacity.1 {
                return Err(Error::InvalidParameter(
                    "capacity range must satisfy 1 <= lo <= hi".into(),
                ));
            }
            let points = geom::constraint_points(&objects)?;
            let capacities = points
                .iter()
                .map(|_| rng.gen_range(capacity.0..=capacity.1))
                .collect();
            Ok(PackInstance {
                t,
                shape,
                objects,
                points,
                capacities,
                kind,
            })
        }
        other => Err(Error::InvalidParameter(format!(
            "{other} is not a packing problem"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Set cover and the point reduction

/// Abstract weighted set system over elements `0..num_elements`.
#[derive(Clone, Debug, PartialEq)]
pub struct SetSystem {
    pub num_elements: usize,
    /// Sorted element lists.
    pub sets: Vec<Vec<usize>>,
    pub weights: Vec<f64>,
}

impl SetSystem {
    /// Element-by-set membership matrix.
    pub fn incidence(&self) -> IncidenceMatrix {
        let mut rows = vec![Vec::new(); self.num_elements];
        for (i, set) in self.sets.iter().enumerate() {
            for &e in set {
                rows[e].push(i);
            }
        }
        IncidenceMatrix::from_rows(self.sets.len(), rows)
    }

    /// Largest number of sets containing one element.
    pub fn frequency(&self) -> usize {
        self.incidence()
            .rows
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }
}

/// Set system where every element lies in exactly `f` distinct sets.
pub fn gen_f_uniform_setcover(
    num_elements: usize,
    num_sets: usize,
    f: usize,
    weight_range: (f64, f64),
    seed: u64,
) -> Result<SetSystem> {
    if f == 0 || f > num_sets {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= f <= num_sets, got f = {f}"
        )));
    }
    if !(weight_range.0 >= 0.0 && weight_range.0 <= weight_range.1) {
        return Err(Error::InvalidParameter(
            "weight range must satisfy 0 <= lo <= hi".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = vec![Vec::new(); num_sets];
    for e in 0..num_elements {
        for s in index::sample(&mut rng, num_sets, f) {
            sets[s].push(e);
        }
    }
    let weights = (0..num_sets)
        .map(|_| snap(uniform(&mut rng, weight_range)))
        .collect();
    Ok(SetSystem {
        num_elements,
        sets,
        weights,
    })
}

pub fn brute_force_set_cover(sc: &SetSystem) -> Result<Optimum> {
    min_weight_cover(&sc.incidence(), &sc.weights)?
        .ok_or_else(|| Error::Infeasible("some element lies in no set".into()))
}

/// Red point `[i+1, i+1]` per set, blue f-point per element made of the
/// points of the sets containing it. Instance `t` is the system frequency.
pub fn reduce_setcover_to_mwds(sc: &SetSystem) -> Result<CoverInstance> {
    let at = |i: usize| {
        let p = (i + 1) as f64;
        BaseShape::interval(p, p)
    };
    let reds = sc
        .sets
        .iter()
        .enumerate()
        .map(|(i, _)| TObject::new(i, vec![at(i)], sc.weights[i]))
        .collect();
    let incidence = sc.incidence();
    let mut blues = Vec::with_capacity(sc.num_elements);
    for (e, row) in incidence.rows.iter().enumerate() {
        if row.is_empty() {
            return Err(Error::InvalidParameter(format!(
                "element {e} lies in no set"
            )));
        }
        blues.push(TObject::new(e, row.iter().map(|&i| at(i)).collect(), 0.0));
    }
    Ok(CoverInstance {
        t: sc.frequency().max(1),
        shape: ShapeKind::Interval,
        reds,
        blues: Blues::Objects(blues),
    })
}
