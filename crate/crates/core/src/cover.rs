//! Covering pipelines: the t-to-1 reduction of blue t-objects, randomized
//! rounding with repair, and the exact interval dominating-set solver.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{self, BaseShape, Interval, ShapeKind, TObject};
use crate::instance::{self, Blues, CoverInstance, IncidenceMatrix, ProblemKind};
use crate::lp::{self, LpSolution, FEAS_TOL};

/// Result of a covering pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct CoverSolution {
    /// Sorted red indices.
    pub cover: Vec<usize>,
    pub lp_value: f64,
    pub cost: f64,
}

fn hits_part(red: &TObject, part: &BaseShape) -> Result<bool> {
    for p in &red.parts {
        if geom::intersects(p, part)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn check_feasible(inst: &CoverInstance, x: &LpSolution) -> Result<IncidenceMatrix> {
    let matrix = instance::incidence(inst)?;
    if x.values.len() != inst.reds.len() {
        return Err(Error::Precondition(
            "solution length differs from red count".into(),
        ));
    }
    for (j, row) in matrix.rows.iter().enumerate() {
        let lhs: f64 = row.iter().map(|&i| x.values[i]).sum();
        if lhs < 1.0 - FEAS_TOL {
            return Err(Error::Precondition(format!(
                "blue {j} covered only {lhs:.9}"
            )));
        }
    }
    Ok(matrix)
}

/// For each blue, the index of its part with the largest fractional
/// coverage. Ties go to the smallest index; point blues always get 0.
pub fn select_best_constituents(inst: &CoverInstance, x: &LpSolution) -> Result<Vec<usize>> {
    let Blues::Objects(blues) = &inst.blues else {
        return Ok(vec![0; inst.blues.len()]);
    };
    blues
        .iter()
        .map(|blue| {
            let mut best = (0, f64::NEG_INFINITY);
            for (k, part) in blue.parts.iter().enumerate() {
                let mut coverage = 0.0;
                for (i, red) in inst.reds.iter().enumerate() {
                    if hits_part(red, part)? {
                        coverage += x.values[i];
                    }
                }
                if coverage > best.1 + 1e-12 {
                    best = (k, coverage);
                }
            }
            Ok(best.0)
        })
        .collect()
}

/// Instance with every blue replaced by one of its parts, and the LP
/// solution scaled to stay feasible for it.
#[derive(Clone, Debug)]
pub struct ReducedInstance<'a> {
    pub original: &'a CoverInstance,
    /// Chosen part per blue.
    pub constituents: Vec<usize>,
    /// `min(t * x_i, 1)` per red; equal to `x` for point blues.
    pub scaled: Vec<f64>,
    /// Chosen parts by reds.
    pub incidence: IncidenceMatrix,
}

impl ReducedInstance<'_> {
    /// The chosen blue parts as 1-objects; empty for point blues.
    pub fn blue_parts(&self) -> Vec<BaseShape> {
        match &self.original.blues {
            Blues::Objects(blues) => blues
                .iter()
                .zip(&self.constituents)
                .map(|(b, &k)| b.parts[k])
                .collect(),
            Blues::Points(_) => Vec::new(),
        }
    }

    /// Largest shortfall `1 - sum x'` over the reduced rows.
    pub fn feasibility_residual(&self) -> f64 {
        self.incidence
            .rows
            .iter()
            .map(|row| 1.0 - row.iter().map(|&i| self.scaled[i]).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn scaled_cost(&self) -> f64 {
        self.original
            .reds
            .iter()
            .zip(&self.scaled)
            .map(|(r, x)| r.weight * x)
            .sum()
    }
}

/// Replaces each blue t-object by its best-covered part and scales `x` by t.
pub fn reduce_instance<'a>(inst: &'a CoverInstance, x: &LpSolution) -> Result<ReducedInstance<'a>> {
    let original = check_feasible(inst, x)?;
    let constituents = select_best_constituents(inst, x)?;
    match &inst.blues {
        Blues::Points(_) => Ok(ReducedInstance {
            original: inst,
            constituents,
            scaled: x.values.clone(),
            incidence: original,
        }),
        Blues::Objects(blues) => {
            let t = inst.t as f64;
            let scaled = x.values.iter().map(|&v| (t * v).min(1.0)).collect();
            let incidence = IncidenceMatrix::build(blues.len(), inst.reds.len(), |j, i| {
                hits_part(&inst.reds[i], &blues[j].parts[constituents[j]])
            })?;
            Ok(ReducedInstance {
                original: inst,
                constituents,
                scaled,
                incidence,
            })
        }
    }
}

/// Strategy turning a fractional cover into an integral one.
pub trait CoverRounder {
    /// Returns sorted column indices covering every row of `matrix`.
    fn round(
        &self,
        matrix: &IncidenceMatrix,
        weights: &[f64],
        fractional: &[f64],
        seed: u64,
    ) -> Vec<usize>;
}

/// Independent sampling boosted by `ln(2M + 2)`, greedy repair of uncovered
/// rows, then removal of redundant columns heaviest first.
#[derive(Clone, Copy, Debug)]
pub struct SampleAndRepair {
    pub rounds: usize,
}

impl Default for SampleAndRepair {
    fn default() -> Self {
        Self { rounds: 3 }
    }
}

impl CoverRounder for SampleAndRepair {
    fn round(
        &self,
        matrix: &IncidenceMatrix,
        weights: &[f64],
        fractional: &[f64],
        seed: u64,
    ) -> Vec<usize> {
        let n = matrix.ncols;
        let columns = matrix.columns();
        let boost = (2.0 * matrix.nrows() as f64 + 2.0).ln();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);

        let mut chosen = vec![false; n];
        let mut hits = vec![0usize; matrix.nrows()];
        let mut uncovered = matrix.nrows();
        let take =
            |i: usize, chosen: &mut Vec<bool>, hits: &mut Vec<usize>, uncovered: &mut usize| {
                chosen[i] = true;
                for &r in &columns[i] {
                    if hits[r] == 0 {
                        *uncovered -= 1;
                    }
                    hits[r] += 1;
                }
            };

        for _ in 0..self.rounds {
            if uncovered == 0 {
                break;
            }
            for i in 0..n {
                let p = (fractional[i] * boost).min(1.0);
                let draw: f64 = rng.gen();
                if !chosen[i] && draw < p {
                    take(i, &mut chosen, &mut hits, &mut uncovered);
                }
            }
        }

        while uncovered > 0 {
            let mut best: Option<(usize, f64)> = None;
            for i in (0..n).filter(|&i| !chosen[i]) {
                let gain = columns[i].iter().filter(|&&r| hits[r] == 0).count();
                if gain == 0 {
                    continue;
                }
                let ratio = weights[i] / gain as f64;
                if best.is_none_or(|(_, b)| ratio < b) {
                    best = Some((i, ratio));
                }
            }
            let Some((i, _)) = best else {
                // some row has no column at all
                break;
            };
            take(i, &mut chosen, &mut hits, &mut uncovered);
        }

        let mut order: Vec<usize> = (0..n).filter(|&i| chosen[i]).collect();
        order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(b.cmp(&a)));
        for i in order {
            if columns[i].iter().all(|&r| hits[r] >= 2) {
                chosen[i] = false;
                for &r in &columns[i] {
                    hits[r] -= 1;
                }
            }
        }
        (0..n).filter(|&i| chosen[i]).collect()
    }
}

/// Rounds `fractional` with the default [`SampleAndRepair`] strategy.
pub fn round_cover(
    matrix: &IncidenceMatrix,
    weights: &[f64],
    fractional: &[f64],
    seed: u64,
) -> Vec<usize> {
    SampleAndRepair::default().round(matrix, weights, fractional, seed)
}

pub fn covers_all(matrix: &IncidenceMatrix, chosen: &[usize]) -> bool {
    matrix
        .rows
        .iter()
        .all(|row| row.iter().any(|i| chosen.binary_search(i).is_ok()))
}

/// Solves the covering LP, failing with [`Error::Infeasible`] when it has no
/// feasible point.
pub fn solve_cover_lp(inst: &CoverInstance) -> Result<LpSolution> {
    let x = lp::solve_lp(&lp::build_cover_lp(inst)?)?;
    if !x.is_optimal() {
        return Err(Error::Infeasible(
            "covering LP has no feasible solution".into(),
        ));
    }
    Ok(x)
}

/// LP, reduction and rounding with an explicit rounding strategy.
pub fn solve_cover_with(
    inst: &CoverInstance,
    seed: u64,
    rounder: &dyn CoverRounder,
) -> Result<CoverSolution> {
    let x = solve_cover_lp(inst)?;
    round_from_lp(inst, &x, seed, rounder)
}

/// Reduction and rounding of an already solved covering LP.
pub fn round_from_lp(
    inst: &CoverInstance,
    x: &LpSolution,
    seed: u64,
    rounder: &dyn CoverRounder,
) -> Result<CoverSolution> {
    let reduced = reduce_instance(inst, x)?;
    let weights = inst.weights();
    let cover = rounder.round(&reduced.incidence, &weights, &reduced.scaled, seed);
    let original = instance::incidence(inst)?;
    if !covers_all(&original, &cover) {
        return Err(Error::Infeasible(
            "rounded selection leaves a blue uncovered".into(),
        ));
    }
    let cost = inst.cost_of(&cover);
    Ok(CoverSolution {
        cover,
        lp_value: x.objective,
        cost,
    })
}

/// Red-blue dominating set for t-objects.
pub fn solve_mwds(inst: &CoverInstance, seed: u64) -> Result<CoverSolution> {
    if inst.kind() != ProblemKind::Mwds {
        return Err(Error::Precondition("solve_mwds needs blue objects".into()));
    }
    solve_cover_with(inst, seed, &SampleAndRepair::default())
}

/// Covering points by t-objects.
pub fn solve_mwsc(inst: &CoverInstance, seed: u64) -> Result<CoverSolution> {
    if inst.kind() != ProblemKind::Mwsc {
        return Err(Error::Precondition("solve_mwsc needs point blues".into()));
    }
    solve_cover_with(inst, seed, &SampleAndRepair::default())
}

/// Drops every blue that contains another blue. Of identical blues only the
/// first is kept. Input order is preserved.
pub fn preprocess_blue_intervals(blues: &[Interval]) -> Vec<Interval> {
    blues
        .iter()
        .enumerate()
        .filter(|&(j, b)| {
            !blues
                .iter()
                .enumerate()
                .any(|(k, other)| k != j && b.covers(other) && (other != b || k < j))
        })
        .map(|(_, b)| *b)
        .collect()
}

fn sort_blues(blues: &mut [Interval]) {
    blues.sort_by(|a, b| a.lo.total_cmp(&b.lo).then(a.hi.total_cmp(&b.hi)));
}

/// Blue-by-red incidence with blues sorted by left endpoint, then right.
pub fn sorted_interval_incidence(reds: &[Interval], blues: &[Interval]) -> IncidenceMatrix {
    let mut sorted = blues.to_vec();
    sort_blues(&mut sorted);
    let rows = sorted
        .iter()
        .map(|b| {
            reds.iter()
                .enumerate()
                .filter(|(_, r)| r.intersects(b))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    IncidenceMatrix {
        ncols: reds.len(),
        rows,
    }
}

/// True iff the ones of every column form one contiguous run of rows.
pub fn check_consecutive_ones(matrix: &IncidenceMatrix) -> bool {
    matrix
        .columns()
        .iter()
        .all(|rows| match (rows.first(), rows.last()) {
            (Some(&first), Some(&last)) => last - first + 1 == rows.len(),
            _ => true,
        })
}

fn single_intervals(objects: &[TObject], side: &str) -> Result<Vec<Interval>> {
    objects
        .iter()
        .enumerate()
        .map(|(i, o)| match o.parts.as_slice() {
            [BaseShape::Interval(iv)] => Ok(*iv),
            _ => Err(Error::Precondition(format!(
                "{side} {i} is not a single interval"
            ))),
        })
        .collect()
}

/// Exact red-blue dominating set for plain intervals.
///
/// After dropping blues that contain other blues and sorting the rest, each
/// red covers a contiguous run of blues. The optimum is then a shortest path
/// over prefix lengths: `best[p]` is the cheapest set covering the first `p`
/// blues, obtained from some red covering blue `p - 1` whose run starts at
/// `a`, on top of `best[a]`.
pub fn exact_interval_mwds(inst: &CoverInstance) -> Result<ExactCover> {
    if inst.shape != ShapeKind::Interval {
        return Err(Error::Precondition("exact solver needs intervals".into()));
    }
    let Blues::Objects(blue_objs) = &inst.blues else {
        return Err(Error::Precondition(
            "exact solver needs blue intervals".into(),
        ));
    };
    let reds = single_intervals(&inst.reds, "red")?;
    let mut blues = preprocess_blue_intervals(&single_intervals(blue_objs, "blue")?);
    sort_blues(&mut blues);

    let m = blues.len();
    let runs: Vec<Option<(usize, usize)>> = reds
        .iter()
        .map(|r| {
            let first = blues.iter().position(|b| r.intersects(b))?;
            let last = blues.iter().rposition(|b| r.intersects(b))?;
            Some((first, last))
        })
        .collect();

    let mut best = vec![f64::INFINITY; m + 1];
    let mut via: Vec<Option<(usize, usize)>> = vec![None; m + 1];
    best[0] = 0.0;
    for p in 1..=m {
        for (i, run) in runs.iter().enumerate() {
            let Some((a, b)) = *run else { continue };
            if a < p && p - 1 <= b && best[a].is_finite() {
                let cost = best[a] + reds_weight(inst, i);
                if cost < best[p] - 1e-12 {
                    best[p] = cost;
                    via[p] = Some((i, a));
                }
            }
        }
        if !best[p].is_finite() {
            return Err(Error::Infeasible(format!(
                "blue interval {:?} is uncoverable",
                blues[p - 1]
            )));
        }
    }

    let mut cover = Vec::new();
    let mut p = m;
    while p > 0 {
        let (i, a) = via[p].expect("finite prefixes have a predecessor");
        cover.push(i);
        p = a;
    }
    cover.sort_unstable();
    cover.dedup();
    let cost = inst.cost_of(&cover);
    Ok(ExactCover { cover, cost })
}

fn reds_weight(inst: &CoverInstance, i: usize) -> f64 {
    inst.reds[i].weight
}

/// Optimal integral cover.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactCover {
    pub cover: Vec<usize>,
    pub cost: f64,
}
