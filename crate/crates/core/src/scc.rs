//! Shallow-cell complexity counting, and a sampled check that splitting red
//! t-objects into their parts never lowers the number of shallow rows:
//! `g(n, k) <= f(nt, kt)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{self, ReducedInstance};
use crate::error::Result;
use crate::geom::{self, Point};
use crate::instance::{Blues, CoverInstance, IncidenceMatrix};
use crate::lp::LpSolution;

/// Largest sampled column subset.
pub const MAX_SAMPLE_COLUMNS: usize = 24;

/// Distinct row patterns restricted to `columns` with between 1 and `k`
/// ones, each mapped to the first row showing it.
pub fn shallow_patterns(
    matrix: &IncidenceMatrix,
    columns: &[usize],
    k: usize,
) -> BTreeMap<Vec<usize>, usize> {
    let mut sorted = columns.to_vec();
    sorted.sort_unstable();
    let mut patterns = BTreeMap::new();
    for (r, row) in matrix.rows.iter().enumerate() {
        let pattern: Vec<usize> = row
            .iter()
            .copied()
            .filter(|c| sorted.binary_search(c).is_ok())
            .collect();
        if !pattern.is_empty() && pattern.len() <= k {
            patterns.entry(pattern).or_insert(r);
        }
    }
    patterns
}

/// Number of distinct nonzero rows of the column-restricted matrix with at
/// most `k` ones.
pub fn shallow_row_count(matrix: &IncidenceMatrix, columns: &[usize], k: usize) -> usize {
    shallow_patterns(matrix, columns, k).len()
}

/// Reds split into their parts, one column per part.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstituentInstance {
    /// Reduced blues by red parts.
    pub matrix: IncidenceMatrix,
    /// Parent red of each part column.
    pub parent: Vec<usize>,
    /// Part columns of each red.
    pub columns_of: Vec<Vec<usize>>,
}

impl ConstituentInstance {
    pub fn expand(&self, reds: &[usize]) -> Vec<usize> {
        reds.iter()
            .flat_map(|&r| self.columns_of[r].iter().copied())
            .collect()
    }
}

/// Splits every red t-object of the reduced instance into independent
/// 1-object columns.
pub fn constituent_instance(reduced: &ReducedInstance<'_>) -> Result<ConstituentInstance> {
    let inst = reduced.original;
    let mut parent = Vec::new();
    let mut columns_of = Vec::with_capacity(inst.reds.len());
    let mut parts = Vec::new();
    for (i, red) in inst.reds.iter().enumerate() {
        let mut cols = Vec::with_capacity(red.parts.len());
        for part in &red.parts {
            cols.push(parts.len());
            parts.push(*part);
            parent.push(i);
        }
        columns_of.push(cols);
    }
    let matrix = match &inst.blues {
        Blues::Objects(_) => {
            let blue_parts = reduced.blue_parts();
            IncidenceMatrix::build(blue_parts.len(), parts.len(), |j, c| {
                geom::intersects(&parts[c], &blue_parts[j])
            })?
        }
        Blues::Points(points) => {
            let points: &[Point] = points;
            IncidenceMatrix::build(points.len(), parts.len(), |j, c| {
                parts[c].contains_point(&points[j])
            })?
        }
    };
    Ok(ConstituentInstance {
        matrix,
        parent,
        columns_of,
    })
}

/// One sampled `(S, k)` comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct SccSample {
    /// Sorted red indices `S`.
    pub columns: Vec<usize>,
    pub n: usize,
    pub k: usize,
    /// Shallow rows of the t-object matrix on `S` with at most `k` ones.
    pub g_count: usize,
    /// Shallow rows of the part matrix on the parts of `S` with at most
    /// `k * t` ones.
    pub f_count: usize,
    /// One blue per distinct shallow t-object row; the same blue indexes the
    /// image row in the part matrix.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SccViolation {
    pub columns: Vec<usize>,
    pub k: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SccReport {
    pub samples: Vec<SccSample>,
    pub violations: Vec<SccViolation>,
}

impl SccReport {
    /// CSV with columns `n,k,g_count,f_count`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,g_count,f_count\n");
        for s in &self.samples {
            let _ = writeln!(out, "{},{},{},{}", s.n, s.k, s.g_count, s.f_count);
        }
        out
    }
}

fn restrict(row: &[usize], columns: &[usize]) -> Vec<usize> {
    row.iter()
        .copied()
        .filter(|c| columns.binary_search(c).is_ok())
        .collect()
}

/// Compares the two shallow counts for one red subset and depth.
pub fn compare_sample(
    reduced: &IncidenceMatrix,
    parts: &ConstituentInstance,
    t: usize,
    columns: &[usize],
    k: usize,
) -> (SccSample, Option<SccViolation>) {
    let mut columns = columns.to_vec();
    columns.sort_unstable();
    let mut part_columns = parts.expand(&columns);
    part_columns.sort_unstable();
    let kt = k * t;
    let g = shallow_patterns(reduced, &columns, k);
    let f_count = shallow_row_count(&parts.matrix, &part_columns, kt);
    let witness: Vec<usize> = g.values().copied().collect();

    let mut reason = None;
    let mut images = std::collections::BTreeSet::new();
    for &blue in &witness {
        let image = restrict(&parts.matrix.rows[blue], &part_columns);
        if image.is_empty() || image.len() > kt {
            reason = Some(format!(
                "blue {blue} maps to a row with {} ones",
                image.len()
            ));
            break;
        }
        if !images.insert(image) {
            reason = Some(format!("blue {blue} maps onto an already used row"));
            break;
        }
    }
    if reason.is_none() && g.len() > f_count {
        reason = Some(format!("g = {} exceeds f = {f_count}", g.len()));
    }
    let sample = SccSample {
        n: columns.len(),
        k,
        g_count: g.len(),
        f_count,
        witness,
        columns: columns.clone(),
    };
    let violation = reason.map(|reason| SccViolation { columns, k, reason });
    (sample, violation)
}

/// Samples `trials` subsets `S` of reds with `|S|` uniform in
/// `2..=min(N, 24)` and `k` uniform in `1..=|S|`, and checks the shallow
/// count inequality on the reduced instance built from `x`.
pub fn verify_scc_lemma(
    inst: &CoverInstance,
    x: &LpSolution,
    trials: usize,
    seed: u64,
) -> Result<SccReport> {
    let reduced = cover::reduce_instance(inst, x)?;
    let parts = constituent_instance(&reduced)?;
    let n_reds = inst.reds.len();
    let mut report = SccReport::default();
    if n_reds == 0 {
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = n_reds.min(MAX_SAMPLE_COLUMNS);
    for _ in 0..trials {
        let size = if max < 2 { max } else { rng.gen_range(2..=max) };
        let columns = index::sample(&mut rng, n_reds, size).into_vec();
        let k = rng.gen_range(1..=size);
        let (sample, violation) = compare_sample(&reduced.incidence, &parts, inst.t, &columns, k);
        report.samples.push(sample);
        report.violations.extend(violation);
    }
    Ok(report)
}

/// Growth of measured shallow counts with depth for a fixed subset size.
#[derive(Clone, Debug, PartialEq)]
pub struct SccTrend {
    pub n: usize,
    /// `(k, max shallow count / n)` per depth.
    pub points: Vec<(usize, f64)>,
    /// Least-squares slope of `ln(count / n)` against `ln k`.
    pub slope: f64,
    /// Set when the slope exceeds `3.5`.
    pub flagged: bool,
}

/// Measures `max_S shallow_row_count(S, k) / n` over `trials` random
/// subsets of size `n` for each `k` in `1..=n`.
pub fn scc_trend(matrix: &IncidenceMatrix, n: usize, trials: usize, seed: u64) -> SccTrend {
    let n = n.min(matrix.ncols);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let subsets: Vec<Vec<usize>> = (0..trials)
        .map(|_| index::sample(&mut rng, matrix.ncols, n).into_vec())
        .collect();
    let points: Vec<(usize, f64)> = (1..=n)
        .map(|k| {
            let best = subsets
                .iter()
                .map(|s| shallow_row_count(matrix, s, k))
                .max()
                .unwrap_or(0);
            (k, best as f64 / n.max(1) as f64)
        })
        .collect();
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 > 0.0)
        .map(|&(k, v)| ((k as f64).ln(), v.ln()))
        .collect();
    let slope = if logs.len() < 2 {
        0.0
    } else {
        let m = logs.len() as f64;
        let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
        let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
        if sxx > 0.0 {
            sxy / sxx
        } else {
            0.0
        }
    };
    SccTrend {
        n,
        points,
        slope,
        flagged: slope > 3.5,
    }
}
