//! Experiment harness: generate seeded instances, run the pipelines, compare
//! against LP values and exhaustive optima, and report per-instance rows.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{self, GenParams};
use crate::cover::{self, SampleAndRepair};
use crate::error::{Error, Result};
use crate::geom::ShapeKind;
use crate::instance::{self, CoverInstance, ProblemKind};
use crate::pack;
use crate::scc;

/// Environment variable capping benchmark worker threads.
pub const THREADS_ENV: &str = "MULTICOVER_THREADS";

/// One family of generated instances.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BenchCell {
    pub problem: ProblemKind,
    pub shape: ShapeKind,
    pub t: usize,
    /// Reds (covering) or objects (packing).
    pub n: usize,
    /// Blues or points (covering); ignored for packing.
    pub m: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub cells: Vec<BenchCell>,
    pub seeds: Vec<u64>,
    /// Exhaustive optimum computed when the column count is at most this.
    pub exact_limit: usize,
    /// `(S, k)` samples per covering instance; zero disables the check.
    pub scc_trials: usize,
    /// Capacity range for region packing.
    pub capacity: (u32, u32),
}

impl BenchConfig {
    /// Named suite: `default`, `small`, `scc` or `integrality`.
    pub fn suite(name: &str, seeds: Vec<u64>) -> Result<Self> {
        let shapes = [ShapeKind::Interval, ShapeKind::Disk];
        let mut cells = Vec::new();
        let mut scc_trials = 0;
        match name {
            "default" | "small" => {
                let (n_cover, m_cover, n_pack) = if name == "default" {
                    (12, 10, 12)
                } else {
                    (8, 6, 8)
                };
                for t in 2..=4 {
                    for shape in shapes {
                        for problem in [ProblemKind::Mwds, ProblemKind::Mwsc] {
                            cells.push(BenchCell {
                                problem,
                                shape,
                                t,
                                n: n_cover,
                                m: m_cover,
                            });
                        }
                        for problem in [ProblemKind::Mwis, ProblemKind::RegionPacking] {
                            cells.push(BenchCell {
                                problem,
                                shape,
                                t,
                                n: n_pack,
                                m: 0,
                            });
                        }
                    }
                }
                cells.push(BenchCell {
                    problem: ProblemKind::Mwds,
                    shape: ShapeKind::Interval,
                    t: 1,
                    n: 16,
                    m: 16,
                });
            }
            "scc" => {
                for t in 2..=4 {
                    for shape in shapes {
                        cells.push(BenchCell {
                            problem: ProblemKind::Mwds,
                            shape,
                            t,
                            n: 16,
                            m: 24,
                        });
                    }
                }
                scc_trials = 20;
            }
            "integrality" => {
                cells.push(BenchCell {
                    problem: ProblemKind::Mwds,
                    shape: ShapeKind::Interval,
                    t: 1,
                    n: 30,
                    m: 30,
                });
            }
            other => return Err(Error::InvalidParameter(format!("unknown suite {other:?}"))),
        }
        Ok(Self {
            cells,
            seeds,
            exact_limit: 16,
            scc_trials,
            capacity: (1, 3),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub instance_id: String,
    pub problem: ProblemKind,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub shape: ShapeKind,
    pub seed: u64,
    pub lp_value: f64,
    pub rounded_value: f64,
    pub exact_opt: Option<f64>,
    pub ratio_vs_lp: Option<f64>,
    pub ratio_vs_opt: Option<f64>,
    pub wall_ms: f64,
    pub feasible: bool,
    pub scc_violations: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

pub const CSV_COLUMNS: [&str; 15] = [
    "instance_id",
    "problem",
    "n",
    "m",
    "t",
    "shape",
    "seed",
    "lp_value",
    "rounded_value",
    "exact_opt",
    "ratio_vs_lp",
    "ratio_vs_opt",
    "wall_ms",
    "feasible",
    "scc_violations",
];

/// Decimal with 9 significant digits, trailing zeros trimmed.
pub fn format_sig9(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let mut s = if magnitude > 8 {
        let scale = 10f64.powi(magnitude - 8);
        format!("{:.0}", (v / scale).round() * scale)
    } else {
        format!("{v:.decimals$}")
    };
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn opt_field(v: Option<f64>) -> String {
    v.map(format_sig9).unwrap_or_default()
}

impl BenchReport {
    /// CSV in [`CSV_COLUMNS`] order. `header` prepends a timestamp comment
    /// line; without it, `wall_ms` is written as 0 so output is reproducible.
    pub fn to_csv(&self, header: bool) -> String {
        let mut out = String::new();
        if header {
            let secs = std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let _ = writeln!(out, "# multicover bench report, unix time {secs}");
        }
        out.push_str(&CSV_COLUMNS.join(","));
        out.push('\n');
        for r in &self.rows {
            let wall = if header {
                format_sig9(r.wall_ms)
            } else {
                "0".into()
            };
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.instance_id,
                r.problem,
                r.n,
                r.m,
                r.t,
                r.shape.name(),
                r.seed,
                format_sig9(r.lp_value),
                format_sig9(r.rounded_value),
                opt_field(r.exact_opt),
                opt_field(r.ratio_vs_lp),
                opt_field(r.ratio_vs_opt),
                wall,
                r.feasible,
                r.scc_violations.map(|v| v.to_string()).unwrap_or_default(),
            );
        }
        out
    }

    /// Rows of one problem, shape and t.
    pub fn select(
        &self,
        problem: ProblemKind,
        shape: Option<ShapeKind>,
        t: usize,
    ) -> Vec<&BenchRow> {
        self.rows
            .iter()
            .filter(|r| r.problem == problem && r.t == t && shape.is_none_or(|s| r.shape == s))
            .collect()
    }

    /// Per (problem, shape, t) feasibility rate and mean ratio against the
    /// exhaustive optimum.
    pub fn summary(&self) -> Vec<SummaryRow> {
        let mut groups: Vec<SummaryRow> = Vec::new();
        for r in &self.rows {
            let pos = groups
                .iter()
                .position(|g| g.problem == r.problem && g.shape == r.shape && g.t == r.t);
            let g = match pos {
                Some(i) => &mut groups[i],
                None => {
                    groups.push(SummaryRow {
                        problem: r.problem,
                        shape: r.shape,
                        t: r.t,
                        instances: 0,
                        feasible: 0,
                        ratios: Vec::new(),
                    });
                    groups.last_mut().expect("just pushed")
                }
            };
            g.instances += 1;
            g.feasible += usize::from(r.feasible);
            g.ratios.extend(r.ratio_vs_opt);
        }
        groups
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub problem: ProblemKind,
    pub shape: ShapeKind,
    pub t: usize,
    pub instances: usize,
    pub feasible: usize,
    pub ratios: Vec<f64>,
}

impl SummaryRow {
    pub fn mean_ratio(&self) -> Option<f64> {
        (!self.ratios.is_empty())
            .then(|| self.ratios.iter().sum::<f64>() / self.ratios.len() as f64)
    }
}

fn ratio(num: f64, den: f64) -> Option<f64> {
    (den > 0.0).then(|| num / den)
}

struct Outcome {
    lp_value: f64,
    rounded: f64,
    exact: Option<f64>,
    feasible: bool,
    scc_violations: Option<usize>,
}

fn run_cover(
    cell: &BenchCell,
    inst: &CoverInstance,
    cfg: &BenchConfig,
    seed: u64,
) -> Result<Outcome> {
    let x = cover::solve_cover_lp(inst)?;
    let exact_interval =
        cell.problem == ProblemKind::Mwds && cell.shape == ShapeKind::Interval && cell.t == 1;
    let (chosen, rounded) = if exact_interval {
        let e = cover::exact_interval_mwds(inst)?;
        (e.cover, e.cost)
    } else {
        let s = cover::round_from_lp(inst, &x, seed, &SampleAndRepair::default())?;
        (s.cover, s.cost)
    };
    let feasible = cover::covers_all(&instance::incidence(inst)?, &chosen);
    let exact = if inst.reds.len() <= cfg.exact_limit {
        Some(baselines::brute_force_cover(inst)?.value)
    } else {
        None
    };
    let scc_violations = if cfg.scc_trials > 0 {
        Some(
            scc::verify_scc_lemma(inst, &x, cfg.scc_trials, seed)?
                .violations
                .len(),
        )
    } else {
        None
    };
    Ok(Outcome {
        lp_value: x.objective,
        rounded,
        exact,
        feasible,
        scc_violations,
    })
}

fn run_cell(cell: &BenchCell, cfg: &BenchConfig, seed: u64) -> Result<Outcome> {
    let params = GenParams::for_shape(cell.shape);
    match cell.problem {
        ProblemKind::Mwds | ProblemKind::Mwsc => {
            let inst = baselines::gen_cover_instance(
                cell.problem,
                cell.shape,
                cell.n,
                cell.m,
                cell.t,
                &params,
                seed,
            )?;
            run_cover(cell, &inst, cfg, seed)
        }
        ProblemKind::Mwis => {
            let inst = baselines::gen_pack_instance(
                cell.problem,
                cell.shape,
                cell.n,
                cell.t,
                (1, 1),
                &params,
                seed,
            )?;
            let r = pack::solve_mwis(&inst.objects, seed)?;
            let exact = if cell.n <= cfg.exact_limit {
                Some(baselines::brute_force_independent_set(&inst.objects)?.value)
            } else {
                None
            };
            let feasible = pack::is_independent(&inst.objects, &r.chosen)?;
            Ok(Outcome {
                lp_value: r.lp_value,
                rounded: r.weight,
                exact,
                feasible,
                scc_violations: None,
            })
        }
        ProblemKind::RegionPacking => {
            let inst = baselines::gen_pack_instance(
                cell.problem,
                cell.shape,
                cell.n,
                cell.t,
                cfg.capacity,
                &params,
                seed,
            )?;
            let r = pack::solve_region_packing(&inst, seed)?;
            let exact = if cell.n <= cfg.exact_limit {
                Some(baselines::brute_force_packing(&inst)?.value)
            } else {
                None
            };
            let feasible = pack::respects_capacities(&inst, &r.chosen)?;
            Ok(Outcome {
                lp_value: r.lp_value,
                rounded: r.weight,
                exact,
                feasible,
                scc_violations: None,
            })
        }
    }
}

fn instance_id(index: usize, cell: &BenchCell, seed: u64) -> String {
    format!(
        "{index:05}-{}-{}-t{}-n{}-s{seed}",
        cell.problem,
        cell.shape.name(),
        cell.t,
        cell.n
    )
}

fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n: &usize| n > 0)
}

/// Runs every (cell, seed) pair. Rows come back sorted by instance id.
pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchReport> {
    let jobs: Vec<(usize, BenchCell, u64)> = cfg
        .cells
        .iter()
        .flat_map(|c| cfg.seeds.iter().map(move |&s| (*c, s)))
        .enumerate()
        .map(|(i, (c, s))| (i, c, s))
        .collect();
    let work = || {
        jobs.par_iter()
            .map(|&(index, cell, seed)| {
                let start = Instant::now();
                let out = run_cell(&cell, cfg, seed)?;
                let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                Ok(BenchRow {
                    instance_id: instance_id(index, &cell, seed),
                    problem: cell.problem,
                    n: cell.n,
                    m: cell.m,
                    t: cell.t,
                    shape: cell.shape,
                    seed,
                    lp_value: out.lp_value,
                    rounded_value: out.rounded,
                    exact_opt: out.exact,
                    ratio_vs_lp: ratio(out.rounded, out.lp_value),
                    ratio_vs_opt: out.exact.and_then(|e| ratio(out.rounded, e)),
                    wall_ms,
                    feasible: out.feasible,
                    scc_violations: out.scc_violations,
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let mut rows = match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    rows.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    Ok(BenchReport { rows })
}

/// Parses `a..b` (inclusive), `a,b,c` or a single seed.
pub fn parse_seeds(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidParameter(format!("bad seed list {spec:?}"));
    if let Some((a, b)) = spec.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let lo: u64 = a.trim().parse().map_err(|_| bad())?;
        let hi: u64 = b.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}
