//! Command-line front end: `gen`, `solve`, `exact`, `scc` and `bench`.
//!
//! Exit codes: 0 on success, 1 on infeasible or invalid input, 2 on usage
//! errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::baselines::{self, GenParams};
use crate::bench::{self, BenchConfig};
use crate::cover;
use crate::error::{Error, Result};
use crate::geom::ShapeKind;
use crate::instance::{self, Blues, Instance, ProblemKind};
use crate::pack;
use crate::scc;

#[derive(Parser, Debug)]
#[command(
    name = "multicover",
    version,
    about = "Covering and packing with t-intervals and t-disks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Problem {
    Mwds,
    Mwsc,
    Mwis,
    #[value(name = "region_packing", alias = "region-packing")]
    RegionPacking,
}

impl From<Problem> for ProblemKind {
    fn from(p: Problem) -> Self {
        match p {
            Problem::Mwds => ProblemKind::Mwds,
            Problem::Mwsc => ProblemKind::Mwsc,
            Problem::Mwis => ProblemKind::Mwis,
            Problem::RegionPacking => ProblemKind::RegionPacking,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Shape {
    Interval,
    Disk,
}

impl From<Shape> for ShapeKind {
    fn from(s: Shape) -> Self {
        match s {
            Shape::Interval => ShapeKind::Interval,
            Shape::Disk => ShapeKind::Disk,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a seeded random instance file.
    Gen {
        #[arg(long, value_enum)]
        problem: Problem,
        #[arg(long, value_enum)]
        shape: Shape,
        /// Reds (covering) or objects (packing).
        #[arg(long)]
        n: usize,
        /// Blues or points (covering only).
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest and largest point capacity (region packing).
        #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [1, 3])]
        capacity: Vec<u32>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the LP-rounding pipeline on an instance file.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        /// Expected problem kind; must match the file.
        #[arg(long, value_enum)]
        problem: Option<Problem>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact optimum: interval dominating set solver or exhaustive search.
    Exact {
        #[arg(long)]
        instance: PathBuf,
    },
    /// Sampled shallow-cell check on a covering instance.
    Scc {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV of samples; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite and write the CSV report.
    Bench {
        #[arg(long, default_value = "default")]
        suite: String,
        /// `a..b` (inclusive), `a,b,c` or one seed.
        #[arg(long, default_value = "1..50")]
        seeds: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit the timestamp line and timing values.
        #[arg(long)]
        no_header: bool,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidParameter(_) => 2,
                _ => 1,
            }
        }
    }
}

fn emit(out: &mut dyn Write, path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load(path: &PathBuf) -> Result<Instance> {
    let inst = instance::read_instance(path)?;
    let violations = inst.validate();
    if !violations.is_empty() {
        let list: Vec<String> = violations.iter().map(ToString::to_string).collect();
        return Err(Error::Infeasible(list.join("; ")));
    }
    Ok(inst)
}

fn list(ids: &[usize]) -> String {
    ids.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn execute(command: Command, out: &mut dyn Write) -> Result<()> {
    match command {
        Command::Gen {
            problem,
            shape,
            n,
            m,
            t,
            seed,
            capacity,
            out: path,
        } => {
            let (problem, shape) = (ProblemKind::from(problem), ShapeKind::from(shape));
            let params = GenParams::for_shape(shape);
            let inst = if problem.is_covering() {
                Instance::Cover(baselines::gen_cover_instance(
                    problem, shape, n, m, t, &params, seed,
                )?)
            } else {
                let range = (capacity[0], capacity[1]);
                Instance::Pack(baselines::gen_pack_instance(
                    problem, shape, n, t, range, &params, seed,
                )?)
            };
            instance::write_instance(&inst, &path)?;
            writeln!(out, "wrote {} instance to {}", problem, path.display())?;
        }
        Command::Solve {
            instance: path,
            problem,
            seed,
        } => {
            let inst = load(&path)?;
            if let Some(p) = problem {
                let expected = ProblemKind::from(p);
                if expected != inst.kind() {
                    return Err(Error::InvalidParameter(format!(
                        "--problem {expected} does not match {} instance file",
                        inst.kind()
                    )));
                }
            }
            writeln!(out, "problem: {}", inst.kind())?;
            match &inst {
                Instance::Cover(c) => {
                    let s = cover::solve_cover_with(c, seed, &cover::SampleAndRepair::default())?;
                    writeln!(out, "lp_value: {}", bench::format_sig9(s.lp_value))?;
                    writeln!(out, "cost: {}", bench::format_sig9(s.cost))?;
                    writeln!(out, "cover: {}", list(&s.cover))?;
                }
                Instance::Pack(p) => {
                    let r = match p.kind {
                        ProblemKind::Mwis => pack::solve_mwis(&p.objects, seed)?,
                        _ => pack::solve_region_packing(p, seed)?,
                    };
                    writeln!(out, "lp_value: {}", bench::format_sig9(r.lp_value))?;
                    writeln!(out, "weight: {}", bench::format_sig9(r.weight))?;
                    writeln!(out, "chosen: {}", list(&r.chosen))?;
                    writeln!(out, "trials_used: {}", r.trials_used)?;
                }
            }
        }
        Command::Exact { instance: path } => {
            let inst = load(&path)?;
            writeln!(out, "problem: {}", inst.kind())?;
            let (chosen, value) = match &inst {
                Instance::Cover(c) => {
                    let single =
                        |objs: &[crate::geom::TObject]| objs.iter().all(|o| o.parts.len() == 1);
                    let interval_mwds = c.shape == ShapeKind::Interval
                        && single(&c.reds)
                        && matches!(&c.blues, Blues::Objects(b) if single(b));
                    if interval_mwds {
                        let e = cover::exact_interval_mwds(c)?;
                        (e.cover, e.cost)
                    } else {
                        let o = baselines::brute_force_cover(c)?;
                        (o.chosen, o.value)
                    }
                }
                Instance::Pack(p) => {
                    let o = baselines::brute_force_packing(p)?;
                    (o.chosen, o.value)
                }
            };
            writeln!(out, "optimum: {}", bench::format_sig9(value))?;
            writeln!(out, "chosen: {}", list(&chosen))?;
        }
        Command::Scc {
            instance: path,
            trials,
            seed,
            out: csv,
        } => {
            let Instance::Cover(c) = load(&path)? else {
                return Err(Error::InvalidParameter(
                    "scc needs a covering instance".into(),
                ));
            };
            let x = cover::solve_cover_lp(&c)?;
            let report = scc::verify_scc_lemma(&c, &x, trials, seed)?;
            emit(out, csv.as_ref(), &report.to_csv())?;
            let reduced = cover::reduce_instance(&c, &x)?;
            let parts = scc::constituent_instance(&reduced)?;
            let trend = scc::scc_trend(&parts.matrix, parts.matrix.ncols.min(16), 20, seed);
            if csv.is_some() {
                writeln!(out, "samples: {}", report.samples.len())?;
                writeln!(out, "violations: {}", report.violations.len())?;
                writeln!(
                    out,
                    "trend_slope: {}{}",
                    bench::format_sig9(trend.slope),
                    if trend.flagged { " (exceeds 3.5)" } else { "" }
                )?;
            }
            if let Some(v) = report.violations.first() {
                return Err(Error::Precondition(format!(
                    "shallow-cell inequality failed on columns {:?}, k = {}: {}",
                    v.columns, v.k, v.reason
                )));
            }
        }
        Command::Bench {
            suite,
            seeds,
            out: path,
            no_header,
        } => {
            let cfg = BenchConfig::suite(&suite, bench::parse_seeds(&seeds)?)?;
            let report = bench::run_benchmark(&cfg)?;
            emit(out, path.as_ref(), &report.to_csv(!no_header))?;
            if path.is_some() {
                for g in report.summary() {
                    writeln!(
                        out,
                        "{} {} t={}: {}/{} feasible, mean ratio vs opt {}",
                        g.problem,
                        g.shape.name(),
                        g.t,
                        g.feasible,
                        g.instances,
                        g.mean_ratio()
                            .map(bench::format_sig9)
                            .unwrap_or_else(|| "n/a".into())
                    )?;
                }
            }
        }
    }
    Ok(())
}
