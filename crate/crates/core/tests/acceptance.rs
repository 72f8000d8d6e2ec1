//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Quantities are checked against oracles written here (exhaustive search,
//! direct geometric predicates, integer determinants) rather than against
//! the library's own bookkeeping where possible.

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use multicover::baselines::{self, GenParams};
use multicover::cover;
use multicover::geom::{self, BaseShape, Disk, ShapeKind, TObject};
use multicover::instance::{Blues, CoverInstance, IncidenceMatrix, PackInstance, ProblemKind};
use multicover::pack;
use multicover::scc;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

const SHAPES: [ShapeKind; 2] = [ShapeKind::Interval, ShapeKind::Disk];

fn params(shape: ShapeKind) -> GenParams {
    GenParams::for_shape(shape)
}

fn gen_cover(
    kind: ProblemKind,
    shape: ShapeKind,
    n: usize,
    m: usize,
    t: usize,
    seed: u64,
) -> CoverInstance {
    baselines::gen_cover_instance(kind, shape, n, m, t, &params(shape), seed).expect("generator")
}

fn gen_pack(
    kind: ProblemKind,
    shape: ShapeKind,
    n: usize,
    t: usize,
    caps: (u32, u32),
    seed: u64,
) -> PackInstance {
    baselines::gen_pack_instance(kind, shape, n, t, caps, &params(shape), seed).expect("generator")
}

/// Every blue meets a chosen red, checked with the raw geometric predicates.
fn cover_is_feasible(inst: &CoverInstance, chosen: &[usize]) -> bool {
    match &inst.blues {
        Blues::Objects(blues) => blues.iter().all(|b| {
            chosen.iter().any(|&i| {
                inst.reds[i]
                    .parts
                    .iter()
                    .any(|p| b.parts.iter().any(|q| geom::intersects(p, q).unwrap()))
            })
        }),
        Blues::Points(points) => points.iter().all(|pt| {
            chosen.iter().any(|&i| {
                inst.reds[i]
                    .parts
                    .iter()
                    .any(|p| p.contains_point(pt).unwrap())
            })
        }),
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

// 1 ------------------------------------------------------------------------

/// 200 plain-interval dominating set instances; the first 100 have n <= 20.
fn interval_suite() -> Vec<CoverInstance> {
    (0..200u64)
        .map(|seed| {
            let n = if seed < 100 {
                5 + (seed as usize * 7) % 16
            } else {
                21 + (seed as usize * 7) % 10
            };
            let m = 5 + (seed as usize * 11) % 26;
            gen_cover(ProblemKind::Mwds, ShapeKind::Interval, n, m, 1, 1000 + seed)
        })
        .collect()
}

fn lp_integrality(suite: &[CoverInstance]) -> Outcome {
    let mut worst = 0.0f64;
    let mut gaps = 0;
    let mut brute_mismatch = 0;
    let mut brute_checked = 0;
    for inst in suite {
        let lp = cover::solve_cover_lp(inst).unwrap().objective;
        let exact = cover::exact_interval_mwds(inst).unwrap();
        assert!(cover_is_feasible(inst, &exact.cover));
        let gap = (lp - exact.cost).abs() / exact.cost.max(1.0);
        worst = worst.max(gap);
        if gap > 1e-6 {
            gaps += 1;
        }
        if inst.reds.len() <= 20 {
            brute_checked += 1;
            let brute = baselines::brute_force_cover(inst).unwrap();
            if (brute.value - exact.cost).abs() > 1e-9 * brute.value.max(1.0) {
                brute_mismatch += 1;
            }
        }
    }
    outcome(
        gaps == 0 && brute_mismatch == 0 && brute_checked == 100,
        format!(
            "{} instances, max relative LP gap {worst:.2e}, exact vs brute force mismatches {brute_mismatch}/{brute_checked}",
            suite.len()
        ),
    )
}

// 2 ------------------------------------------------------------------------

fn intervals_of(objects: &[TObject]) -> Vec<geom::Interval> {
    objects
        .iter()
        .map(|o| *o.parts[0].as_interval().unwrap())
        .collect()
}

fn preprocessed_matrix(inst: &CoverInstance) -> IncidenceMatrix {
    let Blues::Objects(blues) = &inst.blues else {
        unreachable!()
    };
    let blues = cover::preprocess_blue_intervals(&intervals_of(blues));
    cover::sorted_interval_incidence(&intervals_of(&inst.reds), &blues)
}

/// Fraction-free Gaussian elimination; exact for small integer matrices.
fn det(mut a: Vec<Vec<i64>>) -> i64 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn c1p_and_tum(suite: &[CoverInstance]) -> Outcome {
    let c1p_fail = suite
        .iter()
        .filter(|inst| !cover::check_consecutive_ones(&preprocessed_matrix(inst)))
        .count();

    let mut checked = 0usize;
    let mut bad = 0usize;
    for seed in 0..20u64 {
        let inst = gen_cover(ProblemKind::Mwds, ShapeKind::Interval, 8, 8, 1, 5000 + seed);
        let dense = preprocessed_matrix(&inst).to_dense();
        let (rows, cols) = (dense.len(), dense.first().map_or(0, Vec::len));
        for size in 1..=rows.min(cols).min(6) {
            let row_sets = combinations(rows, size);
            let col_sets = combinations(cols, size);
            for rs in &row_sets {
                for cs in &col_sets {
                    let sub = rs
                        .iter()
                        .map(|&r| cs.iter().map(|&c| i64::from(dense[r][c])).collect())
                        .collect();
                    checked += 1;
                    if !(-1..=1).contains(&det(sub)) {
                        bad += 1;
                    }
                }
            }
        }
    }
    outcome(
        c1p_fail == 0 && bad == 0 && checked > 0,
        format!(
            "C1P failures {c1p_fail}/{}, {checked} square submatrices, {bad} with |det| > 1",
            suite.len()
        ),
    )
}

// 3 ------------------------------------------------------------------------

fn reduction_feasibility() -> Outcome {
    let mut count = 0;
    let mut worst_residual = f64::NEG_INFINITY;
    let mut worst_factor = 0.0f64;
    let mut violations = 0;
    for shape in SHAPES {
        for seed in 0..100u64 {
            let t = 2 + (seed % 3) as usize;
            let inst = gen_cover(ProblemKind::Mwds, shape, 12, 10, t, 2000 + seed);
            let x = cover::solve_cover_lp(&inst).unwrap();
            let reduced = cover::reduce_instance(&inst, &x).unwrap();
            let Blues::Objects(blues) = &inst.blues else {
                unreachable!()
            };
            let scaled: Vec<f64> = x.values.iter().map(|&v| (t as f64 * v).min(1.0)).collect();
            // Recompute each reduced row from the geometry.
            let mut residual = f64::NEG_INFINITY;
            for (j, blue) in blues.iter().enumerate() {
                let part = &blue.parts[reduced.constituents[j]];
                let cover_of = |q: &BaseShape, w: &[f64]| -> f64 {
                    inst.reds
                        .iter()
                        .enumerate()
                        .filter(|(_, r)| r.parts.iter().any(|p| geom::intersects(p, q).unwrap()))
                        .map(|(i, _)| w[i])
                        .sum()
                };
                let best = blue
                    .parts
                    .iter()
                    .map(|q| cover_of(q, &x.values))
                    .fold(f64::NEG_INFINITY, f64::max);
                if cover_of(part, &x.values) < best - 1e-9 {
                    violations += 1;
                }
                residual = residual.max(1.0 - cover_of(part, &scaled));
            }
            let cost: f64 = inst
                .reds
                .iter()
                .zip(&scaled)
                .map(|(r, v)| r.weight * v)
                .sum();
            let factor = if x.objective > 0.0 {
                cost / x.objective
            } else {
                0.0
            };
            if residual > 1e-7 || factor > t as f64 + 1e-9 {
                violations += 1;
            }
            worst_residual = worst_residual.max(residual);
            worst_factor = worst_factor.max(factor / t as f64);
            count += 1;
        }
    }
    outcome(
        violations == 0 && count == 200,
        format!(
            "{count} instances, {violations} violations, max residual {worst_residual:.2e}, max cost factor / t {worst_factor:.6}"
        ),
    )
}

// 4 ------------------------------------------------------------------------

/// Distinct nonempty row patterns of `matrix` restricted to `columns` with
/// at most `k` ones.
fn shallow_count_oracle(matrix: &IncidenceMatrix, columns: &[usize], k: usize) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for r in 0..matrix.nrows() {
        let pattern: Vec<usize> = columns
            .iter()
            .copied()
            .filter(|&c| matrix.get(r, c))
            .collect();
        if !pattern.is_empty() && pattern.len() <= k {
            seen.insert(pattern);
        }
    }
    seen.len()
}

fn shallow_cells() -> Outcome {
    let mut samples = 0;
    let mut violations = 0;
    let mut oracle_mismatch = 0;
    for shape in SHAPES {
        for seed in 0..50u64 {
            let t = 2 + (seed % 3) as usize;
            let inst = gen_cover(ProblemKind::Mwds, shape, 16, 24, t, 3000 + seed);
            let x = cover::solve_cover_lp(&inst).unwrap();
            let report = scc::verify_scc_lemma(&inst, &x, 20, seed).unwrap();
            let reduced = cover::reduce_instance(&inst, &x).unwrap();
            let parts = scc::constituent_instance(&reduced).unwrap();
            for s in &report.samples {
                let part_cols = parts.expand(&s.columns);
                let g = shallow_count_oracle(&reduced.incidence, &s.columns, s.k);
                let f = shallow_count_oracle(&parts.matrix, &part_cols, s.k * t);
                if g != s.g_count || f != s.f_count {
                    oracle_mismatch += 1;
                }
                if g > f {
                    violations += 1;
                }
            }
            samples += report.samples.len();
            violations += report.violations.len();
        }
    }
    outcome(
        violations == 0 && oracle_mismatch == 0 && samples == 2 * 50 * 20,
        format!("{samples} samples over 100 instances, {violations} violations, {oracle_mismatch} count mismatches"),
    )
}

// 5, 6 ---------------------------------------------------------------------

fn cover_pipeline(kind: ProblemKind, bound: fn(f64) -> f64, csv_name: &str) -> Outcome {
    let mut csv = String::from("shape,t,seed,cost,opt,ratio\n");
    let mut infeasible = 0;
    let mut total = 0;
    let mut summary = Vec::new();
    let mut pass = true;
    for t in 2..=4usize {
        let mut ratios = Vec::new();
        for shape in SHAPES {
            for seed in 1..=50u64 {
                let inst = gen_cover(kind, shape, 12, 10, t, seed);
                let sol = match kind {
                    ProblemKind::Mwds => cover::solve_mwds(&inst, seed),
                    _ => cover::solve_mwsc(&inst, seed),
                }
                .unwrap();
                total += 1;
                if !cover_is_feasible(&inst, &sol.cover) {
                    infeasible += 1;
                }
                let opt = baselines::brute_force_cover(&inst).unwrap().value;
                let ratio = sol.cost / opt;
                ratios.push(ratio);
                let _ = writeln!(
                    csv,
                    "{},{t},{seed},{},{opt},{ratio}",
                    shape.name(),
                    sol.cost
                );
            }
        }
        let m = mean(&ratios);
        let b = bound(t as f64);
        pass &= m <= b;
        summary.push(format!("t={t} mean {m:.4} (bound {b:.3})"));
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join(csv_name);
    std::fs::write(&path, csv).unwrap();
    outcome(
        pass && infeasible == 0,
        format!(
            "{total} runs, {infeasible} infeasible, {}; ratios in {}",
            summary.join(", "),
            path.display()
        ),
    )
}

// 7 ------------------------------------------------------------------------

fn independent_sets() -> Outcome {
    let mut overlapping = 0;
    let mut below_floor = 0;
    let mut total = 0;
    let mut summary = Vec::new();
    let mut pass = true;
    for t in 2..=4usize {
        let mut fractions = Vec::new();
        for shape in SHAPES {
            for seed in 1..=50u64 {
                let inst = gen_pack(ProblemKind::Mwis, shape, 12, t, (1, 1), seed);
                let r = pack::solve_mwis(&inst.objects, seed).unwrap();
                total += 1;
                for (a, &i) in r.chosen.iter().enumerate() {
                    for &j in &r.chosen[a + 1..] {
                        if geom::t_intersects(&inst.objects[i], &inst.objects[j]).unwrap() {
                            overlapping += 1;
                        }
                    }
                }
                let opt = baselines::brute_force_independent_set(&inst.objects)
                    .unwrap()
                    .value;
                if r.weight < opt / (16.0 * t as f64) {
                    below_floor += 1;
                }
                fractions.push(r.weight / opt);
            }
        }
        let m = mean(&fractions);
        pass &= m >= 1.0 / (4.0 * t as f64);
        summary.push(format!("t={t} mean weight/OPT {m:.4}"));
    }
    outcome(
        pass && overlapping == 0 && below_floor == 0,
        format!(
            "{total} runs, {overlapping} intersecting pairs, {below_floor} below OPT/(16t), {}",
            summary.join(", ")
        ),
    )
}

// 8 ------------------------------------------------------------------------

fn region_packing() -> Outcome {
    let mut overloaded = 0;
    let mut below_floor = 0;
    let mut total = 0;
    let mut worst = f64::INFINITY;
    for t in 2..=4usize {
        for shape in SHAPES {
            for seed in 1..=50u64 {
                let inst = gen_pack(ProblemKind::RegionPacking, shape, 12, t, (1, 3), seed);
                let r = pack::solve_region_packing(&inst, seed).unwrap();
                total += 1;
                for (pt, &cap) in inst.points.iter().zip(&inst.capacities) {
                    let load = r
                        .chosen
                        .iter()
                        .filter(|&&i| geom::contains_point(&inst.objects[i], pt).unwrap())
                        .count();
                    if load > cap as usize {
                        overloaded += 1;
                    }
                }
                let opt = baselines::brute_force_packing(&inst).unwrap().value;
                let c = f64::from(inst.min_capacity());
                let floor = opt / (16.0 * (t as f64).powf(1.0 / c));
                if r.weight < floor {
                    below_floor += 1;
                }
                worst = worst.min(r.weight / opt);
            }
        }
    }
    outcome(
        overloaded == 0 && below_floor == 0,
        format!("{total} runs, {overloaded} overloaded points, {below_floor} below floor, min weight/OPT {worst:.4}"),
    )
}

// 9 ------------------------------------------------------------------------

/// Circle crossings computed with trigonometry, kept when not strictly
/// inside another disk.
fn union_vertices_oracle(disks: &[Disk]) -> usize {
    let mut count = 0;
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let (a, b) = (&disks[i], &disks[j]);
            let d = (b.cx - a.cx).hypot(b.cy - a.cy);
            if d >= a.r + b.r || d <= (a.r - b.r).abs() {
                continue;
            }
            let base = (b.cy - a.cy).atan2(b.cx - a.cx);
            let spread = ((a.r * a.r + d * d - b.r * b.r) / (2.0 * a.r * d)).acos();
            for angle in [base + spread, base - spread] {
                let (x, y) = (a.cx + a.r * angle.cos(), a.cy + a.r * angle.sin());
                let buried = disks
                    .iter()
                    .enumerate()
                    .any(|(k, o)| k != i && k != j && (x - o.cx).hypot(y - o.cy) < o.r - 1e-9);
                if !buried {
                    count += 1;
                }
            }
        }
    }
    count
}

fn disks_of(objects: &[TObject]) -> Vec<BaseShape> {
    objects
        .iter()
        .flat_map(|o| o.parts.iter().copied())
        .collect()
}

fn union_complexity() -> Outcome {
    let p = params(ShapeKind::Disk);
    let mut over = 0;
    let mut oracle_mismatch = 0;
    let mut max_used = 0.0f64;
    for seed in 0..100u64 {
        let m = 3 + (seed as usize) % 28;
        let shapes = disks_of(&baselines::gen_t_disks(m, 1, &p, 4000 + seed).unwrap());
        let got = geom::union_vertex_count(&shapes).unwrap();
        if got.vertices > 6 * m - 12 {
            over += 1;
        }
        let plain: Vec<Disk> = shapes.iter().map(|s| *s.as_disk().unwrap()).collect();
        if !got.degenerate && got.vertices != union_vertices_oracle(&plain) {
            oracle_mismatch += 1;
        }
        max_used = max_used.max(got.vertices as f64 / (6 * m - 12) as f64);
    }
    let mut t_over = 0;
    for seed in 0..100u64 {
        let t = 2 + (seed % 3) as usize;
        let k = 2 + (seed as usize) % 10;
        let shapes = disks_of(&baselines::gen_t_disks(k, t, &p, 4500 + seed).unwrap());
        if geom::union_vertex_count(&shapes).unwrap().vertices > 6 * k * t {
            t_over += 1;
        }
    }
    outcome(
        over == 0 && t_over == 0 && oracle_mismatch == 0,
        format!(
            "100 disk sets: {over} over 6m-12 (max fraction used {max_used:.3}), {oracle_mismatch} oracle mismatches; 100 t-disk sets: {t_over} over 6kt"
        ),
    )
}

// 10 -----------------------------------------------------------------------

fn set_cover_reduction() -> Outcome {
    let mut mismatches = 0;
    for seed in 0..50u64 {
        let sets = 4 + (seed as usize) % 9;
        let elements = 3 + (seed as usize * 5) % 13;
        let f = 1 + (seed as usize) % 3.min(sets);
        let sc =
            baselines::gen_f_uniform_setcover(elements, sets, f, (1.0, 10.0), 6000 + seed).unwrap();
        let direct = baselines::brute_force_set_cover(&sc).unwrap();
        let mwds = baselines::reduce_setcover_to_mwds(&sc).unwrap();
        let via = baselines::brute_force_cover(&mwds).unwrap();
        if direct.value != via.value || direct.chosen != via.chosen {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("50 systems, {mismatches} optimum mismatches"),
    )
}

// 11 -----------------------------------------------------------------------

/// Runs the binary on a whitespace-separated command line.
fn cli(line: &str, threads: &str) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_multicover"))
        .args(line.split_whitespace())
        .env("MULTICOVER_THREADS", threads)
        .output()
        .expect("spawn multicover");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(out.status.success(), "{line}: {stderr}");
    out.stdout
}

fn determinism() -> Outcome {
    let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("determinism");
    std::fs::create_dir_all(&dir).unwrap();
    let mut differing = Vec::new();

    let bench = "bench --suite small --seeds 1..5 --no-header";
    let a = cli(bench, "1");
    let b = cli(bench, "4");
    if a != b || a.is_empty() {
        differing.push("bench".to_string());
    }
    let scc_bench = "bench --suite scc --seeds 1..3 --no-header";
    if cli(scc_bench, "1") != cli(scc_bench, "3") {
        differing.push("bench scc".to_string());
    }

    let kinds = [
        ("mwds", "disk"),
        ("mwsc", "interval"),
        ("mwis", "disk"),
        ("region_packing", "interval"),
    ];
    for (problem, shape) in kinds {
        let mut files = Vec::new();
        for run in 0..2 {
            let path = dir.join(format!("{problem}-{run}.json"));
            let p = path.display();
            cli(
                &format!(
                    "gen --problem {problem} --shape {shape} --n 10 --m 8 --t 3 --seed 9 --out {p}"
                ),
                "2",
            );
            let solved = cli(&format!("solve --instance {p} --seed 4"), "2");
            files.push((std::fs::read(&path).unwrap(), solved));
        }
        if files[0] != files[1] {
            differing.push(problem.to_string());
        }
    }
    let inst = dir.join("mwds-0.json");
    let scc_out = [dir.join("scc-0.csv"), dir.join("scc-1.csv")];
    for out in &scc_out {
        let line = format!(
            "scc --instance {} --trials 10 --seed 3 --out {}",
            inst.display(),
            out.display()
        );
        cli(&line, "2");
    }
    if std::fs::read(&scc_out[0]).unwrap() != std::fs::read(&scc_out[1]).unwrap() {
        differing.push("scc".to_string());
    }
    outcome(
        differing.is_empty(),
        if differing.is_empty() {
            format!("bench ({} bytes), gen, solve and scc outputs identical across runs and thread counts", a.len())
        } else {
            format!("outputs differ for: {}", differing.join(", "))
        },
    )
}

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let suite = interval_suite();
    let criteria: Vec<(&str, Check)> = vec![
        (
            "interval LP integrality",
            Box::new(|| lp_integrality(&suite)),
        ),
        (
            "consecutive ones and total unimodularity",
            Box::new(|| c1p_and_tum(&suite)),
        ),
        (
            "t to 1 reduction feasibility",
            Box::new(reduction_feasibility),
        ),
        ("shallow cell inequality", Box::new(shallow_cells)),
        (
            "MWDS pipeline",
            Box::new(|| {
                cover_pipeline(ProblemKind::Mwds, |t| t * (t.ln() + 4.0), "mwds_ratios.csv")
            }),
        ),
        (
            "MWSC pipeline",
            Box::new(|| cover_pipeline(ProblemKind::Mwsc, |t| t.ln() + 4.0, "mwsc_ratios.csv")),
        ),
        ("MWIS rounding", Box::new(independent_sets)),
        ("region packing", Box::new(region_packing)),
        ("disk union complexity", Box::new(union_complexity)),
        ("set cover reduction", Box::new(set_cover_reduction)),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!result.pass);
        println!(
            "criterion {:>2} {name}: {verdict} [{:.1}s] {}",
            i + 1,
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
