use std::path::PathBuf;

use multicover::cli;

/// Runs a whitespace-separated command line in process.
fn run(line: &str) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multicover").chain(line.split_whitespace());
    let code = cli::run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn gen_then_solve_and_exact() {
    let path = tmp("mwds.json");
    let p = path.display();
    let (code, out, _) = run(&format!(
        "gen --problem mwds --shape interval --n 12 --m 10 --t 3 --seed 1 --out {p}"
    ));
    assert_eq!(code, 0);
    assert!(out.contains("wrote mwds instance"));

    let (code, solved, _) = run(&format!("solve --instance {p} --seed 7"));
    assert_eq!(code, 0);
    let (code, exact, _) = run(&format!("exact --instance {p}"));
    assert_eq!(code, 0);
    let lp: f64 = field(&solved, "lp_value").parse().unwrap();
    let cost: f64 = field(&solved, "cost").parse().unwrap();
    let opt: f64 = field(&exact, "optimum").parse().unwrap();
    assert!(lp <= opt + 1e-6 && opt <= cost + 1e-6);
}

#[test]
fn mwis_summary() {
    let path = tmp("mwis.json");
    let p = path.display();
    assert_eq!(
        run(&format!(
            "gen --problem mwis --shape disk --n 10 --t 2 --seed 4 --out {p}"
        ))
        .0,
        0
    );
    let (code, out, _) = run(&format!("solve --problem mwis --instance {p} --seed 7"));
    assert_eq!(code, 0);
    let lp: f64 = field(&out, "lp_value").parse().unwrap();
    let weight: f64 = field(&out, "weight").parse().unwrap();
    assert!(weight <= lp + 1e-6);
}

#[test]
fn usage_errors_exit_2() {
    let (code, _, err) = run("solve --bogus");
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    assert_eq!(run("frobnicate").0, 2);
    assert_eq!(run("gen --problem mwds --shape hexagon --n 3 --out x").0, 2);
    let (code, out, _) = run("--help");
    assert_eq!(code, 0);
    for sub in ["gen", "solve", "exact", "scc", "bench"] {
        assert!(out.contains(sub));
    }
}

#[test]
fn problem_mismatch_is_a_usage_error() {
    let path = tmp("pack.json");
    let p = path.display();
    run(&format!(
        "gen --problem region_packing --shape interval --n 6 --t 2 --out {p}"
    ));
    let (code, _, err) = run(&format!("solve --problem mwds --instance {p}"));
    assert_eq!(code, 2);
    assert!(err.contains("does not match"));
}

#[test]
fn infeasible_and_malformed_input_exit_1() {
    let path = tmp("uncoverable.json");
    std::fs::write(
        &path,
        r#"{"kind": "mwds", "t": 1, "shape": "interval",
            "reds": [{"id": 0, "weight": 1, "parts": [[0, 1]]}],
            "blues": [{"id": 0, "weight": 0, "parts": [[5, 6]]}]}"#,
    )
    .unwrap();
    let (code, _, err) = run(&format!("solve --instance {}", path.display()));
    assert_eq!(code, 1);
    assert!(err.contains("blue 0: uncoverable"), "{err}");

    let bad = tmp("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let (code, _, err) = run(&format!("exact --instance {}", bad.display()));
    assert_eq!(code, 1);
    assert!(err.contains("line 1"), "{err}");

    let (code, _, _) = run(&format!(
        "solve --instance {}",
        tmp("missing.json").display()
    ));
    assert_eq!(code, 1);
}

#[test]
fn scc_writes_samples() {
    let inst = tmp("scc.json");
    let csv = tmp("scc.csv");
    run(&format!(
        "gen --problem mwds --shape disk --n 12 --m 14 --t 2 --seed 3 --out {}",
        inst.display()
    ));
    let (code, out, _) = run(&format!(
        "scc --instance {} --trials 8 --out {}",
        inst.display(),
        csv.display()
    ));
    assert_eq!(code, 0);
    assert_eq!(field(&out, "violations"), "0");
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("n,k,g_count,f_count\n"));
    assert_eq!(text.lines().count(), 9);
}

#[test]
fn bench_csv_schema_and_invariants() {
    let (code, out, _) = run("bench --suite small --seeds 1..3 --no-header");
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        &header[..13],
        &[
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
        ]
    );
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let mut rows = 0;
    for line in lines {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), header.len());
        let lp: f64 = f[col("lp_value")].parse().unwrap();
        let rounded: f64 = f[col("rounded_value")].parse().unwrap();
        match f[col("problem")] {
            "mwds" | "mwsc" => assert!(rounded >= lp - 1e-6, "{line}"),
            _ => assert!(rounded <= lp + 1e-6, "{line}"),
        }
        if f[col("problem")] == "mwds" && f[col("t")] == "1" {
            let r: f64 = f[col("ratio_vs_lp")].parse().unwrap();
            assert!((r - 1.0).abs() <= 1e-6, "{line}");
        }
        assert_eq!(f[col("feasible")], "true");
        rows += 1;
    }
    assert_eq!(rows, 25 * 3);

    let (_, with_header, _) = run("bench --suite small --seeds 1");
    assert!(with_header.starts_with("# "));
}

#[test]
fn scc_suite_reports_no_violations() {
    let (code, out, _) = run("bench --suite scc --seeds 1..2 --no-header");
    assert_eq!(code, 0);
    let mut lines = out.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "scc_violations").unwrap();
    for line in lines {
        assert_eq!(line.split(',').nth(col), Some("0"), "{line}");
    }
}

#[test]
fn bad_seed_list() {
    assert_eq!(run("bench --suite small --seeds 9..1").0, 2);
    assert_eq!(run("bench --suite huge --seeds 1").0, 2);
}

#[test]
fn thread_cap_does_not_change_output() {
    let bin = env!("CARGO_BIN_EXE_multicover");
    let args = [
        "bench",
        "--suite",
        "small",
        "--seeds",
        "1..4",
        "--no-header",
    ];
    let outputs: Vec<Vec<u8>> = ["1", "3"]
        .iter()
        .map(|n| {
            let o = std::process::Command::new(bin)
                .args(args)
                .env("MULTICOVER_THREADS", n)
                .output()
                .unwrap();
            assert!(o.status.success());
            o.stdout
        })
        .collect();
    assert_eq!(outputs[0], outputs[1]);
}
