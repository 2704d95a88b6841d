//! End-to-end tests against the compiled binary: output shapes, report
//! files, sweep artifacts, determinism, and the exit-code contract.

use std::process::{Command, Output};

fn catlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("stdout is JSON")
}

#[test]
fn build_prints_the_sub_hankel_pattern() {
    let out = catlab(&["build", "--family", "sub-hankel", "-m", "4", "-n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[ X1  X2  X3 ]"), "got:\n{text}");
    assert!(text.contains("[ X4  X5   0 ]"), "got:\n{text}");
}

#[test]
fn build_prints_seeded_forms_in_the_legend() {
    let out = catlab(&[
        "build", "--family", "semi-hankel", "-m", "4", "-n", "4", "--seed", "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("L1 ]"), "corner uses L1:\n{text}");
    assert!(text.contains("L1 = "), "legend defines L1:\n{text}");
    assert!(text.contains("L2 = "), "legend defines L2:\n{text}");

    // deterministic: the same seed prints the same matrix
    let again = catlab(&[
        "build", "--family", "semi-hankel", "-m", "4", "-n", "4", "--seed", "7",
    ]);
    assert_eq!(stdout(&again), text);

    let out = catlab(&[
        "build", "--family", "semi-hankel", "-m", "4", "-n", "4", "--seed", "7", "--format",
        "json",
    ]);
    let v = json(&out);
    assert_eq!(v["rows"].as_array().unwrap().len(), 4);
    assert_eq!(v["forms"].as_array().unwrap().len(), 2);
}

#[test]
fn build_rejects_bad_parameters_with_the_inequality() {
    let out = catlab(&["build", "--family", "sub-hankel", "-m", "4", "-n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("semi_hankel"), "got: {err}");

    let out = catlab(&["build", "--family", "nonesuch", "-m", "4"]);
    assert_eq!(out.status.code(), Some(2));

    // clap usage errors share the same code
    let out = catlab(&["build", "--family"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_hankel_passes_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hankel.json");
    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks",
        "heights,linear-type,ntf", "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("overall   pass"), "got:\n{text}");

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["instance"], "catalecticant_m3_r1");
    assert_eq!(report["field"]["kind"], "prime_field");
    assert_eq!(report["field"]["p"], 32003);
    let results = report["results"].as_array().unwrap();
    assert_eq!(results.len(), 3);
    for r in results {
        assert_eq!(r["verdict"], "pass", "result: {r}");
    }
    assert_eq!(results[0]["check"], "heights");
    assert_eq!(results[1]["check"], "linear_type");
    assert_eq!(results[2]["check"], "ntf");
}

#[test]
fn check_normality_reports_the_witness() {
    let out = catlab(&[
        "check", "--family", "sub-hankel", "-m", "4", "-n", "5", "--checks", "normality",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report = json(&out);
    let result = &report["results"][0];
    assert_eq!(result["verdict"], "pass");
    assert_eq!(result["data"]["normal"], false);
    let witness = result["witnesses"][0].as_str().unwrap();
    assert!(witness.contains("Delta_3"), "witness: {witness}");
}

#[test]
fn check_failures_exit_one() {
    // sub-Hankel matrices have a zero entry, so 1-genericity fails honestly
    let out = catlab(&[
        "check", "--family", "sub-hankel", "-m", "4", "-n", "5", "--checks", "one-generic",
        "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["results"][0]["verdict"], "fail");
    let witness = report["results"][0]["witnesses"][0].as_str().unwrap();
    assert!(witness.contains("unit vectors"), "witness: {witness}");
}

#[test]
fn check_cremona_on_the_square_semi_hankel() {
    let out = catlab(&[
        "check", "--family", "semi-hankel", "-m", "4", "-n", "4", "--seed", "1", "--checks",
        "cremona,symbolic", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report = json(&out);
    let cremona = &report["results"][0];
    assert_eq!(cremona["verdict"], "pass");
    assert_eq!(cremona["data"]["degree"], 3);
    assert_eq!(cremona["data"]["inverse_degree"], 3);
    assert_eq!(cremona["data"]["source_factor_degree"], 8);
    let symbolic = &report["results"][1];
    assert_eq!(symbolic["verdict"], "pass");
    assert_eq!(symbolic["data"]["D_degree"], 8);
    // the config records the seeded forms explicitly
    assert_eq!(report["config"]["forms"].as_array().unwrap().len(), 2);
}

#[test]
fn check_repeats_identically_modulo_timings() {
    let args = [
        "check", "--family", "semi-hankel", "-m", "4", "-n", "4", "--seed", "9", "--checks",
        "heights,linear-type", "--format", "json",
    ];
    let mut first = json(&catlab(&args));
    let mut second = json(&catlab(&args));
    for report in [&mut first, &mut second] {
        for result in report["results"].as_array_mut().unwrap() {
            result["ms"] = 0.into();
        }
    }
    assert_eq!(first, second);
}

#[test]
fn inapplicable_or_unknown_checks_are_usage_errors() {
    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks", "cremona",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("n = m"));

    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks", "nonesuch",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown check"));
}

#[test]
fn budget_overruns_exit_three() {
    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks", "heights",
        "--max-degree", "1", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let report = json(&out);
    assert_eq!(report["results"][0]["verdict"], "budget_exceeded");
}

#[test]
fn report_rerenders_a_saved_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks", "heights",
        "--out", path.to_str().unwrap(),
    ]);
    let out = catlab(&["report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("catalecticant_m3_r1"), "got:\n{text}");
    assert!(text.contains("heights"), "got:\n{text}");
    assert!(text.contains("pass"), "got:\n{text}");

    let out = catlab(&["report", "/nonexistent/r.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_writes_reports_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    let reports = dir.path().join("reports");
    std::fs::write(
        &config,
        format!(
            r#"
            out = "{}"
            threads = 2
            checks = ["heights"]

            [[grid]]
            family = "catalecticant"
            m = [3]

            [[grid]]
            family = "sub-hankel"
            m = [4]
            n = [5]
            "#,
            reports.display()
        ),
    )
    .unwrap();
    let out = catlab(&["sweep", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));

    let csv = std::fs::read_to_string(reports.join("summary.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines,
        [
            "instance,check,verdict,ms"
                .to_string()
                .as_str(),
            &csv_line_prefix(&csv, "catalecticant_m3_r1,heights,pass"),
            &csv_line_prefix(&csv, "catalecticant_m3_r2,heights,pass"),
            &csv_line_prefix(&csv, "sub_hankel_m4_n5,heights,pass"),
        ]
    );
    assert!(reports.join("catalecticant_m3_r1.json").exists());
    assert!(reports.join("catalecticant_m3_r2.json").exists());
    assert!(reports.join("sub_hankel_m4_n5.json").exists());
}

/// The full line of `csv` starting with `prefix` (timings vary per run).
fn csv_line_prefix(csv: &str, prefix: &str) -> String {
    csv.lines()
        .find(|line| line.starts_with(prefix))
        .unwrap_or_else(|| panic!("no line starts with {prefix}:\n{csv}"))
        .to_string()
}

#[test]
fn sweep_continues_past_bad_instances() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    let reports = dir.path().join("reports");
    // n = 9 violates n <= 2(m-1) = 6: marked as an error row, grid continues
    std::fs::write(
        &config,
        format!(
            r#"
            out = "{}"
            checks = ["heights"]

            [[grid]]
            family = "sub-hankel"
            m = [4]
            n = [9, 5]
            "#,
            reports.display()
        ),
    )
    .unwrap();
    let out = catlab(&["sweep", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(reports.join("summary.csv")).unwrap();
    assert!(csv.contains("sub_hankel_m4_n9,build,error,0"), "csv:\n{csv}");
    assert!(csv.contains("sub_hankel_m4_n5,heights,pass"), "csv:\n{csv}");
    assert!(stderr(&out).contains("sub_hankel_m4_n9"));
}

#[test]
fn sweep_empty_grid_is_a_clean_success() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    let reports = dir.path().join("reports");
    std::fs::write(&config, format!("out = \"{}\"\n", reports.display())).unwrap();
    let out = catlab(&["sweep", config.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let csv = std::fs::read_to_string(reports.join("summary.csv")).unwrap();
    assert_eq!(csv.trim(), "instance,check,verdict,ms");
}

#[test]
fn sweep_honors_the_thread_env_var() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("grid.toml");
    let reports = dir.path().join("reports");
    std::fs::write(
        &config,
        format!(
            r#"
            out = "{}"
            checks = ["heights"]

            [[grid]]
            family = "catalecticant"
            m = [3, 4]
            "#,
            reports.display()
        ),
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_catlab"))
        .args(["sweep", config.to_str().unwrap()])
        .env("CATLAB_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    // 2 + 3 instances, one heights row each
    let csv = std::fs::read_to_string(reports.join("summary.csv")).unwrap();
    assert_eq!(csv.lines().count(), 6);

    let out = Command::new(env!("CARGO_BIN_EXE_catlab"))
        .args(["sweep", config.to_str().unwrap()])
        .env("CATLAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn rationals_flag_switches_the_field() {
    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--checks", "heights",
        "--rationals", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report = json(&out);
    assert_eq!(report["field"]["kind"], "rationals");
    assert_eq!(report["results"][0]["verdict"], "pass");

    let out = catlab(&[
        "check", "--family", "catalecticant", "-m", "3", "-r", "1", "--prime", "15",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a prime"));
}
