//! TOML-configured sweeps: deterministic grid expansion, a fixed-size
//! worker pool, one JSON report per instance, and a summary CSV.

use crate::args::{parse_family, BudgetArgs, SweepArgs};
use crate::render::{csv_row, CSV_HEADER};
use crate::run::{
    instance_name, resolve_checks, CheckName, FieldChoice, EXIT_ALL_PASS, EXIT_BUDGET,
    EXIT_SOME_FAIL,
};
use catlab_core::families::FamilyKind;
use catlab_core::{FamilySpec, Verdict, DEFAULT_PRIME};
use serde::Deserialize;
use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Mirror of the run configuration with grid-valued family parameters.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    /// Report directory (default `reports`).
    pub out: Option<String>,
    /// Worker pool size; `CATLAB_THREADS` overrides it.
    pub threads: Option<usize>,
    pub prime: Option<u64>,
    #[serde(default)]
    pub rationals: bool,
    /// Check names; omitted means every applicable check per instance.
    pub checks: Option<Vec<String>>,
    pub rmax: Option<u32>,
    /// Semi-Hankel seeds (default `[1]`); overridable per grid block.
    pub seeds: Option<Vec<u64>>,
    pub max_degree: Option<u32>,
    pub max_basis: Option<usize>,
    /// Per-instance wall clock in seconds.
    pub timeout: Option<f64>,
    #[serde(default)]
    pub grid: Vec<GridBlock>,
}

/// One grid block: a family plus lists of its parameters. An omitted list
/// means "all legal values" for that family and `m`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridBlock {
    pub family: String,
    pub m: Vec<usize>,
    pub n: Option<Vec<usize>>,
    pub r: Option<Vec<usize>>,
    pub seeds: Option<Vec<u64>>,
}

/// Expands blocks in file order: m as listed, derived parameters ascending,
/// seeds as listed, so a sweep is reproducible row for row.
pub fn expand_grid(config: &SweepConfig) -> Result<Vec<FamilySpec>, String> {
    let default_seeds = config.seeds.clone().unwrap_or_else(|| vec![1]);
    let mut specs = Vec::new();
    for block in &config.grid {
        let kind = parse_family(&block.family)?;
        for &m in &block.m {
            match kind {
                FamilyKind::Catalecticant => {
                    let rs = block
                        .r
                        .clone()
                        .unwrap_or_else(|| if m >= 2 { (1..m).collect() } else { Vec::new() });
                    for r in rs {
                        specs.push(FamilySpec::catalecticant(m, r));
                    }
                }
                FamilyKind::SubHankel => {
                    let ns = block.n.clone().unwrap_or_else(|| {
                        if m >= 3 {
                            (m + 1..=2 * (m - 1)).collect()
                        } else {
                            Vec::new()
                        }
                    });
                    for n in ns {
                        specs.push(FamilySpec::sub_hankel(m, n));
                    }
                }
                FamilyKind::SemiHankel => {
                    let ns = block.n.clone().unwrap_or_else(|| {
                        if m >= 3 {
                            (m..=2 * (m - 1)).collect()
                        } else {
                            Vec::new()
                        }
                    });
                    let seeds = block.seeds.as_ref().unwrap_or(&default_seeds);
                    for n in ns {
                        for &seed in seeds {
                            specs.push(FamilySpec::semi_hankel(m, n, seed));
                        }
                    }
                }
            }
        }
    }
    Ok(specs)
}

struct Outcome {
    instance: String,
    report_json: Option<String>,
    rows: Vec<(String, String, u64)>,
    error: Option<String>,
    any_fail: bool,
    any_budget: bool,
}

/// Runs one instance: resolve checks (explicitly requested but inapplicable
/// ones become `skipped` rows), run the rest, and build the CSV rows.
fn run_job(field: FieldChoice, config: &SweepConfig, spec: &FamilySpec) -> Outcome {
    let instance = instance_name(spec);
    let mut rows = Vec::new();
    let mut to_run: Vec<CheckName> = Vec::new();
    if let Some(requested) = &config.checks {
        for name in requested {
            match CheckName::parse(name) {
                Ok(check) if check.obstruction(spec).is_none() => {
                    if !to_run.contains(&check) {
                        to_run.push(check);
                    }
                }
                Ok(check) => rows.push((check.as_str().to_string(), "skipped".to_string(), 0)),
                Err(msg) => {
                    return Outcome {
                        instance,
                        report_json: None,
                        rows,
                        error: Some(msg),
                        any_fail: true,
                        any_budget: false,
                    }
                }
            }
        }
    } else {
        to_run = resolve_checks(spec, &[]).expect("empty request never fails");
    }

    let budgets = BudgetArgs {
        max_degree: config.max_degree,
        max_basis: config.max_basis,
        timeout: config.timeout,
    };
    match field.run(spec, &to_run, config.rmax.unwrap_or(3), &budgets) {
        Ok(report) => {
            let mut any_fail = false;
            let mut any_budget = false;
            for result in &report.results {
                match result.verdict {
                    Verdict::Pass => {}
                    Verdict::Fail => any_fail = true,
                    Verdict::BudgetExceeded => any_budget = true,
                }
                rows.push((result.check.clone(), result.verdict.to_string(), result.ms));
            }
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            Outcome {
                instance,
                report_json: Some(json),
                rows,
                error: None,
                any_fail,
                any_budget,
            }
        }
        Err(msg) => {
            rows.push(("build".to_string(), "error".to_string(), 0));
            Outcome {
                instance,
                report_json: None,
                rows,
                error: Some(msg),
                any_fail: true,
                any_budget: false,
            }
        }
    }
}

/// Fixed-size pool over an index queue; result order stays the job order.
fn run_pool<T: Sync, R: Send>(
    jobs: &[T],
    threads: usize,
    work: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let slots: Vec<Mutex<Option<R>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads.min(jobs.len()).max(1) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= jobs.len() {
                    break;
                }
                let result = work(&jobs[i]);
                *slots[i].lock().expect("slot lock") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|slot| slot.into_inner().expect("slot lock").expect("slot filled"))
        .collect()
}

fn pool_size(config: &SweepConfig, jobs: usize) -> Result<usize, String> {
    if let Ok(value) = std::env::var("CATLAB_THREADS") {
        let n: usize = value
            .parse()
            .map_err(|_| format!("CATLAB_THREADS must be a positive integer, got '{value}'"))?;
        if n == 0 {
            return Err("CATLAB_THREADS must be a positive integer".into());
        }
        return Ok(n);
    }
    if let Some(n) = config.threads {
        if n == 0 {
            return Err("threads must be a positive integer".into());
        }
        return Ok(n);
    }
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    Ok(available.min(jobs.max(1)))
}

/// Runs the whole sweep; partial failures are marked in the summary and
/// never abort the grid.
pub fn cmd_sweep(args: &SweepArgs) -> Result<i32, String> {
    let text = fs::read_to_string(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let config: SweepConfig =
        toml::from_str(&text).map_err(|e| format!("bad sweep config: {e}"))?;
    let field = if config.rationals {
        if config.prime.is_some() {
            return Err("set either prime or rationals, not both".into());
        }
        FieldChoice::Rationals
    } else {
        FieldChoice::Prime(config.prime.unwrap_or(DEFAULT_PRIME))
    };
    let specs = expand_grid(&config)?;
    let out_dir: PathBuf = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(config.out.as_deref().unwrap_or("reports")));
    fs::create_dir_all(&out_dir).map_err(|e| format!("cannot create {}: {e}", out_dir.display()))?;

    let threads = pool_size(&config, specs.len())?;
    let outcomes = run_pool(&specs, threads, |spec| run_job(field, &config, spec));

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    let mut reports = 0usize;
    let mut any_fail = false;
    let mut any_budget = false;
    for outcome in &outcomes {
        if let Some(json) = &outcome.report_json {
            let path = out_dir.join(format!("{}.json", outcome.instance));
            fs::write(&path, json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            reports += 1;
        }
        if let Some(msg) = &outcome.error {
            eprintln!("{}: {msg}", outcome.instance);
        }
        for (check, verdict, ms) in &outcome.rows {
            println!("{}  {check}  {verdict}  {ms} ms", outcome.instance);
            csv.push_str(&csv_row(&outcome.instance, check, verdict, *ms));
            csv.push('\n');
        }
        any_fail |= outcome.any_fail;
        any_budget |= outcome.any_budget;
    }
    let csv_path = out_dir.join("summary.csv");
    fs::write(&csv_path, csv).map_err(|e| format!("cannot write {}: {e}", csv_path.display()))?;
    println!(
        "wrote {reports} report(s) and summary.csv to {}",
        out_dir.display()
    );
    Ok(if any_budget {
        EXIT_BUDGET
    } else if any_fail {
        EXIT_SOME_FAIL
    } else {
        EXIT_ALL_PASS
    })
}
