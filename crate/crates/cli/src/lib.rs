//! Command-line front end: build and print family matrices, run check
//! suites, sweep parameter grids, and emit reproducible JSON/CSV reports.
//!
//! Exit codes partition runs into all-pass (0), some-fail (1), usage
//! error (2), and budget-exceeded (3).

pub mod args;
pub mod render;
pub mod run;
pub mod sweep;

use args::{BuildArgs, CheckArgs, Cli, Command, Format, ReportArgs};
use catlab_core::{CheckReport, FamilySpec, GfP, Rationals};
use run::{exit_code, resolve_checks, FieldChoice, EXIT_USAGE};
use std::fs;

/// Runs one parsed command line and returns the process exit code.
pub fn dispatch(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Build(a) => cmd_build(&a),
        Command::Check(a) => cmd_check(&a),
        Command::Sweep(a) => sweep::cmd_sweep(&a),
        Command::Report(a) => cmd_report(&a),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_USAGE
        }
    }
}

fn cmd_build(args: &BuildArgs) -> Result<i32, String> {
    let spec = args.family.to_spec()?;
    let rendered = match FieldChoice::from_args(&args.field) {
        FieldChoice::Prime(p) => {
            let field = GfP::new(p).ok_or_else(|| format!("--prime {p} is not a prime number"))?;
            build_output(spec.build(field).map_err(|e| e.to_string())?, args.format)
        }
        FieldChoice::Rationals => build_output(
            spec.build(Rationals).map_err(|e| e.to_string())?,
            args.format,
        ),
    };
    print!("{rendered}");
    Ok(0)
}

fn build_output<F: catlab_core::Field>(
    fam: catlab_core::families::Family<F>,
    format: Format,
) -> String {
    match format {
        Format::Text => render::family_text(&fam),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&render::family_json(&fam)).expect("json renders")
        ),
    }
}

fn cmd_check(args: &CheckArgs) -> Result<i32, String> {
    let spec = args.family.to_spec()?;
    let checks = resolve_checks(&spec, &args.checks)?;
    let report = FieldChoice::from_args(&args.field).run(&spec, &checks, args.rmax, &args.budgets)?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = &args.out {
        fs::write(path, &json).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    match args.format {
        Format::Text => print!("{}", render::report_text(&report)),
        Format::Json => println!("{json}"),
    }
    Ok(exit_code(&report))
}

fn cmd_report(args: &ReportArgs) -> Result<i32, String> {
    let text = fs::read_to_string(&args.path)
        .map_err(|e| format!("cannot read {}: {e}", args.path.display()))?;
    let report: CheckReport =
        serde_json::from_str(&text).map_err(|e| format!("not a report file: {e}"))?;
    match args.format {
        Format::Text => print!("{}", render::report_text(&report)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
    }
    Ok(exit_code(&report))
}

/// Re-export used by integration tests to build grids programmatically.
pub fn spec_label(spec: &FamilySpec) -> String {
    run::instance_name(spec)
}
