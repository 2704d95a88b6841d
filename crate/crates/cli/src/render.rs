//! Rendering: aligned matrix text with a form legend, build JSON, the
//! human-readable report view, and CSV summary rows.

use catlab_core::families::{Family, FamilyKind};
use catlab_core::{CheckReport, Field};
use serde_json::{json, Value};

/// Aligned bracket rows for a matrix of cell strings.
pub fn matrix_lines(rows: &[Vec<String>]) -> Vec<String> {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut widths = vec![0usize; cols];
    for row in rows {
        for (j, cell) in row.iter().enumerate() {
            widths[j] = widths[j].max(cell.len());
        }
    }
    rows.iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, cell)| format!("{cell:>width$}", width = widths[j]))
                .collect();
            format!("[ {} ]", cells.join("  "))
        })
        .collect()
}

/// The matrix with corner forms shown as `L1, L2, ...` plus a legend line
/// per form, so wide seeded entries stay readable.
pub fn family_text<F: Field>(fam: &Family<F>) -> String {
    let mut rows = fam.matrix.display_rows();
    if fam.spec.family == FamilyKind::SemiHankel {
        let n = fam.ring.nvars();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let anti = i + j + 1;
                if anti > n {
                    *cell = format!("L{}", anti - n);
                }
            }
        }
    }
    let mut out = String::new();
    for line in matrix_lines(&rows) {
        out.push_str(&line);
        out.push('\n');
    }
    for (k, form) in fam.forms.iter().enumerate() {
        out.push_str(&format!("L{} = {}\n", k + 1, form.display(&fam.ring)));
    }
    out
}

/// Machine view of a built family: explicit entries, ring, resolved forms.
pub fn family_json<F: Field>(fam: &Family<F>) -> Value {
    let ring: Vec<String> = (0..fam.ring.nvars())
        .map(|i| fam.ring.var_name(i).to_string())
        .collect();
    let forms: Vec<String> = fam.forms.iter().map(|f| f.display(&fam.ring)).collect();
    json!({
        "family": fam.spec.family,
        "m": fam.spec.m,
        "n": fam.ring.nvars(),
        "ring": ring,
        "rows": fam.matrix.display_rows(),
        "forms": forms,
    })
}

/// Human-readable report: header, form legend, one verdict row per check
/// with witnesses indented beneath it.
pub fn report_text(report: &CheckReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("instance  {}\n", report.instance));
    out.push_str(&format!("field     {}\n", report.field));
    out.push_str(&format!("version   {}\n", report.version));
    if let Some(forms) = report.config["forms"].as_array() {
        for (k, form) in forms.iter().enumerate() {
            if let Some(text) = form.as_str() {
                out.push_str(&format!("L{} = {}\n", k + 1, text));
            }
        }
    }
    let width = report
        .results
        .iter()
        .map(|r| r.check.len())
        .max()
        .unwrap_or(0);
    for result in &report.results {
        out.push_str(&format!(
            "{:<width$}  {:<15}  {} ms\n",
            result.check,
            result.verdict.to_string(),
            result.ms
        ));
        for witness in &result.witnesses {
            out.push_str(&format!("    witness: {witness}\n"));
        }
    }
    let overall = if report.any_budget_exceeded() {
        "budget_exceeded"
    } else if report.all_pass() {
        "pass"
    } else {
        "fail"
    };
    out.push_str(&format!("overall   {overall}\n"));
    out
}

pub const CSV_HEADER: &str = "instance,check,verdict,ms";

/// One summary row; all fields are comma-free by construction.
pub fn csv_row(instance: &str, check: &str, verdict: &str, ms: u64) -> String {
    format!("{instance},{check},{verdict},{ms}")
}
