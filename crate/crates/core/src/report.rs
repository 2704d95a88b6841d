//! Report types shared by the check harness and the command line: verdicts,
//! per-check results with timings and witnesses, and the JSON report shape.

use crate::field::FieldSpec;
use crate::groebner::GbError;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;
use std::time::Instant;

/// Outcome of one check: a mathematical verdict, or an explicit resource
/// failure distinct from both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::BudgetExceeded => write!(f, "budget_exceeded"),
        }
    }
}

/// One check's result row as it appears in reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Verdict,
    pub data: Value,
    pub witnesses: Vec<String>,
    pub ms: u64,
}

/// The full report for one instance; `config` and `instance` are filled by
/// the caller (the CLI serializes its run config there).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub config: Value,
    pub field: FieldSpec,
    pub instance: String,
    pub results: Vec<CheckResult>,
    pub version: String,
}

impl CheckReport {
    pub fn new(config: Value, field: FieldSpec, instance: String) -> Self {
        CheckReport {
            config,
            field,
            instance,
            results: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.verdict == Verdict::Pass)
    }

    pub fn any_budget_exceeded(&self) -> bool {
        self.results
            .iter()
            .any(|r| r.verdict == Verdict::BudgetExceeded)
    }
}

/// What a check body computes; `run_check` adds name, timing, and the
/// budget-failure path.
pub struct CheckOutcome {
    pub pass: bool,
    pub data: Value,
    pub witnesses: Vec<String>,
}

impl CheckOutcome {
    pub fn passing(data: Value) -> Self {
        CheckOutcome {
            pass: true,
            data,
            witnesses: Vec::new(),
        }
    }

    pub fn failing(data: Value, witnesses: Vec<String>) -> Self {
        CheckOutcome {
            pass: false,
            data,
            witnesses,
        }
    }
}

/// Runs a check body, timing it and converting budget errors into the
/// distinct `BudgetExceeded` verdict (never a silent pass or fail).
pub fn run_check(
    name: &str,
    body: impl FnOnce() -> Result<CheckOutcome, GbError>,
) -> CheckResult {
    let start = Instant::now();
    let (verdict, data, witnesses) = match body() {
        Ok(out) => (
            if out.pass { Verdict::Pass } else { Verdict::Fail },
            out.data,
            out.witnesses,
        ),
        Err(GbError::Budget(msg)) => (
            Verdict::BudgetExceeded,
            serde_json::json!({ "budget": msg }),
            Vec::new(),
        ),
    };
    CheckResult {
        check: name.to_string(),
        verdict,
        data,
        witnesses,
        ms: start.elapsed().as_millis() as u64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_serialization_is_snake_case() {
        assert_eq!(serde_json::to_string(&Verdict::Pass).unwrap(), "\"pass\"");
        assert_eq!(
            serde_json::to_string(&Verdict::BudgetExceeded).unwrap(),
            "\"budget_exceeded\""
        );
        let v: Verdict = serde_json::from_str("\"fail\"").unwrap();
        assert_eq!(v, Verdict::Fail);
    }

    #[test]
    fn run_check_times_and_converts_budget() {
        let ok = run_check("demo", || {
            Ok(CheckOutcome::passing(serde_json::json!({"k": 1})))
        });
        assert_eq!(ok.verdict, Verdict::Pass);
        assert_eq!(ok.check, "demo");
        let bad = run_check("demo", || Err(GbError::Budget("cap".into())));
        assert_eq!(bad.verdict, Verdict::BudgetExceeded);
        assert_eq!(bad.data["budget"], "cap");
    }

    #[test]
    fn report_roundtrips_through_json() {
        let mut rep = CheckReport::new(
            serde_json::json!({"family": "catalecticant"}),
            FieldSpec::PrimeField { p: 32003 },
            "catalecticant(m=3,r=1)".to_string(),
        );
        rep.results.push(CheckResult {
            check: "heights".into(),
            verdict: Verdict::Pass,
            data: serde_json::json!({}),
            witnesses: vec![],
            ms: 3,
        });
        let text = serde_json::to_string_pretty(&rep).unwrap();
        let back: CheckReport = serde_json::from_str(&text).unwrap();
        assert!(back.all_pass());
        assert_eq!(back.instance, rep.instance);
    }
}
