//! One-instance execution: check selection and applicability, the generic
//! field dispatch, and the verdict-to-exit-code map.

use crate::args::{BudgetArgs, FieldArgs};
use catlab_core::checks::{
    check_height_profile, check_linear_type, check_normality, check_normally_torsionfree,
    check_one_generic, OneGenericMode,
};
use catlab_core::cremona::{check_inversion_factor_jacobian, check_symbolic_generation};
use catlab_core::families::{Family, FamilyKind};
use catlab_core::{CheckReport, CheckResult, Field, FamilySpec, GfP, Rationals};
use serde_json::json;

pub const EXIT_ALL_PASS: i32 = 0;
pub const EXIT_SOME_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// The seven check names, in the order a default run executes them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    Heights,
    OneGeneric,
    LinearType,
    Ntf,
    Normality,
    Cremona,
    Symbolic,
}

pub const ALL_CHECKS: [CheckName; 7] = [
    CheckName::Heights,
    CheckName::OneGeneric,
    CheckName::LinearType,
    CheckName::Ntf,
    CheckName::Normality,
    CheckName::Cremona,
    CheckName::Symbolic,
];

impl CheckName {
    pub fn parse(name: &str) -> Result<Self, String> {
        match name.replace('-', "_").as_str() {
            "heights" => Ok(CheckName::Heights),
            "one_generic" => Ok(CheckName::OneGeneric),
            "linear_type" => Ok(CheckName::LinearType),
            "ntf" => Ok(CheckName::Ntf),
            "normality" => Ok(CheckName::Normality),
            "cremona" => Ok(CheckName::Cremona),
            "symbolic" => Ok(CheckName::Symbolic),
            other => Err(format!(
                "unknown check '{other}' (expected heights, one-generic, linear-type, ntf, \
                 normality, cremona, or symbolic)"
            )),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Heights => "heights",
            CheckName::OneGeneric => "one-generic",
            CheckName::LinearType => "linear-type",
            CheckName::Ntf => "ntf",
            CheckName::Normality => "normality",
            CheckName::Cremona => "cremona",
            CheckName::Symbolic => "symbolic",
        }
    }

    /// Why this check cannot run on `spec`, or `None` when it can.
    pub fn obstruction(self, spec: &FamilySpec) -> Option<String> {
        match self {
            CheckName::Ntf | CheckName::Normality if spec.m < 3 => Some(format!(
                "{} needs m >= 3 so the singular-locus ideal I_(m-2) is proper",
                self.as_str()
            )),
            CheckName::Cremona | CheckName::Symbolic
                if !(spec.family == FamilyKind::SemiHankel && spec.n == Some(spec.m)) =>
            {
                Some(format!(
                    "{} needs as many minors as variables: semi-hankel with n = m",
                    self.as_str()
                ))
            }
            _ => None,
        }
    }
}

/// Resolves `--checks`: explicit names run in the order given (usage error
/// if one cannot run on this instance); an empty request means every check
/// the instance supports.
pub fn resolve_checks(spec: &FamilySpec, requested: &[String]) -> Result<Vec<CheckName>, String> {
    if requested.is_empty() {
        return Ok(ALL_CHECKS
            .into_iter()
            .filter(|c| c.obstruction(spec).is_none())
            .collect());
    }
    let mut checks = Vec::new();
    for name in requested {
        let check = CheckName::parse(name)?;
        if let Some(reason) = check.obstruction(spec) {
            return Err(reason);
        }
        if !checks.contains(&check) {
            checks.push(check);
        }
    }
    Ok(checks)
}

/// Which coefficient field a run uses; dispatches the generic runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldChoice {
    Prime(u64),
    Rationals,
}

impl FieldChoice {
    pub fn from_args(args: &FieldArgs) -> FieldChoice {
        if args.rationals {
            FieldChoice::Rationals
        } else {
            FieldChoice::Prime(args.prime)
        }
    }

    pub fn run(
        self,
        spec: &FamilySpec,
        checks: &[CheckName],
        r_max: u32,
        budgets: &BudgetArgs,
    ) -> Result<CheckReport, String> {
        match self {
            FieldChoice::Prime(p) => {
                let field =
                    GfP::new(p).ok_or_else(|| format!("--prime {p} is not a prime number"))?;
                run_instance(field, spec, checks, r_max, budgets)
            }
            FieldChoice::Rationals => run_instance(Rationals, spec, checks, r_max, budgets),
        }
    }
}

/// Stable instance label used for report file names and CSV rows.
pub fn instance_name(spec: &FamilySpec) -> String {
    match spec.family {
        FamilyKind::Catalecticant => {
            format!("catalecticant_m{}_r{}", spec.m, spec.r.unwrap_or(0))
        }
        FamilyKind::SubHankel => format!("sub_hankel_m{}_n{}", spec.m, spec.n.unwrap_or(0)),
        FamilyKind::SemiHankel => {
            let base = format!("semi_hankel_m{}_n{}", spec.m, spec.n.unwrap_or(0));
            if spec.forms.is_empty() {
                format!("{base}_s{}", spec.seed.unwrap_or(0))
            } else {
                base
            }
        }
    }
}

/// Builds the instance and runs the requested checks in order. The config
/// block records the resolved corner forms explicitly so a report can be
/// audited without re-deriving the seed.
pub fn run_instance<F: Field>(
    field: F,
    spec: &FamilySpec,
    checks: &[CheckName],
    r_max: u32,
    budget_args: &BudgetArgs,
) -> Result<CheckReport, String> {
    let fam = spec.build(field).map_err(|e| e.to_string())?;
    let budgets = budget_args.to_budgets();
    let forms: Vec<String> = fam.forms.iter().map(|f| f.display(&fam.ring)).collect();
    let config = json!({
        "spec": spec,
        "forms": forms,
        "checks": checks.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
        "r_max": r_max,
        "budgets": {
            "max_degree": budget_args.max_degree,
            "max_basis": budget_args.max_basis,
            "timeout_seconds": budget_args.timeout,
        },
    });
    let mut report = CheckReport::new(config, fam.ring.field().spec(), instance_name(spec));
    for &check in checks {
        report.results.push(run_one(check, &fam, r_max, &budgets));
    }
    Ok(report)
}

fn run_one<F: Field>(
    check: CheckName,
    fam: &Family<F>,
    r_max: u32,
    budgets: &catlab_core::Budgets,
) -> CheckResult {
    match check {
        CheckName::Heights => check_height_profile(&fam.matrix, fam.spec.family, budgets),
        CheckName::OneGeneric => {
            check_one_generic(&fam.matrix, OneGenericMode::Certified, budgets)
        }
        CheckName::LinearType => check_linear_type(&fam.matrix, budgets),
        CheckName::Ntf => check_normally_torsionfree(&fam.matrix, r_max, budgets),
        CheckName::Normality => check_normality(&fam.matrix, fam.spec.family, budgets),
        CheckName::Cremona => check_inversion_factor_jacobian(
            &fam.ring,
            &fam.matrix.signed_maximal_minors(),
            budgets,
        ),
        CheckName::Symbolic => check_symbolic_generation(
            &fam.ring,
            &fam.matrix.signed_maximal_minors(),
            budgets,
        ),
    }
}

/// Exit code for a finished report: budget overruns dominate failures,
/// failures dominate success, so the four codes partition cleanly.
pub fn exit_code(report: &CheckReport) -> i32 {
    if report.any_budget_exceeded() {
        EXIT_BUDGET
    } else if report.all_pass() {
        EXIT_ALL_PASS
    } else {
        EXIT_SOME_FAIL
    }
}
