//! Argument types for the four subcommands, plus the small parsers that
//! turn flag text into core types.

use catlab_core::families::FamilyKind;
use catlab_core::groebner::Budgets;
use catlab_core::{FamilySpec, DEFAULT_PRIME};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::time::Duration;

#[derive(Debug, Parser)]
#[command(
    name = "catlab",
    version,
    about = "Exact checks for structured determinantal ideals",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family matrix and print it
    Build(BuildArgs),
    /// Run a check suite on one instance and report verdicts
    Check(CheckArgs),
    /// Run a TOML-configured grid of instances into a report directory
    Sweep(SweepArgs),
    /// Render a saved JSON report
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family: catalecticant | sub-hankel | semi-hankel
    #[arg(long)]
    pub family: String,

    /// Row count (every family matrix is m x (m-1))
    #[arg(short)]
    pub m: usize,

    /// Ambient variable count (sub-hankel and semi-hankel)
    #[arg(short)]
    pub n: Option<usize>,

    /// Row leap (catalecticant; r = 1 is the Hankel matrix)
    #[arg(short)]
    pub r: Option<usize>,

    /// Explicit corner forms for semi-hankel, comma separated
    #[arg(long, value_delimiter = ',')]
    pub forms: Vec<String>,

    /// Seed for generated corner forms (semi-hankel)
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

impl FamilyArgs {
    /// Validates the flag combination and produces the family spec.
    pub fn to_spec(&self) -> Result<FamilySpec, String> {
        let kind = parse_family(&self.family)?;
        match kind {
            FamilyKind::Catalecticant => {
                let r = self.r.ok_or("catalecticant needs -r")?;
                if self.n.is_some() {
                    return Err("catalecticant derives n = (m-1)(r+1); do not pass -n".into());
                }
                if !self.forms.is_empty() {
                    return Err("--forms only applies to semi-hankel".into());
                }
                Ok(FamilySpec::catalecticant(self.m, r))
            }
            FamilyKind::SubHankel => {
                let n = self.n.ok_or("sub-hankel needs -n")?;
                if self.r.is_some() {
                    return Err("-r only applies to catalecticant".into());
                }
                if !self.forms.is_empty() {
                    return Err("--forms only applies to semi-hankel".into());
                }
                Ok(FamilySpec::sub_hankel(self.m, n))
            }
            FamilyKind::SemiHankel => {
                let n = self.n.ok_or("semi-hankel needs -n")?;
                if self.r.is_some() {
                    return Err("-r only applies to catalecticant".into());
                }
                Ok(FamilySpec::semi_hankel(self.m, n, self.seed).with_forms(self.forms.clone()))
            }
        }
    }
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Prime modulus for GF(p) coefficients
    #[arg(long, default_value_t = DEFAULT_PRIME, conflicts_with = "rationals")]
    pub prime: u64,

    /// Compute over the rationals instead of GF(p)
    #[arg(long)]
    pub rationals: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BudgetArgs {
    /// Abort Groebner runs that reach S-polynomials past this degree
    #[arg(long)]
    pub max_degree: Option<u32>,

    /// Abort Groebner runs whose intermediate basis grows past this size
    #[arg(long)]
    pub max_basis: Option<usize>,

    /// Per-instance wall-clock limit in seconds
    #[arg(long)]
    pub timeout: Option<f64>,
}

impl BudgetArgs {
    /// Builds the budgets; a timeout's wall clock starts now.
    pub fn to_budgets(&self) -> Budgets {
        let mut b = Budgets::unlimited();
        if let Some(d) = self.max_degree {
            b = b.with_max_degree(d);
        }
        if let Some(n) = self.max_basis {
            b = b.with_max_basis(n);
        }
        if let Some(t) = self.timeout {
            b = b.with_timeout(Duration::from_secs_f64(t));
        }
        b
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub field: FieldArgs,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub field: FieldArgs,
    #[command(flatten)]
    pub budgets: BudgetArgs,

    /// Checks to run, comma separated (default: every applicable check);
    /// names: heights, one-generic, linear-type, ntf, normality, cremona,
    /// symbolic
    #[arg(long, value_delimiter = ',')]
    pub checks: Vec<String>,

    /// Largest power tested by the ntf check
    #[arg(long, default_value_t = 3)]
    pub rmax: u32,

    /// Also write the JSON report to this path
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Console output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// TOML grid configuration
    pub config: PathBuf,

    /// Report directory (overrides `out` from the config file)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Saved JSON report
    pub path: PathBuf,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Accepts hyphen or underscore spellings of the three family names.
pub fn parse_family(name: &str) -> Result<FamilyKind, String> {
    match name.replace('-', "_").as_str() {
        "catalecticant" => Ok(FamilyKind::Catalecticant),
        "sub_hankel" => Ok(FamilyKind::SubHankel),
        "semi_hankel" => Ok(FamilyKind::SemiHankel),
        other => Err(format!(
            "unknown family '{other}' (expected catalecticant, sub-hankel, or semi-hankel)"
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(args: &[&str]) -> FamilyArgs {
        let mut full = vec!["catlab", "build"];
        full.extend_from_slice(args);
        match Cli::parse_from(full).command {
            Command::Build(b) => b.family,
            _ => unreachable!(),
        }
    }

    #[test]
    fn family_flags_round_trip() {
        let spec = family(&["--family", "sub-hankel", "-m", "4", "-n", "5"])
            .to_spec()
            .unwrap();
        assert_eq!(spec, FamilySpec::sub_hankel(4, 5));

        let spec = family(&["--family", "semi_hankel", "-m", "4", "-n", "4", "--seed", "7"])
            .to_spec()
            .unwrap();
        assert_eq!(spec, FamilySpec::semi_hankel(4, 4, 7));

        let spec = family(&["--family", "catalecticant", "-m", "3", "-r", "1"])
            .to_spec()
            .unwrap();
        assert_eq!(spec, FamilySpec::catalecticant(3, 1));
    }

    #[test]
    fn conflicting_flags_are_usage_errors() {
        assert!(family(&["--family", "catalecticant", "-m", "3"])
            .to_spec()
            .is_err());
        assert!(
            family(&["--family", "catalecticant", "-m", "3", "-r", "1", "-n", "9"])
                .to_spec()
                .is_err()
        );
        assert!(family(&["--family", "sub-hankel", "-m", "4", "-n", "5", "-r", "1"])
            .to_spec()
            .is_err());
        assert!(family(&["--family", "hankel", "-m", "3"]).to_spec().is_err());
    }

    #[test]
    fn budget_flags_build_budgets() {
        let b = BudgetArgs {
            max_degree: Some(12),
            max_basis: None,
            timeout: Some(1.5),
        }
        .to_budgets();
        assert_eq!(b.max_degree, Some(12));
        assert_eq!(b.max_basis, None);
        assert!(b.deadline.is_some());
    }
}
