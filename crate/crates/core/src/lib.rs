//! Exact computer algebra for structured determinantal ideals.
//!
//! The crate builds catalecticant, sub-Hankel, and semi-Hankel matrices of
//! linear forms, computes their minor ideals with a Gröbner engine over
//! GF(p) or the rationals, and runs the property checks (height profiles,
//! 1-genericity, linear type, normality, Cremona inversion) that the
//! `catlab` command line exposes.

pub mod checks;
pub mod cremona;
pub mod families;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod matrix;
pub mod minors;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod report;
pub mod ring;

pub use families::{FamilyKind, FamilySpec};
pub use field::{Field, FieldSpec, GfP, Rationals, DEFAULT_PRIME};
pub use groebner::{Budgets, GbError, GroebnerBasis};
pub use ideal::Ideal;
pub use matrix::PolyMatrix;
pub use minors::minors_ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_poly, ParseError};
pub use poly::Polynomial;
pub use report::{CheckReport, CheckResult, Verdict};
pub use ring::PolyRing;
