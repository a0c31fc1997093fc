//! Numerical experiments around the conditional Ingleton inequalities:
//! coefficient scans over proved families, sweeps over hypothesis bounds,
//! a constrained violation search and the six-variable check.

mod bound;
pub mod families;
mod search;
mod subtler;
mod sweep;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::dist::{DistError, JointDistribution, NumericProfile};
use crate::expr::EntropyExpr;
use crate::rational::Rational;

pub use bound::{bound_from_family, family_coefficient, scan_limit, FamilyBound, FamilyTheorem};
pub use search::{search_max_violation, SearchConfig, SearchConstraint, SearchResult, TraceEntry};
pub use subtler::{check_subtler, SubtlerReport, SUBTLER_CONSTANT};
pub use sweep::{
    fitted_constant, records_to_csv, sweep, SweepConfig, SweepRecord, SweepSource, CSV_HEADER,
};

/// Normalizers below this are treated as zero and the table is rejected.
pub const NORMALIZER_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("eps must lie strictly between 0 and 1, got {0}")]
    EpsOutOfRange(String),
    #[error("unknown theorem `{0}`; expected 1, 2, 3 or 4b")]
    UnknownTheorem(String),
    #[error("eps grid must be positive and strictly descending")]
    BadGrid,
    #[error("budget and restarts must be at least 1")]
    EmptyBudget,
    #[error("search shape has {shape} variables but the universe has {universe}")]
    ShapeMismatch { shape: usize, universe: usize },
    #[error("the table needs the variables {0}")]
    MissingVariables(String),
    #[error(transparent)]
    Dist(#[from] DistError),
}

/// The four hypothesis patterns the lab sweeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// `I(A:X|Y)`, `I(A:Y|X)` bounded relative to `I(X:Y)`.
    First,
    /// `I(X:Y|A)`, `I(A:Y|X)` bounded relative to `I(X:A)`.
    Second,
    /// All four of `I(A:X|Y)`, `I(A:Y|X)`, `I(B:X|Y)`, `I(B:Y|X)` bounded
    /// relative to `I(X:Y)`.
    Third,
    /// The hypotheses of `Third` with the doubled six-variable inequality.
    Subtler,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::First,
        Theorem::Second,
        Theorem::Third,
        Theorem::Subtler,
    ];

    pub fn hypotheses(self) -> Vec<EntropyExpr> {
        let i = EntropyExpr::i;
        match self {
            Theorem::First => vec![i(&["A"], &["X"], &["Y"]), i(&["A"], &["Y"], &["X"])],
            Theorem::Second => vec![i(&["X"], &["Y"], &["A"]), i(&["A"], &["Y"], &["X"])],
            Theorem::Third | Theorem::Subtler => vec![
                i(&["A"], &["X"], &["Y"]),
                i(&["A"], &["Y"], &["X"]),
                i(&["B"], &["X"], &["Y"]),
                i(&["B"], &["Y"], &["X"]),
            ],
        }
    }

    /// The quantity hypotheses and slack are measured against.
    pub fn normalizer(self) -> EntropyExpr {
        match self {
            Theorem::Second => EntropyExpr::i(&["X"], &["A"], &[]),
            _ => EntropyExpr::i(&["X"], &["Y"], &[]),
        }
    }

    /// How far the conclusion is from failing, in bits; positive values
    /// are the excess the error term has to absorb.
    pub fn slack(self) -> EntropyExpr {
        match self {
            Theorem::Subtler => {
                EntropyExpr::Sum(vec![ingleton_excess("A", "B"), ingleton_excess("A'", "B'")])
            }
            _ => ingleton_excess("A", "B"),
        }
    }

    /// The error term's shape: `√eps`, or `eps·log2(1/eps)` for `Third`.
    pub fn rate(self, eps: f64) -> f64 {
        match self {
            Theorem::Third => eps * (1.0 / eps).log2(),
            _ => eps.sqrt(),
        }
    }

    pub fn labels(self) -> &'static [&'static str] {
        match self {
            Theorem::Subtler => &["X", "Y", "A", "B", "A'", "B'"],
            _ => &families::QUAD,
        }
    }
}

/// `I(X:Y) − I(X:Y|a) − I(X:Y|b) − I(a:b)`.
pub fn ingleton_excess(a: &str, b: &str) -> EntropyExpr {
    let i = EntropyExpr::i;
    let minus = |e: EntropyExpr| e.scale(Rational::from(-1));
    EntropyExpr::Sum(vec![
        i(&["X"], &["Y"], &[]),
        minus(i(&["X"], &["Y"], &[a])),
        minus(i(&["X"], &["Y"], &[b])),
        minus(i(&[a], &[b], &[])),
    ])
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::First => "1",
            Theorem::Second => "2",
            Theorem::Third => "3",
            Theorem::Subtler => "4b",
        })
    }
}

impl FromStr for Theorem {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "1" => Ok(Theorem::First),
            "2" => Ok(Theorem::Second),
            "3" => Ok(Theorem::Third),
            "4b" => Ok(Theorem::Subtler),
            other => Err(LabError::UnknownTheorem(other.to_string())),
        }
    }
}

/// Hypothesis attainment and normalized slack of one table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measurement {
    pub normalizer: f64,
    pub eps_attained: f64,
    pub slack_norm: f64,
}

/// `None` when the normalizer is below [`NORMALIZER_GUARD`].
pub fn measure_profile(
    theorem: Theorem,
    profile: &NumericProfile,
) -> Result<Option<Measurement>, LabError> {
    let value = |e: &EntropyExpr| profile.evaluate_expr(e).map(|est| est.value);
    let normalizer = value(&theorem.normalizer())?;
    if normalizer < NORMALIZER_GUARD {
        return Ok(None);
    }
    let worst = theorem
        .hypotheses()
        .iter()
        .map(value)
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))?;
    Ok(Some(Measurement {
        normalizer,
        eps_attained: worst / normalizer,
        slack_norm: value(&theorem.slack())? / normalizer,
    }))
}

/// Measures a four-variable table; for `Subtler` the table is first
/// extended by copies `A'` of `A` and `B'` of `B` over `(X, Y)`.
pub fn measure(theorem: Theorem, d: &JointDistribution) -> Result<Option<Measurement>, LabError> {
    let table = match theorem {
        Theorem::Subtler if d.universe().len() == 4 => six_tuple(d)?,
        _ => d.clone(),
    };
    if theorem
        .labels()
        .iter()
        .any(|l| !table.universe().contains(l))
    {
        return Err(LabError::MissingVariables(theorem.labels().join(",")));
    }
    measure_profile(theorem, &table.entropy_profile())
}

/// `(X, Y, A, B)` extended by `A'`, `B'`, copies of `A` and `B` over `(X, Y)`.
pub fn six_tuple(d: &JointDistribution) -> Result<JointDistribution, LabError> {
    let d = d.copy_extend("A", &["X", "Y"], "A'")?;
    Ok(d.copy_extend("B", &["X", "Y"], "B'")?)
}
