//! The six-variable alternative and doubled inequality.

use crate::dist::JointDistribution;

use super::{ingleton_excess, LabError, Theorem, NORMALIZER_GUARD};

/// Constant in front of `√eps` granted to both parts of the check.
pub const SUBTLER_CONSTANT: f64 = 4.0;

/// Residuals are in units of `I(X:Y)`; nonnegative means the inequality
/// holds with the granted slack.
#[derive(Clone, Debug, PartialEq)]
pub struct SubtlerReport {
    pub eps: f64,
    pub threshold: f64,
    pub constant: f64,
    pub mutual_xy: f64,
    pub eps_attained: f64,
    pub hypotheses_met: bool,
    /// The stronger Ingleton bound for `(X, Y, A, B)`.
    pub stronger: f64,
    /// The weaker Ingleton bound for `(X, Y, A', B')`.
    pub weaker: f64,
    /// The doubled six-variable inequality.
    pub doubled: f64,
}

impl SubtlerReport {
    pub fn alternative_holds(&self) -> bool {
        self.stronger >= 0.0 || self.weaker >= 0.0
    }

    pub fn to_text(&self) -> String {
        format!(
            "eps: {}\nthreshold: {}\nconstant: {}\nI(X:Y): {:.12}\neps_attained: {:.12}\nhypotheses_met: {}\n\
             stronger_residual: {:.12}\nweaker_residual: {:.12}\ndoubled_residual: {:.12}\nalternative_holds: {}\n",
            self.eps,
            self.threshold,
            self.constant,
            self.mutual_xy,
            self.eps_attained,
            self.hypotheses_met,
            self.stronger,
            self.weaker,
            self.doubled,
            self.alternative_holds()
        )
    }
}

/// Evaluates both branches of the alternative at `threshold` and the
/// doubled inequality on a table over `X, Y, A, B, A', B'`.
pub fn check_subtler(
    d6: &JointDistribution,
    eps: f64,
    threshold: f64,
    constant: f64,
) -> Result<SubtlerReport, LabError> {
    let labels = Theorem::Subtler.labels();
    if labels.iter().any(|l| !d6.universe().contains(l)) {
        return Err(LabError::MissingVariables(labels.join(",")));
    }
    let profile = d6.entropy_profile();
    let value = |e| profile.evaluate_expr(&e).map(|est| est.value);
    let ixy = value(Theorem::Subtler.normalizer())?;
    let worst = Theorem::Subtler
        .hypotheses()
        .into_iter()
        .map(value)
        .try_fold(0.0f64, |acc, v| v.map(|v| acc.max(v)))?;
    // Residuals are divided by I(X:Y) only when it is measurably positive.
    let scale = if ixy >= NORMALIZER_GUARD { ixy } else { 1.0 };
    let excess = value(ingleton_excess("A", "B"))? / scale;
    let excess_copy = value(ingleton_excess("A'", "B'"))? / scale;
    let grant = constant * eps.sqrt();
    let eps_attained = match (ixy >= NORMALIZER_GUARD, worst > 0.0) {
        (true, _) => worst / ixy,
        (false, true) => f64::INFINITY,
        (false, false) => 0.0,
    };
    Ok(SubtlerReport {
        eps,
        threshold,
        constant,
        mutual_xy: ixy,
        eps_attained,
        hypotheses_met: worst <= eps * ixy + profile.tol(),
        stronger: grant - threshold - excess,
        weaker: grant + threshold - excess_copy,
        doubled: grant - excess - excess_copy,
    })
}
