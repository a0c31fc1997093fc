//! Floating point pass that proposes which columns an exact solve needs.
//!
//! Nothing computed here is trusted: the proposal only seeds the working
//! set of the exact column-generation loop, which prices every column in
//! exact arithmetic before it accepts an answer.

use microlp::{ComparisonOp, OptimizationDirection, Problem};

use super::{LinearProgram, RowRelation};

/// Columns at a nonzero level in an approximate optimum, plus every free
/// column. `None` when the float solver reports infeasibility,
/// unboundedness or trouble; callers then start from all columns.
pub(super) fn float_support(lp: &LinearProgram) -> Option<Vec<bool>> {
    let n = lp.num_vars();
    // A zero objective leaves the float solver free to return any vertex;
    // minimizing the bounded columns' total keeps the support small.
    let feasibility = lp.objective().iter().all(|c| c.is_zero());
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..n)
        .map(|j| {
            let (cost, bounds) = match &lp.lower_bounds()[j] {
                Some(l) => (
                    if feasibility {
                        1.0
                    } else {
                        lp.objective()[j].to_f64()
                    },
                    (l.to_f64(), f64::INFINITY),
                ),
                None => (
                    lp.objective()[j].to_f64(),
                    (f64::NEG_INFINITY, f64::INFINITY),
                ),
            };
            problem.add_var(cost, bounds)
        })
        .collect();
    for row in lp.constraints() {
        let terms: Vec<_> = row
            .coeffs
            .iter()
            .map(|(j, a)| (vars[*j], a.to_f64()))
            .collect();
        let op = match row.relation {
            RowRelation::Ge => ComparisonOp::Ge,
            RowRelation::Eq => ComparisonOp::Eq,
        };
        problem.add_constraint(terms.as_slice(), op, row.rhs.to_f64());
    }
    let outcome = problem.solve().ok()?;
    let solution = outcome.solution()?;
    let support = (0..n)
        .map(|j| match &lp.lower_bounds()[j] {
            Some(l) => (solution[vars[j]] - l.to_f64()).abs() > 1e-9,
            None => true,
        })
        .collect();
    Some(support)
}
