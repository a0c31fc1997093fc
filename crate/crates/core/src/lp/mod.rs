//! Exact rational linear programming with certificates.
//!
//! Problems are `minimize c·x` subject to sparse rows `a·x ≥ b` or
//! `a·x = b` and optional per-variable lower bounds; a variable without a
//! bound is free. Every outcome carries data that [`check_certificate`]
//! verifies by exact substitution into the original problem:
//!
//! * `Optimal`: a feasible `x` and multipliers `y` (nonnegative on `≥`
//!   rows) whose reduced costs `r = c − Aᵀy` vanish on free variables and
//!   are nonnegative on bounded ones, with `c·x = b·y + Σ r_j·l_j`.
//! * `Infeasible`: `y` with the same sign pattern for `r = −Aᵀy` and
//!   `b·y + Σ r_j·l_j = 1`.
//! * `Unbounded`: a feasible point and a recession direction of negative
//!   cost.

mod guess;
mod presolve;
mod simplex;
mod solve;

pub use simplex::{PivotRule, SolveOptions, SolveStats};
pub use solve::{solve, solve_with};

use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("row {row} has {got} coefficients but the program has {expected} variables")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("row {row} references variable {var} but the program has {num_vars} variables")]
    VariableOutOfRange {
        row: usize,
        var: usize,
        num_vars: usize,
    },
    #[error("objective has {got} coefficients but the program has {expected} variables")]
    ObjectiveLength { expected: usize, got: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowRelation {
    Ge,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    /// Sparse coefficients; repeated indices are summed.
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: RowRelation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    lower: Vec<Option<Rational>>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn new() -> Self {
        LinearProgram::default()
    }

    /// Dense constructor; every row must have one coefficient per variable.
    pub fn from_dense(
        objective: Vec<Rational>,
        rows: Vec<(Vec<Rational>, RowRelation, Rational)>,
        lower: Vec<Option<Rational>>,
    ) -> Result<Self, LpError> {
        let n = objective.len();
        if lower.len() != n {
            return Err(LpError::ObjectiveLength {
                expected: lower.len(),
                got: n,
            });
        }
        let mut lp = LinearProgram {
            objective,
            lower,
            constraints: Vec::new(),
        };
        for (row, (coeffs, relation, rhs)) in rows.into_iter().enumerate() {
            if coeffs.len() != n {
                return Err(LpError::DimensionMismatch {
                    row,
                    expected: n,
                    got: coeffs.len(),
                });
            }
            let sparse = coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            lp.constraints.push(Constraint {
                coeffs: sparse,
                relation,
                rhs,
            });
        }
        Ok(lp)
    }

    /// Adds a variable and returns its index.
    pub fn add_var(&mut self, cost: Rational, lower: Option<Rational>) -> usize {
        self.objective.push(cost);
        self.lower.push(lower);
        self.objective.len() - 1
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<(usize, Rational)>,
        relation: RowRelation,
        rhs: Rational,
    ) -> usize {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self.constraints.len() - 1
    }

    pub fn set_cost(&mut self, var: usize, cost: Rational) {
        self.objective[var] = cost;
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn lower_bounds(&self) -> &[Option<Rational>] {
        &self.lower
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        for (row, c) in self.constraints.iter().enumerate() {
            if let Some((var, _)) = c.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(LpError::VariableOutOfRange {
                    row,
                    var: *var,
                    num_vars: n,
                });
            }
        }
        Ok(())
    }

    fn row_value(&self, row: &Constraint, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (j, a) in &row.coeffs {
            acc.add_mul(a, &x[*j]);
        }
        acc
    }

    /// `Aᵀy`.
    fn transpose_mul(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.num_vars()];
        for (row, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &row.coeffs {
                out[*j].add_mul(a, yi);
            }
        }
        out
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (c, xj) in self.objective.iter().zip(x) {
            acc.add_mul(c, xj);
        }
        acc
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars() {
            return false;
        }
        let bounds_ok = self
            .lower
            .iter()
            .zip(x)
            .all(|(l, xj)| l.as_ref().is_none_or(|l| xj >= l));
        bounds_ok
            && self.constraints.iter().all(|row| {
                let v = self.row_value(row, x);
                match row.relation {
                    RowRelation::Ge => v >= row.rhs,
                    RowRelation::Eq => v == row.rhs,
                }
            })
    }

    /// Checks the sign pattern shared by optimality and infeasibility
    /// multipliers and returns `b·y + Σ r_j·l_j`, where `r` is the reduced
    /// cost vector `c' − Aᵀy` for the given cost `c'`.
    fn dual_bound(&self, cost: Option<&[Rational]>, y: &[Rational]) -> Option<Rational> {
        if y.len() != self.num_constraints() {
            return None;
        }
        let signs_ok = self
            .constraints
            .iter()
            .zip(y)
            .all(|(row, yi)| row.relation == RowRelation::Eq || !yi.is_negative());
        if !signs_ok {
            return None;
        }
        let aty = self.transpose_mul(y);
        let mut bound = Rational::zero();
        for (row, yi) in self.constraints.iter().zip(y) {
            bound.add_mul(&row.rhs, yi);
        }
        for (j, atyj) in aty.iter().enumerate() {
            let r = match cost {
                Some(c) => &c[j] - atyj,
                None => -atyj,
            };
            match &self.lower[j] {
                None if !r.is_zero() => return None,
                None => {}
                Some(_) if r.is_negative() => return None,
                Some(l) => bound.add_mul(&r, l),
            }
        }
        Some(bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        primal: Vec<Rational>,
        dual: Vec<Rational>,
    },
    Infeasible {
        farkas: Vec<Rational>,
    },
    Unbounded {
        point: Vec<Rational>,
        ray: Vec<Rational>,
    },
}

impl LpOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            LpOutcome::Optimal { .. } => "optimal",
            LpOutcome::Infeasible { .. } => "infeasible",
            LpOutcome::Unbounded { .. } => "unbounded",
        }
    }
}

/// Verifies an outcome against `lp` by exact substitution only.
pub fn check_certificate(lp: &LinearProgram, outcome: &LpOutcome) -> bool {
    if lp.validate().is_err() {
        return false;
    }
    match outcome {
        LpOutcome::Optimal {
            value,
            primal,
            dual,
        } => {
            lp.is_feasible(primal)
                && lp.objective_value(primal) == *value
                && lp
                    .dual_bound(Some(&lp.objective), dual)
                    .is_some_and(|b| b == *value)
        }
        LpOutcome::Infeasible { farkas } => {
            lp.dual_bound(None, farkas).is_some_and(|b| b.is_positive())
        }
        LpOutcome::Unbounded { point, ray } => {
            if !lp.is_feasible(point) || ray.len() != lp.num_vars() {
                return false;
            }
            let directions_ok = lp
                .lower
                .iter()
                .zip(ray)
                .all(|(l, d)| l.is_none() || !d.is_negative())
                && lp.constraints.iter().all(|row| {
                    let v = lp.row_value(row, ray);
                    match row.relation {
                        RowRelation::Ge => !v.is_negative(),
                        RowRelation::Eq => v.is_zero(),
                    }
                });
            directions_ok && lp.objective_value(ray).is_negative()
        }
    }
}
