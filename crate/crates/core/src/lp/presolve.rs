//! Elimination of free variables through equality rows.
//!
//! Each free variable with a nonzero entry in some remaining equality row
//! is solved for in that row and substituted everywhere else, objective
//! included. The reduced problem has the same feasible set projected onto
//! the kept variables, and every certificate of it lifts back to one of
//! the original problem.

use std::collections::BTreeMap;

use crate::rational::Rational;

use super::{Constraint, LinearProgram, RowRelation};

type SparseRow = BTreeMap<usize, Rational>;

struct RowState {
    coeffs: SparseRow,
    relation: RowRelation,
    rhs: Rational,
    /// This row as a combination of original rows.
    combo: SparseRow,
}

struct Elimination {
    var: usize,
    /// Pivot row at elimination time, over original variable indices.
    coeffs: SparseRow,
    rhs: Rational,
}

pub(super) struct Reduction {
    pub lp: LinearProgram,
    num_vars: usize,
    num_rows: usize,
    /// Original index of each reduced variable.
    kept: Vec<usize>,
    /// Original-row combination behind each reduced row.
    combos: Vec<SparseRow>,
    /// Multiple of original rows subtracted from the objective.
    objective_shift: SparseRow,
    eliminated: Vec<Elimination>,
}

fn axpy(target: &mut SparseRow, factor: &Rational, source: &SparseRow) {
    for (k, v) in source {
        let entry = target.entry(*k).or_insert_with(Rational::zero);
        entry.add_mul(factor, v);
        if entry.is_zero() {
            target.remove(k);
        }
    }
}

impl Reduction {
    pub fn new(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let mut rows: Vec<Option<RowState>> = lp
            .constraints()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let mut coeffs = SparseRow::new();
                for (j, a) in &c.coeffs {
                    let entry = coeffs.entry(*j).or_insert_with(Rational::zero);
                    *entry += a;
                }
                coeffs.retain(|_, v| !v.is_zero());
                Some(RowState {
                    coeffs,
                    relation: c.relation,
                    rhs: c.rhs.clone(),
                    combo: SparseRow::from([(i, Rational::one())]),
                })
            })
            .collect();
        let mut objective = lp.objective().to_vec();
        let mut objective_shift = SparseRow::new();
        let mut eliminated = Vec::new();
        let mut removed = vec![false; n];

        for var in (0..n).filter(|&j| lp.lower_bounds()[j].is_none()) {
            // Sparsest equality row keeps fill-in down.
            let pivot_row = rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
                .filter(|(_, r)| r.relation == RowRelation::Eq && r.coeffs.contains_key(&var))
                .min_by_key(|(i, r)| (r.coeffs.len(), *i))
                .map(|(i, _)| i);
            let Some(p) = pivot_row else { continue };
            let pivot = rows[p].take().expect("live row");
            let inv = pivot.coeffs[&var].recip();
            for row in rows.iter_mut().flatten() {
                let Some(a) = row.coeffs.get(&var) else {
                    continue;
                };
                let factor = -(a * &inv);
                axpy(&mut row.coeffs, &factor, &pivot.coeffs);
                row.rhs.add_mul(&factor, &pivot.rhs);
                axpy(&mut row.combo, &factor, &pivot.combo);
            }
            if !objective[var].is_zero() {
                let factor = &objective[var] * &inv;
                for (k, v) in &pivot.coeffs {
                    objective[*k].add_mul(&-&factor, v);
                }
                axpy(&mut objective_shift, &factor, &pivot.combo);
            }
            removed[var] = true;
            eliminated.push(Elimination {
                var,
                coeffs: pivot.coeffs,
                rhs: pivot.rhs,
            });
        }

        let kept: Vec<usize> = (0..n).filter(|&j| !removed[j]).collect();
        let mut index = vec![usize::MAX; n];
        for (k, &j) in kept.iter().enumerate() {
            index[j] = k;
        }
        let mut reduced = LinearProgram::new();
        for &j in &kept {
            reduced.add_var(objective[j].clone(), lp.lower_bounds()[j].clone());
        }
        let mut combos = Vec::new();
        for row in rows.into_iter().flatten() {
            let satisfied = match row.relation {
                RowRelation::Eq => row.rhs.is_zero(),
                RowRelation::Ge => !row.rhs.is_positive(),
            };
            if row.coeffs.is_empty() && satisfied {
                continue;
            }
            let coeffs = row.coeffs.into_iter().map(|(j, a)| (index[j], a)).collect();
            reduced.constraints.push(Constraint {
                coeffs,
                relation: row.relation,
                rhs: row.rhs,
            });
            combos.push(row.combo);
        }
        Reduction {
            lp: reduced,
            num_vars: n,
            num_rows: lp.num_constraints(),
            kept,
            combos,
            objective_shift,
            eliminated,
        }
    }

    pub fn eliminated(&self) -> usize {
        self.eliminated.len()
    }

    fn lift(&self, reduced: &[Rational], homogeneous: bool) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_vars];
        for (k, &j) in self.kept.iter().enumerate() {
            x[j] = reduced[k].clone();
        }
        for e in self.eliminated.iter().rev() {
            let mut acc = if homogeneous {
                Rational::zero()
            } else {
                e.rhs.clone()
            };
            let mut pivot = Rational::zero();
            for (j, a) in &e.coeffs {
                if *j == e.var {
                    pivot = a.clone();
                } else {
                    acc.add_mul(&-a, &x[*j]);
                }
            }
            x[e.var] = &acc / &pivot;
        }
        x
    }

    /// Original point from a reduced point.
    pub fn lift_point(&self, reduced: &[Rational]) -> Vec<Rational> {
        self.lift(reduced, false)
    }

    /// Original direction from a reduced direction.
    pub fn lift_ray(&self, reduced: &[Rational]) -> Vec<Rational> {
        self.lift(reduced, true)
    }

    fn combine(&self, start: SparseRow, y: &[Rational]) -> Vec<Rational> {
        let mut total = start;
        for (combo, v) in self.combos.iter().zip(y) {
            if !v.is_zero() {
                axpy(&mut total, v, combo);
            }
        }
        let mut out = vec![Rational::zero(); self.num_rows];
        for (i, v) in total {
            out[i] = v;
        }
        out
    }

    /// Original row multipliers from optimal reduced ones.
    pub fn lift_dual(&self, y: &[Rational]) -> Vec<Rational> {
        self.combine(self.objective_shift.clone(), y)
    }

    /// Original infeasibility certificate from a reduced one.
    pub fn lift_farkas(&self, y: &[Rational]) -> Vec<Rational> {
        self.combine(SparseRow::new(), y)
    }
}
