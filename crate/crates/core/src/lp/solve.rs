//! Top-level driver: free-variable elimination, then column generation
//! around the exact simplex.
//!
//! The generation loop solves the problem restricted to a working set of
//! columns, every other column pinned at its lower bound. An answer of the
//! restricted problem is final once no outside column prices out in exact
//! arithmetic; otherwise the offending columns join the set and the loop
//! repeats. Each round adds a column, so the loop ends.

use crate::rational::Rational;

use super::guess::float_support;
use super::presolve::Reduction;
use super::simplex::{simplex, SolveOptions, SolveStats};
use super::{Constraint, LinearProgram, LpError, LpOutcome};

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome, LpError> {
    solve_with(lp, &SolveOptions::default()).map(|(outcome, _)| outcome)
}

/// Deterministic for fixed input and options.
pub fn solve_with(
    lp: &LinearProgram,
    opts: &SolveOptions,
) -> Result<(LpOutcome, SolveStats), LpError> {
    lp.validate()?;
    let mut stats = SolveStats::default();
    if !opts.eliminate_free {
        let outcome = generate_columns(lp, opts, &mut stats);
        return Ok((outcome, stats));
    }
    let reduction = Reduction::new(lp);
    stats.eliminated = reduction.eliminated();
    let outcome = match generate_columns(&reduction.lp, opts, &mut stats) {
        LpOutcome::Optimal { primal, dual, .. } => {
            let primal = reduction.lift_point(&primal);
            let dual = reduction.lift_dual(&dual);
            LpOutcome::Optimal {
                value: lp.objective_value(&primal),
                primal,
                dual,
            }
        }
        LpOutcome::Infeasible { farkas } => LpOutcome::Infeasible {
            farkas: reduction.lift_farkas(&farkas),
        },
        LpOutcome::Unbounded { point, ray } => LpOutcome::Unbounded {
            point: reduction.lift_point(&point),
            ray: reduction.lift_ray(&ray),
        },
    };
    Ok((outcome, stats))
}

fn generate_columns(lp: &LinearProgram, opts: &SolveOptions, stats: &mut SolveStats) -> LpOutcome {
    stats.rows = lp.num_constraints();
    stats.columns = lp.num_vars();
    let n = lp.num_vars();
    let mut active = match opts.float_start {
        true => float_support(lp).unwrap_or_else(|| vec![true; n]),
        false => vec![true; n],
    };
    let mut columns: Vec<Vec<(usize, &Rational)>> = vec![Vec::new(); n];
    for (i, row) in lp.constraints().iter().enumerate() {
        for (j, a) in &row.coeffs {
            columns[*j].push((i, a));
        }
    }
    let dot = |j: usize, y: &[Rational]| {
        let mut acc = Rational::zero();
        for (i, a) in &columns[j] {
            acc.add_mul(a, &y[*i]);
        }
        acc
    };

    loop {
        stats.rounds += 1;
        if active.iter().all(|&a| a) {
            return simplex(lp, opts, stats);
        }
        let kept: Vec<usize> = (0..n).filter(|&j| active[j]).collect();
        let restricted = restrict(lp, &kept, &active);
        let pinned = |j: usize| {
            lp.lower_bounds()[j]
                .clone()
                .expect("free columns stay active")
        };
        let expand = |values: &[Rational], inactive: &dyn Fn(usize) -> Rational| {
            let mut full: Vec<Rational> = (0..n)
                .map(|j| {
                    if active[j] {
                        Rational::zero()
                    } else {
                        inactive(j)
                    }
                })
                .collect();
            for (k, &j) in kept.iter().enumerate() {
                full[j] = values[k].clone();
            }
            full
        };
        let violators: Vec<usize> = match simplex(&restricted, opts, stats) {
            LpOutcome::Optimal { primal, dual, .. } => {
                let violators: Vec<usize> = (0..n)
                    .filter(|&j| !active[j] && (&lp.objective()[j] - &dot(j, &dual)).is_negative())
                    .collect();
                if violators.is_empty() {
                    let primal = expand(&primal, &pinned);
                    return LpOutcome::Optimal {
                        value: lp.objective_value(&primal),
                        primal,
                        dual,
                    };
                }
                violators
            }
            LpOutcome::Infeasible { farkas } => {
                let violators: Vec<usize> = (0..n)
                    .filter(|&j| !active[j] && dot(j, &farkas).is_positive())
                    .collect();
                if violators.is_empty() {
                    return LpOutcome::Infeasible { farkas };
                }
                violators
            }
            LpOutcome::Unbounded { point, ray } => {
                return LpOutcome::Unbounded {
                    point: expand(&point, &pinned),
                    ray: expand(&ray, &|_| Rational::zero()),
                };
            }
        };
        for j in violators {
            active[j] = true;
        }
    }
}

/// `lp` on the `kept` columns, the others fixed at their lower bounds.
fn restrict(lp: &LinearProgram, kept: &[usize], active: &[bool]) -> LinearProgram {
    let mut index = vec![usize::MAX; lp.num_vars()];
    let mut out = LinearProgram::new();
    for (k, &j) in kept.iter().enumerate() {
        index[j] = k;
        out.add_var(lp.objective()[j].clone(), lp.lower_bounds()[j].clone());
    }
    for row in lp.constraints() {
        let mut rhs = row.rhs.clone();
        let mut coeffs = Vec::new();
        for (j, a) in &row.coeffs {
            if active[*j] {
                coeffs.push((index[*j], a.clone()));
            } else if let Some(l) = &lp.lower_bounds()[*j] {
                rhs.add_mul(&-a, l);
            }
        }
        out.constraints.push(Constraint {
            coeffs,
            relation: row.relation,
            rhs,
        });
    }
    out
}
