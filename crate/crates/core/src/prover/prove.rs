use std::collections::HashMap;

use crate::expr::Statement;
use crate::lincomb::{Inequality, LinComb, Relation};
use crate::lp::{solve_with, LinearProgram, LpOutcome, RowRelation, SolveOptions};
use crate::profile::Profile;
use crate::rational::Rational;
use crate::shannon::elemental_inequalities;
use crate::varset::VarSet;

use super::{Certificate, Proof, ProofContext, ProverError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofOutcome {
    Proved(Proof),
    /// A polymatroid on the context universe meeting every context
    /// constraint and violating the target; largest entry scaled to 1.
    NotProvable(Profile),
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofOutcome::Proved(_))
    }
}

/// Goals `g ≥ 0` whose joint validity is the target: one for `≤`/`≥`,
/// both directions for `=`.
pub(crate) fn goals(ctx: &ProofContext, target: &Statement) -> Result<Vec<LinComb>, ProverError> {
    let ineq = target.normalize(ctx.universe())?;
    if !ineq.lhs.is_homogeneous() {
        return Err(ProverError::ConstantTerm(ineq.label));
    }
    Ok(match ineq.relation {
        Relation::GeZero => vec![ineq.lhs],
        Relation::EqZero => vec![ineq.lhs.clone(), -ineq.lhs],
    })
}

/// Every axiom available in `ctx`: elementals, then hypotheses, then
/// extension equalities.
pub(crate) fn axioms(ctx: &ProofContext) -> Vec<Inequality> {
    let mut out = elemental_inequalities(ctx.universe());
    out.extend(ctx.constraints().cloned());
    out
}

fn prove_goal(
    ctx: &ProofContext,
    axioms: &[Inequality],
    goal: &LinComb,
    opts: &SolveOptions,
) -> Result<Result<Certificate, Profile>, ProverError> {
    let rows = (1usize << ctx.universe().len()) - 1;
    let mut by_row: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
    let mut lp = LinearProgram::new();
    for ax in axioms {
        let lower = (ax.relation == Relation::GeZero).then(Rational::zero);
        let var = lp.add_var(Rational::zero(), lower);
        for (set, coef) in ax.lhs.terms() {
            by_row[set.bits() as usize - 1].push((var, coef.clone()));
        }
    }
    for (r, coeffs) in by_row.into_iter().enumerate() {
        let rhs = goal.coefficient(VarSet::from_bits(r as u32 + 1));
        lp.add_constraint(coeffs, RowRelation::Eq, rhs);
    }
    let (outcome, _) = solve_with(&lp, opts)?;
    Ok(match outcome {
        LpOutcome::Optimal { primal, .. } => {
            let entries = axioms
                .iter()
                .zip(primal)
                .filter(|(_, m)| !m.is_zero())
                .map(|(ax, m)| (ax.label.clone(), m))
                .collect();
            Ok(Certificate {
                goal: goal.clone(),
                entries,
            })
        }
        LpOutcome::Infeasible { farkas } => {
            let mut values: Vec<Rational> = farkas.into_iter().map(|v| -v).collect();
            let max = values.iter().max().cloned().unwrap_or_default();
            if max.is_positive() {
                let scale = max.recip();
                values.iter_mut().for_each(|v| *v *= &scale);
            }
            Err(Profile::from_values(ctx.universe().clone(), values)
                .expect("one value per nonempty subset"))
        }
        LpOutcome::Unbounded { .. } => unreachable!("a zero objective is never unbounded"),
    })
}

/// Decides whether `target` follows from the context by a single LP per
/// goal direction.
pub fn prove(ctx: &ProofContext, target: &Statement) -> Result<ProofOutcome, ProverError> {
    prove_with(ctx, target, &SolveOptions::default())
}

pub fn prove_with(
    ctx: &ProofContext,
    target: &Statement,
    opts: &SolveOptions,
) -> Result<ProofOutcome, ProverError> {
    let axioms = axioms(ctx);
    let mut certificates = Vec::new();
    for goal in goals(ctx, target)? {
        match prove_goal(ctx, &axioms, &goal, opts)? {
            Ok(cert) => certificates.push(cert),
            Err(witness) => return Ok(ProofOutcome::NotProvable(witness)),
        }
    }
    Ok(ProofOutcome::Proved(Proof {
        target: target.clone(),
        certificates,
    }))
}

/// Re-derives every goal of `target` from the certificate multipliers and
/// the axioms of `ctx`, using exact arithmetic only.
pub fn verify(proof: &Proof, ctx: &ProofContext, target: &Statement) -> bool {
    let Ok(goals) = goals(ctx, target) else {
        return false;
    };
    let axioms = axioms(ctx);
    let catalog: HashMap<&str, &Inequality> =
        axioms.iter().map(|a| (a.label.as_str(), a)).collect();
    goals.iter().all(|goal| {
        proof
            .certificates
            .iter()
            .any(|c| c.goal == *goal && c.check(&catalog))
    })
}

impl Certificate {
    pub(crate) fn check(&self, catalog: &HashMap<&str, &Inequality>) -> bool {
        let mut sum = LinComb::zero();
        for (label, m) in &self.entries {
            let Some(ax) = catalog.get(label.as_str()) else {
                return false;
            };
            if ax.relation == Relation::GeZero && m.is_negative() {
                return false;
            }
            sum.add_scaled(m, &ax.lhs);
        }
        sum == self.goal
    }
}
