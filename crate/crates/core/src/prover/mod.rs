//! Linear-programming prover for information inequalities, extended by
//! Copy and Ahlswede–Körner steps that add auxiliary variables together
//! with the equalities they satisfy on almost-entropic points.

mod certificate;
mod prove;
mod script;

pub use certificate::{parse_proof, Certificate, CertificateError, Proof};
pub use prove::{prove, prove_with, verify, ProofOutcome};
pub use script::{
    dfz_statement, format_script, matus_script, matus_statement, parse_script, parse_script_line,
    search_script, SearchConfig, SearchOutcome,
};

use std::fmt;

use thiserror::Error;

use crate::expr::{format_statement, parse_statement, ExprError, ParseError, Statement};
use crate::lincomb::{Inequality, LinComb};
use crate::lp::LpError;
use crate::varset::{Universe, UniverseError, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProverError {
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("variable `{0}` already exists")]
    LabelClash(String),
    #[error("copied variable `{0}` is part of its own over-set")]
    CopiedInOver(String),
    #[error("an AK step needs a nonempty under-set")]
    EmptyUnder,
    #[error("an AK step needs a nonempty reduced set")]
    EmptyReduced,
    #[error("statement `{0}` has a constant term; only homogeneous statements are supported")]
    ConstantTerm(String),
    #[error("line {line}: {message}")]
    Script { line: usize, message: String },
}

/// One extension of the variable universe.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtensionStep {
    /// A copy of `copied` over `over`: same joint law with `over`, and
    /// conditionally independent of everything else given `over`.
    Copy {
        copied: String,
        over: Vec<String>,
        fresh: String,
    },
    /// A variable determined by `under` that reproduces the conditional
    /// entropies of every subset of `under` given the joint `reduced`.
    Ak {
        reduced: Vec<String>,
        under: Vec<String>,
        fresh: String,
    },
}

impl ExtensionStep {
    pub fn copy(copied: &str, over: &[&str], fresh: &str) -> Self {
        ExtensionStep::Copy {
            copied: copied.into(),
            over: over.iter().map(|s| s.to_string()).collect(),
            fresh: fresh.into(),
        }
    }

    pub fn ak(reduced: &[&str], under: &[&str], fresh: &str) -> Self {
        ExtensionStep::Ak {
            reduced: reduced.iter().map(|s| s.to_string()).collect(),
            under: under.iter().map(|s| s.to_string()).collect(),
            fresh: fresh.into(),
        }
    }

    pub fn fresh(&self) -> &str {
        match self {
            ExtensionStep::Copy { fresh, .. } | ExtensionStep::Ak { fresh, .. } => fresh,
        }
    }
}

impl fmt::Display for ExtensionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionStep::Copy {
                copied,
                over,
                fresh,
            } if over.is_empty() => write!(f, "copy {copied} as {fresh}"),
            ExtensionStep::Copy {
                copied,
                over,
                fresh,
            } => {
                write!(f, "copy {copied} over {} as {fresh}", over.join(","))
            }
            ExtensionStep::Ak {
                reduced,
                under,
                fresh,
            } => {
                write!(
                    f,
                    "ak {} under {} as {fresh}",
                    reduced.join(","),
                    under.join(",")
                )
            }
        }
    }
}

/// A variable universe with the hypotheses and extension equalities that
/// constrain it. Base variables keep their indices as the universe grows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofContext {
    universe: Universe,
    base_len: usize,
    hypotheses: Vec<Inequality>,
    equalities: Vec<Inequality>,
    steps: Vec<ExtensionStep>,
}

fn homogeneous(ineq: Inequality) -> Result<Inequality, ProverError> {
    if ineq.lhs.is_homogeneous() {
        Ok(ineq)
    } else {
        Err(ProverError::ConstantTerm(ineq.label))
    }
}

impl ProofContext {
    pub fn new(base: Universe) -> Self {
        let base_len = base.len();
        ProofContext {
            universe: base,
            base_len,
            hypotheses: Vec::new(),
            equalities: Vec::new(),
            steps: Vec::new(),
        }
    }

    /// Base universe, hypotheses and steps in one go.
    pub fn build(
        base: Universe,
        hypotheses: &[Statement],
        steps: &[ExtensionStep],
    ) -> Result<Self, ProverError> {
        let mut ctx = ProofContext::new(base);
        for h in hypotheses {
            ctx.add_hypothesis(h)?;
        }
        for s in steps {
            ctx.apply(s)?;
        }
        Ok(ctx)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn base_universe(&self) -> Universe {
        Universe::new(self.universe.names()[..self.base_len].to_vec())
            .unwrap_or_else(|_| self.universe.clone())
    }

    pub fn hypotheses(&self) -> &[Inequality] {
        &self.hypotheses
    }

    pub fn equalities(&self) -> &[Inequality] {
        &self.equalities
    }

    pub fn steps(&self) -> &[ExtensionStep] {
        &self.steps
    }

    /// Hypotheses followed by extension equalities.
    pub fn constraints(&self) -> impl Iterator<Item = &Inequality> {
        self.hypotheses.iter().chain(&self.equalities)
    }

    pub fn parse_statement(&self, text: &str) -> Result<Statement, ProverError> {
        Ok(parse_statement(text, &self.universe)?)
    }

    pub fn add_hypothesis(&mut self, statement: &Statement) -> Result<(), ProverError> {
        let mut ineq = homogeneous(statement.normalize(&self.universe)?)?;
        ineq.label = format!(
            "[hyp {}] {}",
            self.hypotheses.len() + 1,
            format_statement(statement)
        );
        self.hypotheses.push(ineq);
        Ok(())
    }

    fn set(&self, labels: &[String]) -> Result<VarSet, ProverError> {
        Ok(self.universe.set_of(labels)?)
    }

    fn add_fresh(&mut self, fresh: &str) -> Result<usize, ProverError> {
        if self.universe.contains(fresh) {
            return Err(ProverError::LabelClash(fresh.into()));
        }
        self.universe = self.universe.with_var(fresh)?;
        Ok(self.universe.len() - 1)
    }

    fn fmt_set(&self, set: VarSet) -> String {
        self.universe.format_set(set)
    }

    fn h_text(&self, set: VarSet, given: VarSet) -> String {
        if given.is_empty() {
            format!("H({})", self.fmt_set(set))
        } else {
            format!("H({}|{})", self.fmt_set(set), self.fmt_set(given))
        }
    }

    pub fn apply(&mut self, step: &ExtensionStep) -> Result<(), ProverError> {
        match step {
            ExtensionStep::Copy {
                copied,
                over,
                fresh,
            } => self.apply_copy(copied, over, fresh),
            ExtensionStep::Ak {
                reduced,
                under,
                fresh,
            } => self.apply_ak(reduced, under, fresh),
        }
    }

    /// Adds `fresh` with `H(S, fresh) = H(S, copied)` for every `S ⊆ over`
    /// and `I(fresh : T | over) = 0` for every nonempty `T` outside
    /// `over ∪ {fresh}`.
    pub fn apply_copy(
        &mut self,
        copied: &str,
        over: &[String],
        fresh: &str,
    ) -> Result<(), ProverError> {
        let a = self
            .universe
            .index(copied)
            .ok_or_else(|| UniverseError::Unknown(copied.into()))?;
        let over_set = self.set(over)?;
        if over_set.contains(a) {
            return Err(ProverError::CopiedInOver(copied.into()));
        }
        let rest = self.universe.full().difference(over_set);
        let f = self.add_fresh(fresh)?;
        let tag = format!("[copy {fresh}]");
        for s in over_set.subsets() {
            let lhs = s.with(f);
            let rhs = s.with(a);
            let lc = LinComb::entropy(lhs) - LinComb::entropy(rhs);
            let label = format!("{tag} H({}) = H({})", self.fmt_set(lhs), self.fmt_set(rhs));
            self.equalities.push(Inequality::eq_zero(lc, label));
        }
        for t in rest.nonempty_subsets() {
            let lc = LinComb::mutual(VarSet::singleton(f), t, over_set);
            let label = if over_set.is_empty() {
                format!("{tag} I({} : {}) = 0", fresh, self.fmt_set(t))
            } else {
                format!(
                    "{tag} I({} : {} | {}) = 0",
                    fresh,
                    self.fmt_set(t),
                    self.fmt_set(over_set)
                )
            };
            self.equalities.push(Inequality::eq_zero(lc, label));
        }
        self.steps.push(ExtensionStep::Copy {
            copied: copied.into(),
            over: over.to_vec(),
            fresh: fresh.into(),
        });
        Ok(())
    }

    /// Adds `fresh` with `H(fresh | under) = 0` and
    /// `H(S | fresh) = H(S | reduced)` for every nonempty `S ⊆ under`.
    pub fn apply_ak(
        &mut self,
        reduced: &[String],
        under: &[String],
        fresh: &str,
    ) -> Result<(), ProverError> {
        let r = self.set(reduced)?;
        let u = self.set(under)?;
        if r.is_empty() {
            return Err(ProverError::EmptyReduced);
        }
        if u.is_empty() {
            return Err(ProverError::EmptyUnder);
        }
        let w = self.add_fresh(fresh)?;
        let ws = VarSet::singleton(w);
        let tag = format!("[ak {fresh}]");
        let label = format!("{tag} {} = 0", self.h_text(ws, u));
        self.equalities
            .push(Inequality::eq_zero(LinComb::cond_entropy(ws, u), label));
        for s in u.nonempty_subsets() {
            let lc = LinComb::cond_entropy(s, ws) - LinComb::cond_entropy(s, r);
            let label = format!("{tag} {} = {}", self.h_text(s, ws), self.h_text(s, r));
            self.equalities.push(Inequality::eq_zero(lc, label));
        }
        self.steps.push(ExtensionStep::Ak {
            reduced: reduced.to_vec(),
            under: under.to_vec(),
            fresh: fresh.into(),
        });
        Ok(())
    }
}
