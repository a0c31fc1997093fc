//! A small language for entropy expressions and information inequalities.
//!
//! ```text
//! statement := expr ('<=' | '>=' | '=') expr
//! expr      := ['+' | '-'] product (('+' | '-') product)*
//! product   := rational ['*'] atom | rational | atom
//! atom      := term | '(' expr ')'
//! term      := 'H(' list ['|' list] ')'
//!            | 'I(' list ':' list [':' list] ['|' list] ')'
//! list      := label (',' label)*
//! ```
//!
//! Comma separated labels denote the joint variable; repeated labels in one
//! list collapse. Rational literals are `n`, `n/d` or decimals, all exact.

mod format;
mod parse;

pub use format::{format_expr, format_lincomb, format_statement};
pub use parse::{parse, parse_expr, parse_statement, ParseError, ParseErrorKind, Parsed};

use std::fmt;

use thiserror::Error;

use crate::lincomb::{Inequality, LinComb};
use crate::rational::Rational;
use crate::varset::{Universe, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("unknown variable `{0}`")]
    UnknownLabel(String),
    #[error("malformed term: {0}")]
    Malformed(&'static str),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermKind {
    /// `H(args[0] | given)`
    Entropy,
    /// `I(args[0] : args[1] | given)`
    Mutual,
    /// `I(args[0] : args[1] : args[2] | given)`
    Mutual3,
}

impl TermKind {
    pub fn arity(self) -> usize {
        match self {
            TermKind::Entropy => 1,
            TermKind::Mutual => 2,
            TermKind::Mutual3 => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfoTerm {
    pub kind: TermKind,
    pub args: Vec<Vec<String>>,
    pub given: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntropyExpr {
    Term(InfoTerm),
    Const(Rational),
    Scaled(Rational, Box<EntropyExpr>),
    Sum(Vec<EntropyExpr>),
}

fn labels(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl EntropyExpr {
    pub fn h(vars: &[&str], given: &[&str]) -> Self {
        EntropyExpr::Term(InfoTerm {
            kind: TermKind::Entropy,
            args: vec![labels(vars)],
            given: labels(given),
        })
    }

    pub fn i(a: &[&str], b: &[&str], given: &[&str]) -> Self {
        EntropyExpr::Term(InfoTerm {
            kind: TermKind::Mutual,
            args: vec![labels(a), labels(b)],
            given: labels(given),
        })
    }

    pub fn i3(a: &[&str], b: &[&str], c: &[&str], given: &[&str]) -> Self {
        EntropyExpr::Term(InfoTerm {
            kind: TermKind::Mutual3,
            args: vec![labels(a), labels(b), labels(c)],
            given: labels(given),
        })
    }

    pub fn scale(self, factor: Rational) -> Self {
        EntropyExpr::Scaled(factor, Box::new(self))
    }

    /// Expands into joint-entropy terms over `universe`.
    pub fn expand(&self, universe: &Universe) -> Result<LinComb, ExprError> {
        match self {
            EntropyExpr::Term(t) => t.expand(universe),
            EntropyExpr::Const(c) => Ok(LinComb::constant(c.clone())),
            EntropyExpr::Scaled(c, e) => Ok(e.expand(universe)?.scaled(c)),
            EntropyExpr::Sum(items) => items.iter().try_fold(LinComb::zero(), |mut acc, e| {
                acc += &e.expand(universe)?;
                Ok(acc)
            }),
        }
    }

    /// Every label mentioned, in order of first appearance.
    pub fn labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels(&self, out: &mut Vec<String>) {
        match self {
            EntropyExpr::Term(t) => {
                for l in t.args.iter().flatten().chain(&t.given) {
                    if !out.contains(l) {
                        out.push(l.clone());
                    }
                }
            }
            EntropyExpr::Const(_) => {}
            EntropyExpr::Scaled(_, e) => e.collect_labels(out),
            EntropyExpr::Sum(items) => items.iter().for_each(|e| e.collect_labels(out)),
        }
    }
}

impl InfoTerm {
    pub fn expand(&self, universe: &Universe) -> Result<LinComb, ExprError> {
        if self.args.len() != self.kind.arity() {
            return Err(ExprError::Malformed("wrong number of argument lists"));
        }
        if self.args.iter().any(Vec::is_empty) {
            return Err(ExprError::Malformed("empty argument list"));
        }
        let set = |list: &[String]| -> Result<VarSet, ExprError> {
            universe.set_of(list).map_err(|_| {
                let unknown = list
                    .iter()
                    .find(|l| !universe.contains(l))
                    .cloned()
                    .unwrap_or_default();
                ExprError::UnknownLabel(unknown)
            })
        };
        let given = set(&self.given)?;
        let args: Vec<VarSet> = self.args.iter().map(|a| set(a)).collect::<Result<_, _>>()?;
        Ok(match self.kind {
            TermKind::Entropy => LinComb::cond_entropy(args[0], given),
            TermKind::Mutual => LinComb::mutual(args[0], args[1], given),
            TermKind::Mutual3 => LinComb::mutual3(args[0], args[1], args[2], given),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Le,
    Ge,
    Eq,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Le => "<=",
            Comparison::Ge => ">=",
            Comparison::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub lhs: EntropyExpr,
    pub relation: Comparison,
    pub rhs: EntropyExpr,
}

impl Statement {
    /// `lhs <= rhs` becomes `rhs − lhs ≥ 0`, `lhs >= rhs` becomes
    /// `lhs − rhs ≥ 0` and `lhs = rhs` becomes `lhs − rhs = 0`. The label
    /// is the statement's own text.
    pub fn normalize(&self, universe: &Universe) -> Result<Inequality, ExprError> {
        let lhs = self.lhs.expand(universe)?;
        let rhs = self.rhs.expand(universe)?;
        let label = format_statement(self);
        Ok(match self.relation {
            Comparison::Le => Inequality::ge_zero(rhs - lhs, label),
            Comparison::Ge => Inequality::ge_zero(lhs - rhs, label),
            Comparison::Eq => Inequality::eq_zero(lhs - rhs, label),
        })
    }

    pub fn labels(&self) -> Vec<String> {
        let mut out = self.lhs.labels();
        for l in self.rhs.labels() {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        out
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_statement(self))
    }
}

impl fmt::Display for EntropyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_expr(self))
    }
}
