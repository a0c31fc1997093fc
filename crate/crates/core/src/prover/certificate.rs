//! Certificates and their text form.
//!
//! ```text
//! target: I(X:Y) <= H(X)
//! goal: H(X) - H(X) ... >= 0
//! H(X|Y) * 1
//! [copy A1] H(X,A1) = H(X,A) * -1/2
//! ```
//!
//! A `goal:` line opens a certificate; every following `label * rational`
//! line is one multiplier. Labels are split from multipliers at the last
//! ` * `.

use std::fmt;

use thiserror::Error;

use crate::expr::{format_lincomb, format_statement, parse_expr, Statement};
use crate::lincomb::LinComb;
use crate::rational::Rational;

use super::ProofContext;

/// Multipliers expressing `goal ≥ 0` as a combination of context axioms:
/// nonnegative on inequalities, any sign on equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub goal: LinComb,
    pub entries: Vec<(String, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub target: Statement,
    pub certificates: Vec<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

fn syntax(line: usize, message: impl Into<String>) -> CertificateError {
    CertificateError::Syntax {
        line,
        message: message.into(),
    }
}

impl Proof {
    pub fn to_text(&self, ctx: &ProofContext) -> String {
        let mut out = format!("target: {}\n", format_statement(&self.target));
        for cert in &self.certificates {
            out.push_str(&format!(
                "goal: {} >= 0\n",
                format_lincomb(&cert.goal, ctx.universe())
            ));
            for (label, m) in &cert.entries {
                out.push_str(&format!("{label} * {m}\n"));
            }
        }
        out
    }

    pub fn num_entries(&self) -> usize {
        self.certificates.iter().map(|c| c.entries.len()).sum()
    }
}

/// Parses [`Proof::to_text`] output; expressions are read over the
/// context universe.
pub fn parse_proof(text: &str, ctx: &ProofContext) -> Result<Proof, CertificateError> {
    let mut target = None;
    let mut certificates: Vec<Certificate> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        if let Some(rest) = content.strip_prefix("target:") {
            let st = ctx
                .parse_statement(rest.trim())
                .map_err(|e| syntax(line, e.to_string()))?;
            target = Some(st);
        } else if let Some(rest) = content.strip_prefix("goal:") {
            let expr = rest
                .trim()
                .strip_suffix(">= 0")
                .ok_or_else(|| syntax(line, "goal must end in `>= 0`"))?;
            let goal = parse_expr(expr, ctx.universe())
                .map_err(|e| syntax(line, e.to_string()))?
                .expand(ctx.universe())
                .map_err(|e| syntax(line, e.to_string()))?;
            certificates.push(Certificate {
                goal,
                entries: Vec::new(),
            });
        } else {
            let (label, value) = content
                .rsplit_once(" * ")
                .ok_or_else(|| syntax(line, "expected `label * multiplier`"))?;
            let m: Rational = value
                .trim()
                .parse()
                .map_err(|e: crate::rational::ParseRationalError| syntax(line, e.to_string()))?;
            let cert = certificates
                .last_mut()
                .ok_or_else(|| syntax(line, "multiplier before any `goal:` line"))?;
            cert.entries.push((label.trim().to_string(), m));
        }
    }
    let target = target.ok_or_else(|| syntax(1, "missing `target:` line"))?;
    Ok(Proof {
        target,
        certificates,
    })
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (label, m) in &self.entries {
            writeln!(f, "{label} * {m}")?;
        }
        Ok(())
    }
}
