use super::{EntropyExpr, InfoTerm, Statement, TermKind};
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::varset::Universe;

fn format_term(t: &InfoTerm) -> String {
    let name = if t.kind == TermKind::Entropy {
        "H"
    } else {
        "I"
    };
    let args: Vec<String> = t.args.iter().map(|a| a.join(",")).collect();
    let mut out = format!("{name}({}", args.join(":"));
    if !t.given.is_empty() {
        out.push('|');
        out.push_str(&t.given.join(","));
    }
    out.push(')');
    out
}

/// Formats `e` so that it can stand as the operand of a product.
fn atomic(e: &EntropyExpr) -> String {
    match e {
        EntropyExpr::Term(t) => format_term(t),
        _ => format!("({})", format_expr(e)),
    }
}

/// Splits a summand into its sign and the text of its magnitude.
fn signed(e: &EntropyExpr) -> (bool, String) {
    match e {
        EntropyExpr::Const(c) if c.is_negative() => (true, (-c).to_string()),
        EntropyExpr::Scaled(c, inner) if c.is_negative() => {
            (true, format_expr(&EntropyExpr::Scaled(-c, inner.clone())))
        }
        _ => (false, format_expr(e)),
    }
}

pub fn format_expr(e: &EntropyExpr) -> String {
    match e {
        EntropyExpr::Term(t) => format_term(t),
        EntropyExpr::Const(c) => c.to_string(),
        EntropyExpr::Scaled(c, inner) => {
            if c.is_one() {
                match **inner {
                    EntropyExpr::Sum(_) => atomic(inner),
                    _ => format_expr(inner),
                }
            } else if *c == -Rational::one() {
                format!("-{}", atomic(inner))
            } else {
                format!("{c}*{}", atomic(inner))
            }
        }
        EntropyExpr::Sum(items) => {
            let mut out = String::new();
            for (k, item) in items.iter().enumerate() {
                let (neg, text) = signed(item);
                match (k, neg) {
                    (0, false) => {}
                    (0, true) => out.push('-'),
                    (_, false) => out.push_str(" + "),
                    (_, true) => out.push_str(" - "),
                }
                if text.starts_with('-') && (k > 0 || neg) {
                    out.push_str(&format!("({text})"));
                } else {
                    out.push_str(&text);
                }
            }
            if out.is_empty() {
                out.push('0');
            }
            out
        }
    }
}

pub fn format_statement(s: &Statement) -> String {
    format!(
        "{} {} {}",
        format_expr(&s.lhs),
        s.relation,
        format_expr(&s.rhs)
    )
}

/// Joint-entropy form, terms in mask order, e.g. `H(X,A) - H(A)`.
pub fn format_lincomb(lc: &LinComb, universe: &Universe) -> String {
    let mut out = String::new();
    let mut push = |neg: bool, text: String| {
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&text);
    };
    for (set, coef) in lc.terms() {
        let h = format!("H({})", universe.format_set(set));
        let mag = coef.abs();
        push(
            coef.is_negative(),
            if mag.is_one() {
                h
            } else {
                format!("{mag}*{h}")
            },
        );
    }
    let c = lc.constant_term();
    if !c.is_zero() {
        push(c.is_negative(), c.abs().to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
