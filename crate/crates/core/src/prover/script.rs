//! Proof scripts: text form, the duplication-and-reduction generator and
//! bounded search.

use crate::exec::Exec;
use crate::expr::Statement;
use crate::rational::Rational;
use crate::varset::{Universe, VarSet};

use super::{prove, ExtensionStep, Proof, ProofContext, ProofOutcome, ProverError};

fn script_error(line: usize, message: impl Into<String>) -> ProverError {
    ProverError::Script {
        line,
        message: message.into(),
    }
}

fn label_list(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Parses `copy A over X,Y as A1`, `copy A as A1` or
/// `ak A1,A2 under X,Y,A,B as W`.
pub fn parse_script_line(text: &str, line: usize) -> Result<ExtensionStep, ProverError> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["copy", copied, "as", fresh] => Ok(ExtensionStep::Copy {
            copied: copied.to_string(),
            over: Vec::new(),
            fresh: fresh.to_string(),
        }),
        ["copy", copied, "over", over, "as", fresh] => Ok(ExtensionStep::Copy {
            copied: copied.to_string(),
            over: label_list(over),
            fresh: fresh.to_string(),
        }),
        ["ak", reduced, "under", under, "as", fresh] => Ok(ExtensionStep::Ak {
            reduced: label_list(reduced),
            under: label_list(under),
            fresh: fresh.to_string(),
        }),
        _ => Err(script_error(
            line,
            format!("cannot parse step `{}`", text.trim()),
        )),
    }
}

/// One step per line; blank lines and `#` comments are skipped.
pub fn parse_script(text: &str) -> Result<Vec<ExtensionStep>, ProverError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(line, l)| parse_script_line(l, line))
        .collect()
}

pub fn format_script(steps: &[ExtensionStep]) -> String {
    steps.iter().map(|s| format!("{s}\n")).collect()
}

/// `k` copies of `A`, the `i`-th taken over `X, Y` and the earlier copies,
/// followed by one AK step reducing the joined copies under `X, Y, A, B`
/// to `W`. Uses the labels `X, Y, A, B`, `A1..Ak` and `W`.
pub fn matus_script(k: usize) -> Vec<ExtensionStep> {
    let copies: Vec<String> = (1..=k).map(|i| format!("A{i}")).collect();
    let mut steps = Vec::with_capacity(k + 1);
    for (i, fresh) in copies.iter().enumerate() {
        let mut over = vec!["X".to_string(), "Y".to_string()];
        over.extend(copies[..i].iter().cloned());
        steps.push(ExtensionStep::Copy {
            copied: "A".into(),
            over,
            fresh: fresh.clone(),
        });
    }
    if k > 0 {
        steps.push(ExtensionStep::Ak {
            reduced: copies,
            under: ["X", "Y", "A", "B"].map(String::from).to_vec(),
            fresh: "W".into(),
        });
    }
    steps
}

fn term(coef: &Rational, quantity: &str) -> Option<String> {
    if coef.is_zero() {
        None
    } else if coef.is_one() {
        Some(quantity.to_string())
    } else {
        Some(format!("{coef}*{quantity}"))
    }
}

fn side(terms: &[(Rational, &str)]) -> String {
    let parts: Vec<String> = terms.iter().filter_map(|(c, q)| term(c, q)).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `I(X:Y) ≤ I(X:Y|A) + I(X:Y|B) + I(A:B) + 1/k·I(X:Y|A) + (k+1)/2·(I(A:X|Y) + I(A:Y|X))`.
pub fn matus_statement(k: usize) -> String {
    let one = Rational::one();
    let inv = Rational::new(1, k as i64);
    let half = Rational::new(k as i64 + 1, 2);
    format!(
        "I(X:Y) <= {}",
        side(&[
            (&one + &inv, "I(X:Y|A)"),
            (one.clone(), "I(X:Y|B)"),
            (one, "I(A:B)"),
            (half.clone(), "I(A:X|Y)"),
            (half, "I(A:Y|X)"),
        ])
    )
}

/// Member `s ≥ 1` of the exponential family bounding `(2^(s−1) − 1)·I(X:Y)`.
pub fn dfz_statement(s: u32) -> String {
    let p = |e: i32| {
        if e >= 0 {
            Rational::from(1i64 << e)
        } else {
            Rational::new(1, 1i64 << -e)
        }
    };
    let s_i = s as i32;
    let top = &p(s_i - 1) - &Rational::one();
    let a_side = &Rational::from(s_i as i64 - 1) * &p(s_i - 2);
    let b_side = &(&Rational::from(s_i as i64 - 3) * &p(s_i - 2)) + &Rational::one();
    format!(
        "{} <= {}",
        side(&[(top.clone(), "I(X:Y)")]),
        side(&[
            (p(s_i - 1), "I(X:Y|A)"),
            (top.clone(), "I(X:Y|B)"),
            (a_side.clone(), "I(X:A|Y)"),
            (a_side, "I(Y:A|X)"),
            (b_side.clone(), "I(X:B|Y)"),
            (b_side, "I(Y:B|X)"),
            (top, "I(A:B)"),
        ])
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_steps: usize,
    /// Largest number of candidate scripts (LP decisions) to try.
    pub budget: usize,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_steps: 2,
            budget: 100_000,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Proved {
        steps: Vec<ExtensionStep>,
        proof: Proof,
        evaluated: usize,
    },
    Exhausted {
        evaluated: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Move {
    Copy { copied: usize, over: VarSet },
    Ak { reduced: usize, under: VarSet },
}

/// Single steps on base variables in canonical order: copies before AK
/// steps, then by variable index, then by set bitmask.
fn moves(n: usize) -> Vec<Move> {
    let full = VarSet::full(n);
    let mut out = Vec::new();
    for copied in 0..n {
        out.extend(
            full.without(copied)
                .subsets()
                .map(|over| Move::Copy { copied, over }),
        );
    }
    for reduced in 0..n {
        out.extend(
            full.without(reduced)
                .nonempty_subsets()
                .map(|under| Move::Ak { reduced, under }),
        );
    }
    out
}

fn fresh_label(universe: &Universe, stem: &str) -> String {
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|l| !universe.contains(l))
        .unwrap_or_default()
}

fn realize(base: &Universe, seq: &[Move]) -> Vec<ExtensionStep> {
    let mut universe = base.clone();
    let names = |set: VarSet| {
        set.indices()
            .map(|i| base.name(i).to_string())
            .collect::<Vec<_>>()
    };
    let mut steps = Vec::with_capacity(seq.len());
    for m in seq {
        let step = match *m {
            Move::Copy { copied, over } => {
                let fresh = fresh_label(&universe, base.name(copied));
                ExtensionStep::Copy {
                    copied: base.name(copied).into(),
                    over: names(over),
                    fresh,
                }
            }
            Move::Ak { reduced, under } => {
                let fresh = if universe.contains("W") {
                    fresh_label(&universe, "W")
                } else {
                    "W".into()
                };
                ExtensionStep::Ak {
                    reduced: vec![base.name(reduced).into()],
                    under: names(under),
                    fresh,
                }
            }
        };
        universe = universe.with_var(step.fresh()).unwrap_or(universe);
        steps.push(step);
    }
    steps
}

/// Iterative deepening over scripts of base-variable steps; within a depth,
/// candidates are lexicographic in canonical step order and the first proof
/// in that order is returned whatever order they were evaluated in.
pub fn search_script(
    base: &Universe,
    hypotheses: &[Statement],
    target: &Statement,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, ProverError> {
    let singles = moves(base.len());
    let attempt = |seq: &Vec<Move>| -> Option<(Vec<ExtensionStep>, Proof)> {
        let steps = realize(base, seq);
        let ctx = ProofContext::build(base.clone(), hypotheses, &steps).ok()?;
        match prove(&ctx, target) {
            Ok(ProofOutcome::Proved(proof)) => Some((steps, proof)),
            _ => None,
        }
    };
    // Surface malformed targets instead of reporting them as unprovable.
    let ctx = ProofContext::build(base.clone(), hypotheses, &[])?;
    super::prove::goals(&ctx, target)?;

    let mut evaluated = 0;
    let mut layer: Vec<Vec<Move>> = vec![Vec::new()];
    for depth in 0..=cfg.max_steps {
        if depth > 0 {
            let mut next = Vec::with_capacity(layer.len() * singles.len());
            'outer: for prefix in &layer {
                for m in &singles {
                    if evaluated + next.len() >= cfg.budget {
                        break 'outer;
                    }
                    let mut seq = prefix.clone();
                    seq.push(*m);
                    next.push(seq);
                }
            }
            layer = next;
        }
        let candidates: Vec<Vec<Move>> = layer
            .iter()
            .take(cfg.budget.saturating_sub(evaluated))
            .cloned()
            .collect();
        let found = cfg
            .exec
            .find_map_first(&candidates, |seq| attempt(seq).map(|r| (seq.clone(), r)));
        if let Some((seq, (steps, proof))) = found {
            let index = candidates.iter().position(|c| *c == seq).unwrap_or(0);
            return Ok(SearchOutcome::Proved {
                steps,
                proof,
                evaluated: evaluated + index + 1,
            });
        }
        evaluated += candidates.len();
        if evaluated >= cfg.budget {
            break;
        }
    }
    Ok(SearchOutcome::Exhausted { evaluated })
}
