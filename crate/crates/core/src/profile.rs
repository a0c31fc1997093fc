//! Exact set functions on the nonempty subsets of a universe, with
//! polymatroid and Ingleton checks and the text profile format.

use std::fmt::Write as _;

use thiserror::Error;

use crate::lincomb::{Inequality, LinComb};
use crate::rational::{ParseRationalError, Rational};
use crate::shannon::{elemental_inequalities, ingleton_lincomb};
use crate::varset::{Universe, UniverseError, VarSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error(transparent)]
    Universe(#[from] UniverseError),
    #[error("combination references variable {index} but the universe has {n} variables")]
    UniverseMismatch { index: usize, n: usize },
    #[error("expected {expected} values, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("Ingleton ordering must name 4 distinct variables of the universe")]
    BadPermutation,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Value {
        line: usize,
        source: ParseRationalError,
    },
    #[error("missing value for subset {{{0}}}")]
    Missing(String),
    #[error("duplicate value for subset {{{0}}}")]
    Duplicate(String),
}

/// A rational-valued function on the nonempty subsets of a universe.
/// The empty set is implicit and always 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Profile {
    universe: Universe,
    /// Indexed by mask; slot 0 holds the value of the empty set.
    values: Vec<Rational>,
}

/// Outcome of [`Profile::is_polymatroid`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolymatroidCheck {
    Ok,
    Violated(Inequality),
}

impl PolymatroidCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, PolymatroidCheck::Ok)
    }
}

impl Profile {
    pub fn zero(universe: Universe) -> Self {
        let size = 1usize << universe.len();
        Profile {
            universe,
            values: vec![Rational::zero(); size],
        }
    }

    pub fn from_fn<F: FnMut(VarSet) -> Rational>(universe: Universe, mut f: F) -> Self {
        let n = universe.len();
        let mut values = Vec::with_capacity(1 << n);
        values.push(Rational::zero());
        values.extend(VarSet::full(n).nonempty_subsets().map(&mut f));
        Profile { universe, values }
    }

    /// Values for masks `1..2^n` in order.
    pub fn from_values(universe: Universe, values: Vec<Rational>) -> Result<Self, ProfileError> {
        let expected = (1usize << universe.len()) - 1;
        if values.len() != expected {
            return Err(ProfileError::WrongLength {
                expected,
                got: values.len(),
            });
        }
        let mut all = Vec::with_capacity(expected + 1);
        all.push(Rational::zero());
        all.extend(values);
        Ok(Profile {
            universe,
            values: all,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.universe.len()
    }

    pub fn get(&self, set: VarSet) -> &Rational {
        &self.values[set.bits() as usize]
    }

    pub fn set(&mut self, set: VarSet, value: Rational) {
        assert!(!set.is_empty(), "the empty set has no stored value");
        self.values[set.bits() as usize] = value;
    }

    /// `(set, value)` for every nonempty subset in mask order.
    pub fn entries(&self) -> impl Iterator<Item = (VarSet, &Rational)> {
        self.values
            .iter()
            .enumerate()
            .skip(1)
            .map(|(m, v)| (VarSet::from_bits(m as u32), v))
    }

    pub fn max_value(&self) -> Rational {
        self.values.iter().max().cloned().unwrap_or_default()
    }

    pub fn scaled(&self, factor: &Rational) -> Profile {
        Profile {
            universe: self.universe.clone(),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// Exact inner product with `lc`, plus its constant.
    pub fn evaluate(&self, lc: &LinComb) -> Result<Rational, ProfileError> {
        let span = lc.span();
        if span > self.n() {
            return Err(ProfileError::UniverseMismatch {
                index: span - 1,
                n: self.n(),
            });
        }
        Ok(lc.evaluate_with(|s| self.get(s).clone()))
    }

    /// Checks every elemental Shannon inequality; reports the first violated one.
    pub fn is_polymatroid(&self) -> PolymatroidCheck {
        for ineq in elemental_inequalities(&self.universe) {
            let value = ineq.lhs.evaluate_with(|s| self.get(s).clone());
            if value.is_negative() {
                return PolymatroidCheck::Violated(ineq);
            }
        }
        PolymatroidCheck::Ok
    }

    /// `I(X:Y|A) + I(X:Y|B) + I(A:B) − I(X:Y)` for the ordering
    /// `perm = [X, Y, A, B]`; negative means the Ingleton inequality fails.
    pub fn ingleton_gap(&self, perm: [usize; 4]) -> Result<Rational, ProfileError> {
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| perm[i] != perm[j]));
        if !distinct || perm.iter().any(|&i| i >= self.n()) {
            return Err(ProfileError::BadPermutation);
        }
        self.evaluate(&ingleton_lincomb(perm))
    }

    /// Like [`Profile::ingleton_gap`] with the ordering given by labels.
    pub fn ingleton_gap_named(&self, labels: [&str; 4]) -> Result<Rational, ProfileError> {
        let mut perm = [0; 4];
        for (slot, label) in perm.iter_mut().zip(labels) {
            *slot = self
                .universe
                .index(label)
                .ok_or(ProfileError::BadPermutation)?;
        }
        self.ingleton_gap(perm)
    }

    /// Text form: a `vars:` header, then one `X,Y : value` line per subset.
    pub fn to_text(&self) -> String {
        format_profile_lines(&self.universe, |s| self.get(s).to_string())
    }

    pub fn parse(text: &str) -> Result<Profile, ProfileError> {
        let (universe, values) = parse_profile_lines(text)?;
        Ok(Profile { universe, values })
    }
}

pub(crate) fn format_profile_lines<F: Fn(VarSet) -> String>(
    universe: &Universe,
    value: F,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars: {universe}");
    for set in universe.full().nonempty_subsets() {
        let _ = writeln!(out, "{} : {}", universe.format_set(set), value(set));
    }
    out
}

fn parse_profile_lines(text: &str) -> Result<(Universe, Vec<Rational>), ProfileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines.next().ok_or(ProfileError::Syntax {
        line: 1,
        message: "empty profile".into(),
    })?;
    let vars = header
        .strip_prefix("vars:")
        .ok_or_else(|| ProfileError::Syntax {
            line: hline,
            message: "expected `vars:` header".into(),
        })?;
    let universe = Universe::parse_list(vars)?;
    let mut values: Vec<Option<Rational>> = vec![None; 1 << universe.len()];
    for (line, content) in lines {
        let (set_text, value_text) =
            content
                .split_once(':')
                .ok_or_else(|| ProfileError::Syntax {
                    line,
                    message: "expected `set : value`".into(),
                })?;
        let set = universe.parse_set(set_text)?;
        if set.is_empty() {
            return Err(ProfileError::Syntax {
                line,
                message: "the empty set carries no value".into(),
            });
        }
        let value: Rational = value_text
            .parse()
            .map_err(|source| ProfileError::Value { line, source })?;
        let slot = &mut values[set.bits() as usize];
        if slot.is_some() {
            return Err(ProfileError::Duplicate(universe.format_set(set)));
        }
        *slot = Some(value);
    }
    let mut out = vec![Rational::zero()];
    for set in universe.full().nonempty_subsets() {
        match values[set.bits() as usize].take() {
            Some(v) => out.push(v),
            None => return Err(ProfileError::Missing(universe.format_set(set))),
        }
    }
    Ok((universe, out))
}
