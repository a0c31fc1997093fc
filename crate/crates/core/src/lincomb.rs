//! Linear combinations of joint entropies, the normal form of every
//! information expression.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::rational::Rational;
use crate::varset::VarSet;

/// `constant + Σ coef·H(S)` over nonempty sets `S`. Zero coefficients are
/// never stored, so two combinations are equal iff their maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct LinComb {
    terms: BTreeMap<VarSet, Rational>,
    constant: Rational,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn constant(value: Rational) -> Self {
        LinComb {
            terms: BTreeMap::new(),
            constant: value,
        }
    }

    /// `H(S)`; the empty set contributes nothing.
    pub fn entropy(set: VarSet) -> Self {
        let mut lc = LinComb::zero();
        lc.add_term(set, &Rational::one());
        lc
    }

    /// `H(S | C) = H(S ∪ C) − H(C)`.
    pub fn cond_entropy(set: VarSet, given: VarSet) -> Self {
        let mut lc = LinComb::zero();
        lc.add_term(set.union(given), &Rational::one());
        lc.add_term(given, &-Rational::one());
        lc
    }

    /// `I(A:B | C) = H(A∪C) + H(B∪C) − H(A∪B∪C) − H(C)`.
    pub fn mutual(a: VarSet, b: VarSet, given: VarSet) -> Self {
        let one = Rational::one();
        let minus = -Rational::one();
        let mut lc = LinComb::zero();
        lc.add_term(a.union(given), &one);
        lc.add_term(b.union(given), &one);
        lc.add_term(a.union(b).union(given), &minus);
        lc.add_term(given, &minus);
        lc
    }

    /// `I(A:B:D | C) = I(A:B | C) − I(A:B | C∪D)`.
    pub fn mutual3(a: VarSet, b: VarSet, d: VarSet, given: VarSet) -> Self {
        LinComb::mutual(a, b, given) - LinComb::mutual(a, b, given.union(d))
    }

    pub fn add_term(&mut self, set: VarSet, coef: &Rational) {
        if set.is_empty() || coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&set) {
            Some(c) => {
                *c += coef;
                if c.is_zero() {
                    self.terms.remove(&set);
                }
            }
            None => {
                self.terms.insert(set, coef.clone());
            }
        }
    }

    pub fn add_constant(&mut self, value: &Rational) {
        self.constant += value;
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &LinComb) {
        if factor.is_zero() {
            return;
        }
        for (set, coef) in &other.terms {
            self.add_term(*set, &(factor * coef));
        }
        self.constant.add_mul(factor, &other.constant);
    }

    pub fn scaled(&self, factor: &Rational) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(factor, self);
        out
    }

    pub fn coefficient(&self, set: VarSet) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> &Rational {
        &self.constant
    }

    pub fn terms(&self) -> impl Iterator<Item = (VarSet, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.constant.is_zero()
    }

    /// Union of every set with a nonzero coefficient.
    pub fn support(&self) -> VarSet {
        self.terms
            .keys()
            .fold(VarSet::EMPTY, |acc, s| acc.union(*s))
    }

    /// Smallest universe size the combination fits in.
    pub fn span(&self) -> usize {
        self.support().span()
    }

    /// Renames variables: bit `i` of every set moves to bit `map[i]`.
    pub fn remap(&self, map: &[usize]) -> LinComb {
        let mut out = LinComb::constant(self.constant.clone());
        for (set, coef) in &self.terms {
            out.add_term(VarSet::from_indices(set.indices().map(|i| map[i])), coef);
        }
        out
    }

    /// Exact value on a set function given as a lookup.
    pub fn evaluate_with<F: Fn(VarSet) -> Rational>(&self, value: F) -> Rational {
        let mut acc = self.constant.clone();
        for (set, coef) in &self.terms {
            acc.add_mul(coef, &value(*set));
        }
        acc
    }

    pub fn evaluate_f64<F: Fn(VarSet) -> f64>(&self, value: F) -> f64 {
        self.terms
            .iter()
            .fold(self.constant.to_f64(), |acc, (s, c)| {
                acc + c.to_f64() * value(*s)
            })
    }
}

impl Add<&LinComb> for &LinComb {
    type Output = LinComb;
    fn add(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Add for LinComb {
    type Output = LinComb;
    fn add(mut self, rhs: LinComb) -> LinComb {
        self.add_scaled(&Rational::one(), &rhs);
        self
    }
}

impl Sub<&LinComb> for &LinComb {
    type Output = LinComb;
    fn sub(self, rhs: &LinComb) -> LinComb {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Sub for LinComb {
    type Output = LinComb;
    fn sub(mut self, rhs: LinComb) -> LinComb {
        self.add_scaled(&-Rational::one(), &rhs);
        self
    }
}

impl AddAssign<&LinComb> for LinComb {
    fn add_assign(&mut self, rhs: &LinComb) {
        self.add_scaled(&Rational::one(), rhs);
    }
}

impl SubAssign<&LinComb> for LinComb {
    fn sub_assign(&mut self, rhs: &LinComb) {
        self.add_scaled(&-Rational::one(), rhs);
    }
}

impl Neg for LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scaled(&-Rational::one())
    }
}

impl Neg for &LinComb {
    type Output = LinComb;
    fn neg(self) -> LinComb {
        self.scaled(&-Rational::one())
    }
}

impl Mul<&LinComb> for &Rational {
    type Output = LinComb;
    fn mul(self, rhs: &LinComb) -> LinComb {
        rhs.scaled(self)
    }
}

/// Relation of a normalized inequality `lhs ≥ 0` or `lhs = 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Relation {
    GeZero,
    EqZero,
}

/// A normalized linear constraint on set functions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Inequality {
    pub lhs: LinComb,
    pub relation: Relation,
    pub label: String,
}

impl Inequality {
    pub fn ge_zero(lhs: LinComb, label: impl Into<String>) -> Self {
        Inequality {
            lhs,
            relation: Relation::GeZero,
            label: label.into(),
        }
    }

    pub fn eq_zero(lhs: LinComb, label: impl Into<String>) -> Self {
        Inequality {
            lhs,
            relation: Relation::EqZero,
            label: label.into(),
        }
    }

    pub fn holds_for(&self, value: &Rational) -> bool {
        match self.relation {
            Relation::GeZero => !value.is_negative(),
            Relation::EqZero => value.is_zero(),
        }
    }
}
