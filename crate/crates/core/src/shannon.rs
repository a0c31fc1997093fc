//! Elemental Shannon inequalities and the Ingleton expression.

use crate::lincomb::{Inequality, LinComb};
use crate::varset::{Universe, VarSet};

/// `n + C(n,2)·2^(n−2)`.
pub fn elemental_count(n: usize) -> usize {
    if n < 2 {
        return n;
    }
    n + n * (n - 1) / 2 * (1 << (n - 2))
}

/// The minimal generating set of Shannon inequalities over `universe`:
/// `H(X_i | rest) ≥ 0` for each `i`, then `I(X_i:X_j | X_K) ≥ 0` for
/// `i < j` and every `K` avoiding both, `K` in increasing mask order.
///
/// Labels are the information quantities themselves, e.g. `H(X|Y,A)` and
/// `I(X:Y|A)`; they are unique within one universe.
pub fn elemental_inequalities(universe: &Universe) -> Vec<Inequality> {
    let n = universe.len();
    let full = universe.full();
    let mut out = Vec::with_capacity(elemental_count(n));
    for i in 0..n {
        let rest = full.without(i);
        let label = if rest.is_empty() {
            format!("H({})", universe.name(i))
        } else {
            format!("H({}|{})", universe.name(i), universe.format_set(rest))
        };
        out.push(Inequality::ge_zero(
            LinComb::cond_entropy(VarSet::singleton(i), rest),
            label,
        ));
    }
    for i in 0..n {
        for j in i + 1..n {
            let rest = full.without(i).without(j);
            for k in rest.subsets() {
                let label = if k.is_empty() {
                    format!("I({}:{})", universe.name(i), universe.name(j))
                } else {
                    format!(
                        "I({}:{}|{})",
                        universe.name(i),
                        universe.name(j),
                        universe.format_set(k)
                    )
                };
                out.push(Inequality::ge_zero(
                    LinComb::mutual(VarSet::singleton(i), VarSet::singleton(j), k),
                    label,
                ));
            }
        }
    }
    out
}

/// The six distinct Ingleton forms over four variables, as orderings
/// `[X, Y, A, B]`.
///
/// The expression is invariant under `X↔Y` and `A↔B`, so a form is fixed
/// by which pair plays `{X, Y}`; the remaining pair plays `{A, B}`. That
/// is the 3 ways to split four variables into two pairs times the 2
/// choices of which pair is `{X, Y}`. Representatives list the `{X, Y}`
/// pair and then the `{A, B}` pair, each in increasing order.
pub const INGLETON_FORMS: [[usize; 4]; 6] = [
    [0, 1, 2, 3],
    [0, 2, 1, 3],
    [0, 3, 1, 2],
    [1, 2, 0, 3],
    [1, 3, 0, 2],
    [2, 3, 0, 1],
];

/// `I(X:Y|A) + I(X:Y|B) + I(A:B) − I(X:Y)` for `perm = [X, Y, A, B]`.
pub fn ingleton_lincomb(perm: [usize; 4]) -> LinComb {
    let [x, y, a, b] = perm.map(VarSet::singleton);
    let mut lc = LinComb::mutual(x, y, a);
    lc += &LinComb::mutual(x, y, b);
    lc += &LinComb::mutual(a, b, VarSet::EMPTY);
    lc -= &LinComb::mutual(x, y, VarSet::EMPTY);
    lc
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_match_formula() {
        let u2 = Universe::new(["X", "Y"]).unwrap();
        let labels: Vec<String> = elemental_inequalities(&u2)
            .into_iter()
            .map(|i| i.label)
            .collect();
        assert_eq!(labels, vec!["H(X|Y)", "H(Y|X)", "I(X:Y)"]);
        assert_eq!(elemental_count(2), 3);
        assert_eq!(elemental_count(4), 28);
        for n in 1..=7 {
            let u = Universe::indexed(n).unwrap();
            assert_eq!(elemental_inequalities(&u).len(), elemental_count(n));
        }
        let u1 = Universe::new(["X"]).unwrap();
        assert_eq!(elemental_inequalities(&u1)[0].label, "H(X)");
    }

    #[test]
    fn no_duplicate_coefficient_maps() {
        for n in 1..=6 {
            let u = Universe::indexed(n).unwrap();
            let elems = elemental_inequalities(&u);
            let maps: HashSet<LinComb> = elems.iter().map(|i| i.lhs.clone()).collect();
            assert_eq!(maps.len(), elems.len());
            let labels: HashSet<&str> = elems.iter().map(|i| i.label.as_str()).collect();
            assert_eq!(labels.len(), elems.len());
        }
    }

    #[test]
    fn ingleton_forms_cover_all_orderings() {
        let mut forms = HashSet::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j])) {
                            forms.insert(ingleton_lincomb(p));
                        }
                    }
                }
            }
        }
        assert_eq!(forms.len(), 6);
        let canonical: HashSet<LinComb> = INGLETON_FORMS
            .iter()
            .map(|p| ingleton_lincomb(*p))
            .collect();
        assert_eq!(canonical, forms);
    }
}
