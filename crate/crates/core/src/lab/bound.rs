//! Best member of a proved inequality family for a given hypothesis bound.

use crate::rational::Rational;

use super::LabError;

/// The two families with a free integer parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyTheorem {
    /// Hypotheses bound `I(A:X|Y)` and `I(A:Y|X)` by `eps·I(X:Y)`.
    First,
    /// Hypotheses bound `I(X:Y|A)` and `I(A:Y|X)` by `eps·I(X:A)`.
    Second,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyBound {
    pub k: u64,
    pub coefficient: Rational,
}

/// Slack coefficient of member `k` once the hypotheses are substituted.
///
/// For the first family the `1/k` term multiplies a quantity normalized
/// to 1. For the second it multiplies `I(A:X|Y) ≤ (1 + eps)·I(X:A)`.
pub fn family_coefficient(theorem: FamilyTheorem, k: u64, eps: &Rational) -> Rational {
    let k = Rational::from(k);
    let tail = &(&k + &Rational::one()) * eps;
    let head = match theorem {
        FamilyTheorem::First => k.recip(),
        FamilyTheorem::Second => &(&Rational::one() + eps) / &k,
    };
    &head + &tail
}

/// Smallest `K` with `K ≥ 2/√eps`, computed exactly.
pub fn scan_limit(eps: &Rational) -> u64 {
    // K ≥ 2/√eps  ⟺  K²·eps ≥ 4.
    let four = Rational::from(4);
    let mut k = (2.0 / eps.to_f64().sqrt()).floor().max(1.0) as u64;
    while &Rational::from(k * k) * eps < four {
        k += 1;
    }
    while k > 1 && &Rational::from((k - 1) * (k - 1)) * eps >= four {
        k -= 1;
    }
    k
}

/// Scans `k = 1..=K`, `K = ⌈2/√eps⌉`, for the smallest coefficient; ties
/// go to the smaller `k`.
pub fn bound_from_family(theorem: FamilyTheorem, eps: &Rational) -> Result<FamilyBound, LabError> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(LabError::EpsOutOfRange(eps.to_string()));
    }
    let mut best = FamilyBound {
        k: 1,
        coefficient: family_coefficient(theorem, 1, eps),
    };
    for k in 2..=scan_limit(eps) {
        let c = family_coefficient(theorem, k, eps);
        if c < best.coefficient {
            best = FamilyBound { k, coefficient: c };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter() {
        let eps = Rational::new(1, 4);
        assert_eq!(scan_limit(&eps), 4);
        let b = bound_from_family(FamilyTheorem::First, &eps).unwrap();
        assert_eq!(
            b,
            FamilyBound {
                k: 2,
                coefficient: Rational::new(5, 4)
            }
        );
        let b = bound_from_family(FamilyTheorem::Second, &eps).unwrap();
        assert_eq!(
            b,
            FamilyBound {
                k: 2,
                coefficient: Rational::new(11, 8)
            }
        );
    }

    #[test]
    fn large_eps_picks_first_member() {
        let eps = Rational::new(9, 10);
        let b = bound_from_family(FamilyTheorem::First, &eps).unwrap();
        assert_eq!(b.k, 1);
        assert_eq!(
            b.coefficient,
            family_coefficient(FamilyTheorem::First, 1, &eps)
        );
    }

    #[test]
    fn limit_is_exact_ceiling() {
        assert_eq!(scan_limit(&Rational::new(1, 16)), 8);
        assert_eq!(scan_limit(&Rational::new(1, 17)), 9);
        assert_eq!(scan_limit(&Rational::new(1, 1 << 20)), 2048);
        assert_eq!(scan_limit(&Rational::new(1, 2)), 3);
    }

    #[test]
    fn range_checked() {
        for eps in [Rational::zero(), Rational::one(), Rational::new(-1, 2)] {
            assert!(bound_from_family(FamilyTheorem::First, &eps).is_err());
        }
    }
}
