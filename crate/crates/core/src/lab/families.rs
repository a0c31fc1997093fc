//! Concrete distribution families on `(X, Y, A, B)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dist::JointDistribution;
use crate::rational::Rational;
use crate::varset::Universe;

use super::Theorem;

pub const QUAD: [&str; 4] = ["X", "Y", "A", "B"];

fn quad(alphabets: Vec<usize>, mass: impl FnMut(&[usize]) -> Rational) -> JointDistribution {
    let universe = Universe::new(QUAD).expect("fixed labels");
    JointDistribution::from_fn(universe, alphabets, mass).expect("family tables are normalized")
}

/// `Pr[out | input]` for a binary symmetric channel with crossover `noise`.
fn channel(noise: &Rational, input: usize, out: usize) -> Rational {
    if input == out {
        Rational::one() - noise
    } else {
        noise.clone()
    }
}

fn bit(p_one: &Rational, value: usize) -> Rational {
    if value == 1 {
        p_one.clone()
    } else {
        Rational::one() - p_one
    }
}

/// `A`, `B` fair independent bits, `X = A ∧ B`, `Y = A ∨ B`.
pub fn and_or() -> JointDistribution {
    quad(vec![2; 4], |t| {
        if t[0] == (t[2] & t[3]) && t[1] == (t[2] | t[3]) {
            Rational::new(1, 4)
        } else {
            Rational::zero()
        }
    })
}

/// Parameters of one member of [`common_part_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonPartParams {
    /// `Pr[U = 1]` for the shared bit.
    pub shared: Rational,
    /// Crossover between the private bits of `X` and `Y`.
    pub private_noise: Rational,
    /// Crossover from `U` to `A`.
    pub a_noise: Rational,
    /// Crossover from `X`'s private bit to `B`.
    pub b_noise: Rational,
}

/// `X = (U, N)`, `Y = (U, N')` with `N'` a noisy copy of `N`, `A` a noisy
/// copy of the shared bit `U` and `B` a noisy copy of `N`. Since `A`
/// only sees `U`, `I(A:X|Y) = I(A:Y|X) = 0` exactly.
pub fn common_part_member(p: &CommonPartParams) -> JointDistribution {
    // X and Y pack (U, private) as 2·U + private.
    quad(vec![4, 4, 2, 2], |t| {
        let (u, n) = (t[0] / 2, t[0] % 2);
        let (u2, n2) = (t[1] / 2, t[1] % 2);
        if u != u2 {
            return Rational::zero();
        }
        let mut m = bit(&p.shared, u);
        m = &m * &Rational::new(1, 2);
        m = &m * &channel(&p.private_noise, n, n2);
        m = &m * &channel(&p.a_noise, u, t[2]);
        &m * &channel(&p.b_noise, n, t[3])
    })
}

/// Twenty members of the exact-hypothesis family, parameters spread over
/// a small grid.
pub fn common_part_family() -> Vec<(CommonPartParams, JointDistribution)> {
    let mut out = Vec::new();
    for shared in [Rational::new(1, 2), Rational::new(1, 5)] {
        for private_noise in [Rational::zero(), Rational::new(1, 4)] {
            for (a_noise, b_noise) in [
                (Rational::zero(), Rational::zero()),
                (Rational::new(1, 8), Rational::new(1, 3)),
                (Rational::new(1, 3), Rational::zero()),
                (Rational::new(1, 2), Rational::new(1, 8)),
                (Rational::new(2, 5), Rational::new(1, 2)),
            ] {
                let p = CommonPartParams {
                    shared: shared.clone(),
                    private_noise: private_noise.clone(),
                    a_noise,
                    b_noise,
                };
                let d = common_part_member(&p);
                out.push((p, d));
            }
        }
    }
    out
}

/// A binary member meeting the hypotheses of `theorem` with equality at
/// zero and sitting on the boundary of the inequality being probed.
/// `bias` is `Pr[X = 1]`, `noise` a channel crossover.
pub fn boundary_member(theorem: Theorem, bias: &Rational, noise: &Rational) -> JointDistribution {
    match theorem {
        // Y = B = X and A a noisy copy of X.
        Theorem::First | Theorem::Third | Theorem::Subtler => quad(vec![2; 4], |t| {
            if t[1] != t[0] || t[3] != t[0] {
                return Rational::zero();
            }
            &bit(bias, t[0]) * &channel(noise, t[0], t[2])
        }),
        // A = X, B = Y and Y a noisy copy of X.
        Theorem::Second => quad(vec![2; 4], |t| {
            if t[2] != t[0] || t[3] != t[1] {
                return Rational::zero();
            }
            &bit(bias, t[0]) * &channel(noise, t[0], t[1])
        }),
    }
}

/// `Pr[X = 1]` of the boundary member the sweeps start from.
pub fn boundary_bias() -> Rational {
    Rational::new(1, 2)
}

/// Channel crossover of the boundary member the sweeps start from.
pub fn boundary_noise() -> Rational {
    Rational::new(1, 16)
}

/// `count` mixing weights `t = 2^(−u)`, `u` uniform on `[0, 20)`, rounded
/// to dyadic rationals and sorted ascending.
pub fn seeded_mixing_weights(seed: u64, count: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Rational> = (0..count)
        .map(|_| Rational::from_f64_dyadic((-rng.random_range(0.0..20.0f64)).exp2(), 48))
        .collect();
    out.sort();
    out
}

/// `(1 − t)·boundary + t·AND/OR`.
pub fn interpolate(boundary: &JointDistribution, t: &Rational) -> JointDistribution {
    boundary.mix(&and_or(), t).expect("same shape")
}
