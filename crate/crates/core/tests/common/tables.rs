//! Random rational tables and brute-force marginals that walk the support
//! with a map instead of the library's mixed-radix indexing.

use std::collections::BTreeMap;

use entropic::dist::JointDistribution;
use entropic::rational::Rational;
use entropic::varset::Universe;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A table over `names` with alphabets of size `1..=max_alphabet` and
/// small integer weights, normalized exactly.
pub fn random_table(seed: u64, names: &[&str], max_alphabet: usize) -> JointDistribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabets: Vec<usize> = names
        .iter()
        .map(|_| rng.random_range(1..=max_alphabet))
        .collect();
    let size: usize = alphabets.iter().product();
    let mut weights: Vec<i64> = (0..size)
        .map(|_| {
            if rng.random_bool(0.3) {
                0
            } else {
                rng.random_range(1..=7)
            }
        })
        .collect();
    if weights.iter().all(|&w| w == 0) {
        weights[rng.random_range(0..size)] = 1;
    }
    let total: i64 = weights.iter().sum();
    let masses = weights.iter().map(|&w| Rational::new(w, total)).collect();
    let universe = Universe::new(names.iter().copied()).unwrap();
    JointDistribution::new(universe, alphabets, masses).unwrap()
}

/// Marginal on the variables at `vars`, keyed by their values in that order.
pub fn brute_marginal(d: &JointDistribution, vars: &[usize]) -> BTreeMap<Vec<usize>, Rational> {
    let mut out: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
    for (tuple, m) in d.support() {
        let key: Vec<usize> = vars.iter().map(|&i| tuple[i]).collect();
        *out.entry(key).or_default() += m;
    }
    out
}

/// Entropy in bits of the marginal on `vars`.
pub fn brute_entropy(d: &JointDistribution, vars: &[usize]) -> f64 {
    brute_marginal(d, vars)
        .values()
        .map(|m| m.to_f64())
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}
