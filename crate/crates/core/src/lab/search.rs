//! Derivative-free hill climbing over the probability simplex.
//!
//! Each restart starts from a random interior table and proposes
//! multiplicative perturbations of every cell followed by renormalization.
//! A proposal is kept when it improves the penalized objective; the step
//! doubles (up to its initial value) after a success and halves after a
//! failure, starting over once it becomes negligible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::dist::{entropy_vector, JointDistribution};
use crate::exec::Exec;
use crate::expr::EntropyExpr;
use crate::lincomb::LinComb;
use crate::rational::Rational;
use crate::varset::{Universe, VarSet};

use super::LabError;

const MIN_STEP: f64 = 1e-9;
/// Bits of precision kept when the best table is made exact.
const EXACT_BITS: u32 = 40;

/// `expr ≤ bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConstraint {
    pub expr: EntropyExpr,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    pub universe: Universe,
    /// Alphabet size of each variable.
    pub shape: Vec<usize>,
    pub objective: EntropyExpr,
    pub constraints: Vec<SearchConstraint>,
    pub penalty: f64,
    /// Iterations per restart.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    pub initial_step: f64,
}

impl SearchConfig {
    /// 2000 iterations, 16 restarts, penalty 100.
    pub fn new(universe: Universe, shape: Vec<usize>, objective: EntropyExpr, seed: u64) -> Self {
        SearchConfig {
            universe,
            shape,
            objective,
            constraints: Vec::new(),
            penalty: 100.0,
            budget: 2000,
            restarts: 16,
            seed,
            initial_step: 0.5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry {
    pub restart: usize,
    pub iteration: usize,
    /// Penalized objective of the current table.
    pub objective: f64,
    pub step: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchResult {
    /// Best table over all restarts, rounded to an exact distribution.
    pub best: JointDistribution,
    /// Unpenalized objective of the float table behind `best`.
    pub objective: f64,
    /// Largest constraint excess of that table, 0 when all hold.
    pub max_excess: f64,
    pub restart_best: Vec<f64>,
    pub trace: Vec<TraceEntry>,
}

impl SearchResult {
    /// One JSON object per line: restart, iteration, objective, step.
    pub fn trace_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.trace {
            let line = json!({
                "restart": e.restart,
                "iteration": e.iteration,
                "objective": e.objective,
                "step": e.step,
            });
            out.push_str(&line.to_string());
            out.push('\n');
        }
        out
    }
}

struct Compiled {
    shape: Vec<usize>,
    objective: LinComb,
    constraints: Vec<(LinComb, f64)>,
    penalty: f64,
}

struct Score {
    objective: f64,
    /// Largest single excess.
    excess: f64,
    /// Sum of excesses.
    total_excess: f64,
}

impl Compiled {
    fn score(&self, probs: &[f64]) -> Score {
        let h = entropy_vector(&self.shape, probs, Exec::Sequential);
        let at = |s: VarSet| h[s.bits() as usize];
        let mut score = Score {
            objective: self.objective.evaluate_f64(at),
            excess: 0.0,
            total_excess: 0.0,
        };
        for (lc, bound) in &self.constraints {
            let e = (lc.evaluate_f64(at) - bound).max(0.0);
            score.excess = score.excess.max(e);
            score.total_excess += e;
        }
        score
    }

    fn penalized(&self, probs: &[f64]) -> f64 {
        let s = self.score(probs);
        s.objective - self.penalty * s.total_excess
    }
}

fn normalize(probs: &mut [f64]) {
    let total: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= total;
    }
}

/// True when every entry is nonnegative and the total is 1 within 1e-12.
pub(crate) fn on_simplex(probs: &[f64]) -> bool {
    probs.iter().all(|&p| p >= 0.0) && (probs.iter().sum::<f64>() - 1.0).abs() <= 1e-12
}

fn random_start(rng: &mut ChaCha8Rng, cells: usize) -> Vec<f64> {
    let mut p: Vec<f64> = (0..cells)
        .map(|_| (2.0 * rng.random_range(-1.0..1.0f64)).exp())
        .collect();
    normalize(&mut p);
    p
}

pub(crate) fn perturb(rng: &mut ChaCha8Rng, probs: &[f64], step: f64) -> Vec<f64> {
    let mut p: Vec<f64> = probs
        .iter()
        .map(|&x| x * (step * rng.random_range(-1.0..1.0f64)).exp())
        .collect();
    normalize(&mut p);
    p
}

struct RestartOutcome {
    best: Vec<f64>,
    best_value: f64,
    trace: Vec<TraceEntry>,
}

fn climb(c: &Compiled, cfg: &SearchConfig, restart: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(restart as u64);
    let cells = c.shape.iter().product();
    let mut current = random_start(&mut rng, cells);
    let mut value = c.penalized(&current);
    let mut step = cfg.initial_step;
    let mut trace = Vec::with_capacity(cfg.budget);
    for iteration in 0..cfg.budget {
        let proposal = perturb(&mut rng, &current, step);
        debug_assert!(on_simplex(&proposal));
        let v = c.penalized(&proposal);
        if v > value {
            current = proposal;
            value = v;
            step = (step * 2.0).min(cfg.initial_step);
        } else {
            step /= 2.0;
            if step < MIN_STEP {
                step = cfg.initial_step;
            }
        }
        trace.push(TraceEntry {
            restart,
            iteration,
            objective: value,
            step,
        });
    }
    RestartOutcome {
        best: current,
        best_value: value,
        trace,
    }
}

/// Exact table closest to `probs` on a dyadic grid, renormalized exactly.
fn exact_table(
    universe: &Universe,
    shape: &[usize],
    probs: &[f64],
) -> Result<JointDistribution, LabError> {
    let rounded: Vec<Rational> = probs
        .iter()
        .map(|&p| Rational::from_f64_dyadic(p, EXACT_BITS))
        .collect();
    let total: Rational = rounded.iter().sum();
    let masses = rounded.iter().map(|m| m / &total).collect();
    Ok(JointDistribution::new(
        universe.clone(),
        shape.to_vec(),
        masses,
    )?)
}

/// Maximizes `objective − penalty·Σ max(0, constraint excess)`.
/// Deterministic for a fixed configuration, whatever `exec` is.
pub fn search_max_violation(cfg: &SearchConfig, exec: Exec) -> Result<SearchResult, LabError> {
    if cfg.budget == 0 || cfg.restarts == 0 {
        return Err(LabError::EmptyBudget);
    }
    if cfg.shape.len() != cfg.universe.len() {
        return Err(LabError::ShapeMismatch {
            shape: cfg.shape.len(),
            universe: cfg.universe.len(),
        });
    }
    let expand = |e: &EntropyExpr| {
        e.expand(&cfg.universe)
            .map_err(crate::dist::DistError::from)
    };
    let compiled = Compiled {
        shape: cfg.shape.clone(),
        objective: expand(&cfg.objective)?,
        constraints: cfg
            .constraints
            .iter()
            .map(|k| Ok((expand(&k.expr)?, k.bound)))
            .collect::<Result<_, LabError>>()?,
        penalty: cfg.penalty,
    };
    let restarts: Vec<usize> = (0..cfg.restarts).collect();
    let outcomes = exec.map(&restarts, |&r| climb(&compiled, cfg, r));
    let winner = outcomes.iter().enumerate().fold(0, |best, (i, o)| {
        if o.best_value > outcomes[best].best_value {
            i
        } else {
            best
        }
    });
    let best_probs = &outcomes[winner].best;
    let score = compiled.score(best_probs);
    Ok(SearchResult {
        best: exact_table(&cfg.universe, &cfg.shape, best_probs)?,
        objective: score.objective,
        max_excess: score.excess,
        restart_best: outcomes.iter().map(|o| o.best_value).collect(),
        trace: outcomes.into_iter().flat_map(|o| o.trace).collect(),
    })
}
