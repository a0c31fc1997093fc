//! Two-phase revised simplex over exact rationals with an explicit basis
//! inverse.
//!
//! The original problem is brought to `A'x' = b', x' ≥ 0, b' ≥ 0` by
//! shifting bounded variables to zero, splitting free ones, adding a
//! surplus column per `≥` row and negating rows with negative right-hand
//! side. Rows whose surplus column ends up with coefficient `+1` start
//! with it in the basis; the others get an artificial column.

use crate::rational::Rational;

use super::{LinearProgram, LpOutcome, RowRelation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PivotRule {
    /// First improving column in a fixed order; smallest-rank leaving
    /// variable on ties. Never cycles.
    #[default]
    Bland,
    /// Most negative reduced cost; switches to [`PivotRule::Bland`] after a
    /// run of degenerate pivots and back after the next improving pivot.
    DantzigBlandFallback,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub pivot: PivotRule,
    /// Degenerate pivots tolerated before falling back to Bland.
    pub degenerate_limit: usize,
    /// Substitute free variables out through equality rows before pivoting.
    pub eliminate_free: bool,
    /// Seed the exact column-generation loop with the support of a floating
    /// point solution instead of all columns.
    pub float_start: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            pivot: PivotRule::default(),
            degenerate_limit: 32,
            eliminate_free: true,
            float_start: true,
        }
    }
}

impl SolveOptions {
    /// Plain two-phase simplex on the whole problem.
    pub fn plain() -> Self {
        SolveOptions {
            eliminate_free: false,
            float_start: false,
            ..SolveOptions::default()
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Size of the problem handed to the simplex after elimination.
    pub rows: usize,
    pub columns: usize,
    pub eliminated: usize,
    /// Exact solves performed by the column-generation loop.
    pub rounds: usize,
    pub phase1_pivots: usize,
    pub phase2_pivots: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    /// `x_var − l` for bounded variables, or the positive part of a free one.
    Plus(usize),
    /// Negative part of a free variable.
    Minus(usize),
    Surplus,
    Artificial,
}

struct Standard {
    m: usize,
    cols: Vec<Vec<(usize, Rational)>>,
    kinds: Vec<Column>,
    cost: Vec<Rational>,
    b: Vec<Rational>,
    /// Rows multiplied by −1.
    negated: Vec<bool>,
    /// Columns forming the starting basis, one per row.
    start: Vec<usize>,
}

fn standardize(lp: &LinearProgram) -> Standard {
    let m = lp.num_constraints();
    let n = lp.num_vars();
    let mut b: Vec<Rational> = lp.constraints().iter().map(|c| c.rhs.clone()).collect();
    let mut by_var: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (i, row) in lp.constraints().iter().enumerate() {
        for (j, a) in &row.coeffs {
            by_var[*j].push((i, a.clone()));
        }
    }
    for col in by_var.iter_mut() {
        col.sort_by_key(|(i, _)| *i);
        let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(col.len());
        for (i, a) in col.drain(..) {
            match merged.last_mut() {
                Some((k, acc)) if *k == i => *acc += &a,
                _ => merged.push((i, a)),
            }
        }
        merged.retain(|(_, a)| !a.is_zero());
        *col = merged;
    }
    for (j, col) in by_var.iter().enumerate() {
        if let Some(l) = &lp.lower_bounds()[j] {
            for (i, a) in col {
                b[*i].add_mul(&-a, l);
            }
        }
    }
    let negated: Vec<bool> = b.iter().map(Rational::is_negative).collect();
    let flip = |i: usize, a: Rational| if negated[i] { -a } else { a };

    let mut cols = Vec::new();
    let mut kinds = Vec::new();
    let mut cost = Vec::new();
    for (j, col) in by_var.into_iter().enumerate() {
        let c = lp.objective()[j].clone();
        let plus: Vec<(usize, Rational)> = col.into_iter().map(|(i, a)| (i, flip(i, a))).collect();
        let minus = lp.lower_bounds()[j]
            .is_none()
            .then(|| plus.iter().map(|(i, a)| (*i, -a)).collect());
        cols.push(plus);
        kinds.push(Column::Plus(j));
        cost.push(c.clone());
        if let Some(minus) = minus {
            cols.push(minus);
            kinds.push(Column::Minus(j));
            cost.push(-c);
        }
    }

    let mut start = vec![usize::MAX; m];
    for (i, row) in lp.constraints().iter().enumerate() {
        if row.relation == RowRelation::Ge {
            let coef = flip(i, -Rational::one());
            if coef.is_one() {
                start[i] = cols.len();
            }
            cols.push(vec![(i, coef)]);
            kinds.push(Column::Surplus);
            cost.push(Rational::zero());
        }
    }
    for (i, slot) in start.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = cols.len();
            cols.push(vec![(i, Rational::one())]);
            kinds.push(Column::Artificial);
            cost.push(Rational::zero());
        }
    }
    let b = b.into_iter().map(|v| v.abs()).collect();
    Standard {
        m,
        cols,
        kinds,
        cost,
        b,
        negated,
        start,
    }
}

enum Phase {
    Optimal,
    Unbounded {
        entering: usize,
        alpha: Vec<Rational>,
    },
}

struct Simplex<'a> {
    std: &'a Standard,
    /// Row-major basis inverse.
    binv: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Row holding each column when basic.
    position: Vec<Option<usize>>,
    xb: Vec<Rational>,
    opts: SolveOptions,
}

impl<'a> Simplex<'a> {
    fn new(std: &'a Standard, opts: SolveOptions) -> Self {
        let m = std.m;
        let mut binv = vec![vec![Rational::zero(); m]; m];
        for (i, row) in binv.iter_mut().enumerate() {
            row[i] = Rational::one();
        }
        let mut position = vec![None; std.cols.len()];
        for (i, &c) in std.start.iter().enumerate() {
            position[c] = Some(i);
        }
        Simplex {
            std,
            binv,
            basis: std.start.clone(),
            position,
            xb: std.b.clone(),
            opts,
        }
    }

    /// `y = c_Bᵀ B⁻¹`.
    fn duals(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.std.m];
        for (i, &col) in self.basis.iter().enumerate() {
            let c = &cost[col];
            if c.is_zero() {
                continue;
            }
            for (k, v) in self.binv[i].iter().enumerate() {
                if !v.is_zero() {
                    y[k].add_mul(c, v);
                }
            }
        }
        y
    }

    fn reduced_cost(&self, cost: &[Rational], y: &[Rational], j: usize) -> Rational {
        let mut d = cost[j].clone();
        for (i, a) in &self.std.cols[j] {
            if !y[*i].is_zero() {
                d.add_mul(&-a, &y[*i]);
            }
        }
        d
    }

    /// `B⁻¹ A_j`.
    fn column(&self, j: usize) -> Vec<Rational> {
        let col = &self.std.cols[j];
        self.binv
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (k, a) in col {
                    let v = &row[*k];
                    if !v.is_zero() {
                        acc.add_mul(a, v);
                    }
                }
                acc
            })
            .collect()
    }

    fn choose_entering(
        &self,
        cost: &[Rational],
        y: &[Rational],
        allowed: &dyn Fn(usize) -> bool,
        bland: bool,
    ) -> Option<(usize, Rational)> {
        let mut best: Option<(usize, Rational)> = None;
        for j in 0..self.std.cols.len() {
            if self.position[j].is_some() || !allowed(j) {
                continue;
            }
            let d = self.reduced_cost(cost, y, j);
            if !d.is_negative() {
                continue;
            }
            if bland {
                return Some((j, d));
            }
            if best.as_ref().is_none_or(|(_, b)| d < *b) {
                best = Some((j, d));
            }
        }
        best
    }

    /// Position in the fixed variable order used for tie breaking:
    /// artificials first, then columns by index. Bland's rule stays
    /// finite under any fixed order, and ranking artificials first lets
    /// degenerate pivots retire them.
    fn rank(&self, col: usize) -> (bool, usize) {
        (self.std.kinds[col] != Column::Artificial, col)
    }

    /// Ratio test with ties broken by smallest rank.
    fn choose_leaving(&self, alpha: &[Rational]) -> Option<usize> {
        let mut best: Option<(usize, Rational)> = None;
        for (i, a) in alpha.iter().enumerate() {
            if !a.is_positive() {
                continue;
            }
            let ratio = &self.xb[i] / a;
            let better = match &best {
                None => true,
                Some((p, r)) => {
                    ratio < *r
                        || (ratio == *r && self.rank(self.basis[i]) < self.rank(self.basis[*p]))
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, entering: usize, leaving_row: usize, alpha: &[Rational]) {
        let p = leaving_row;
        let pivot = alpha[p].clone();
        let theta = &self.xb[p] / &pivot;
        if !theta.is_zero() {
            for (i, a) in alpha.iter().enumerate() {
                if i != p && !a.is_zero() {
                    self.xb[i].add_mul(&-a, &theta);
                }
            }
        }
        self.xb[p] = theta;

        let inv = pivot.recip();
        for v in self.binv[p].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.binv[p]);
        let nonzero: Vec<usize> = (0..pivot_row.len())
            .filter(|&k| !pivot_row[k].is_zero())
            .collect();
        for (i, a) in alpha.iter().enumerate() {
            if i == p || a.is_zero() {
                continue;
            }
            let factor = -a;
            let row = &mut self.binv[i];
            for &k in &nonzero {
                row[k].add_mul(&factor, &pivot_row[k]);
            }
        }
        self.binv[p] = pivot_row;

        self.position[self.basis[p]] = None;
        self.position[entering] = Some(p);
        self.basis[p] = entering;
    }

    fn run(
        &mut self,
        cost: &[Rational],
        allowed: &dyn Fn(usize) -> bool,
        pivots: &mut usize,
    ) -> Phase {
        let mut y = self.duals(cost);
        let mut bland = self.opts.pivot == PivotRule::Bland;
        let mut degenerate_run = 0;
        loop {
            let Some((entering, d)) = self.choose_entering(cost, &y, allowed, bland) else {
                return Phase::Optimal;
            };
            let alpha = self.column(entering);
            let Some(p) = self.choose_leaving(&alpha) else {
                return Phase::Unbounded { entering, alpha };
            };
            let degenerate = self.xb[p].is_zero();
            self.pivot(entering, p, &alpha);
            *pivots += 1;
            // y += d_q · (new row p of B⁻¹)
            for (k, v) in self.binv[p].iter().enumerate() {
                if !v.is_zero() {
                    y[k].add_mul(&d, v);
                }
            }
            if self.opts.pivot == PivotRule::DantzigBlandFallback {
                if degenerate {
                    degenerate_run += 1;
                    if degenerate_run >= self.opts.degenerate_limit {
                        bland = true;
                    }
                } else {
                    degenerate_run = 0;
                    bland = false;
                }
            }
        }
    }

    /// Pivots basic artificials at zero level out of the basis where some
    /// non-artificial column has a nonzero entry in their row.
    fn drive_out_artificials(&mut self) {
        for p in 0..self.std.m {
            if self.std.kinds[self.basis[p]] != Column::Artificial {
                continue;
            }
            let row = &self.binv[p];
            let candidate = (0..self.std.cols.len()).find(|&j| {
                self.position[j].is_none()
                    && self.std.kinds[j] != Column::Artificial
                    && self.std.cols[j]
                        .iter()
                        .fold(Rational::zero(), |mut acc, (k, a)| {
                            acc.add_mul(a, &row[*k]);
                            acc
                        })
                        != Rational::zero()
            });
            if let Some(j) = candidate {
                let alpha = self.column(j);
                self.pivot(j, p, &alpha);
            }
        }
    }

    /// Current standard-form point.
    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.std.cols.len()];
        for (i, &c) in self.basis.iter().enumerate() {
            x[c] = self.xb[i].clone();
        }
        x
    }
}

/// Maps a standard-form vector back to original variables; `shift` adds the
/// lower bounds (points) or not (directions).
fn to_original(lp: &LinearProgram, std: &Standard, x: &[Rational], shift: bool) -> Vec<Rational> {
    let mut out: Vec<Rational> = lp
        .lower_bounds()
        .iter()
        .map(|l| match l {
            Some(l) if shift => l.clone(),
            _ => Rational::zero(),
        })
        .collect();
    for (j, kind) in std.kinds.iter().enumerate() {
        match kind {
            Column::Plus(v) => out[*v] += &x[j],
            Column::Minus(v) => out[*v] -= &x[j],
            _ => {}
        }
    }
    out
}

fn unsign(std: &Standard, y: Vec<Rational>) -> Vec<Rational> {
    y.into_iter()
        .zip(&std.negated)
        .map(|(v, &neg)| if neg { -v } else { v })
        .collect()
}

/// Two-phase simplex on the whole of `lp`, which must be valid. Pivot
/// counts accumulate into `stats`.
pub(super) fn simplex(
    lp: &LinearProgram,
    opts: &SolveOptions,
    stats: &mut SolveStats,
) -> LpOutcome {
    let std = standardize(lp);
    let mut sx = Simplex::new(&std, *opts);

    if std.kinds.contains(&Column::Artificial) {
        let phase1_cost: Vec<Rational> = std
            .kinds
            .iter()
            .map(|k| {
                if *k == Column::Artificial {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        // Phase 1 is bounded below by zero, so it always ends optimal. An
        // artificial that has left the basis never comes back.
        let not_artificial = |j: usize| std.kinds[j] != Column::Artificial;
        let _ = sx.run(&phase1_cost, &not_artificial, &mut stats.phase1_pivots);
        let infeasibility: Rational = sx
            .basis
            .iter()
            .zip(&sx.xb)
            .filter(|(c, _)| std.kinds[**c] == Column::Artificial)
            .map(|(_, v)| v)
            .sum();
        if infeasibility.is_positive() {
            let y = unsign(&std, sx.duals(&phase1_cost));
            let scale = infeasibility.recip();
            let farkas = y.into_iter().map(|v| &v * &scale).collect();
            return LpOutcome::Infeasible { farkas };
        }
        sx.drive_out_artificials();
    }

    let not_artificial = |j: usize| std.kinds[j] != Column::Artificial;
    match sx.run(&std.cost, &not_artificial, &mut stats.phase2_pivots) {
        Phase::Optimal => {
            let primal = to_original(lp, &std, &sx.point(), true);
            let dual = unsign(&std, sx.duals(&std.cost));
            let value = lp.objective_value(&primal);
            LpOutcome::Optimal {
                value,
                primal,
                dual,
            }
        }
        Phase::Unbounded { entering, alpha } => {
            let mut direction = vec![Rational::zero(); std.cols.len()];
            direction[entering] = Rational::one();
            for (i, a) in alpha.iter().enumerate() {
                direction[sx.basis[i]] = -a;
            }
            let point = to_original(lp, &std, &sx.point(), true);
            let ray = to_original(lp, &std, &direction, false);
            LpOutcome::Unbounded { point, ray }
        }
    }
}
