//! Small random LPs and a brute-force vertex enumeration oracle that works
//! in `BigRational` directly.

use entropic::lp::{LinearProgram, RowRelation};
use entropic::rational::Rational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every variable is boxed to `[-BOX, BOX]` by explicit rows, so a
/// nonempty feasible set always has a vertex and the minimum is finite.
const BOX: i64 = 6;

pub fn random_lp(seed: u64) -> LinearProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=3usize);
    let m = rng.random_range(1..=4usize);
    let mut lp = LinearProgram::new();
    for _ in 0..n {
        let cost = Rational::from(rng.random_range(-3..=3i64));
        let lower = rng
            .random_bool(0.6)
            .then(|| Rational::from(rng.random_range(-2..=1i64)));
        lp.add_var(cost, lower);
    }
    for _ in 0..m {
        let coeffs = (0..n)
            .map(|j| {
                (
                    j,
                    Rational::new(rng.random_range(-3..=3), rng.random_range(1..=2)),
                )
            })
            .collect();
        let relation = if rng.random_bool(0.3) {
            RowRelation::Eq
        } else {
            RowRelation::Ge
        };
        lp.add_constraint(
            coeffs,
            relation,
            Rational::from(rng.random_range(-4..=4i64)),
        );
    }
    for j in 0..n {
        lp.add_constraint(
            vec![(j, Rational::from(-1))],
            RowRelation::Ge,
            Rational::from(-BOX),
        );
        lp.add_constraint(
            vec![(j, Rational::one())],
            RowRelation::Ge,
            Rational::from(-BOX),
        );
    }
    lp
}

struct Halfspace {
    a: Vec<BigRational>,
    b: BigRational,
    equality: bool,
}

fn halfspaces(lp: &LinearProgram) -> Vec<Halfspace> {
    let n = lp.num_vars();
    let mut out = Vec::new();
    for row in lp.constraints() {
        let mut a = vec![BigRational::zero(); n];
        for (j, v) in &row.coeffs {
            a[*j] += v.to_big();
        }
        out.push(Halfspace {
            a,
            b: row.rhs.to_big(),
            equality: row.relation == RowRelation::Eq,
        });
    }
    for (j, l) in lp.lower_bounds().iter().enumerate() {
        if let Some(l) = l {
            let mut a = vec![BigRational::zero(); n];
            a[j] = BigRational::from_integer(BigInt::from(1));
            out.push(Halfspace {
                a,
                b: l.to_big(),
                equality: false,
            });
        }
    }
    out
}

/// Unique solution of the square system, if any.
fn solve_square(mut rows: Vec<(Vec<BigRational>, BigRational)>) -> Option<Vec<BigRational>> {
    let n = rows.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !rows[r].0[col].is_zero())?;
        rows.swap(col, p);
        let (pivot_row, pivot_rhs) = rows[col].clone();
        for r in 0..n {
            if r != col && !rows[r].0[col].is_zero() {
                let f = &rows[r].0[col] / &pivot_row[col];
                for k in 0..n {
                    let d = &f * &pivot_row[k];
                    rows[r].0[k] -= d;
                }
                let d = &f * &pivot_rhs;
                rows[r].1 -= d;
            }
        }
    }
    Some((0..n).map(|i| &rows[i].1 / &rows[i].0[i]).collect())
}

fn subsets(total: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if total < size {
        return Vec::new();
    }
    let mut out = subsets(total - 1, size);
    for mut s in subsets(total - 1, size - 1) {
        s.push(total - 1);
        out.push(s);
    }
    out
}

/// Minimum objective over all vertices, `None` when there is no feasible
/// point.
pub fn vertex_minimum(lp: &LinearProgram) -> Option<BigRational> {
    let n = lp.num_vars();
    let hs = halfspaces(lp);
    let cost: Vec<BigRational> = lp.objective().iter().map(Rational::to_big).collect();
    let mut best: Option<BigRational> = None;
    for choice in subsets(hs.len(), n) {
        let system = choice
            .iter()
            .map(|&i| (hs[i].a.clone(), hs[i].b.clone()))
            .collect();
        let Some(x) = solve_square(system) else {
            continue;
        };
        let feasible = hs.iter().all(|h| {
            let lhs: BigRational = h.a.iter().zip(&x).map(|(a, v)| a * v).sum();
            if h.equality {
                lhs == h.b
            } else {
                !(&lhs - &h.b).is_negative()
            }
        });
        if feasible {
            let value: BigRational = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
    }
    best
}

fn big_vec(v: &[Rational]) -> Vec<BigRational> {
    v.iter().map(Rational::to_big).collect()
}

fn feasible(hs: &[Halfspace], x: &[BigRational]) -> bool {
    hs.iter().all(|h| {
        let lhs: BigRational = h.a.iter().zip(x).map(|(a, v)| a * v).sum();
        if h.equality {
            lhs == h.b
        } else {
            !(&lhs - &h.b).is_negative()
        }
    })
}

/// `b·y + Σ r_j·l_j` with `r = cost − Aᵀy`, or `None` when `y` has the
/// wrong sign on an inequality row or `r` the wrong sign on some column.
fn dual_value(lp: &LinearProgram, cost: &[BigRational], y: &[BigRational]) -> Option<BigRational> {
    let mut r = cost.to_vec();
    let mut value = BigRational::zero();
    for (row, yi) in lp.constraints().iter().zip(y) {
        if row.relation == RowRelation::Ge && yi.is_negative() {
            return None;
        }
        value += row.rhs.to_big() * yi;
        for (j, a) in &row.coeffs {
            r[*j] -= a.to_big() * yi;
        }
    }
    for (rj, l) in r.iter().zip(lp.lower_bounds()) {
        match l {
            None if !rj.is_zero() => return None,
            None => {}
            Some(_) if rj.is_negative() => return None,
            Some(l) => value += rj * l.to_big(),
        }
    }
    Some(value)
}

/// Independent restatement of the certificate conditions.
pub fn certificate_valid(lp: &LinearProgram, outcome: &entropic::lp::LpOutcome) -> bool {
    use entropic::lp::LpOutcome;
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let hs = halfspaces(lp);
    let cost: Vec<BigRational> = lp.objective().iter().map(Rational::to_big).collect();
    match outcome {
        LpOutcome::Optimal {
            value,
            primal,
            dual,
        } => {
            if primal.len() != n || dual.len() != m {
                return false;
            }
            let x = big_vec(primal);
            let cx: BigRational = cost.iter().zip(&x).map(|(c, v)| c * v).sum();
            feasible(&hs, &x)
                && cx == value.to_big()
                && dual_value(lp, &cost, &big_vec(dual)) == Some(cx)
        }
        LpOutcome::Infeasible { farkas } => {
            farkas.len() == m
                && dual_value(lp, &vec![BigRational::zero(); n], &big_vec(farkas))
                    .is_some_and(|v| v.is_positive())
        }
        LpOutcome::Unbounded { point, ray } => {
            if point.len() != n || ray.len() != n {
                return false;
            }
            let d = big_vec(ray);
            let homogeneous: Vec<Halfspace> = hs
                .iter()
                .map(|h| Halfspace {
                    a: h.a.clone(),
                    b: BigRational::zero(),
                    equality: h.equality,
                })
                .collect();
            let cd: BigRational = cost.iter().zip(&d).map(|(c, v)| c * v).sum();
            feasible(&hs, &big_vec(point)) && feasible(&homogeneous, &d) && cd.is_negative()
        }
    }
}

/// Variants of an honest outcome with one entry changed, plus claims of
/// the opposite kind built from its data.
pub fn tamperings(outcome: &entropic::lp::LpOutcome) -> Vec<entropic::lp::LpOutcome> {
    use entropic::lp::LpOutcome;
    let delta = Rational::new(1, 7);
    let mut out = Vec::new();
    let bump = |v: &[Rational], i: usize| {
        let mut w = v.to_vec();
        w[i] += &delta;
        w
    };
    match outcome {
        LpOutcome::Optimal {
            value,
            primal,
            dual,
        } => {
            out.push(LpOutcome::Optimal {
                value: value + &delta,
                primal: primal.clone(),
                dual: dual.clone(),
            });
            for i in 0..dual.len() {
                out.push(LpOutcome::Optimal {
                    value: value.clone(),
                    primal: primal.clone(),
                    dual: bump(dual, i),
                });
            }
            for j in 0..primal.len() {
                out.push(LpOutcome::Optimal {
                    value: value.clone(),
                    primal: bump(primal, j),
                    dual: dual.clone(),
                });
            }
            out.push(LpOutcome::Infeasible {
                farkas: dual.clone(),
            });
            out.push(LpOutcome::Infeasible {
                farkas: dual.iter().map(|v| -v).collect(),
            });
        }
        LpOutcome::Infeasible { farkas } => {
            for i in 0..farkas.len() {
                out.push(LpOutcome::Infeasible {
                    farkas: bump(farkas, i),
                });
            }
            out.push(LpOutcome::Infeasible {
                farkas: farkas.iter().map(|v| -v).collect(),
            });
            out.push(LpOutcome::Optimal {
                value: Rational::zero(),
                primal: Vec::new(),
                dual: farkas.clone(),
            });
        }
        LpOutcome::Unbounded { point, ray } => {
            for j in 0..ray.len() {
                out.push(LpOutcome::Unbounded {
                    point: point.clone(),
                    ray: bump(ray, j),
                });
                out.push(LpOutcome::Unbounded {
                    point: bump(point, j),
                    ray: ray.clone(),
                });
            }
        }
    }
    out
}
