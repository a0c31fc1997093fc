use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Args, ValueEnum};
use entropic::exec::Exec;
use entropic::expr::{format_expr, parse_expr, EntropyExpr};
use entropic::lab::{
    fitted_constant, records_to_csv, search_max_violation, sweep as run_sweep, SearchConfig,
    SearchConstraint, SweepConfig, SweepSource, Theorem,
};
use entropic::rational::Rational;
use entropic::varset::Universe;

use crate::report::{domain, write, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Source {
    /// Boundary member mixed with AND/OR at seeded weights.
    Interpolation,
    /// A constrained hill-climbing search per grid point.
    Search,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Which stability statement to measure: 1, 2, 3 or 4b.
    #[arg(long, value_name = "ID")]
    theorem: String,
    /// Descending eps grid; entries are decimals or `2^-k`.
    #[arg(
        long,
        value_name = "LIST",
        default_value = "2^-2,2^-3,2^-4,2^-5,2^-6,2^-7,2^-8,2^-9,2^-10,2^-11,2^-12"
    )]
    eps: String,
    /// Where the tables come from.
    #[arg(long, value_enum, default_value_t = Source::Interpolation)]
    source: Source,
    /// Seeded mixing weights per sweep (interpolation source).
    #[arg(long, value_name = "N", default_value_t = 256)]
    samples: usize,
    /// Iterations per restart (search source).
    #[arg(long, value_name = "N", default_value_t = 2000)]
    budget: usize,
    /// Restarts per grid point (search source).
    #[arg(long, value_name = "N", default_value_t = 4)]
    restarts: usize,
    /// Write the CSV here instead of into the report.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Comma-separated variable labels.
    #[arg(long, value_name = "LIST", default_value = "X,Y,A,B")]
    vars: String,
    /// Comma-separated alphabet sizes; defaults to 2 for every variable.
    #[arg(long, value_name = "LIST")]
    shape: Option<String>,
    /// Expression to maximize.
    #[arg(long, value_name = "EXPR")]
    objective: String,
    /// Constraint `EXPR <= NUMBER` or `EXPR >= NUMBER`; repeatable.
    #[arg(long = "constraint", value_name = "CONSTRAINT")]
    constraints: Vec<String>,
    /// Iterations per restart.
    #[arg(long, value_name = "N", default_value_t = 2000)]
    budget: usize,
    /// Independent restarts.
    #[arg(long, value_name = "N", default_value_t = 16)]
    restarts: usize,
    /// Weight of the summed constraint excess.
    #[arg(long, value_name = "X", default_value_t = 100.0)]
    penalty: f64,
    /// Write the JSONL trace here.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Write the best table here instead of into the report.
    #[arg(long, value_name = "PATH")]
    table: Option<PathBuf>,
}

fn parse_eps(item: &str) -> anyhow::Result<f64> {
    let item = item.trim();
    let value = match item.strip_prefix("2^") {
        Some(exp) => {
            let e: i32 = exp
                .parse()
                .with_context(|| format!("bad exponent in `{item}`"))?;
            f64::from(e).exp2()
        }
        None => item.parse().with_context(|| format!("bad eps `{item}`"))?,
    };
    Ok(value)
}

pub fn sweep(args: SweepArgs, seed: u64) -> anyhow::Result<Report> {
    let theorem: Theorem = args.theorem.parse()?;
    let eps_grid = args
        .eps
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(parse_eps)
        .collect::<anyhow::Result<Vec<_>>>()?;
    let source = match args.source {
        Source::Interpolation => SweepSource::Interpolation {
            samples: args.samples,
        },
        Source::Search => SweepSource::Search {
            budget: args.budget,
            restarts: args.restarts,
        },
    };
    let cfg = SweepConfig {
        theorem,
        eps_grid,
        source,
        seed,
    };
    let records = run_sweep(&cfg, Exec::default())?;
    let admitted = records.iter().filter(|r| r.admitted()).count();
    let rate = match theorem {
        Theorem::Third => "eps*log2(1/eps)",
        _ => "sqrt(eps)",
    };
    let mut r = Report::default();
    r.field("theorem", theorem)
        .field("seed", seed)
        .field("source", format!("{:?}", args.source).to_lowercase())
        .field("rate", rate)
        .field("records", records.len())
        .field("admitted", admitted)
        .field(
            "fitted_constant",
            format!("{:e}", fitted_constant(theorem, &records)),
        );
    let csv = records_to_csv(&records);
    match &args.csv {
        Some(path) => {
            write(path, &csv)?;
            r.field("csv", path.display());
        }
        None => {
            r.block("csv", &csv);
        }
    }
    Ok(r)
}

/// `EXPR <= NUMBER` as is; `EXPR >= NUMBER` as `−EXPR <= −NUMBER`.
fn parse_constraint(text: &str, universe: &Universe) -> anyhow::Result<SearchConstraint> {
    let (expr_text, bound_text, flip) = if let Some((e, b)) = text.split_once("<=") {
        (e, b, false)
    } else if let Some((e, b)) = text.split_once(">=") {
        (e, b, true)
    } else {
        bail!("constraint `{text}` needs `<=` or `>=`");
    };
    let expr =
        parse_expr(expr_text.trim(), universe).map_err(|e| anyhow!("constraint `{text}`: {e}"))?;
    let bound: f64 = bound_text
        .trim()
        .parse()
        .with_context(|| format!("constraint `{text}`: bound must be a number"))?;
    Ok(if flip {
        SearchConstraint {
            expr: expr.scale(-Rational::one()),
            bound: -bound,
        }
    } else {
        SearchConstraint { expr, bound }
    })
}

fn parse_shape(text: Option<&str>, n: usize) -> anyhow::Result<Vec<usize>> {
    let Some(text) = text else {
        return Ok(vec![2; n]);
    };
    let shape = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("bad alphabet size `{s}`"))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    if shape.len() != n {
        bail!("--shape lists {} sizes for {n} variables", shape.len());
    }
    if shape.contains(&0) {
        bail!("alphabet sizes must be at least 1");
    }
    Ok(shape)
}

pub fn search(args: SearchArgs, seed: u64) -> anyhow::Result<Report> {
    let universe = Universe::parse_list(&args.vars)?;
    let shape = parse_shape(args.shape.as_deref(), universe.len())?;
    let objective: EntropyExpr =
        parse_expr(&args.objective, &universe).map_err(|e| anyhow!("objective: {e}"))?;
    let constraints = args
        .constraints
        .iter()
        .map(|c| parse_constraint(c, &universe))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut cfg = SearchConfig::new(universe.clone(), shape, objective, seed);
    cfg.constraints = constraints;
    cfg.budget = args.budget;
    cfg.restarts = args.restarts;
    cfg.penalty = args.penalty;
    let result = search_max_violation(&cfg, Exec::default())?;

    let mut r = Report::default();
    r.field("vars", &universe)
        .field("seed", seed)
        .field("objective_expr", format_expr(&cfg.objective))
        .field("objective", format!("{:e}", result.objective))
        .field("max_excess", format!("{:e}", result.max_excess));
    for (i, v) in result.restart_best.iter().enumerate() {
        r.field(&format!("restart_{i}"), format!("{v:e}"));
    }
    // Constraints are rechecked on the exact table that is handed out.
    let mut violated = Vec::new();
    for c in &cfg.constraints {
        let est = result.best.info_quantity(&c.expr).map_err(domain)?;
        let holds = est.value <= c.bound + est.tol;
        r.field(
            "constraint",
            format!(
                "{} <= {:e}; value {:e}; {}",
                format_expr(&c.expr),
                c.bound,
                est.value,
                if holds { "holds" } else { "violated" }
            ),
        );
        if !holds {
            violated.push(format_expr(&c.expr));
        }
    }
    if let Some(path) = &args.trace {
        write(path, &result.trace_jsonl())?;
        r.field("trace", path.display());
    }
    match &args.table {
        Some(path) => {
            write(path, &result.best.to_text())?;
            r.field("table", path.display());
        }
        None => {
            r.block("table", &result.best.to_text());
        }
    }
    if !violated.is_empty() {
        r.fail(format!("constraint violated: {}", violated.join(", ")));
    }
    Ok(r)
}
