use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail};
use clap::Args;
use entropic::dist::{DistError, JointDistribution, DEFAULT_TABLE_CAP};
use entropic::profile::{PolymatroidCheck, Profile};

use crate::report::{domain, read, Report};

#[derive(Args, Debug)]
pub struct ProfileArgs {
    /// Distribution file.
    #[arg(long, value_name = "PATH")]
    dist: PathBuf,
}

#[derive(Args, Debug)]
pub struct CheckProfileArgs {
    /// Profile file (`vars:` header, then `set : value` lines).
    #[arg(long, value_name = "PATH")]
    profile: PathBuf,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false, args = ["profile", "dist"])]
pub struct GapArgs {
    /// Exact profile file.
    #[arg(long, value_name = "PATH")]
    profile: Option<PathBuf>,
    /// Distribution file.
    #[arg(long, value_name = "PATH")]
    dist: Option<PathBuf>,
    /// Four labels in the order X,Y,A,B; defaults to the first four.
    #[arg(long, value_name = "LIST")]
    order: Option<String>,
}

#[derive(Args, Debug)]
pub struct ExtendCopyArgs {
    /// Distribution file.
    #[arg(long, value_name = "PATH")]
    dist: PathBuf,
    /// Variable to copy.
    #[arg(long, value_name = "LABEL")]
    copy: String,
    /// Comma-separated variables the copy is taken over; may be empty.
    #[arg(long, value_name = "LIST", default_value = "")]
    over: String,
    /// Label of the new variable.
    #[arg(long = "as", value_name = "LABEL")]
    fresh: String,
}

#[derive(Args, Debug)]
pub struct SymmetrizeArgs {
    /// Distribution file.
    #[arg(long, value_name = "PATH")]
    dist: PathBuf,
    /// The two variables to symmetrize, as `A,B`.
    #[arg(long, value_name = "A,B")]
    pair: String,
}

#[derive(Args, Debug)]
pub struct TensorArgs {
    /// Distribution file.
    #[arg(long, value_name = "PATH")]
    dist: PathBuf,
    /// Number of independent copies.
    #[arg(long, value_name = "K")]
    power: u32,
    /// Largest number of outcomes allowed in the result.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_TABLE_CAP)]
    cap: usize,
}

fn load(path: &Path) -> anyhow::Result<JointDistribution> {
    JointDistribution::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn labels(list: &str) -> Vec<String> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// Operation errors that come from the table's size are domain failures;
/// everything else is bad input.
fn op_error(e: DistError) -> anyhow::Error {
    match e {
        DistError::TooLarge { .. } => domain(e),
        other => other.into(),
    }
}

pub fn profile(args: ProfileArgs) -> anyhow::Result<Report> {
    let d = load(&args.dist)?;
    let p = d.entropy_profile();
    let mut text = p.to_text();
    // The tolerance rides along as a comment so the output still parses.
    let header_end = text.find('\n').map_or(text.len(), |i| i + 1);
    text.insert_str(header_end, &format!("# tol: {:e}\n", p.tol()));
    let mut r = Report::default();
    r.raw(&text);
    Ok(r)
}

pub fn check_profile(args: CheckProfileArgs) -> anyhow::Result<Report> {
    let p = Profile::parse(&read(&args.profile)?)
        .map_err(|e| anyhow!("{}: {e}", args.profile.display()))?;
    let mut r = Report::default();
    r.field("vars", p.universe());
    match p.is_polymatroid() {
        PolymatroidCheck::Ok => {
            r.field("polymatroid", "yes");
        }
        PolymatroidCheck::Violated(ineq) => {
            let value = p.evaluate(&ineq.lhs)?;
            r.field("polymatroid", "no")
                .field("violated", &ineq.label)
                .field("value", value);
            r.fail(format!("violates {}", ineq.label));
        }
    }
    Ok(r)
}

fn order_for(names: &[String], order: Option<&str>) -> anyhow::Result<[String; 4]> {
    let chosen = match order {
        Some(list) => labels(list),
        None => names.iter().take(4).cloned().collect(),
    };
    chosen
        .try_into()
        .map_err(|v: Vec<String>| anyhow!("the Ingleton gap needs 4 labels, got {}", v.len()))
}

pub fn gap(args: GapArgs) -> anyhow::Result<Report> {
    let mut r = Report::default();
    if let Some(path) = &args.profile {
        let p = Profile::parse(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))?;
        let order = order_for(p.universe().names(), args.order.as_deref())?;
        let g = p.ingleton_gap_named(order.each_ref().map(String::as_str))?;
        let sign = if g.is_negative() {
            "negative"
        } else if g.is_zero() {
            "zero"
        } else {
            "positive"
        };
        r.field("order", order.join(","))
            .field("gap", &g)
            .field("approx", format!("{:e}", g.to_f64()))
            .field("sign", sign);
    } else if let Some(path) = &args.dist {
        let d = load(path)?;
        let order = order_for(d.universe().names(), args.order.as_deref())?;
        let mut perm = [0; 4];
        for (slot, label) in perm.iter_mut().zip(&order) {
            *slot = d.index_of(label)?;
        }
        let est = d.entropy_profile().ingleton_gap(perm)?;
        let sign = if est.is_negative() {
            "negative"
        } else if est.value > est.tol {
            "positive"
        } else {
            "zero-within-tol"
        };
        r.field("order", order.join(","))
            .field("gap", format!("{:e}", est.value))
            .field("tol", format!("{:e}", est.tol))
            .field("sign", sign);
    } else {
        bail!("one of --profile or --dist is required");
    }
    Ok(r)
}

pub fn extend_copy(args: ExtendCopyArgs) -> anyhow::Result<Report> {
    let d = load(&args.dist)?;
    let over = labels(&args.over);
    let c = d
        .copy_extend(&args.copy, &over, &args.fresh)
        .map_err(op_error)?;
    let mut r = Report::default();
    r.raw(&c.to_text());
    Ok(r)
}

pub fn symmetrize(args: SymmetrizeArgs) -> anyhow::Result<Report> {
    let d = load(&args.dist)?;
    let [a, b]: [String; 2] = labels(&args.pair)
        .try_into()
        .map_err(|_| anyhow!("--pair needs exactly two labels, as A,B"))?;
    let s = d.symmetrize(&a, &b).map_err(op_error)?;
    let mut r = Report::default();
    r.raw(&s.to_text());
    Ok(r)
}

pub fn tensor(args: TensorArgs) -> anyhow::Result<Report> {
    let d = load(&args.dist)?;
    let t = d.tensor_power(args.power, args.cap).map_err(op_error)?;
    let mut r = Report::default();
    r.raw(&t.to_text());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_defaults_to_first_four() {
        let names: Vec<String> = ["X", "Y", "A", "B", "C"].map(String::from).to_vec();
        assert_eq!(
            order_for(&names, None).unwrap(),
            ["X", "Y", "A", "B"].map(String::from)
        );
        assert_eq!(order_for(&names, Some("A,B,X,Y")).unwrap()[0], "A");
        assert!(order_for(&names[..3], None).is_err());
    }

    #[test]
    fn only_size_errors_are_domain_failures() {
        let big = op_error(DistError::TooLarge { size: 10, cap: 4 });
        assert!(big.downcast_ref::<crate::report::Domain>().is_some());
        let other = op_error(DistError::ZeroPower);
        assert!(other.downcast_ref::<crate::report::Domain>().is_none());
    }
}
