use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::Args;
use entropic::exec::Exec;
use entropic::expr::{
    format_expr, format_lincomb, format_statement, parse as parse_text, parse_statement, Parsed,
    Statement,
};
use entropic::lincomb::Relation;
use entropic::profile::PolymatroidCheck;
use entropic::prover::{
    dfz_statement, format_script, matus_script, matus_statement, parse_proof, parse_script,
    prove as run_prove, search_script as run_search, verify, ExtensionStep, ProofContext,
    ProofOutcome, SearchConfig, SearchOutcome,
};
use entropic::varset::Universe;

use crate::report::{domain, read, statement_lines, write, yes_no, Report};

#[derive(Args, Debug)]
pub struct ParseArgs {
    /// Comma-separated variable labels.
    #[arg(long, value_name = "LIST")]
    vars: String,
    /// Expression or statement to parse.
    #[arg(
        value_name = "TEXT",
        required_unless_present = "file",
        conflicts_with = "file"
    )]
    text: Option<String>,
    /// File with one expression or statement per line; `#` starts a comment.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ProveArgs {
    /// Comma-separated base variable labels.
    #[arg(long, value_name = "LIST")]
    vars: String,
    /// Statement to decide, or `matus:<k>` / `dfz:<s>` for a family member.
    #[arg(long, value_name = "STATEMENT")]
    target: String,
    /// Hypothesis over the base variables; repeatable.
    #[arg(long = "hyp", value_name = "STATEMENT")]
    hyps: Vec<String>,
    /// File of hypotheses, one statement per line.
    #[arg(long, value_name = "PATH")]
    hyp_file: Option<PathBuf>,
    /// Extension script file, or `matus:<k>`.
    #[arg(long, value_name = "PATH|matus:<k>")]
    script: Option<String>,
    /// Write the certificate here when the target is proved.
    #[arg(long, value_name = "PATH")]
    cert: Option<PathBuf>,
    /// Write the witness profile here when the target is not provable.
    #[arg(long, value_name = "PATH")]
    witness: Option<PathBuf>,
    /// Check this certificate file instead of solving.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["cert", "witness"])]
    verify: Option<PathBuf>,
    /// Exit 1 unless the target is proved (the default).
    #[arg(long)]
    expect_proved: bool,
    /// Exit 1 unless the target is not provable.
    #[arg(long, conflicts_with = "expect_proved")]
    expect_not_proved: bool,
}

#[derive(Args, Debug)]
pub struct SearchScriptArgs {
    /// Comma-separated base variable labels.
    #[arg(long, value_name = "LIST")]
    vars: String,
    /// Statement to prove, or `matus:<k>` / `dfz:<s>`.
    #[arg(long, value_name = "STATEMENT")]
    target: String,
    /// Hypothesis over the base variables; repeatable.
    #[arg(long = "hyp", value_name = "STATEMENT")]
    hyps: Vec<String>,
    /// File of hypotheses, one statement per line.
    #[arg(long, value_name = "PATH")]
    hyp_file: Option<PathBuf>,
    /// Longest script to try.
    #[arg(long, default_value_t = 2, value_name = "N")]
    max_steps: usize,
    /// Largest number of candidate scripts to evaluate.
    #[arg(long, default_value_t = 100_000, value_name = "N")]
    budget: usize,
    /// Write the found script here.
    #[arg(long, value_name = "PATH")]
    script_out: Option<PathBuf>,
    /// Write the certificate here.
    #[arg(long, value_name = "PATH")]
    cert: Option<PathBuf>,
    /// Exit 1 when no script is found.
    #[arg(long)]
    expect_proved: bool,
}

pub fn parse(args: ParseArgs) -> anyhow::Result<Report> {
    let universe = Universe::parse_list(&args.vars)?;
    let inputs = match (&args.text, &args.file) {
        (Some(t), _) => vec![t.clone()],
        (None, Some(path)) => statement_lines(&read(path)?),
        (None, None) => unreachable!("clap requires one of them"),
    };
    let mut r = Report::default();
    r.field("vars", &universe);
    for (i, text) in inputs.iter().enumerate() {
        let parsed = parse_text(text, &universe).map_err(|e| anyhow!("input {}: {e}", i + 1))?;
        r.field("input", text);
        match parsed {
            Parsed::Statement(s) => {
                let ineq = s.normalize(&universe)?;
                let rel = match ineq.relation {
                    Relation::GeZero => ">=",
                    Relation::EqZero => "=",
                };
                r.field("kind", "statement")
                    .field("canonical", format_statement(&s))
                    .field(
                        "normal",
                        format!("{} {rel} 0", format_lincomb(&ineq.lhs, &universe)),
                    );
            }
            Parsed::Expr(e) => {
                let lc = e.expand(&universe)?;
                r.field("kind", "expression")
                    .field("canonical", format_expr(&e))
                    .field("expansion", format_lincomb(&lc, &universe));
            }
        }
    }
    Ok(r)
}

/// `matus:<k>`, `dfz:<s>` or the statement itself.
fn target_text(target: &str) -> anyhow::Result<String> {
    if let Some(k) = target.strip_prefix("matus:") {
        let k: usize = k.parse().context("matus:<k> needs a positive integer")?;
        if k == 0 {
            bail!("matus:<k> needs k >= 1");
        }
        return Ok(matus_statement(k));
    }
    if let Some(s) = target.strip_prefix("dfz:") {
        let s: u32 = s.parse().context("dfz:<s> needs a positive integer")?;
        if !(1..=40).contains(&s) {
            bail!("dfz:<s> needs 1 <= s <= 40");
        }
        return Ok(dfz_statement(s));
    }
    Ok(target.to_string())
}

fn script_steps(script: &str) -> anyhow::Result<Vec<ExtensionStep>> {
    if let Some(k) = script.strip_prefix("matus:") {
        let k: usize = k.parse().context("matus:<k> needs a positive integer")?;
        if k == 0 {
            bail!("matus:<k> needs k >= 1");
        }
        return Ok(matus_script(k));
    }
    Ok(parse_script(&read(script.as_ref())?)?)
}

fn hypotheses(
    base: &Universe,
    inline: &[String],
    file: Option<&PathBuf>,
) -> anyhow::Result<Vec<Statement>> {
    let mut texts = inline.to_vec();
    if let Some(path) = file {
        texts.extend(statement_lines(&read(path)?));
    }
    texts
        .iter()
        .map(|t| parse_statement(t, base).map_err(|e| anyhow!("hypothesis `{t}`: {e}")))
        .collect()
}

fn steps_field(r: &mut Report, steps: &[ExtensionStep]) {
    r.field("steps", steps.len());
    for s in steps {
        r.field("step", s);
    }
}

pub fn prove(args: ProveArgs) -> anyhow::Result<Report> {
    let base = Universe::parse_list(&args.vars)?;
    let hyps = hypotheses(&base, &args.hyps, args.hyp_file.as_ref())?;
    let steps = match &args.script {
        Some(s) => script_steps(s)?,
        None => Vec::new(),
    };
    let ctx = ProofContext::build(base.clone(), &hyps, &steps)?;
    let target = ctx.parse_statement(&target_text(&args.target)?)?;
    let mut r = Report::default();
    r.field("vars", &base).field("hypotheses", hyps.len());
    for h in &hyps {
        r.field("hypothesis", h);
    }
    steps_field(&mut r, &steps);
    r.field("target", &target);

    if let Some(path) = &args.verify {
        let proof = parse_proof(&read(path)?, &ctx)?;
        let ok = verify(&proof, &ctx, &target);
        r.field("certificate", path.display())
            .field("verified", yes_no(ok));
        if !ok {
            r.fail("certificate does not verify");
        }
        return Ok(r);
    }

    match run_prove(&ctx, &target).map_err(domain)? {
        ProofOutcome::Proved(proof) => {
            let ok = verify(&proof, &ctx, &target);
            r.field("result", "proved")
                .field("certificates", proof.certificates.len())
                .field("multipliers", proof.num_entries())
                .field("verified", yes_no(ok));
            if let Some(path) = &args.cert {
                write(path, &proof.to_text(&ctx))?;
                r.field("certificate", path.display());
            }
            if !ok {
                r.fail("produced certificate does not verify");
            } else if args.expect_not_proved {
                r.fail("target was proved");
            }
        }
        ProofOutcome::NotProvable(witness) => {
            let ineq = target.normalize(ctx.universe())?;
            let value = witness.evaluate(&ineq.lhs)?;
            r.field("result", "not-provable")
                .field(
                    "witness_polymatroid",
                    yes_no(witness.is_polymatroid() == PolymatroidCheck::Ok),
                )
                .field("target_value", &value);
            if let Some(path) = &args.witness {
                write(path, &witness.to_text())?;
                r.field("witness_file", path.display());
            }
            r.block("witness", &witness.to_text());
            if !args.expect_not_proved {
                r.fail("target is not provable in this context");
            }
        }
    }
    Ok(r)
}

pub fn search_script(args: SearchScriptArgs) -> anyhow::Result<Report> {
    let base = Universe::parse_list(&args.vars)?;
    let hyps = hypotheses(&base, &args.hyps, args.hyp_file.as_ref())?;
    let text = target_text(&args.target)?;
    // Scripts only ever add variables, so the target lives on the base.
    let target = parse_statement(&text, &base).map_err(|e| anyhow!("target: {e}"))?;
    let cfg = SearchConfig {
        max_steps: args.max_steps,
        budget: args.budget,
        exec: Exec::default(),
    };
    let mut r = Report::default();
    r.field("vars", &base)
        .field("hypotheses", hyps.len())
        .field("target", &target)
        .field("max_steps", cfg.max_steps)
        .field("budget", cfg.budget);
    match run_search(&base, &hyps, &target, &cfg).map_err(domain)? {
        SearchOutcome::Proved {
            steps,
            proof,
            evaluated,
        } => {
            let ctx = ProofContext::build(base.clone(), &hyps, &steps)?;
            let ok = verify(&proof, &ctx, &target);
            r.field("result", "proved").field("evaluated", evaluated);
            steps_field(&mut r, &steps);
            r.field("verified", yes_no(ok));
            if let Some(path) = &args.script_out {
                write(path, &format_script(&steps))?;
                r.field("script", path.display());
            }
            if let Some(path) = &args.cert {
                write(path, &proof.to_text(&ctx))?;
                r.field("certificate", path.display());
            }
            if !ok {
                r.fail("produced certificate does not verify");
            }
        }
        SearchOutcome::Exhausted { evaluated } => {
            r.field("result", "exhausted").field("evaluated", evaluated);
            if args.expect_proved {
                r.fail("no script within the limits proves the target");
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_shorthands_expand() {
        assert_eq!(target_text("matus:2").unwrap(), matus_statement(2));
        assert_eq!(target_text("dfz:3").unwrap(), dfz_statement(3));
        assert_eq!(target_text("H(X) >= 0").unwrap(), "H(X) >= 0");
        assert!(target_text("matus:0").is_err());
        assert!(target_text("dfz:x").is_err());
        assert_eq!(script_steps("matus:3").unwrap(), matus_script(3));
    }
}
