//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Tolerances and time limits are pinned below.

mod common;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::time::{Duration, Instant};

use common::lp_oracle::{certificate_valid, random_lp, tamperings, vertex_minimum};
use common::tables::{brute_entropy, brute_marginal, random_table};
use entropic::exec::Exec;
use entropic::expr::Statement;
use entropic::lab::families::common_part_family;
use entropic::lab::{
    bound_from_family, fitted_constant, ingleton_excess, measure, records_to_csv,
    search_max_violation, sweep, FamilyTheorem, SearchConfig as LabSearch, SweepConfig, Theorem,
};
use entropic::lp::{check_certificate, solve, LinearProgram, LpOutcome, RowRelation};
use entropic::profile::PolymatroidCheck;
use entropic::prover::{
    dfz_statement, matus_script, matus_statement, prove, search_script, verify, ExtensionStep,
    Proof, ProofContext, ProofOutcome, SearchConfig, SearchOutcome,
};
use entropic::rational::Rational;
use entropic::varset::{Universe, VarSet};

const SHANNON_LIMIT: Duration = Duration::from_secs(1);
const INGLETON_LIMIT: Duration = Duration::from_secs(5);
const NON_SHANNON_LIMIT: Duration = Duration::from_secs(60);
const LP_FACTS_LIMIT: Duration = Duration::from_secs(30);
const EPS_ZERO_LIMIT: Duration = Duration::from_secs(10);
const ENVELOPE_LIMIT: Duration = Duration::from_secs(300);
const FAMILY_BOUND_LIMIT: Duration = Duration::from_secs(1);

/// Bits; symmetrize identities.
const SYMMETRIZE_TOL: f64 = 1e-9;
/// Normalized Ingleton slack on the eps = 0 family.
const EPS_ZERO_SLACK: f64 = 1e-8;
/// Largest allowed max/min ratio of fitted constants across seeds.
const ENVELOPE_RATIO: f64 = 2.0;
const ENVELOPE_SEEDS: u64 = 5;
/// coefficient ≤ this·√eps.
const FAMILY_BOUND_FACTOR: i64 = 3;
const RANDOM_LPS: u64 = 200;
const RANDOM_TABLES: u64 = 100;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(limit: Duration, elapsed: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:?}")
    })
}

fn universe(names: &[&str]) -> Universe {
    Universe::new(names.iter().copied()).unwrap()
}

/// Proves `target` in `ctx` and re-verifies the certificate.
fn prove_verified(ctx: &ProofContext, target: &Statement) -> Result<Proof, String> {
    match prove(ctx, target).map_err(|e| e.to_string())? {
        ProofOutcome::Proved(proof) => {
            ensure(verify(&proof, ctx, target), || {
                format!("certificate for `{target}` does not verify")
            })?;
            Ok(proof)
        }
        ProofOutcome::NotProvable(_) => Err(format!("`{target}` not proved")),
    }
}

fn shannon_corpus() -> Outcome {
    let corpus: [(&[&str], &str); 4] = [
        (&["X", "Y", "Z"], "H(Z) <= H(Z|X) + H(Z|Y) + I(X:Y)"),
        (
            &["X", "Y", "Z", "W"],
            "H(Z|W) <= H(Z|X,W) + H(Z|Y,W) + I(X:Y|W)",
        ),
        (&["X", "Y", "W"], "I(X:Y) <= H(W) + I(X:Y|W)"),
        (
            &["X", "Y", "W", "A"],
            "H(W|A) + I(X:Y|W,A) <= I(X:Y|A) + H(W|X,A) + H(W|Y,A)",
        ),
    ];
    let mut slowest = Duration::ZERO;
    for (names, text) in corpus {
        let start = Instant::now();
        let ctx = ProofContext::new(universe(names));
        let target = ctx.parse_statement(text).map_err(|e| e.to_string())?;
        prove_verified(&ctx, &target)?;
        let elapsed = start.elapsed();
        within(SHANNON_LIMIT, elapsed, text)?;
        slowest = slowest.max(elapsed);
    }
    Ok(format!("4/4 proved with no steps, slowest {slowest:.2?}"))
}

fn ingleton() -> Outcome {
    let start = Instant::now();
    let ctx = ProofContext::new(universe(&["X", "Y", "A", "B"]));
    let target = ctx
        .parse_statement("I(X:Y) <= I(X:Y|A) + I(X:Y|B) + I(A:B)")
        .map_err(|e| e.to_string())?;
    let ProofOutcome::NotProvable(witness) = prove(&ctx, &target).map_err(|e| e.to_string())?
    else {
        return Err("Ingleton was proved".into());
    };
    within(INGLETON_LIMIT, start.elapsed(), "Ingleton")?;
    ensure(witness.is_polymatroid() == PolymatroidCheck::Ok, || {
        "witness is not a polymatroid".into()
    })?;
    let gap = witness
        .ingleton_gap([0, 1, 2, 3])
        .map_err(|e| e.to_string())?;
    ensure(gap.is_negative(), || {
        format!("witness gap {gap} is not negative")
    })?;
    Ok(format!(
        "witness gap {gap} (exact), {:.2?}",
        start.elapsed()
    ))
}

fn non_shannon() -> Outcome {
    let start = Instant::now();
    let five = universe(&["X", "Y", "A", "B", "W"]);
    let five_var = "I(X:Y) <= I(X:Y|A) + I(X:Y|B) + I(A:B) + I(X:Y|W) + I(X:W|Y) + I(Y:W|X)";
    let ctx = ProofContext::new(five.clone());
    let target = ctx.parse_statement(five_var).map_err(|e| e.to_string())?;
    ensure(
        matches!(prove(&ctx, &target), Ok(ProofOutcome::NotProvable(_))),
        || "five-variable inequality proved without steps".into(),
    )?;
    let searched = |base: &Universe, target: &Statement| -> Result<Vec<ExtensionStep>, String> {
        match search_script(base, &[], target, &SearchConfig::default())
            .map_err(|e| e.to_string())?
        {
            SearchOutcome::Proved { steps, proof, .. } => {
                let ctx =
                    ProofContext::build(base.clone(), &[], &steps).map_err(|e| e.to_string())?;
                ensure(steps.len() <= 2, || format!("{} steps", steps.len()))?;
                ensure(verify(&proof, &ctx, target), || {
                    format!("searched certificate for `{target}` fails")
                })?;
                Ok(steps)
            }
            SearchOutcome::Exhausted { evaluated } => {
                Err(format!("`{target}` not found after {evaluated} scripts"))
            }
        }
    };
    let five_steps = searched(&five, &target)?;

    let quad = universe(&["X", "Y", "A", "B"]);
    for k in 1..=4 {
        let ctx =
            ProofContext::build(quad.clone(), &[], &matus_script(k)).map_err(|e| e.to_string())?;
        let target = ctx
            .parse_statement(&matus_statement(k))
            .map_err(|e| e.to_string())?;
        prove_verified(&ctx, &target)?;
    }
    let dfz = ProofContext::new(quad.clone())
        .parse_statement(&dfz_statement(2))
        .map_err(|e| e.to_string())?;
    let dfz_steps = searched(&quad, &dfz)?;
    within(NON_SHANNON_LIMIT, start.elapsed(), "non-Shannon suite")?;
    Ok(format!(
        "five-variable by a {}-step script, family k=1..4, s=2 by a {}-step script, {:.2?}",
        five_steps.len(),
        dfz_steps.len(),
        start.elapsed()
    ))
}

fn lp_facts() -> Outcome {
    let start = Instant::now();
    let quad = universe(&["X", "Y", "A", "B"]);
    let hyps: Vec<Statement> = ["I(A:X|Y) <= 1/16*I(X:Y)", "I(A:Y|X) <= 1/16*I(X:Y)"]
        .iter()
        .map(|t| entropic::expr::parse_statement(t, &quad).unwrap())
        .collect();
    for k in 1..=3 {
        let ctx = ProofContext::build(quad.clone(), &hyps, &matus_script(k))
            .map_err(|e| e.to_string())?;
        for text in [
            "H(W|X,Y) = 0".to_string(),
            format!("H(W|X) <= {k}/16*I(X:Y)"),
        ] {
            let target = ctx.parse_statement(&text).map_err(|e| e.to_string())?;
            prove_verified(&ctx, &target).map_err(|e| format!("k={k}: {e}"))?;
        }
    }
    within(LP_FACTS_LIMIT, start.elapsed(), "LP facts")?;
    Ok(format!(
        "6/6 facts proved for k=1..3, {:.2?}",
        start.elapsed()
    ))
}

/// Exact table identities of the copy and the 1-bit identities of
/// symmetrization, on random rational tables.
fn distribution_identities() -> Outcome {
    let names = ["X", "Y", "A", "B"];
    let mut worst = 0f64;
    for seed in 0..RANDOM_TABLES {
        let d = random_table(seed, &names, 3);
        // Copy B over a subset of X, Y, A chosen by the seed.
        let over_idx: Vec<usize> = (0..3).filter(|i| seed >> i & 1 == 1).collect();
        let over: Vec<&str> = over_idx.iter().map(|&i| names[i]).collect();
        let c = d.copy_extend("B", &over, "B1").map_err(|e| e.to_string())?;
        let with = |extra: usize| [over_idx.clone(), vec![extra]].concat();
        ensure(
            brute_marginal(&c, &with(3)) == brute_marginal(&c, &with(4)),
            || format!("seed {seed}: copy marginal differs"),
        )?;
        let originals = brute_marginal(&c, &[0, 1, 2, 3]);
        ensure(originals == brute_marginal(&d, &[0, 1, 2, 3]), || {
            format!("seed {seed}: originals changed")
        })?;
        let p_over = brute_marginal(&c, &over_idx);
        let p_fresh = brute_marginal(&c, &with(4));
        let get = |m: &BTreeMap<Vec<usize>, Rational>, key: Vec<usize>| {
            m.get(&key).cloned().unwrap_or_default()
        };
        for (t, m) in c.support() {
            let key = |idx: &[usize]| idx.iter().map(|&i| t[i]).collect::<Vec<_>>();
            let lhs = m * &get(&p_over, key(&over_idx));
            let rhs = &get(&originals, key(&[0, 1, 2, 3])) * &get(&p_fresh, key(&with(4)));
            ensure(lhs == rhs, || {
                format!("seed {seed}: copy is not conditionally independent")
            })?;
        }

        let s = d.symmetrize("A", "B").map_err(|e| e.to_string())?;
        for j in VarSet::full(2).subsets() {
            let idx = |set: VarSet| set.indices().collect::<Vec<_>>();
            let avg =
                (brute_entropy(&d, &idx(j.with(2))) + brute_entropy(&d, &idx(j.with(3)))) / 2.0;
            for single in [2, 3] {
                worst = worst.max((brute_entropy(&s, &idx(j.with(single))) - avg - 1.0).abs());
            }
            let both = j.with(2).with(3);
            worst = worst
                .max((brute_entropy(&s, &idx(both)) - brute_entropy(&d, &idx(both)) - 1.0).abs());
        }
    }
    ensure(worst <= SYMMETRIZE_TOL, || {
        format!("symmetrize off by {worst:e} bits")
    })?;
    Ok(format!(
        "{RANDOM_TABLES} tables exact for copies, symmetrize within {worst:.1e} bits"
    ))
}

fn eps_zero() -> Outcome {
    let start = Instant::now();
    let family = common_part_family();
    let mut worst = f64::NEG_INFINITY;
    for (params, d) in &family {
        let profile = d.entropy_profile();
        for h in Theorem::First.hypotheses() {
            let v = profile.evaluate_expr(&h).map_err(|e| e.to_string())?;
            ensure(v.value.abs() <= v.tol, || {
                format!("{params:?}: hypothesis {v:?}")
            })?;
        }
        let m = measure(Theorem::First, d)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("{params:?}: I(X:Y) too small"))?;
        worst = worst.max(m.slack_norm);
    }
    ensure(family.len() == 20, || format!("{} members", family.len()))?;
    ensure(worst <= EPS_ZERO_SLACK, || format!("slack {worst:e}"))?;
    within(EPS_ZERO_LIMIT, start.elapsed(), "eps = 0 family")?;
    Ok(format!(
        "20 members, largest slack {worst:.1e}, {:.2?}",
        start.elapsed()
    ))
}

fn envelopes() -> Outcome {
    let start = Instant::now();
    let mut summary = Vec::new();
    for theorem in [Theorem::First, Theorem::Second, Theorem::Third] {
        let constants = (0..ENVELOPE_SEEDS)
            .map(|seed| {
                sweep(&SweepConfig::standard(theorem, seed), Exec::default())
                    .map(|records| fitted_constant(theorem, &records))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<Vec<f64>, String>>()?;
        let lo = constants.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = constants.iter().cloned().fold(0.0, f64::max);
        ensure(lo > 0.0, || {
            format!("theorem {theorem}: fitted constant is 0 for some seed")
        })?;
        ensure(hi / lo < ENVELOPE_RATIO, || {
            format!("theorem {theorem}: constants {constants:?}")
        })?;
        summary.push(format!("{theorem}: {:.3}..{:.3}", lo, hi));
    }
    within(ENVELOPE_LIMIT, start.elapsed(), "envelopes")?;
    Ok(format!(
        "{} across {ENVELOPE_SEEDS} seeds, {:.2?}",
        summary.join(", "),
        start.elapsed()
    ))
}

fn family_bound() -> Outcome {
    let start = Instant::now();
    for theorem in [FamilyTheorem::First, FamilyTheorem::Second] {
        let mut previous: Option<Rational> = None;
        for e in 2..=20 {
            let eps = Rational::new(1, 1 << e);
            let c = bound_from_family(theorem, &eps)
                .map_err(|e| e.to_string())?
                .coefficient;
            // c / √eps ≤ 3, squared to stay exact.
            let limit = Rational::from(FAMILY_BOUND_FACTOR * FAMILY_BOUND_FACTOR);
            ensure(&c * &c <= &limit * &eps, || {
                format!("{theorem:?} at 2^-{e}: {c}")
            })?;
            if let Some(p) = &previous {
                ensure(c <= *p, || {
                    format!("{theorem:?}: coefficient grows at 2^-{e}")
                })?;
            }
            previous = Some(c);
        }
    }
    within(FAMILY_BOUND_LIMIT, start.elapsed(), "family bound")?;
    Ok(format!("grid 2^-2..2^-20 exact, {:.2?}", start.elapsed()))
}

fn lp_engine() -> Outcome {
    let mut optimal = 0;
    let mut forged = 0;
    for seed in 0..RANDOM_LPS {
        let lp = random_lp(seed);
        let out = solve(&lp).map_err(|e| e.to_string())?;
        ensure(certificate_valid(&lp, &out), || {
            format!("seed {seed}: invalid certificate")
        })?;
        let truth = vertex_minimum(&lp);
        match (&out, &truth) {
            (LpOutcome::Optimal { value, .. }, Some(best)) => {
                ensure(value.to_big() == *best, || {
                    format!("seed {seed}: value {value}")
                })?;
                optimal += 1;
            }
            (LpOutcome::Infeasible { .. }, None) => {}
            _ => {
                return Err(format!(
                    "seed {seed}: {} but oracle says {truth:?}",
                    out.kind()
                ))
            }
        }
        for fake in tamperings(&out) {
            let claim_true = match (&fake, &truth) {
                (LpOutcome::Optimal { value, .. }, Some(best)) => value.to_big() == *best,
                (LpOutcome::Infeasible { .. }, None) => true,
                _ => false,
            };
            let accepted = check_certificate(&lp, &fake);
            ensure(
                !accepted || (claim_true && certificate_valid(&lp, &fake)),
                || format!("seed {seed}: accepted forged {fake:?}"),
            )?;
            forged += 1;
        }
    }

    let q = Rational::new;
    let r = Rational::from;
    let beale = LinearProgram::from_dense(
        vec![q(-3, 4), r(20), q(-1, 2), r(6)],
        vec![
            (vec![q(-1, 4), r(8), r(1), r(-9)], RowRelation::Ge, r(0)),
            (vec![q(-1, 2), r(12), q(1, 2), r(-3)], RowRelation::Ge, r(0)),
            (vec![r(0), r(0), r(-1), r(0)], RowRelation::Ge, r(-1)),
        ],
        vec![Some(r(0)); 4],
    )
    .map_err(|e| e.to_string())?;
    let out = solve(&beale).map_err(|e| e.to_string())?;
    ensure(
        matches!(&out, LpOutcome::Optimal { value, .. } if *value == q(-5, 4))
            && check_certificate(&beale, &out),
        || format!("cycling instance gave {out:?}"),
    )?;

    // Prover certificates: every single-multiplier change must fail.
    let quad = universe(&["X", "Y", "A", "B"]);
    let ctx = ProofContext::build(quad, &[], &matus_script(2)).map_err(|e| e.to_string())?;
    let target = ctx
        .parse_statement(&matus_statement(2))
        .map_err(|e| e.to_string())?;
    let proof = prove_verified(&ctx, &target)?;
    let mut proof_forgeries = 0;
    for c in 0..proof.certificates.len() {
        for i in 0..proof.certificates[c].entries.len() {
            let mut bumped = proof.clone();
            bumped.certificates[c].entries[i].1 += &Rational::new(1, 3);
            let mut dropped = proof.clone();
            dropped.certificates[c].entries.remove(i);
            for fake in [bumped, dropped] {
                ensure(!verify(&fake, &ctx, &target), || {
                    "accepted a tampered proof".into()
                })?;
                proof_forgeries += 1;
            }
        }
    }
    Ok(format!(
        "{RANDOM_LPS} LPs ({optimal} optimal, strong duality exact), cycling instance ok, 0 of {} forgeries accepted",
        forged + proof_forgeries
    ))
}

/// Everything the suite reports that could depend on scheduling, rendered
/// to text.
fn outputs(exec: Exec) -> Result<String, String> {
    let mut out = String::new();
    for theorem in Theorem::ALL {
        for seed in 0..2 {
            let records =
                sweep(&SweepConfig::standard(theorem, seed), exec).map_err(|e| e.to_string())?;
            let _ = writeln!(
                out,
                "# sweep {theorem} seed {seed}\n{}",
                records_to_csv(&records)
            );
        }
    }
    let mut cfg = LabSearch::new(
        universe(&["X", "Y", "A", "B"]),
        vec![2; 4],
        ingleton_excess("A", "B"),
        7,
    );
    cfg.budget = 300;
    cfg.restarts = 4;
    let result = search_max_violation(&cfg, exec).map_err(|e| e.to_string())?;
    let _ = writeln!(
        out,
        "# search\n{}{}",
        result.trace_jsonl(),
        result.best.to_text()
    );
    let quad = universe(&["X", "Y", "A", "B"]);
    let target =
        entropic::expr::parse_statement(&dfz_statement(2), &quad).map_err(|e| e.to_string())?;
    let cfg = SearchConfig {
        exec,
        ..SearchConfig::default()
    };
    if let SearchOutcome::Proved { steps, proof, .. } =
        search_script(&quad, &[], &target, &cfg).map_err(|e| e.to_string())?
    {
        let ctx = ProofContext::build(quad, &[], &steps).map_err(|e| e.to_string())?;
        let _ = writeln!(out, "# script proof\n{}", proof.to_text(&ctx));
    }
    Ok(out)
}

fn determinism() -> Outcome {
    let first = outputs(Exec::Parallel)?;
    let second = outputs(Exec::Sequential)?;
    let third = outputs(Exec::Parallel)?;
    ensure(first == second && second == third, || {
        "outputs differ between runs".into()
    })?;
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-outputs.txt");
    std::fs::write(&path, &first).map_err(|e| e.to_string())?;
    let mut h = DefaultHasher::new();
    first.hash(&mut h);
    Ok(format!(
        "3 runs byte-identical ({} bytes, digest {:016x})",
        first.len(),
        h.finish()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Shannon regression corpus", shannon_corpus),
        ("Ingleton non-provability", ingleton),
        ("non-Shannon proofs", non_shannon),
        ("LP facts under the duplication script", lp_facts),
        ("distribution identities", distribution_identities),
        ("eps = 0 conditional case", eps_zero),
        ("stability envelopes", envelopes),
        ("family bound", family_bound),
        ("LP engine", lp_engine),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
