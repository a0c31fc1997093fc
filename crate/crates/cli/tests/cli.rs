use std::path::Path;
use std::process::{Command, Output};

use entropic::rational::Rational;
use tempfile::TempDir;

const SUBCOMMANDS: [&str; 11] = [
    "parse",
    "prove",
    "search-script",
    "profile",
    "check-profile",
    "gap",
    "extend-copy",
    "symmetrize",
    "tensor",
    "sweep",
    "search",
];

const AND_OR: &str = "vars: X Y A B
alphabets: 2 2 2 2
0 0 0 0 : 1/4
0 1 0 1 : 1/4
0 1 1 0 : 1/4
1 1 1 1 : 1/4
";

const INGLETON: &str = "I(X:Y) <= I(X:Y|A)+I(X:Y|B)+I(A:B)";

fn entropic(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entropic"))
        .args(args)
        .current_dir(dir)
        .env_clear()
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn workdir() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("andor.dist"), AND_OR).unwrap();
    dir
}

fn snapshot(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/snapshots")
        .join(format!("{name}.txt"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn help_text_matches_snapshots() {
    let dir = workdir();
    let top = entropic(dir.path(), &["--help"]);
    assert_eq!(code(&top), 0);
    assert_eq!(stdout(&top), snapshot("entropic"));
    for sub in SUBCOMMANDS {
        let o = entropic(dir.path(), &[sub, "--help"]);
        assert_eq!(code(&o), 0, "{sub}");
        assert_eq!(stdout(&o), snapshot(sub), "help for {sub} changed");
    }
}

#[test]
fn ingleton_is_not_provable_and_leaves_a_witness() {
    let dir = workdir();
    let o = entropic(
        dir.path(),
        &[
            "prove",
            "--vars",
            "X,Y,A,B",
            "--target",
            INGLETON,
            "--witness",
            "w.profile",
        ],
    );
    assert_eq!(code(&o), 1);
    let report = stdout(&o);
    assert!(report.contains("result: not-provable"));
    assert!(report.contains("witness_polymatroid: yes"));
    assert!(dir.path().join("w.profile").exists());
    let check = entropic(dir.path(), &["check-profile", "--profile", "w.profile"]);
    assert_eq!(code(&check), 0);
    let gap = entropic(dir.path(), &["gap", "--profile", "w.profile"]);
    assert!(stdout(&gap).contains("sign: negative"));
    let expected = entropic(
        dir.path(),
        &[
            "prove",
            "--vars",
            "X,Y,A,B",
            "--target",
            INGLETON,
            "--expect-not-proved",
        ],
    );
    assert_eq!(code(&expected), 0);
}

#[test]
fn matus_member_is_proved_and_its_certificate_checks() {
    let dir = workdir();
    let base = [
        "prove", "--vars", "X,Y,A,B", "--script", "matus:1", "--target", "matus:1",
    ];
    let o = entropic(dir.path(), &[&base[..], &["--cert", "out.cert"]].concat());
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verified: yes"));
    let v = entropic(dir.path(), &[&base[..], &["--verify", "out.cert"]].concat());
    assert_eq!(code(&v), 0);

    // Every single-multiplier tamper must be rejected.
    let cert = std::fs::read_to_string(dir.path().join("out.cert")).unwrap();
    let lines: Vec<&str> = cert.lines().collect();
    let mut tampered = 0;
    for (i, line) in lines.iter().enumerate() {
        let Some((label, m)) = line.rsplit_once(" * ") else {
            continue;
        };
        let bumped: Rational = m.parse::<Rational>().unwrap() + Rational::one();
        let line_text = format!("{label} * {bumped}");
        let mut copy = lines.clone();
        copy[i] = &line_text;
        std::fs::write(dir.path().join("bad.cert"), copy.join("\n")).unwrap();
        let o = entropic(dir.path(), &[&base[..], &["--verify", "bad.cert"]].concat());
        assert_eq!(code(&o), 1, "accepted tampered line {line}");
        tampered += 1;
    }
    assert!(tampered > 0);
}

#[test]
fn and_or_profile_has_fifteen_lines() {
    let dir = workdir();
    let o = entropic(dir.path(), &["profile", "--dist", "andor.dist"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let values: Vec<&str> = out
        .lines()
        .filter(|l| !l.starts_with("vars:") && !l.starts_with('#'))
        .collect();
    assert_eq!(values.len(), 15);
    assert!(out.contains("X,Y : 1.500000000000"));
}

#[test]
fn distribution_operations_round_trip_through_files() {
    let dir = workdir();
    let o = entropic(
        dir.path(),
        &[
            "extend-copy",
            "--dist",
            "andor.dist",
            "--copy",
            "A",
            "--over",
            "X,Y",
            "--as",
            "A1",
            "--out",
            "c.dist",
        ],
    );
    assert_eq!(code(&o), 0);
    assert_eq!(
        std::fs::read_to_string(dir.path().join("c.dist")).unwrap(),
        stdout(&o)
    );
    let p = entropic(dir.path(), &["profile", "--dist", "c.dist"]);
    assert_eq!(stdout(&p).lines().count(), 2 + 31);
    let s = entropic(
        dir.path(),
        &["symmetrize", "--dist", "andor.dist", "--pair", "A,B"],
    );
    assert!(stdout(&s).contains("alphabets: 2 2 4 4"));
    let t = entropic(
        dir.path(),
        &["tensor", "--dist", "andor.dist", "--power", "2"],
    );
    assert!(stdout(&t).contains("alphabets: 4 4 4 4"));
}

#[test]
fn exit_codes() {
    let dir = workdir();
    // Usage errors.
    assert_eq!(code(&entropic(dir.path(), &["prove", "--vars", "X,Y"])), 2);
    assert_eq!(
        code(&entropic(
            dir.path(),
            &["profile", "--dist", "andor.dist", "--bogus"]
        )),
        2
    );
    assert_eq!(
        code(&entropic(dir.path(), &["parse", "--vars", "X,Y", "H(X"])),
        2
    );
    assert_eq!(
        code(&entropic(
            dir.path(),
            &["prove", "--vars", "X,Y", "--target", "H(Q) >= 0"]
        )),
        2
    );
    assert_eq!(
        code(&entropic(
            dir.path(),
            &["profile", "--dist", "missing.dist"]
        )),
        2
    );
    assert_eq!(code(&entropic(dir.path(), &["sweep", "--theorem", "7"])), 2);
    assert_eq!(
        code(&entropic(
            dir.path(),
            &["tensor", "--dist", "andor.dist", "--power", "0"]
        )),
        2
    );
    // Domain failures.
    assert_eq!(
        code(&entropic(
            dir.path(),
            &[
                "tensor",
                "--dist",
                "andor.dist",
                "--power",
                "6",
                "--cap",
                "1000"
            ]
        )),
        1
    );
    std::fs::write(
        dir.path().join("bad.profile"),
        "vars: X Y\nX : 2\nY : 1\nX,Y : 1\n",
    )
    .unwrap();
    let o = entropic(dir.path(), &["check-profile", "--profile", "bad.profile"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("polymatroid: no"));
    let o = entropic(
        dir.path(),
        &[
            "search-script",
            "--vars",
            "X,Y,A,B",
            "--target",
            INGLETON,
            "--max-steps",
            "1",
            "--budget",
            "20",
            "--expect-proved",
        ],
    );
    assert_eq!(code(&o), 1);
    // Without a penalty the search ignores the constraint.
    let o = entropic(
        dir.path(),
        &[
            "search",
            "--objective",
            "I(X:Y)",
            "--constraint",
            "I(X:Y) <= 0",
            "--penalty",
            "0",
            "--budget",
            "200",
            "--restarts",
            "2",
        ],
    );
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violated"));
}

#[test]
fn parse_prints_canonical_forms() {
    let dir = workdir();
    std::fs::write(
        dir.path().join("s.txt"),
        "# two lines\nI(X:Y) <= H(X)\nH(X|Y)\n",
    )
    .unwrap();
    let o = entropic(dir.path(), &["parse", "--vars", "X,Y", "--file", "s.txt"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("kind: statement"));
    assert!(out.contains("kind: expression"));
    assert!(out.contains("expansion: -H(Y) + H(X,Y)"), "{out}");
}

#[test]
fn identical_invocations_give_identical_bytes() {
    let dir = workdir();
    for args in [
        &["sweep", "--theorem", "3", "--seed", "5"][..],
        &[
            "search",
            "--objective",
            "I(X:Y) - I(X:Y|A) - I(X:Y|B) - I(A:B)",
            "--budget",
            "200",
            "--restarts",
            "3",
            "--seed",
            "2",
            "--trace",
            "t.jsonl",
        ][..],
        &[
            "prove", "--vars", "X,Y,A,B", "--script", "matus:2", "--target", "matus:2", "--cert",
            "m.cert",
        ][..],
    ] {
        let a = entropic(dir.path(), args);
        let trace_a = std::fs::read(dir.path().join("t.jsonl")).ok();
        let b = entropic(dir.path(), args);
        let trace_b = std::fs::read(dir.path().join("t.jsonl")).ok();
        assert_eq!(code(&a), 0, "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(trace_a, trace_b);
    }
    let s0 = entropic(dir.path(), &["sweep", "--theorem", "1"]);
    let s1 = entropic(dir.path(), &["sweep", "--theorem", "1", "--seed", "1"]);
    assert!(stdout(&s0).contains("seed: 0"));
    assert_ne!(s0.stdout, s1.stdout);
}
