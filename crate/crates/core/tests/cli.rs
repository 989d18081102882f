use std::io::Write;
use std::process::{Command, Output};

use bes_core::semantics::tautology;
use bes_core::syntax::{random_formula, signature};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn bes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bes"))
        .args(args)
        .env_remove("BES_SEED")
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    bes(args).status.code().expect("exit code")
}

fn json(args: &[&str]) -> Value {
    let out = bes(&[args, &["--format", "json"]].concat());
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn exit_codes() {
    let winston = data("winston.base");
    let peirce = data("peirce.proof.json");
    let cases: &[(&[&str], i32)] = &[
        (&["entails", "--goal", "((a->b)->a)->a"], 0),
        (&["entails", "--gamma", "a, a -> b", "--goal", "b"], 0),
        (&["entails", "--goal", "a"], 1),
        (&["taut", "--goal", "a | a-"], 0),
        (&["equiv", "--gamma", "a -> b", "--goal", "a- | b"], 0),
        (&["equiv", "--gamma", "a -> b", "--goal", "b -> a"], 1),
        (&["equiv", "--gamma", "a, b", "--goal", "b"], 2),
        (&["countermodel", "--goal", "a -> b"], 0),
        (&["countermodel", "--goal", "a -> a"], 1),
        (&["lindenbaum", "--goal", "a & b"], 0),
        (&["lindenbaum", "--goal", "a | a-"], 1),
        (&["derive", "--base", &winston, "--goal", "a+"], 0),
        (&["derive", "--base", &winston, "--goal", "a-"], 1),
        (&["derive", "--base", &winston, "--goal", "a+", "--oracle"], 0),
        (&["derive", "--rules", "a+ => b+", "--gamma", "a+", "--goal", "b+"], 0),
        (&["derive", "--rules", "=> bot", "--goal", "a+"], 2),
        (&["derive", "--base", "/nonexistent/base", "--goal", "a+"], 2),
        (&["check-proof", "--proof", &peirce], 0),
        (&["pipeline", "--gamma", "", "--goal", "a & a-"], 1),
        (&["pipeline", "--goal", "((a->b)->a)->a"], 0),
        (&["support", "--goal", "a | a-", "--mode", "oracle"], 0),
        (&["support", "--goal", "a", "--mode", "bounded"], 1),
        (&["support", "--goal", "a | a-", "--mode", "literal-exact"], 2),
        (&["simulate", "--goal", "a -> a", "--naturalize", "5"], 0),
        (&["fuzz-proofs", "--count", "20"], 0),
        (&["corpus", "--depth", "1"], 0),
        (&["parse", "--goal", "a ->"], 2),
        (&["parse", "--goal", "a", "--bogus"], 2),
        (&["taut", "--goal", "a | b | c", "--max-contents", "2"], 3),
        (
            &[
                "derive",
                "--rules",
                "a+ => b+",
                "--gamma",
                "c+, d+",
                "--goal",
                "bot",
                "--max-universe",
                "4",
            ],
            3,
        ),
    ];
    for (args, want) in cases {
        assert_eq!(code(args), *want, "bes {}", args.join(" "));
    }
}

#[test]
fn text_output() {
    let out = bes(&["dual", "--goal", "a -> b"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "a+ & b-\n");
    let out = bes(&["weight", "--goal", "(a -> b) | c"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "2\n");
    let out = bes(&["countermodel", "--gamma", "b", "--goal", "a"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "a=0 b=1\n");
}

#[test]
fn report_schema() {
    let r = json(&["support", "--goal", "a", "--mode", "oracle"]);
    for key in ["command", "config", "records", "summary", "elapsed_ms"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["command"], "support");
    let rec = &r["records"][0];
    assert_eq!(rec["command"], "support");
    assert_eq!(rec["verdict"], "refuted");
    assert_eq!(rec["mode"]["kind"], "oracle");
    assert_eq!(rec["witness"]["valuation"], serde_json::json!({ "a": 0 }));
    assert_eq!(r["summary"]["fail"], 1);

    let r = json(&["fuzz-proofs", "--count", "12"]);
    let n = r["records"].as_array().unwrap().len();
    let s = &r["summary"];
    assert_eq!(n, 12);
    assert_eq!(
        s["pass"].as_u64().unwrap() + s["fail"].as_u64().unwrap() + s["unknown"].as_u64().unwrap(),
        12
    );

    let r = json(&["parse", "--goal", "a &"]);
    assert_eq!(r["records"][0]["verdict"], "error");
    assert_eq!(r["records"][0]["details"]["class"], "usage");
}

#[test]
fn seed_comes_from_environment() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_bes"));
        c.args(["fuzz-proofs", "--count", "5", "--format", "json"]).args(args);
        match env {
            Some(s) => c.env("BES_SEED", s),
            None => c.env_remove("BES_SEED"),
        };
        let mut v: Value = serde_json::from_slice(&c.output().unwrap().stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(run(Some("8"), &[]), run(None, &["--seed", "8"]));
    assert_eq!(run(Some("8"), &[])["config"]["seed"], 8);
    assert_ne!(run(Some("8"), &[]), run(None, &[]));
}

#[test]
fn file_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let base = dir.path().join("inconsistent.base");
    let mut f = std::fs::File::create(&base).unwrap();
    writeln!(f, "# everything follows\n=> a+\n=> a-").unwrap();
    let base = base.to_str().unwrap();
    assert_eq!(code(&["derive", "--base", base, "--goal", "q+"]), 0);
    assert_eq!(code(&["support", "--base", base, "--goal", "q+ & (b -> c)"]), 0);

    let proof = dir.path().join("exc.proof.json");
    std::fs::write(
        &proof,
        r#"{"rule":"EXC","conclusion":"bot","premises":[{"rule":"Assume","formula":"a+"},{"rule":"Assume","formula":"a-"}]}"#,
    )
    .unwrap();
    let r = json(&["check-proof", "--proof", proof.to_str().unwrap()]);
    assert_eq!(r["records"][0]["verdict"], "valid");
    assert_eq!(
        r["records"][0]["details"]["open_assumptions"],
        serde_json::json!(["a+", "a-"])
    );

    let inline = r#"{"rule":"EXC","conclusion":"bot","premises":[{"rule":"Assume","formula":"a+"},{"rule":"Assume","formula":"b-"}]}"#;
    let r = json(&["check-proof", "--proof-json", inline]);
    assert_eq!(r["records"][0]["verdict"], "invalid");
    assert_eq!(r["records"][0]["details"]["class"], "dual mismatch");
    assert_eq!(r["records"][0]["details"]["path"], "root");
    assert_eq!(code(&["check-proof", "--proof-json", inline]), 1);
    assert_eq!(code(&["check-proof", "--proof-json", "{"]), 2);
}

#[test]
fn simulation_base_listing() {
    let out = String::from_utf8(bes(&["simulate", "--goal", "a"]).stdout).unwrap();
    let (rules, map) = out.split_once("\n\n").unwrap();
    assert_eq!(rules.lines().count(), 4);
    assert!(map.lines().any(|l| l == "p0+\tbot"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn taut_exit_code_follows_truth_tables(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_formula(&mut rng, &signature(2), 3);
        let want = if tautology(&phi).unwrap().holds { 0 } else { 1 };
        prop_assert_eq!(code(&["taut", "--goal", &phi.to_string()]), want);
        prop_assert_eq!(code(&["pipeline", "--goal", &phi.to_string()]), want);
    }
}
