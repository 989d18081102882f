//! Acceptance run: one PASS/FAIL line per criterion, each checked against its
//! runtime bound. Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use bes_core::bases::{
    derives, derives_oracle, fresh_pairs, random_base, random_query, relevant_universe, AtomicQuery, AtomicRule, Base,
    Goal,
};
use bes_core::calculus::{check, fuzz_derivations, CheckedProof, ProofNode};
use bes_core::cli::{exhaustive_corpus, random_corpus};
use bes_core::semantics::{consequence, eval, lindenbaum, tautology, Valuation};
use bes_core::simulation::pipeline;
use bes_core::support::{cross_check, support, Status, SupportMode, SupportQuery};
use bes_core::syntax::{dual, enumerate, random_formula, signature, Formula, Literal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(n: u32, name: &str, bound: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let (ok, detail) = match result {
        Ok(d) if elapsed <= bound => (true, d),
        Ok(d) => (false, format!("{d}; over the time bound")),
        Err(e) => (false, e),
    };
    println!(
        "criterion {n} {name}: {} ({detail}; {:.3} s of {} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        bound.as_secs()
    );
    ok
}

fn data(file: &str) -> String {
    format!("{}/data/{file}", env!("CARGO_MANIFEST_DIR"))
}

fn peirce() -> Outcome {
    let text = std::fs::read_to_string(data("peirce.proof.json")).map_err(|e| e.to_string())?;
    let proof = ProofNode::from_json(&text).map_err(|e| e.to_string())?;
    let checked = check(&proof).map_err(|e| e.to_string())?;
    ensure(checked.open_assumptions.is_empty(), || {
        "golden proof has open assumptions".into()
    })?;
    ensure(tautology(checked.conclusion()).unwrap().holds, || {
        "conclusion is not a tautology".into()
    })?;

    let golden: Value = serde_json::from_str(&text).unwrap();
    let mut dropped = golden.clone();
    dropped["premises"][0].as_object_mut().unwrap().remove("discharge");
    let mut non_dual = golden.clone();
    non_dual["premises"][0]["premises"][0]["premises"][1]["premises"][1]["premises"][0]["premises"][0]["premises"][0] =
        serde_json::json!({ "rule": "Assume", "formula": "b+" });
    let mut conclusion = golden;
    conclusion["conclusion"] = Value::String("((a+ -> b+) -> a+) -> b+".into());

    for (name, mutated, class) in [
        ("dropped discharge", dropped, "unbound hypothesis label"),
        ("non-dual EXC premise", non_dual, "dual mismatch"),
        ("changed conclusion", conclusion, "rule-shape mismatch"),
    ] {
        let p = ProofNode::from_json(&mutated.to_string()).map_err(|e| format!("{name}: {e}"))?;
        match check(&p) {
            Ok(_) => return Err(format!("{name}: accepted")),
            Err(e) => ensure(e.kind.class() == class, || {
                format!("{name}: got `{}`, wanted `{class}`", e.kind.class())
            })?,
        }
    }
    Ok("golden proof valid, 3 mutations rejected".into())
}

fn duality_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..10_000 {
        let sig = signature(rng.gen_range(1..=4));
        let depth = rng.gen_range(1..=5);
        let phi = random_formula(&mut rng, &sig, depth);
        let mut v = Valuation::new();
        for c in &sig {
            v.set(c.clone(), rng.gen());
        }
        let a = eval(&v, &phi).unwrap();
        let b = eval(&v, &dual(&phi)).unwrap();
        ensure(a != b, || format!("pair {i}: {phi} under {v}"))?;
    }
    Ok("10000 pairs".into())
}

fn soundness_fuzz() -> Outcome {
    let sig = signature(2);
    let proofs: Vec<CheckedProof> = fuzz_derivations(3, 1000, &sig, 6);
    ensure(proofs.len() == 1000, || format!("{} proofs", proofs.len()))?;
    let mut classical = 0;
    for (i, p) in proofs.iter().enumerate() {
        ensure(p.root.depth() <= 6, || {
            format!("proof {i} has depth {}", p.root.depth())
        })?;
        let again = check(&p.root).map_err(|e| format!("proof {i}: {e}"))?;
        ensure(again.open_assumptions == p.open_assumptions, || {
            format!("proof {i}: assumptions differ")
        })?;
        ensure(consequence(&p.open_assumptions, p.conclusion()).unwrap().holds, || {
            format!("proof {i} is unsound: {}", p.conclusion())
        })?;
        classical += usize::from(p.root.uses_classical_rules());
    }
    ensure(classical >= 200, || format!("only {classical} classical proofs"))?;
    Ok(format!("1000 sound, {classical} use DM or EXC"))
}

fn random_subset<R: Rng>(rng: &mut R, pool: &[Literal], max: usize) -> BTreeSet<Literal> {
    let n = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, n).cloned().collect()
}

/// Seeded bases over three contents, so universes have at most six literals.
fn property_bases() -> Vec<(Base, AtomicQuery)> {
    let sig = signature(3);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..500)
        .map(|_| (random_base(&mut rng, &sig, 6), random_query(&mut rng, &sig)))
        .collect()
}

fn derivability_suite() -> Outcome {
    let sig = signature(3);
    let all: Vec<Literal> = sig.iter().flat_map(|c| [c.assert(), c.deny()]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let d = |b: &Base, q: &AtomicQuery| derives(b, q).unwrap().derivable;
    let mut positives = 0;
    for (i, (b, q)) in property_bases().into_iter().enumerate() {
        ensure(b.len() <= 6, || format!("base {i} has {} rules", b.len()))?;
        ensure(relevant_universe(&b, &q).len() <= 6, || {
            format!("base {i}: universe too large")
        })?;
        let yes = d(&b, &q);
        positives += usize::from(yes);

        let oracle = derives_oracle(&b, &q, 0).unwrap().derivable;
        ensure(yes == oracle, || {
            format!("base {i}: engine {yes}, oracle {oracle} on {q}")
        })?;
        let fresh = derives_oracle(&b, &q, 2).unwrap().derivable;
        ensure(fresh == oracle, || format!("base {i}: two fresh pairs change {q}"))?;

        let m = random_subset(&mut rng, &all, 3);
        if yes {
            let weaker = AtomicQuery::new(q.context.iter().chain(&m).cloned(), q.goal.clone());
            ensure(d(&b, &weaker), || format!("base {i}: weakening fails for {weaker}"))?;
            let extra = random_base(&mut rng, &sig, 2);
            let bigger = b.union(extra.rules().iter().cloned());
            ensure(d(&bigger, &q), || format!("base {i}: monotonicity fails"))?;
        }

        let cut_ctx = AtomicQuery::new(q.context.iter().chain(&m).cloned(), q.goal.clone());
        let canonical = b.union(m.iter().cloned().map(AtomicRule::axiom));
        ensure(d(&b, &cut_ctx) == d(&canonical, &q), || {
            format!("base {i}: atomic cut fails for M = {m:?} on {q}")
        })?;

        let l = all.choose(&mut rng).unwrap().clone();
        let bot = AtomicQuery::bot([l.clone()]);
        let mut universe = relevant_universe(&b, &bot);
        for c in fresh_pairs(&universe, 1) {
            universe.insert(c.assert());
            universe.insert(c.deny());
        }
        let every = universe
            .iter()
            .all(|m| d(&b, &AtomicQuery::new([l.clone()], m.clone())));
        ensure(d(&b, &bot) == every, || format!("base {i}: atomic bottom fails at {l}"))?;
    }
    Ok(format!("500 bases, {positives} derivable queries"))
}

fn completeness_pipeline() -> Outcome {
    let exhaustive = exhaustive_corpus(1, 2);
    let random = random_corpus(2, 3, 500, 7);
    let mut valid = 0;
    for (gamma, goal) in exhaustive.iter().chain(&random) {
        let r = pipeline(gamma, goal).map_err(|e| e.to_string())?;
        ensure(r.agree, || format!("disagreement on {gamma:?} |= {goal}"))?;
        valid += usize::from(r.semantic);
    }
    Ok(format!(
        "{} exhaustive + {} random sequents agree, {valid} valid",
        exhaustive.len(),
        random.len()
    ))
}

fn support_cross_check() -> Outcome {
    let corpus: Vec<SupportQuery> = exhaustive_corpus(1, 2)
        .into_iter()
        .map(|(g, phi)| SupportQuery::valid(g, phi))
        .collect();
    let report = cross_check(&corpus, 1).map_err(|e| e.to_string())?;
    ensure(report.hard_failures.is_empty(), || {
        format!("{} hard failures", report.hard_failures.len())
    })?;
    ensure(report.measure_violations == 0, || {
        format!("{} measure violations", report.measure_violations)
    })?;

    let mut literal = 0;
    let lit_queries = corpus
        .iter()
        .filter(|q| q.is_literal())
        .cloned()
        .chain(property_bases().into_iter().map(|(b, q)| {
            let goal = match &q.goal {
                Goal::Lit(l) => Formula::Lit(l.clone()),
                Goal::Bot => Formula::Bot,
            };
            SupportQuery::new(b, q.context.iter().cloned().map(Formula::Lit).collect(), goal)
        }));
    for q in lit_queries {
        let v = support(&q, SupportMode::LiteralExact).map_err(|e| e.to_string())?;
        let ctx = q.context.iter().filter_map(|f| f.as_literal().cloned());
        let aq = match &q.goal {
            Formula::Bot => AtomicQuery::bot(ctx),
            g => AtomicQuery::new(ctx, g.as_literal().unwrap().clone()),
        };
        let d = if q.context.contains(&Formula::Bot) {
            true
        } else {
            derives(&q.base, &aq).unwrap().derivable
        };
        ensure((v.status == Status::Supported) == d, || {
            format!("literal-exact differs on {aq}")
        })?;
        literal += 1;
    }
    Ok(format!(
        "{} sequents: {} supported, {} refuted, {} unknown, 0 hard failures; {literal} literal sequents match",
        report.total, report.supported, report.refuted, report.unknown
    ))
}

fn lindenbaum_check() -> Outcome {
    let mut n = 0;
    for phi in enumerate(&signature(1), 2) {
        if tautology(&phi).unwrap().holds {
            continue;
        }
        let l = lindenbaum(&phi, 2).map_err(|e| e.to_string())?;
        ensure(!eval(&l.valuation, &phi).unwrap(), || {
            format!("{phi}: valuation satisfies it")
        })?;
        for d in &l.decided {
            ensure(d.side().is_some(), || {
                format!("{phi}: {} decided both or neither way", d.formula)
            })?;
        }
        n += 1;
    }
    Ok(format!("{n} non-tautologies"))
}

fn bes(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_bes"))
        .args(args)
        .args(["--format", "json"])
        .env_remove("BES_SEED")
        .output()
        .expect("binary runs");
    let mut v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

fn reproducibility() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["fuzz-proofs", "--seed", "11", "--count", "60"],
        &[
            "corpus",
            "--contents",
            "2",
            "--depth",
            "3",
            "--count",
            "25",
            "--seed",
            "7",
        ],
        &[
            "simulate",
            "--goal",
            "((a -> b) -> a) -> a",
            "--naturalize",
            "20",
            "--seed",
            "5",
        ],
        &["corpus", "--contents", "1", "--depth", "1"],
    ];
    for args in runs {
        let first = bes(args);
        ensure(first == bes(args), || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
    }
    let seeded = bes(&["fuzz-proofs", "--seed", "9", "--count", "20"]);
    let other = bes(&["fuzz-proofs", "--seed", "10", "--count", "20"]);
    ensure(seeded != other, || "different seeds give identical reports".into())?;
    Ok(format!("{} seeded commands identical across reruns", runs.len()))
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        criterion(1, "Peirce golden proof and mutations", s(1), peirce),
        criterion(2, "duality against valuations", s(10), duality_law),
        criterion(3, "soundness fuzzing", s(30), soundness_fuzz),
        criterion(4, "derivability properties", s(120), derivability_suite),
        criterion(5, "completeness pipeline", s(300), completeness_pipeline),
        criterion(6, "support cross-check", s(120), support_cross_check),
        criterion(7, "Lindenbaum construction", s(30), lindenbaum_check),
        criterion(8, "seeded reproducibility", s(120), reproducibility),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
