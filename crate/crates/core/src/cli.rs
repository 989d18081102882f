//! The `bes` command line: argument model, dispatch, corpus runners and
//! reports.
//!
//! Every command produces a [`Report`] of per-item records. The exit code is
//! derived from the records: 0 when every record passes, 1 on any negative
//! verdict or failure, 2 for usage and parse errors, 3 when a resource cap
//! was hit.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bases::{
    derives_oracle_capped, derives_with, parse_base, AtomicQuery, Base, BasesError, DeriveOptions, Goal,
};
use crate::calculus::{check, fuzz_derivations, ProofNode};
use crate::semantics::{consequence_capped, lindenbaum, SemanticsError, Side, Valuation};
use crate::simulation::{build_simulation_base, naturalize_check, pipeline, SimulationError};
use crate::support::{cross_check, support, BoundedConfig, Status, SupportError, SupportMode, SupportQuery};
use crate::syntax::{
    dual, enumerate, parse, parse_list, random_formula, signature, weight, Formula, Literal, ParseError,
};

const DEFAULT_ORACLE_LITERALS: usize = 12;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(
    name = "bes",
    version,
    about = "Classical propositional logic over literals, checked against truth tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every randomised command.
    #[arg(long, global = true, env = "BES_SEED", default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest number of contents a truth table may range over.
    #[arg(long, global = true, default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..=20))]
    pub max_contents: u64,

    /// Largest derivability universe, in literals. Defaults to 128 for the
    /// saturation engine and 12 for the lattice oracle.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(2..))]
    pub max_universe: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum Command {
    /// Parse a formula and print it with its depth, size and weight.
    Parse(FormulaArgs),
    /// Print the dual of a formula.
    Dual(FormulaArgs),
    /// Print the weight of a formula.
    Weight(FormulaArgs),
    /// Is the goal true under every valuation?
    Taut(FormulaArgs),
    /// Does the goal follow classically from gamma?
    Entails(SequentArgs),
    /// Are the single formula in gamma and the goal equivalent?
    Equiv(SequentArgs),
    /// Find a valuation satisfying gamma and falsifying the goal.
    Countermodel(SequentArgs),
    /// Extend the dual of a non-tautology to a decided set.
    Lindenbaum(LindenbaumArgs),
    /// Check a proof script.
    CheckProof(ProofArgs),
    /// Generate seeded random derivations and check each against truth tables.
    FuzzProofs(FuzzArgs),
    /// Decide derivability of a literal or bot in an atomic base.
    Derive(DeriveArgs),
    /// Decide base-extension support of a sequent.
    Support(SupportArgs),
    /// Build and print the simulation base of a sequent.
    Simulate(SimulateArgs),
    /// Compare classical consequence with derivability in the simulation base.
    Pipeline(SequentArgs),
    /// Run pipeline and support cross-check over a generated corpus.
    Corpus(CorpusArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FormulaArgs {
    #[arg(long)]
    pub goal: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SequentArgs {
    /// Comma-separated formulae; empty for no assumptions.
    #[arg(long, default_value = "")]
    pub gamma: String,
    #[arg(long)]
    pub goal: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct LindenbaumArgs {
    #[arg(long)]
    pub goal: String,
    /// Depth of the enumeration the construction runs over.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
#[group(required = true, multiple = false)]
pub struct ProofSource {
    /// Proof script file (JSON).
    #[arg(long)]
    pub proof: Option<PathBuf>,
    /// Proof script given inline.
    #[arg(long)]
    pub proof_json: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ProofArgs {
    #[command(flatten)]
    pub source: ProofSource,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 6)]
    pub depth: usize,
    /// Size of the signature `a, b, …`.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=26))]
    pub contents: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BaseSource {
    /// Base file, one rule per line.
    #[arg(long)]
    pub base: Option<PathBuf>,
    /// Rules given inline, separated by `;` or newlines.
    #[arg(long, conflicts_with = "base")]
    pub rules: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub source: BaseSource,
    /// Comma-separated literals.
    #[arg(long, default_value = "")]
    pub gamma: String,
    /// A literal or `bot`.
    #[arg(long)]
    pub goal: String,
    /// Use the lattice oracle instead of the saturation engine.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Oracle,
    LiteralExact,
    Bounded,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SupportArgs {
    #[command(flatten)]
    pub source: BaseSource,
    #[arg(long, default_value = "")]
    pub gamma: String,
    #[arg(long)]
    pub goal: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Bounded)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=2))]
    pub pool_depth: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SimulateArgs {
    #[arg(long, default_value = "")]
    pub gamma: String,
    #[arg(long)]
    pub goal: String,
    /// Also sample this many derivable judgements of the base and check
    /// that they hold classically after sharpening.
    #[arg(long, default_value_t = 0)]
    pub naturalize: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CorpusArgs {
    /// Signature size.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=4))]
    pub contents: u64,
    /// Formula depth.
    #[arg(long, default_value_t = 2)]
    pub depth: usize,
    /// Number of seeded random sequents; without it the corpus is every
    /// sequent with at most one assumption.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=2))]
    pub pool_depth: u64,
    /// Skip the bounded-support cross-check.
    #[arg(long)]
    pub no_cross_check: bool,
}

impl Command {
    pub fn verb(&self) -> &'static str {
        match self {
            Command::Parse(_) => "parse",
            Command::Dual(_) => "dual",
            Command::Weight(_) => "weight",
            Command::Taut(_) => "taut",
            Command::Entails(_) => "entails",
            Command::Equiv(_) => "equiv",
            Command::Countermodel(_) => "countermodel",
            Command::Lindenbaum(_) => "lindenbaum",
            Command::CheckProof(_) => "check-proof",
            Command::FuzzProofs(_) => "fuzz-proofs",
            Command::Derive(_) => "derive",
            Command::Support(_) => "support",
            Command::Simulate(_) => "simulate",
            Command::Pipeline(_) => "pipeline",
            Command::Corpus(_) => "corpus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub command: String,
    pub input: Value,
    pub verdict: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    /// Lines for the text format; the verdict alone when empty.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Record {
    fn new(command: &str, input: Value, verdict: impl Into<String>, outcome: Outcome) -> Self {
        Record {
            command: command.to_string(),
            input,
            verdict: verdict.into(),
            outcome,
            mode: None,
            witness: None,
            details: Value::Null,
            text: vec![],
        }
    }

    fn details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }

    fn witness(mut self, witness: Option<Value>) -> Self {
        self.witness = witness;
        self
    }

    fn mode(mut self, mode: Value) -> Self {
        self.mode = Some(mode);
        self
    }

    fn text(mut self, lines: Vec<String>) -> Self {
        self.text = lines;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Cli,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = String::new();
                for r in &self.records {
                    if r.text.is_empty() {
                        let _ = writeln!(s, "{}", r.verdict);
                    } else {
                        for line in &r.text {
                            let _ = writeln!(s, "{line}");
                        }
                    }
                }
                if self.records.len() > 1 {
                    let Summary { pass, fail, unknown } = self.summary;
                    let _ = writeln!(s, "pass={pass} fail={fail} unknown={unknown}");
                }
                s
            }
        }
    }
}

/// Why a command stopped before producing its records.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Failure {
    Usage(String),
    Resource(String),
    Negative(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn class(&self) -> &'static str {
        match self {
            Failure::Negative(_) => "failure",
            Failure::Usage(_) => "usage",
            Failure::Resource(_) => "resource",
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Negative(m) => m,
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SemanticsError> for Failure {
    fn from(e: SemanticsError) -> Self {
        match e {
            SemanticsError::TooManyContents { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Negative(e.to_string()),
        }
    }
}

impl From<BasesError> for Failure {
    fn from(e: BasesError) -> Self {
        match e {
            BasesError::Parse { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Resource(e.to_string()),
        }
    }
}

impl From<SupportError> for Failure {
    fn from(e: SupportError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else if let SupportError::Precondition(_) = e {
            Failure::Usage(e.to_string())
        } else {
            Failure::Negative(e.to_string())
        }
    }
}

impl From<SimulationError> for Failure {
    fn from(e: SimulationError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Negative(e.to_string())
        }
    }
}

/// Runs one command. The exit code follows the contract in the module docs.
pub fn run(cli: &Cli) -> (i32, Report) {
    let start = Instant::now();
    let verb = cli.command.verb();
    let (code, records) = match dispatch(cli) {
        Ok(records) => {
            let ok = records.iter().all(|r| r.outcome == Outcome::Pass);
            (if ok { 0 } else { 1 }, records)
        }
        Err(f) => {
            let r = Record::new(verb, Value::Null, "error", Outcome::Fail)
                .details(json!({ "class": f.class(), "message": f.message() }))
                .text(vec![format!("error ({}): {}", f.class(), f.message())]);
            (f.exit_code(), vec![r])
        }
    };
    let mut summary = Summary::default();
    for r in &records {
        match r.outcome {
            Outcome::Pass => summary.pass += 1,
            Outcome::Fail => summary.fail += 1,
            Outcome::Unknown => summary.unknown += 1,
        }
    }
    let report = Report {
        command: verb.to_string(),
        config: cli.clone(),
        records,
        summary,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    (code, report)
}

fn dispatch(cli: &Cli) -> Result<Vec<Record>, Failure> {
    let cap = cli.max_contents as usize;
    match &cli.command {
        Command::Parse(a) => {
            let f = parse(&a.goal)?;
            let r = Record::new("parse", json!({ "goal": a.goal }), f.to_string(), Outcome::Pass).details(json!({
                "formula": f,
                "depth": f.depth(),
                "size": f.size(),
                "weight": weight(&f),
                "contents": f.contents(),
            }));
            Ok(vec![r])
        }
        Command::Dual(a) => {
            let f = parse(&a.goal)?;
            let d = dual(&f);
            Ok(vec![Record::new(
                "dual",
                json!({ "goal": f }),
                d.to_string(),
                Outcome::Pass,
            )])
        }
        Command::Weight(a) => {
            let f = parse(&a.goal)?;
            Ok(vec![Record::new(
                "weight",
                json!({ "goal": f }),
                weight(&f).to_string(),
                Outcome::Pass,
            )])
        }
        Command::Taut(a) => {
            let f = parse(&a.goal)?;
            let v = consequence_capped(&[], &f, cap)?;
            Ok(vec![consequence_record("taut", &[], &f, v.holds, v.witness)])
        }
        Command::Entails(a) => {
            let (gamma, goal) = sequent(a)?;
            let v = consequence_capped(&gamma, &goal, cap)?;
            Ok(vec![consequence_record("entails", &gamma, &goal, v.holds, v.witness)])
        }
        Command::Equiv(a) => equiv(a, cap),
        Command::Countermodel(a) => {
            let (gamma, goal) = sequent(a)?;
            let v = consequence_capped(&gamma, &goal, cap)?;
            let input = json!({ "gamma": gamma, "goal": goal });
            let r = match v.witness {
                Some(w) => Record::new("countermodel", input, "found", Outcome::Pass)
                    .witness(Some(json!(w)))
                    .text(vec![w.to_string()]),
                None => Record::new("countermodel", input, "none", Outcome::Fail),
            };
            Ok(vec![r])
        }
        Command::Lindenbaum(a) => lindenbaum_cmd(a, cap),
        Command::CheckProof(a) => check_proof(a),
        Command::FuzzProofs(a) => fuzz(cli.seed, a),
        Command::Derive(a) => derive(a, cli.max_universe.map(|u| u as usize)),
        Command::Support(a) => support_cmd(a),
        Command::Simulate(a) => simulate(cli.seed, a, cap),
        Command::Pipeline(a) => {
            let (gamma, goal) = sequent(a)?;
            contents_cap(&gamma, &goal, cap)?;
            let p = pipeline(&gamma, &goal)?;
            let verdict = match (p.agree, p.semantic) {
                (false, _) => "disagree",
                (true, true) => "valid",
                (true, false) => "invalid",
            };
            let outcome = if p.agree && p.semantic {
                Outcome::Pass
            } else {
                Outcome::Fail
            };
            let text = vec![format!(
                "{verdict}\tsemantic={} simulated={} agree={} rules={}",
                p.semantic, p.simulated, p.agree, p.rules
            )];
            Ok(vec![Record::new(
                "pipeline",
                json!({ "gamma": gamma, "goal": goal }),
                verdict,
                outcome,
            )
            .details(json!(p))
            .text(text)])
        }
        Command::Corpus(a) => corpus_cmd(cli.seed, a, cap),
    }
}

fn sequent(a: &SequentArgs) -> Result<(Vec<Formula>, Formula), Failure> {
    Ok((parse_list(&a.gamma)?, parse(&a.goal)?))
}

fn contents_cap(gamma: &[Formula], goal: &Formula, cap: usize) -> Result<(), Failure> {
    let mut contents = goal.contents();
    for g in gamma {
        g.collect_contents(&mut contents);
    }
    if contents.len() > cap {
        return Err(SemanticsError::TooManyContents {
            found: contents.len(),
            cap,
        }
        .into());
    }
    Ok(())
}

fn consequence_record(
    command: &str,
    gamma: &[Formula],
    goal: &Formula,
    holds: bool,
    witness: Option<Valuation>,
) -> Record {
    let (verdict, outcome) = if holds {
        ("holds", Outcome::Pass)
    } else {
        ("fails", Outcome::Fail)
    };
    let mut text = verdict.to_string();
    if let Some(w) = &witness {
        let _ = write!(text, "\t{w}");
    }
    Record::new(command, json!({ "gamma": gamma, "goal": goal }), verdict, outcome)
        .witness(witness.map(|w| json!(w)))
        .text(vec![text])
}

fn equiv(a: &SequentArgs, cap: usize) -> Result<Vec<Record>, Failure> {
    let (gamma, goal) = sequent(a)?;
    let [left] = gamma.as_slice() else {
        return Err(Failure::Usage(format!(
            "equiv takes exactly one formula in --gamma, got {}",
            gamma.len()
        )));
    };
    let forward = consequence_capped(std::slice::from_ref(left), &goal, cap)?;
    let backward = consequence_capped(std::slice::from_ref(&goal), left, cap)?;
    let holds = forward.holds && backward.holds;
    let witness = forward.witness.or(backward.witness);
    let input = json!({ "left": left, "right": goal });
    let (verdict, outcome) = if holds {
        ("equivalent", Outcome::Pass)
    } else {
        ("inequivalent", Outcome::Fail)
    };
    let mut text = verdict.to_string();
    if let Some(w) = &witness {
        let _ = write!(text, "\t{w}");
    }
    Ok(vec![Record::new("equiv", input, verdict, outcome)
        .witness(witness.map(|w| json!(w)))
        .text(vec![text])])
}

fn lindenbaum_cmd(a: &LindenbaumArgs, cap: usize) -> Result<Vec<Record>, Failure> {
    let f = parse(&a.goal)?;
    contents_cap(&[], &f, cap)?;
    let input = json!({ "goal": f, "depth": a.depth });
    let l = match lindenbaum(&f, a.depth) {
        Ok(l) => l,
        Err(SemanticsError::Tautology(_)) => {
            return Ok(vec![Record::new("lindenbaum", input, "tautology", Outcome::Fail)]);
        }
        Err(e) => return Err(e.into()),
    };
    let falsifies = !crate::semantics::eval(&l.valuation, &f).map_err(Failure::from)?;
    let undecided: Vec<&Formula> = l
        .decided
        .iter()
        .filter(|d| d.side().is_none())
        .map(|d| &d.formula)
        .collect();
    let ok = falsifies && undecided.is_empty();
    let mut text = vec![format!("{}\t{}", if ok { "decided" } else { "undecided" }, l.valuation)];
    for d in &l.decided {
        let side = match d.side() {
            Some(Side::Formula) => "formula",
            Some(Side::Dual) => "dual",
            None => "neither",
        };
        text.push(format!("  {}\t{side}", d.formula));
    }
    Ok(vec![Record::new(
        "lindenbaum",
        input,
        if ok { "decided" } else { "undecided" },
        if ok { Outcome::Pass } else { Outcome::Fail },
    )
    .witness(Some(json!(l.valuation)))
    .details(json!({
        "falsifies": falsifies,
        "delta": l.delta,
        "decided": l.decided.len(),
        "undecided": undecided,
    }))
    .text(text)])
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn check_proof(a: &ProofArgs) -> Result<Vec<Record>, Failure> {
    let (text, input) = match (&a.source.proof, &a.source.proof_json) {
        (Some(p), _) => (read_file(p)?, json!({ "proof": p })),
        (None, Some(t)) => (t.clone(), json!({ "proof_json": t })),
        (None, None) => return Err(Failure::Usage("one of --proof, --proof-json is required".into())),
    };
    let proof = ProofNode::from_json(&text).map_err(|e| Failure::Usage(e.to_string()))?;
    let r = match check(&proof) {
        Ok(c) => {
            let shown: Vec<String> = c.open_assumptions.iter().map(|f| f.to_string()).collect();
            Record::new("check-proof", input, "valid", Outcome::Pass)
                .details(json!({
                    "conclusion": c.conclusion(),
                    "open_assumptions": c.open_assumptions,
                    "depth": c.root.depth(),
                    "size": c.root.size(),
                }))
                .text(vec![format!("valid\t{} |- {}", shown.join(", "), c.conclusion())])
        }
        Err(e) => Record::new("check-proof", input, "invalid", Outcome::Fail)
            .details(json!({
                "class": e.kind.class(),
                "path": e.path.to_string(),
                "message": e.to_string(),
            }))
            .text(vec![format!("invalid\t{e}")]),
    };
    Ok(vec![r])
}

fn fuzz(seed: u64, a: &FuzzArgs) -> Result<Vec<Record>, Failure> {
    let sig = signature(a.contents as usize);
    let proofs = fuzz_derivations(seed, a.count, &sig, a.depth);
    let mut out = Vec::with_capacity(proofs.len());
    for (i, p) in proofs.iter().enumerate() {
        let v = consequence_capped(&p.open_assumptions, p.conclusion(), sig.len())?;
        let (verdict, outcome) = if v.holds {
            ("sound", Outcome::Pass)
        } else {
            ("unsound", Outcome::Fail)
        };
        let shown: Vec<String> = p.open_assumptions.iter().map(|f| f.to_string()).collect();
        out.push(
            Record::new("fuzz-proofs", json!({ "seed": seed, "index": i }), verdict, outcome)
                .witness(v.witness.map(|w| json!(w)))
                .details(json!({
                    "conclusion": p.conclusion(),
                    "open_assumptions": p.open_assumptions,
                    "classical": p.root.uses_classical_rules(),
                    "depth": p.root.depth(),
                }))
                .text(vec![format!(
                    "{verdict}\t{}{} |- {}",
                    if p.root.uses_classical_rules() { "* " } else { "" },
                    shown.join(", "),
                    p.conclusion()
                )]),
        );
    }
    Ok(out)
}

fn load_base(s: &BaseSource) -> Result<(Base, Value), Failure> {
    match (&s.base, &s.rules) {
        (Some(p), _) => Ok((parse_base(&read_file(p)?)?, json!(p))),
        (None, Some(t)) => Ok((parse_base(&t.replace(';', "\n"))?, json!(t))),
        (None, None) => Ok((Base::default(), Value::Null)),
    }
}

fn literal_list(text: &str) -> Result<Vec<Literal>, Failure> {
    parse_list(text)?
        .into_iter()
        .map(|f| {
            f.as_literal()
                .cloned()
                .ok_or_else(|| Failure::Usage(format!("`{f}` is not a literal")))
        })
        .collect()
}

fn derive(a: &DeriveArgs, max_universe: Option<usize>) -> Result<Vec<Record>, Failure> {
    let (base, base_input) = load_base(&a.source)?;
    let ctx = literal_list(&a.gamma)?;
    let goal = Goal::parse(&a.goal).map_err(Failure::from)?;
    let q = AtomicQuery::new(ctx, goal);
    let input = json!({ "base": base_input, "query": q.to_string() });
    let (answer, mode) = if a.oracle {
        let cap = max_universe.unwrap_or(DEFAULT_ORACLE_LITERALS);
        (derives_oracle_capped(&base, &q, 0, cap)?, "oracle")
    } else {
        let mut opts = DeriveOptions::default();
        if let Some(u) = max_universe {
            opts.max_contents = u / 2;
        }
        (derives_with(&base, &q, &opts)?, "saturation")
    };
    let (verdict, outcome) = if answer.derivable {
        ("derivable", Outcome::Pass)
    } else {
        ("underivable", Outcome::Fail)
    };
    let mut text = vec![format!("{verdict}\t{q}")];
    if let Some(m) = &answer.countermodel {
        let shown: Vec<String> = m.iter().map(|l| l.to_string()).collect();
        text.push(format!("countermodel\t{}", shown.join(", ")));
    }
    let witness = match (&answer.certificate, &answer.countermodel) {
        (Some(c), _) => Some(json!({ "certificate": c })),
        (None, Some(m)) => Some(json!({ "countermodel": m })),
        _ => None,
    };
    Ok(vec![Record::new("derive", input, verdict, outcome)
        .mode(json!(mode))
        .witness(witness)
        .details(json!({ "universe": answer.universe }))
        .text(text)])
}

fn support_cmd(a: &SupportArgs) -> Result<Vec<Record>, Failure> {
    let (base, base_input) = load_base(&a.source)?;
    let gamma = parse_list(&a.gamma)?;
    let goal = parse(&a.goal)?;
    let mode = match a.mode {
        ModeArg::Oracle => SupportMode::Oracle,
        ModeArg::LiteralExact => SupportMode::LiteralExact,
        ModeArg::Bounded => SupportMode::Bounded(BoundedConfig {
            pool_depth: a.pool_depth as usize,
            ..BoundedConfig::default()
        }),
    };
    let input = json!({ "base": base_input, "gamma": gamma, "goal": goal });
    let v = support(&SupportQuery::new(base, gamma, goal), mode)?;
    let (verdict, outcome) = match v.status {
        Status::Supported => ("supported", Outcome::Pass),
        Status::Refuted => ("refuted", Outcome::Fail),
        Status::Unknown => ("unknown", Outcome::Unknown),
    };
    let mut text = vec![verdict.to_string()];
    if let Some(w) = &v.witness {
        if let Some(val) = &w.valuation {
            text.push(format!("valuation\t{val}"));
        }
        if let Some(l) = &w.literal {
            text.push(format!("literal\t{l}"));
        }
        for r in &w.extension {
            text.push(format!("extension\t{r}"));
        }
    }
    Ok(vec![Record::new("support", input, verdict, outcome)
        .mode(json!(v.mode))
        .witness(v.witness.map(|w| json!(w)))
        .text(text)])
}

fn simulate(seed: u64, a: &SimulateArgs, cap: usize) -> Result<Vec<Record>, Failure> {
    let gamma = parse_list(&a.gamma)?;
    let goal = parse(&a.goal)?;
    contents_cap(&gamma, &goal, cap)?;
    let sb = build_simulation_base(&gamma, &goal);
    let input = json!({ "gamma": gamma, "goal": goal });
    let map: Vec<Value> = sb
        .map
        .classes
        .iter()
        .map(|c| json!({ "literal": c.literal, "representative": c.representative, "members": c.members }))
        .collect();
    let text: Vec<String> = sb.to_string().lines().map(str::to_string).collect();
    let mut out = vec![Record::new("simulate", input.clone(), "built", Outcome::Pass)
        .details(json!({
            "rules": sb.base.rules().iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            "classes": map,
            "fresh_contents": sb.map.fresh_contents,
        }))
        .text(text)];
    if a.naturalize > 0 {
        let n = naturalize_check(&sb, a.naturalize, seed)?;
        let ok = n.failures.is_empty();
        let verdict = if ok { "naturalized" } else { "not-naturalized" };
        out.push(
            Record::new(
                "simulate",
                json!({ "gamma": input["gamma"], "goal": input["goal"], "seed": seed }),
                verdict,
                if ok { Outcome::Pass } else { Outcome::Fail },
            )
            .details(json!(n))
            .text(vec![format!(
                "{verdict}\tsampled={} derivable={} failures={}",
                n.sampled,
                n.derivable,
                n.failures.len()
            )]),
        );
    }
    Ok(out)
}

/// Every sequent with at most one assumption over `k` contents, formulae of
/// depth at most `depth`, in enumeration order: the empty context first,
/// then each formula as the sole assumption; goals vary fastest.
pub fn exhaustive_corpus(k: usize, depth: usize) -> Vec<(Vec<Formula>, Formula)> {
    let fs = enumerate(&signature(k), depth);
    let contexts = std::iter::once(vec![]).chain(fs.iter().map(|f| vec![f.clone()]));
    contexts
        .flat_map(|c| fs.iter().map(move |g| (c.clone(), g.clone())))
        .collect()
}

/// `count` random sequents with up to two assumptions.
pub fn random_corpus(k: usize, depth: usize, count: usize, seed: u64) -> Vec<(Vec<Formula>, Formula)> {
    let sig = signature(k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(0..=2);
            let gamma = (0..n).map(|_| random_formula(&mut rng, &sig, depth)).collect();
            (gamma, random_formula(&mut rng, &sig, depth))
        })
        .collect()
}

fn corpus_cmd(seed: u64, a: &CorpusArgs, cap: usize) -> Result<Vec<Record>, Failure> {
    let k = a.contents as usize;
    if k > cap {
        return Err(SemanticsError::TooManyContents { found: k, cap }.into());
    }
    let sequents = match a.count {
        Some(n) => random_corpus(k, a.depth, n, seed),
        None => exhaustive_corpus(k, a.depth),
    };
    let mut out = Vec::with_capacity(sequents.len());
    for (gamma, goal) in sequents {
        let p = pipeline(&gamma, &goal)?;
        let mut details = json!(p);
        let mut ok = p.agree;
        let mut record_mode = None;
        if !a.no_cross_check {
            let q = SupportQuery::valid(gamma.clone(), goal.clone());
            let c = cross_check(std::slice::from_ref(&q), a.pool_depth as usize)?;
            let bounded = if c.supported > 0 {
                "supported"
            } else if c.refuted > 0 {
                "refuted"
            } else {
                "unknown"
            };
            ok &= c.hard_failures.is_empty() && c.measure_violations == 0;
            details["support"] = json!({
                "bounded": bounded,
                "hard_failure": !c.hard_failures.is_empty(),
                "budget_exhausted": c.exhausted > 0,
            });
            record_mode = Some(json!({ "kind": "bounded", "depth": a.pool_depth }));
        }
        let shown: Vec<String> = gamma.iter().map(|f| f.to_string()).collect();
        let verdict = if ok { "agree" } else { "disagree" };
        let mut r = Record::new(
            "corpus",
            json!({ "gamma": gamma, "goal": goal }),
            verdict,
            if ok { Outcome::Pass } else { Outcome::Fail },
        )
        .details(details)
        .text(vec![format!(
            "{verdict}\t{} |= {}\t{}",
            shown.join(", "),
            goal,
            p.semantic
        )]);
        r.mode = record_mode;
        out.push(r);
    }
    Ok(out)
}
