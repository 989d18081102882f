//! Base-extension support `Γ ⊩_B φ`.
//!
//! Three modes:
//! - `oracle`: empty base only, decided by truth tables;
//! - `literal-exact`: literal sequents, decided by derivability in the base;
//! - `bounded`: the support clauses evaluated directly, with the "for every
//!   extension" quantifiers ranging over small subsets of a finite rule pool.
//!
//! Bounded mode is three-valued. `Supported` is only returned where the
//! clause is settled without quantifying over extensions, and `Refuted` only
//! with a concrete extension (and, for `∨`, a literal) that breaks the
//! clause. Everything else is `Unknown`.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::bases::{
    derives, derives_with, fresh_pairs, AtomicQuery, AtomicRule, Base, BasesError, DeriveOptions, Goal, Subrule,
};
use crate::semantics::{consequence, SemanticsError, Valuation};
use crate::syntax::{weight, Formula, Literal};

pub const DEFAULT_POOL_CAP: usize = 4096;
pub const DEFAULT_CALL_BUDGET: usize = 50_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportQuery {
    pub base: Base,
    pub context: Vec<Formula>,
    pub goal: Formula,
}

impl SupportQuery {
    pub fn new(base: Base, context: Vec<Formula>, goal: Formula) -> Self {
        SupportQuery { base, context, goal }
    }

    pub fn valid(context: Vec<Formula>, goal: Formula) -> Self {
        Self::new(Base::default(), context, goal)
    }

    pub fn is_literal(&self) -> bool {
        let atomic = |f: &Formula| f.is_literal() || *f == Formula::Bot;
        self.context.iter().all(atomic) && atomic(&self.goal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Supported,
    Refuted,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Witness {
    /// Rules added to the query's base.
    pub extension: Vec<AtomicRule>,
    /// The literal that separates the disjuncts from their consequence, for
    /// a failing `∨`; otherwise the literal goal that is not derivable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal: Option<Literal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub valuation: Option<Valuation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VerdictMode {
    Oracle,
    LiteralExact,
    Bounded { pool_size: usize, depth: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportVerdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub mode: VerdictMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedConfig {
    /// Largest number of pool rules added at one quantifier.
    pub pool_depth: usize,
    pub pool_cap: usize,
    /// Evaluation steps plus derivability calls before every open question
    /// is answered Unknown. Nested implications multiply the extension
    /// search by the pool size, so this is what bounds time and memory.
    pub call_budget: usize,
}

impl Default for BoundedConfig {
    fn default() -> Self {
        BoundedConfig {
            pool_depth: 1,
            pool_cap: DEFAULT_POOL_CAP,
            call_budget: DEFAULT_CALL_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupportMode {
    Oracle,
    LiteralExact,
    Bounded(BoundedConfig),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SupportError {
    #[error("{0}")]
    Precondition(String),
    #[error("rule pool has {size} rules, above the cap of {cap}")]
    PoolOverflow { size: usize, cap: usize },
    #[error(transparent)]
    Bases(#[from] BasesError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl SupportError {
    pub fn is_resource(&self) -> bool {
        match self {
            SupportError::PoolOverflow { .. } | SupportError::Semantics(SemanticsError::TooManyContents { .. }) => true,
            SupportError::Bases(e) => e.is_resource(),
            _ => false,
        }
    }
}

/// Counters from one bounded evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SupportStats {
    pub calls: usize,
    pub derives_calls: usize,
    /// Recursive calls whose measure failed to drop below the caller's.
    pub measure_violations: usize,
    pub budget_exhausted: bool,
}

pub fn support(q: &SupportQuery, mode: SupportMode) -> Result<SupportVerdict, SupportError> {
    support_with_stats(q, mode).map(|(v, _)| v)
}

pub fn support_with_stats(q: &SupportQuery, mode: SupportMode) -> Result<(SupportVerdict, SupportStats), SupportError> {
    match mode {
        SupportMode::Oracle => {
            if !q.base.is_empty() {
                return Err(SupportError::Precondition("oracle mode needs an empty base".into()));
            }
            let v = consequence(&q.context, &q.goal)?;
            let verdict = SupportVerdict {
                status: if v.holds { Status::Supported } else { Status::Refuted },
                witness: v.witness.map(|valuation| Witness {
                    valuation: Some(valuation),
                    ..Witness::default()
                }),
                mode: VerdictMode::Oracle,
            };
            Ok((verdict, SupportStats::default()))
        }
        SupportMode::LiteralExact => {
            if !q.is_literal() {
                return Err(SupportError::Precondition(
                    "literal-exact mode needs literal context and a literal or bot goal".into(),
                ));
            }
            let mut stats = SupportStats::default();
            let mut ev = Evaluator::new(&q.base, vec![], BTreeSet::new(), BoundedConfig::default());
            let status = ev.literal_sequent(&[], &q.context, &q.goal)?;
            stats.derives_calls = ev.stats.derives_calls;
            let witness = (status == Status::Refuted).then(|| Witness {
                literal: q.goal.as_literal().cloned(),
                ..Witness::default()
            });
            Ok((
                SupportVerdict {
                    status,
                    witness,
                    mode: VerdictMode::LiteralExact,
                },
                stats,
            ))
        }
        SupportMode::Bounded(cfg) => {
            // An inconsistent base supports everything; no pool is needed.
            let stats = SupportStats {
                derives_calls: 1,
                ..SupportStats::default()
            };
            if derives(&q.base, &AtomicQuery::bot([]))?.derivable {
                let verdict = SupportVerdict {
                    status: Status::Supported,
                    witness: None,
                    mode: VerdictMode::Bounded {
                        pool_size: 0,
                        depth: cfg.pool_depth,
                    },
                };
                return Ok((verdict, stats));
            }
            let universe = support_universe(q);
            let pool = rule_pool(&universe, &q.base, cfg.pool_cap)?;
            let pool_size = pool.len();
            let mut quantified: BTreeSet<Literal> = universe.clone();
            for c in fresh_pairs(&universe, 1) {
                quantified.insert(c.assert());
                quantified.insert(c.deny());
            }
            let mut ev = Evaluator::new(&q.base, pool, quantified, cfg);
            let context = q.context.clone();
            let result = ev.eval(&[], &context, &q.goal, None)?;
            let witness = result.witness.map(|w| Witness {
                extension: w
                    .extension
                    .iter()
                    .map(|&i| ev.pool[i].clone())
                    .chain(w.axioms.into_iter().map(AtomicRule::axiom))
                    .collect(),
                literal: w.literal,
                valuation: None,
            });
            Ok((
                SupportVerdict {
                    status: result.status,
                    witness,
                    mode: VerdictMode::Bounded {
                        pool_size,
                        depth: cfg.pool_depth,
                    },
                },
                ev.stats,
            ))
        }
    }
}

/// Literals of the base and of the sequent, closed under dual.
pub fn support_universe(q: &SupportQuery) -> BTreeSet<Literal> {
    let mut out = BTreeSet::new();
    let mut add = |l: &Literal| {
        out.insert(l.dual());
        out.insert(l.clone());
    };
    for l in q.base.literals() {
        add(&l);
    }
    for f in q.context.iter().chain([&q.goal]) {
        for c in f.contents() {
            add(&c.assert());
        }
    }
    out
}

/// Every rule over `universe` with at most two subrules and at most two
/// hypotheses per subrule, skipping subrules whose premise is among its own
/// hypotheses and rules already in `base`. Ordered by size, then text.
pub fn rule_pool(universe: &BTreeSet<Literal>, base: &Base, cap: usize) -> Result<Vec<AtomicRule>, SupportError> {
    let lits: Vec<&Literal> = universe.iter().collect();
    let mut hyp_sets: Vec<Vec<Literal>> = vec![vec![]];
    for (i, a) in lits.iter().enumerate() {
        hyp_sets.push(vec![(*a).clone()]);
        for b in &lits[i + 1..] {
            hyp_sets.push(vec![(*a).clone(), (*b).clone()]);
        }
    }
    let mut subrules: Vec<Subrule> = Vec::new();
    for h in &hyp_sets {
        for p in &lits {
            if !h.contains(p) {
                subrules.push(Subrule::new(h.iter().cloned(), (*p).clone()));
            }
        }
    }
    // Size check before building: heads × (1 + s + s(s-1)/2).
    let s = subrules.len();
    let size = lits.len() * (1 + s + s * s.saturating_sub(1) / 2);
    if size > cap {
        return Err(SupportError::PoolOverflow { size, cap });
    }
    let mut pool = Vec::with_capacity(size);
    for head in &lits {
        pool.push(AtomicRule::axiom((*head).clone()));
    }
    for sub in &subrules {
        for head in &lits {
            pool.push(AtomicRule::new(vec![sub.clone()], (*head).clone()));
        }
    }
    for (i, x) in subrules.iter().enumerate() {
        for y in &subrules[i + 1..] {
            for head in &lits {
                pool.push(AtomicRule::new(vec![x.clone(), y.clone()], (*head).clone()));
            }
        }
    }
    pool.retain(|r| !base.rules().contains(r));
    Ok(pool)
}

/// A bounded verdict with a witness given as pool indices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Eval {
    status: Status,
    witness: Option<RawWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct RawWitness {
    extension: Vec<usize>,
    /// Axioms `⇒ l` added on top of the pool rules.
    axioms: Vec<Literal>,
    literal: Option<Literal>,
}

impl Eval {
    fn supported() -> Self {
        Eval {
            status: Status::Supported,
            witness: None,
        }
    }

    fn unknown() -> Self {
        Eval {
            status: Status::Unknown,
            witness: None,
        }
    }

    fn refuted(extension: &[usize], literal: Option<Literal>) -> Self {
        Eval {
            status: Status::Refuted,
            witness: Some(RawWitness {
                extension: extension.to_vec(),
                axioms: vec![],
                literal,
            }),
        }
    }

    fn from_status(status: Status, extension: &[usize], literal: Option<Literal>) -> Self {
        match status {
            Status::Refuted => Self::refuted(extension, literal),
            Status::Supported => Self::supported(),
            Status::Unknown => Self::unknown(),
        }
    }
}

/// (summed weight of the sequent, whether its context is nonempty),
/// compared lexicographically.
type Measure = (usize, bool);

fn measure(context: &[Formula], goal: &Formula) -> Measure {
    (context.iter().chain([goal]).map(weight).sum(), !context.is_empty())
}

type MemoKey = (Vec<usize>, Vec<Formula>, Formula);

struct Evaluator<'a> {
    base: &'a Base,
    pool: Vec<AtomicRule>,
    literals: Vec<Literal>,
    cfg: BoundedConfig,
    memo: HashMap<MemoKey, Eval>,
    derive_memo: HashMap<(Vec<usize>, AtomicQuery), bool>,
    stats: SupportStats,
}

impl<'a> Evaluator<'a> {
    fn new(base: &'a Base, pool: Vec<AtomicRule>, literals: BTreeSet<Literal>, cfg: BoundedConfig) -> Self {
        Evaluator {
            base,
            pool,
            literals: literals.into_iter().collect(),
            cfg,
            memo: HashMap::new(),
            derive_memo: HashMap::new(),
            stats: SupportStats::default(),
        }
    }

    fn exhausted(&mut self) -> bool {
        if self.stats.calls + self.stats.derives_calls > self.cfg.call_budget {
            self.stats.budget_exhausted = true;
        }
        self.stats.budget_exhausted
    }

    fn derives(&mut self, ext: &[usize], q: AtomicQuery) -> Result<bool, SupportError> {
        let key = (ext.to_vec(), q);
        if let Some(&v) = self.derive_memo.get(&key) {
            return Ok(v);
        }
        self.stats.derives_calls += 1;
        let base = self.base.union(ext.iter().map(|&i| self.pool[i].clone()));
        let opts = DeriveOptions {
            certificate: false,
            ..DeriveOptions::default()
        };
        let v = derives_with(&base, &key.1, &opts)?.derivable;
        self.derive_memo.insert(key, v);
        Ok(v)
    }

    /// `L ⊩ l` and `L ⊩ ⊥` for literal `L`, exact by derivability.
    fn literal_sequent(&mut self, ext: &[usize], context: &[Formula], goal: &Formula) -> Result<Status, SupportError> {
        if context.contains(&Formula::Bot) {
            return Ok(Status::Supported);
        }
        let lits = context.iter().filter_map(|f| f.as_literal().cloned());
        let goal = match goal {
            Formula::Bot => Goal::Bot,
            g => Goal::Lit(g.as_literal().expect("literal goal").clone()),
        };
        let ok = self.derives(ext, AtomicQuery::new(lits, goal))?;
        Ok(if ok { Status::Supported } else { Status::Refuted })
    }

    /// Extensions of `ext` by up to `pool_depth` further pool rules,
    /// smallest first.
    fn extensions(&self, ext: &[usize]) -> Vec<Vec<usize>> {
        let free: Vec<usize> = (0..self.pool.len()).filter(|i| !ext.contains(i)).collect();
        let mut out = vec![ext.to_vec()];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..self.cfg.pool_depth {
            let mut next = Vec::new();
            for added in &layer {
                let start = added.last().map_or(0, |&last| free.partition_point(|&i| i <= last));
                for &i in &free[start..] {
                    let mut a = added.clone();
                    a.push(i);
                    let mut e: Vec<usize> = ext.iter().copied().chain(a.iter().copied()).collect();
                    e.sort_unstable();
                    out.push(e);
                    next.push(a);
                }
            }
            layer = next;
        }
        out
    }

    fn eval(
        &mut self,
        ext: &[usize],
        context: &[Formula],
        goal: &Formula,
        parent: Option<Measure>,
    ) -> Result<Eval, SupportError> {
        self.stats.calls += 1;
        if self.exhausted() {
            return Ok(Eval::unknown());
        }
        let m = measure(context, goal);
        if parent.is_some_and(|p| m >= p) {
            self.stats.measure_violations += 1;
        }
        let mut ctx: Vec<Formula> = context.iter().filter(|f| **f != Formula::Top).cloned().collect();
        ctx.sort();
        ctx.dedup();
        let key = (ext.to_vec(), ctx.clone(), goal.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let v = self.eval_fresh(ext, &ctx, goal, m)?;
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    fn eval_fresh(&mut self, ext: &[usize], ctx: &[Formula], goal: &Formula, m: Measure) -> Result<Eval, SupportError> {
        if ctx.contains(&Formula::Bot) {
            return Ok(Eval::supported());
        }
        // An inconsistent base supports every formula.
        if self.derives(ext, AtomicQuery::bot([]))? {
            return Ok(Eval::supported());
        }
        let atomic = |f: &Formula| f.is_literal() || *f == Formula::Bot;
        if ctx.iter().all(atomic) && atomic(goal) {
            let status = self.literal_sequent(ext, ctx, goal)?;
            let mut v = Eval::from_status(status, ext, goal.as_literal().cloned());
            // The canonical extension asserting the context refutes it.
            if let Some(w) = &mut v.witness {
                w.axioms = ctx.iter().filter_map(|f| f.as_literal().cloned()).collect();
            }
            return Ok(v);
        }
        if !ctx.is_empty() {
            return self.inference(ext, ctx, goal, m);
        }
        match goal {
            Formula::Top => Ok(Eval::supported()),
            Formula::Lit(_) | Formula::Bot => unreachable!("handled as a literal sequent"),
            Formula::And(a, b) => {
                let left = self.eval(ext, &[], a, Some(m))?;
                if left.status == Status::Refuted {
                    return Ok(left);
                }
                let right = self.eval(ext, &[], b, Some(m))?;
                Ok(match (left.status, right.status) {
                    (_, Status::Refuted) => right,
                    (Status::Supported, Status::Supported) => Eval::supported(),
                    _ => Eval::unknown(),
                })
            }
            Formula::Imp(a, b) => self.eval(ext, std::slice::from_ref(&**a), b, Some(m)),
            Formula::Or(a, b) => self.disjunction(ext, a, b, m),
        }
    }

    /// `Γ ⊩ φ` with Γ nonempty: for every extension, support of all of Γ
    /// gives support of φ.
    fn inference(&mut self, ext: &[usize], ctx: &[Formula], goal: &Formula, m: Measure) -> Result<Eval, SupportError> {
        if ctx.contains(goal) || *goal == Formula::Top {
            return Ok(Eval::supported());
        }
        // Exact rewrites. A conjunction is supported iff both conjuncts are,
        // so it splits in the context and in the goal. With support monotone
        // in the base, Γ ⊩ φ → ψ iff Γ, φ ⊩ ψ.
        if let Some(i) = ctx.iter().position(|f| matches!(f, Formula::And(..))) {
            let Formula::And(a, b) = &ctx[i] else { unreachable!() };
            let mut split = ctx.to_vec();
            split.splice(i..=i, [(**a).clone(), (**b).clone()]);
            return self.eval(ext, &split, goal, Some(m));
        }
        match goal {
            Formula::And(a, b) => {
                let left = self.eval(ext, ctx, a, Some(m))?;
                if left.status == Status::Refuted {
                    return Ok(left);
                }
                let right = self.eval(ext, ctx, b, Some(m))?;
                return Ok(match (left.status, right.status) {
                    (_, Status::Refuted) => right,
                    (Status::Supported, Status::Supported) => Eval::supported(),
                    _ => Eval::unknown(),
                });
            }
            Formula::Imp(a, b) => {
                let mut wider = ctx.to_vec();
                wider.push((**a).clone());
                return self.eval(ext, &wider, b, Some(m));
            }
            _ => {}
        }
        // Monotonicity: support of φ here carries to every extension.
        let direct = self.eval(ext, &[], goal, Some(m))?;
        if direct.status == Status::Supported {
            return Ok(direct);
        }
        for e in self.extensions(ext) {
            if self.exhausted() {
                break;
            }
            let mut premises = Status::Supported;
            for g in ctx {
                match self.eval(&e, &[], g, Some(m))?.status {
                    Status::Supported => {}
                    s => {
                        premises = s;
                        break;
                    }
                }
            }
            if premises != Status::Supported {
                continue;
            }
            let concl = self.eval(&e, &[], goal, Some(m))?;
            if concl.status == Status::Refuted {
                return Ok(concl);
            }
        }
        Ok(Eval::unknown())
    }

    /// `⊩ φ ∨ ψ`: for every extension and literal `l`, `φ ⊩ l` and `ψ ⊩ l`
    /// give `⊩ l`.
    fn disjunction(&mut self, ext: &[usize], a: &Formula, b: &Formula, m: Measure) -> Result<Eval, SupportError> {
        for side in [a, b] {
            if self.eval(ext, &[], side, Some(m))?.status == Status::Supported {
                return Ok(Eval::supported());
            }
        }
        let literals = self.literals.clone();
        for e in self.extensions(ext) {
            if self.exhausted() {
                break;
            }
            for l in &literals {
                let goal = Formula::Lit(l.clone());
                if self.derives(&e, AtomicQuery::new([], l.clone()))? {
                    continue;
                }
                if self.eval(&e, std::slice::from_ref(a), &goal, Some(m))?.status != Status::Supported {
                    continue;
                }
                if self.eval(&e, std::slice::from_ref(b), &goal, Some(m))?.status == Status::Supported {
                    return Ok(Eval::refuted(&e, Some(l.clone())));
                }
            }
        }
        Ok(Eval::unknown())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckFailure {
    pub context: Vec<Formula>,
    pub goal: Formula,
    pub oracle: Status,
    pub bounded: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CrossCheckReport {
    pub total: usize,
    pub supported: usize,
    pub refuted: usize,
    pub unknown: usize,
    /// Bounded and oracle verdicts that contradict each other.
    pub hard_failures: Vec<CrossCheckFailure>,
    pub measure_violations: usize,
    /// Queries whose bounded run hit the call budget.
    pub exhausted: usize,
}

impl CrossCheckReport {
    pub fn unknown_rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.unknown as f64 / self.total as f64
        }
    }
}

/// Runs oracle and bounded modes on empty-base queries and records every
/// disagreement between definite verdicts.
pub fn cross_check(corpus: &[SupportQuery], pool_depth: usize) -> Result<CrossCheckReport, SupportError> {
    let cfg = BoundedConfig {
        pool_depth,
        ..BoundedConfig::default()
    };
    let mut report = CrossCheckReport::default();
    for q in corpus {
        let oracle = support(q, SupportMode::Oracle)?;
        let (bounded, stats) = support_with_stats(q, SupportMode::Bounded(cfg))?;
        report.total += 1;
        report.measure_violations += stats.measure_violations;
        report.exhausted += usize::from(stats.budget_exhausted);
        match bounded.status {
            Status::Supported => report.supported += 1,
            Status::Refuted => report.refuted += 1,
            Status::Unknown => report.unknown += 1,
        }
        if bounded.status != Status::Unknown && bounded.status != oracle.status {
            report.hard_failures.push(CrossCheckFailure {
                context: q.context.clone(),
                goal: q.goal.clone(),
                oracle: oracle.status,
                bounded: bounded.status,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::parse_base;
    use crate::syntax::{enumerate, parse, signature};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn bounded() -> SupportMode {
        SupportMode::Bounded(BoundedConfig::default())
    }

    #[test]
    fn oracle_examples() {
        let v = support(&SupportQuery::valid(vec![], p("a | a-")), SupportMode::Oracle).unwrap();
        assert_eq!(v.status, Status::Supported);
        let v = support(&SupportQuery::valid(vec![], p("a")), SupportMode::Oracle).unwrap();
        assert_eq!(v.status, Status::Refuted);
        assert!(v.witness.unwrap().valuation.is_some());
        let q = SupportQuery::new(parse_base("=> a+").unwrap(), vec![], p("a"));
        assert!(matches!(
            support(&q, SupportMode::Oracle),
            Err(SupportError::Precondition(_))
        ));
    }

    #[test]
    fn literal_exact_examples() {
        let b = parse_base("=> b-\na- => b+").unwrap();
        let q = SupportQuery::new(b.clone(), vec![p("a")], p("a"));
        assert_eq!(
            support(&q, SupportMode::LiteralExact).unwrap().status,
            Status::Supported
        );
        let q = SupportQuery::new(b.clone(), vec![], p("a+"));
        assert_eq!(
            support(&q, SupportMode::LiteralExact).unwrap().status,
            Status::Supported
        );
        let q = SupportQuery::new(b, vec![], p("a -> a"));
        assert!(support(&q, SupportMode::LiteralExact).is_err());
    }

    #[test]
    fn bounded_examples() {
        let q = SupportQuery::new(parse_base("=> a-").unwrap(), vec![], p("a"));
        let v = support(&q, bounded()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        let w = v.witness.unwrap();
        assert!(w.extension.is_empty());
        assert_eq!(w.literal, Some(Literal::parse("a+").unwrap()));

        let top = support(&SupportQuery::valid(vec![], Formula::Top), bounded()).unwrap();
        assert_eq!(top.status, Status::Supported);
        let bot = support(&SupportQuery::valid(vec![Formula::Bot], p("a")), bounded()).unwrap();
        assert_eq!(bot.status, Status::Supported);
        // `a+ -> a+` is settled through the literal fragment.
        let v = support(&SupportQuery::valid(vec![], p("a -> a")), bounded()).unwrap();
        assert_eq!(v.status, Status::Supported);
        // a+ ⊩ b+ fails once a+ is asserted.
        let v = support(&SupportQuery::valid(vec![], p("a -> b")), bounded()).unwrap();
        assert_eq!(v.status, Status::Refuted);
        assert_eq!(
            v.witness.unwrap().extension,
            vec![AtomicRule::axiom(Literal::parse("a+").unwrap())]
        );
    }

    #[test]
    fn bounded_never_contradicts_the_oracle() {
        let contents = signature(1);
        let formulas = enumerate(&contents, 2);
        let mut corpus: Vec<SupportQuery> = formulas
            .iter()
            .map(|g| SupportQuery::valid(vec![], g.clone()))
            .collect();
        for c in formulas.iter().take(12) {
            for g in formulas.iter().take(20) {
                corpus.push(SupportQuery::valid(vec![c.clone()], g.clone()));
            }
        }
        let report = cross_check(&corpus, 1).unwrap();
        assert!(report.hard_failures.is_empty(), "{:?}", report.hard_failures);
        assert_eq!(report.measure_violations, 0);
        assert!(report.supported + report.refuted > 0);
    }

    #[test]
    fn pool_respects_shape_limits() {
        let universe: BTreeSet<Literal> = ["a+", "a-"].iter().map(|s| Literal::parse(s).unwrap()).collect();
        let pool = rule_pool(&universe, &Base::default(), DEFAULT_POOL_CAP).unwrap();
        assert!(pool.iter().all(|r| r.subrules.len() <= 2));
        assert!(pool
            .iter()
            .all(|r| r.subrules.iter().all(|s| !s.hypotheses.contains(&s.premise))));
        // 2 axioms, 4 one-subrule shapes and 6 two-subrule shapes, each with 2 heads.
        assert_eq!(pool.len(), 2 * (1 + 4 + 6));
        assert!(matches!(
            rule_pool(&universe, &Base::default(), 5),
            Err(SupportError::PoolOverflow { .. })
        ));
    }

    #[test]
    fn budget_gives_unknown() {
        let q = SupportQuery::valid(vec![p("a"), p("a -> b")], p("b"));
        let cfg = BoundedConfig {
            call_budget: 50,
            ..BoundedConfig::default()
        };
        let (v, stats) = support_with_stats(&q, SupportMode::Bounded(cfg)).unwrap();
        assert_eq!(v.status, Status::Unknown);
        assert!(stats.budget_exhausted);
        // an inconsistent base needs no pool at all
        let q = SupportQuery::new(parse_base("=> a+\n=> a-").unwrap(), vec![], p("(b -> c) & d"));
        assert_eq!(support(&q, bounded()).unwrap().status, Status::Supported);
    }
}
