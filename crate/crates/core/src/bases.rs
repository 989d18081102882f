//! Atomic rules, finite bases, and derivability `L ⊢_B l` / `L ⊢_B ⊥`.
//!
//! [`derives`] decides a query by saturating the context under rule
//! application and splitting on undecided contents: a failed branch yields a
//! complete, consistent, rule-closed set of literals (a countermodel), and a
//! full search tree is returned as a [`Certificate`] that [`Certificate::replay`]
//! checks against the base without using the engine.
//!
//! [`derives_oracle`] is the slow second route: the five closure rules run
//! naively over every context between the query's context and a finite
//! universe.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::syntax::{Content, Literal, Polarity};

/// Bitset engine width: two literals per content.
pub const DEFAULT_MAX_CONTENTS: usize = 64;
pub const DEFAULT_ORACLE_MAX_LITERALS: usize = 12;
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

/// `(H ⇒ p)`: the premise `p` under the extra hypotheses `H`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subrule {
    pub hypotheses: BTreeSet<Literal>,
    pub premise: Literal,
}

impl Subrule {
    pub fn new(hypotheses: impl IntoIterator<Item = Literal>, premise: Literal) -> Self {
        Subrule {
            hypotheses: hypotheses.into_iter().collect(),
            premise,
        }
    }

    pub fn plain(premise: Literal) -> Self {
        Self::new([], premise)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomicRule {
    pub subrules: Vec<Subrule>,
    pub head: Literal,
}

impl AtomicRule {
    pub fn axiom(head: Literal) -> Self {
        AtomicRule { subrules: vec![], head }
    }

    /// `l₁, …, lₙ ⇒ l`.
    pub fn first_level(premises: impl IntoIterator<Item = Literal>, head: Literal) -> Self {
        AtomicRule {
            subrules: premises.into_iter().map(Subrule::plain).collect(),
            head,
        }
    }

    pub fn new(subrules: Vec<Subrule>, head: Literal) -> Self {
        AtomicRule { subrules, head }
    }

    pub fn is_first_level(&self) -> bool {
        self.subrules.iter().all(|s| s.hypotheses.is_empty())
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.subrules
            .iter()
            .flat_map(|s| s.hypotheses.iter().chain([&s.premise]))
            .chain([&self.head])
    }
}

impl fmt::Display for AtomicRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |ls: &mut dyn Iterator<Item = &Literal>| ls.map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
        if self.is_first_level() {
            let premises = join(&mut self.subrules.iter().map(|s| &s.premise));
            if premises.is_empty() {
                return write!(f, "=> {}", self.head);
            }
            return write!(f, "{premises} => {}", self.head);
        }
        let parts: Vec<String> = self
            .subrules
            .iter()
            .map(|s| {
                let hyps = join(&mut s.hypotheses.iter());
                if hyps.is_empty() {
                    format!("(=> {})", s.premise)
                } else {
                    format!("({hyps} => {})", s.premise)
                }
            })
            .collect();
        write!(f, "{} => {}", parts.join(", "), self.head)
    }
}

/// A finite set of atomic rules, kept in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Base {
    rules: Vec<AtomicRule>,
}

impl Base {
    pub fn new(rules: impl IntoIterator<Item = AtomicRule>) -> Self {
        let mut base = Base::default();
        base.extend(rules);
        base
    }

    pub fn rules(&self) -> &[AtomicRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn insert(&mut self, rule: AtomicRule) -> bool {
        if self.rules.contains(&rule) {
            return false;
        }
        self.rules.push(rule);
        true
    }

    pub fn extend(&mut self, rules: impl IntoIterator<Item = AtomicRule>) {
        for r in rules {
            self.insert(r);
        }
    }

    pub fn union(&self, rules: impl IntoIterator<Item = AtomicRule>) -> Base {
        let mut out = self.clone();
        out.extend(rules);
        out
    }

    pub fn is_subset(&self, other: &Base) -> bool {
        self.rules.iter().all(|r| other.rules.contains(r))
    }

    pub fn literals(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(|r| r.literals().cloned()).collect()
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Goal {
    Lit(Literal),
    Bot,
}

impl Goal {
    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Goal::Lit(l) => Some(l),
            Goal::Bot => None,
        }
    }

    pub fn parse(text: &str) -> Result<Goal, BasesError> {
        match text.trim() {
            "bot" => Ok(Goal::Bot),
            t => Literal::parse(t).map(Goal::Lit).map_err(|e| BasesError::Parse {
                line: 0,
                message: format!("`{t}`: {e}"),
            }),
        }
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goal::Lit(l) => write!(f, "{l}"),
            Goal::Bot => f.write_str("bot"),
        }
    }
}

impl From<Literal> for Goal {
    fn from(l: Literal) -> Self {
        Goal::Lit(l)
    }
}

impl Serialize for Goal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Goal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Goal::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AtomicQuery {
    pub context: BTreeSet<Literal>,
    pub goal: Goal,
}

impl AtomicQuery {
    pub fn new(context: impl IntoIterator<Item = Literal>, goal: impl Into<Goal>) -> Self {
        AtomicQuery {
            context: context.into_iter().collect(),
            goal: goal.into(),
        }
    }

    pub fn bot(context: impl IntoIterator<Item = Literal>) -> Self {
        Self::new(context, Goal::Bot)
    }
}

impl fmt::Display for AtomicQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx: Vec<String> = self.context.iter().map(|l| l.to_string()).collect();
        write!(f, "{} |- {}", ctx.join(", "), self.goal)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BasesError {
    #[error("universe has {found} contents, above the cap of {cap}")]
    UniverseTooLarge { found: usize, cap: usize },
    #[error("search exceeded {0} nodes")]
    SearchBudget(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl BasesError {
    pub fn is_resource(&self) -> bool {
        matches!(self, BasesError::UniverseTooLarge { .. } | BasesError::SearchBudget(_))
    }
}

/// Every literal in the base, the context and the goal, closed under dual.
pub fn relevant_universe(b: &Base, q: &AtomicQuery) -> BTreeSet<Literal> {
    let mut out = BTreeSet::new();
    let all = b
        .literals()
        .into_iter()
        .chain(q.context.iter().cloned())
        .chain(q.goal.literal().cloned());
    for l in all {
        out.insert(l.dual());
        out.insert(l);
    }
    out
}

/// One rule application during saturation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fire {
    /// Index into the base's rules.
    pub rule: usize,
    pub head: Literal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    /// The target literal was reached.
    Goal,
    /// Both literals of this content were reached.
    Clash(Content),
}

/// A search tree. At each node the rules in `fired` are applied in order to
/// the current context; a leaf then closes, and a split adds `c+` on one
/// side and `c-` on the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trace {
    Closed {
        fired: Vec<Fire>,
        by: Closure,
    },
    Split {
        fired: Vec<Fire>,
        content: Content,
        assert: Box<Trace>,
        deny: Box<Trace>,
    },
}

impl Trace {
    pub fn nodes(&self) -> usize {
        match self {
            Trace::Closed { .. } => 1,
            Trace::Split { assert, deny, .. } => 1 + assert.nodes() + deny.nodes(),
        }
    }
}

/// Evidence for a positive answer. With `denied_goal = Some(g)` the tree
/// refutes `L ∪ {g^⊥}`, from which `L ⊢ g` follows by DM.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub denied_goal: Option<Literal>,
    pub tree: Trace,
}

impl Certificate {
    /// Checks the certificate against `b` and `q` step by step.
    pub fn replay(&self, b: &Base, q: &AtomicQuery) -> Result<(), String> {
        let mut ctx = q.context.clone();
        let target = match (&self.denied_goal, &q.goal) {
            (None, goal) => goal.clone(),
            (Some(g), Goal::Lit(goal)) if g == goal => {
                ctx.insert(g.dual());
                Goal::Bot
            }
            (Some(g), goal) => return Err(format!("certificate denies {g} but the goal is {goal}")),
        };
        replay_tree(b, ctx, &target, &self.tree)
    }
}

fn supports_subrule(ctx: &BTreeSet<Literal>, s: &Subrule) -> bool {
    ctx.contains(&s.premise) || s.hypotheses.iter().any(|h| ctx.contains(&h.dual()))
}

fn replay_tree(b: &Base, mut ctx: BTreeSet<Literal>, target: &Goal, tree: &Trace) -> Result<(), String> {
    let fired = match tree {
        Trace::Closed { fired, .. } | Trace::Split { fired, .. } => fired,
    };
    for step in fired {
        let rule = b.rules().get(step.rule).ok_or(format!("no rule #{}", step.rule))?;
        if rule.head != step.head {
            return Err(format!("rule #{} has head {}, not {}", step.rule, rule.head, step.head));
        }
        if let Some(s) = rule.subrules.iter().find(|s| !supports_subrule(&ctx, s)) {
            return Err(format!("rule `{rule}` fired without its premise {}", s.premise));
        }
        ctx.insert(step.head.clone());
    }
    match tree {
        Trace::Closed { by: Closure::Goal, .. } => match target {
            Goal::Lit(g) if ctx.contains(g) => Ok(()),
            _ => Err(format!("closed at goal {target} which was not reached")),
        },
        Trace::Closed {
            by: Closure::Clash(c), ..
        } => {
            if ctx.contains(&c.assert()) && ctx.contains(&c.deny()) {
                Ok(())
            } else {
                Err(format!("claimed clash on {c} is absent"))
            }
        }
        Trace::Split {
            content, assert, deny, ..
        } => {
            let mut pos = ctx.clone();
            pos.insert(content.assert());
            replay_tree(b, pos, target, assert)?;
            ctx.insert(content.deny());
            replay_tree(b, ctx, target, deny)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationAnswer {
    pub derivable: bool,
    pub universe: BTreeSet<Literal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    /// For a negative answer: a complete, consistent, rule-closed set of
    /// literals over the universe that contains the context but not the goal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub countermodel: Option<BTreeSet<Literal>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeriveOptions {
    pub max_contents: usize,
    pub node_budget: usize,
    pub certificate: bool,
}

impl Default for DeriveOptions {
    fn default() -> Self {
        DeriveOptions {
            max_contents: DEFAULT_MAX_CONTENTS,
            node_budget: DEFAULT_NODE_BUDGET,
            certificate: true,
        }
    }
}

pub fn derives(b: &Base, q: &AtomicQuery) -> Result<DerivationAnswer, BasesError> {
    derives_with(b, q, &DeriveOptions::default())
}

pub fn derives_with(b: &Base, q: &AtomicQuery, opts: &DeriveOptions) -> Result<DerivationAnswer, BasesError> {
    let universe = relevant_universe(b, q);
    let engine = Engine::compile(b, &universe, opts)?;
    let ctx = engine.mask(q.context.iter());
    let (start, denied_goal) = match &q.goal {
        Goal::Lit(g) if q.context.contains(g) => {
            let tree = Trace::Closed {
                fired: vec![],
                by: Closure::Goal,
            };
            return Ok(DerivationAnswer {
                derivable: true,
                universe,
                certificate: opts.certificate.then_some(Certificate {
                    denied_goal: None,
                    tree,
                }),
                countermodel: None,
            });
        }
        Goal::Lit(g) => (ctx | engine.bit(&g.dual()), Some(g.clone())),
        Goal::Bot => (ctx, None),
    };
    let mut budget = opts.node_budget;
    let outcome = engine.search(start, &mut budget)?;
    Ok(match outcome {
        Ok(tree) => DerivationAnswer {
            derivable: true,
            universe,
            certificate: opts.certificate.then_some(Certificate { denied_goal, tree }),
            countermodel: None,
        },
        Err(model) => DerivationAnswer {
            derivable: false,
            countermodel: Some(engine.complete(model)),
            universe,
            certificate: None,
        },
    })
}

type Mask = u128;

const EVEN: Mask = 0x5555_5555_5555_5555_5555_5555_5555_5555;

fn dual_mask(m: Mask) -> Mask {
    ((m & EVEN) << 1) | ((m >> 1) & EVEN)
}

/// Literal ids are `2i` for `cᵢ+` and `2i + 1` for `cᵢ-`.
fn clash(m: Mask) -> Option<usize> {
    let both = m & (m >> 1) & EVEN;
    (both != 0).then(|| both.trailing_zeros() as usize / 2)
}

struct CompiledRule {
    /// Per subrule: the dual of its hypotheses, and its premise bit.
    subs: Vec<(Mask, Mask)>,
    head: Mask,
    src: usize,
}

struct Engine<'a> {
    base: &'a Base,
    contents: Vec<Content>,
    index: HashMap<Content, usize>,
    rules: Vec<CompiledRule>,
    /// Contents mentioned by some rule, in the order they are tried.
    split_order: Vec<usize>,
    trace: bool,
    node_budget: usize,
}

impl<'a> Engine<'a> {
    fn compile(base: &'a Base, universe: &BTreeSet<Literal>, opts: &DeriveOptions) -> Result<Self, BasesError> {
        let cap = opts.max_contents.min(DEFAULT_MAX_CONTENTS);
        let mut contents: Vec<Content> = Vec::new();
        let mut index = HashMap::new();
        // Rule contents first, so split order follows the base.
        for l in base.rules().iter().flat_map(|r| r.literals()).chain(universe.iter()) {
            if !index.contains_key(&l.content) {
                index.insert(l.content.clone(), contents.len());
                contents.push(l.content.clone());
            }
        }
        if contents.len() > cap {
            return Err(BasesError::UniverseTooLarge {
                found: contents.len(),
                cap,
            });
        }
        let mut engine = Engine {
            base,
            contents,
            index,
            rules: Vec::new(),
            split_order: Vec::new(),
            trace: opts.certificate,
            node_budget: opts.node_budget,
        };
        let mut seen = vec![false; engine.contents.len()];
        for (src, r) in base.rules().iter().enumerate() {
            let subs = r
                .subrules
                .iter()
                .map(|s| (dual_mask(engine.mask(s.hypotheses.iter())), engine.bit(&s.premise)))
                .collect();
            engine.rules.push(CompiledRule {
                subs,
                head: engine.bit(&r.head),
                src,
            });
            for l in r
                .subrules
                .iter()
                .flat_map(|s| s.hypotheses.iter().chain([&s.premise]))
                .chain([&r.head])
            {
                let i = engine.index[&l.content];
                if !seen[i] {
                    seen[i] = true;
                    engine.split_order.push(i);
                }
            }
        }
        Ok(engine)
    }

    fn bit(&self, l: &Literal) -> Mask {
        let i = self.index[&l.content];
        1 << (2 * i + (l.polarity == Polarity::Deny) as usize)
    }

    fn mask<'l>(&self, ls: impl Iterator<Item = &'l Literal>) -> Mask {
        ls.fold(0, |m, l| m | self.bit(l))
    }

    fn literal(&self, id: usize) -> Literal {
        let c = &self.contents[id / 2];
        if id.is_multiple_of(2) {
            c.assert()
        } else {
            c.deny()
        }
    }

    /// Applies rules until nothing new fires.
    fn saturate(&self, mut ctx: Mask, fired: &mut Vec<Fire>) -> Mask {
        loop {
            let mut changed = false;
            for r in &self.rules {
                if ctx & r.head != 0 {
                    continue;
                }
                if r.subs.iter().all(|&(hyp_duals, prem)| ctx & (prem | hyp_duals) != 0) {
                    ctx |= r.head;
                    changed = true;
                    if self.trace {
                        fired.push(Fire {
                            rule: r.src,
                            head: self.base.rules()[r.src].head.clone(),
                        });
                    }
                }
            }
            if !changed {
                return ctx;
            }
        }
    }

    fn closed(fired: Vec<Fire>, content: &Content) -> Trace {
        Trace::Closed {
            fired,
            by: Closure::Clash(content.clone()),
        }
    }

    /// Refutes `ctx`, or returns a consistent rule-closed extension that
    /// decides every rule content.
    fn search(&self, ctx: Mask, budget: &mut usize) -> Result<Result<Trace, Mask>, BasesError> {
        if *budget == 0 {
            return Err(BasesError::SearchBudget(self.node_budget));
        }
        *budget -= 1;
        let mut fired = Vec::new();
        let ctx = self.saturate(ctx, &mut fired);
        if let Some(c) = clash(ctx) {
            return Ok(Ok(Self::closed(fired, &self.contents[c])));
        }
        let decided = ctx | dual_mask(ctx);
        let open: Vec<usize> = self
            .split_order
            .iter()
            .copied()
            .filter(|&i| decided & (1 << (2 * i)) == 0)
            .collect();
        if open.is_empty() {
            return Ok(Err(ctx));
        }
        // Probe each open content: a side that saturates to a clash forces
        // the other side without branching.
        for &i in &open {
            for (id, other) in [(2 * i, 2 * i + 1), (2 * i + 1, 2 * i)] {
                let mut probe = Vec::new();
                let after = self.saturate(ctx | (1 << id), &mut probe);
                if let Some(c) = clash(after) {
                    let refuted = Self::closed(probe, &self.contents[c]);
                    let rest = match self.search(ctx | (1 << other), budget)? {
                        Ok(t) => t,
                        Err(model) => return Ok(Err(model)),
                    };
                    let (assert, deny) = if id % 2 == 0 { (refuted, rest) } else { (rest, refuted) };
                    return Ok(Ok(Trace::Split {
                        fired,
                        content: self.contents[i].clone(),
                        assert: Box::new(assert),
                        deny: Box::new(deny),
                    }));
                }
            }
        }
        let i = open[0];
        let assert = match self.search(ctx | (1 << (2 * i)), budget)? {
            Ok(t) => t,
            Err(model) => return Ok(Err(model)),
        };
        let deny = match self.search(ctx | (1 << (2 * i + 1)), budget)? {
            Ok(t) => t,
            Err(model) => return Ok(Err(model)),
        };
        Ok(Ok(Trace::Split {
            fired,
            content: self.contents[i].clone(),
            assert: Box::new(assert),
            deny: Box::new(deny),
        }))
    }

    /// Decides the remaining contents, which no rule mentions, by denial.
    fn complete(&self, model: Mask) -> BTreeSet<Literal> {
        (0..self.contents.len())
            .map(|i| {
                if model & (1 << (2 * i)) != 0 {
                    self.literal(2 * i)
                } else {
                    self.literal(2 * i + 1)
                }
            })
            .collect()
    }
}

/// Derivability over every context `C` with `root ⊆ C ⊆ U`, for a finite
/// universe `U` closed under dual, computed by naive global rounds of
/// REF, APP₁, APP₂, ABS and DM until nothing changes.
pub struct OracleTable {
    literals: Vec<Literal>,
    index: HashMap<Literal, usize>,
    root: u32,
    /// Indexed by context mask; bit `n` is ⊥.
    table: Vec<u32>,
}

impl OracleTable {
    pub fn build(
        b: &Base,
        universe: &BTreeSet<Literal>,
        root: &BTreeSet<Literal>,
        cap: usize,
    ) -> Result<Self, BasesError> {
        let mut all: BTreeSet<Literal> = universe.clone();
        for l in b.literals().into_iter().chain(root.iter().cloned()) {
            all.insert(l.dual());
            all.insert(l);
        }
        let cap = cap.min(20);
        if all.len() > cap {
            return Err(BasesError::UniverseTooLarge { found: all.len(), cap });
        }
        let literals: Vec<Literal> = all.into_iter().collect();
        let index: HashMap<Literal, usize> = literals.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let n = literals.len();
        let bot = 1u32 << n;
        let set = |ls: &BTreeSet<Literal>| ls.iter().fold(0u32, |m, l| m | 1 << index[l]);
        let dual_of: Vec<usize> = literals.iter().map(|l| index[&l.dual()]).collect();
        let root_mask = set(root);
        let axioms = b
            .rules()
            .iter()
            .filter(|r| r.subrules.is_empty())
            .fold(0u32, |m, r| m | 1 << index[&r.head]);
        let rules: Vec<(Vec<(u32, usize)>, usize)> = b
            .rules()
            .iter()
            .filter(|r| !r.subrules.is_empty())
            .map(|r| {
                let subs = r
                    .subrules
                    .iter()
                    .map(|s| (set(&s.hypotheses), index[&s.premise]))
                    .collect();
                (subs, index[&r.head])
            })
            .collect();
        let contexts: Vec<u32> = (0..1u32 << n).filter(|c| c & root_mask == root_mask).collect();
        let mut table = vec![0u32; 1 << n];
        loop {
            let mut changed = false;
            for &c in &contexts {
                let mut derived = table[c as usize] | c | axioms;
                for (subs, head) in &rules {
                    if subs.iter().all(|&(h, p)| table[(c | h) as usize] & (1 << p) != 0) {
                        derived |= 1 << head;
                    }
                }
                for i in 0..n {
                    if derived & (1 << i) != 0 && derived & (1 << dual_of[i]) != 0 {
                        derived |= bot;
                    }
                    if table[(c | 1 << i) as usize] & bot != 0 {
                        derived |= 1 << dual_of[i];
                    }
                }
                if derived != table[c as usize] {
                    table[c as usize] = derived;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Ok(OracleTable {
            literals,
            index,
            root: root_mask,
            table,
        })
    }

    pub fn universe(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    /// `None` when the query leaves the table's universe or root.
    pub fn query(&self, q: &AtomicQuery) -> Option<bool> {
        let mut ctx = 0u32;
        for l in &q.context {
            ctx |= 1 << self.index.get(l)?;
        }
        if ctx & self.root != self.root {
            return None;
        }
        let bit = match &q.goal {
            Goal::Bot => self.literals.len(),
            Goal::Lit(l) => *self.index.get(l)?,
        };
        Some(self.table[ctx as usize] & (1 << bit) != 0)
    }
}

/// `k` dual pairs over contents not used by `used`, named `f0`, `f1`, ….
pub fn fresh_pairs(used: &BTreeSet<Literal>, k: usize) -> Vec<Content> {
    let names: BTreeSet<&str> = used.iter().map(|l| l.content.name()).collect();
    (0..)
        .map(|i| format!("f{i}"))
        .filter(|n| !names.contains(n.as_str()))
        .take(k)
        .map(|n| Content::new(&n).expect("generated names are valid"))
        .collect()
}

pub fn derives_oracle(b: &Base, q: &AtomicQuery, extra_fresh_pairs: usize) -> Result<DerivationAnswer, BasesError> {
    derives_oracle_capped(b, q, extra_fresh_pairs, DEFAULT_ORACLE_MAX_LITERALS)
}

pub fn derives_oracle_capped(
    b: &Base,
    q: &AtomicQuery,
    extra_fresh_pairs: usize,
    cap: usize,
) -> Result<DerivationAnswer, BasesError> {
    let mut universe = relevant_universe(b, q);
    for c in fresh_pairs(&universe, extra_fresh_pairs) {
        universe.insert(c.assert());
        universe.insert(c.deny());
    }
    let table = OracleTable::build(b, &universe, &q.context, cap)?;
    let derivable = table.query(q).expect("query lies inside its own table");
    Ok(DerivationAnswer {
        derivable,
        universe,
        certificate: None,
        countermodel: None,
    })
}

/// Parses one rule per line; `#` starts a comment.
pub fn parse_base(text: &str) -> Result<Base, BasesError> {
    let mut base = Base::default();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let rule = parse_rule(line).map_err(|message| BasesError::Parse { line: n + 1, message })?;
        base.insert(rule);
    }
    Ok(base)
}

pub fn parse_rule(text: &str) -> Result<AtomicRule, String> {
    let tokens = tokenize(text)?;
    let mut p = RuleParser { tokens, pos: 0 };
    let rule = p.rule()?;
    if p.pos != p.tokens.len() {
        return Err(format!("unexpected `{}` after the head", p.tokens[p.pos]));
    }
    Ok(rule)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum RuleTok {
    Open,
    Close,
    Comma,
    Arrow,
    Lit(Literal),
}

impl fmt::Display for RuleTok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTok::Open => f.write_str("("),
            RuleTok::Close => f.write_str(")"),
            RuleTok::Comma => f.write_str(","),
            RuleTok::Arrow => f.write_str("=>"),
            RuleTok::Lit(l) => write!(f, "{l}"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<RuleTok>, String> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        if c.is_whitespace() {
            rest = &rest[c.len_utf8()..];
            continue;
        }
        let (tok, len) = match c {
            '(' => (RuleTok::Open, 1),
            ')' => (RuleTok::Close, 1),
            ',' => (RuleTok::Comma, 1),
            '=' if rest.starts_with("=>") => (RuleTok::Arrow, 2),
            _ => {
                let len = rest
                    .find(|ch: char| ch.is_whitespace() || "(),=".contains(ch))
                    .unwrap_or(rest.len());
                if len == 0 {
                    return Err(format!("unexpected `{c}`"));
                }
                let word = &rest[..len];
                if matches!(word, "bot" | "top") {
                    return Err(format!("`{word}` is not admissible in atomic rules"));
                }
                let lit = Literal::parse(word).map_err(|e| format!("`{word}`: {e}"))?;
                (RuleTok::Lit(lit), len)
            }
        };
        out.push(tok);
        rest = &rest[len..];
    }
    Ok(out)
}

struct RuleParser {
    tokens: Vec<RuleTok>,
    pos: usize,
}

impl RuleParser {
    fn peek(&self) -> Option<&RuleTok> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<RuleTok> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: RuleTok) -> Result<(), String> {
        match self.next() {
            Some(t) if t == want => Ok(()),
            Some(t) => Err(format!("expected `{want}`, found `{t}`")),
            None => Err(format!("expected `{want}` at end of line")),
        }
    }

    fn literal(&mut self) -> Result<Literal, String> {
        match self.next() {
            Some(RuleTok::Lit(l)) => Ok(l),
            Some(t) => Err(format!("expected a literal, found `{t}`")),
            None => Err("expected a literal at end of line".into()),
        }
    }

    fn rule(&mut self) -> Result<AtomicRule, String> {
        let mut subrules = Vec::new();
        if self.peek() != Some(&RuleTok::Arrow) {
            loop {
                subrules.push(self.subrule()?);
                if self.peek() == Some(&RuleTok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(RuleTok::Arrow)?;
        let head = self.literal()?;
        Ok(AtomicRule::new(subrules, head))
    }

    fn subrule(&mut self) -> Result<Subrule, String> {
        if self.peek() != Some(&RuleTok::Open) {
            return self.literal().map(Subrule::plain);
        }
        self.pos += 1;
        let mut hyps = Vec::new();
        if self.peek() != Some(&RuleTok::Arrow) {
            loop {
                hyps.push(self.literal()?);
                if self.peek() == Some(&RuleTok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(RuleTok::Arrow)?;
        let premise = self.literal()?;
        self.expect(RuleTok::Close)?;
        Ok(Subrule::new(hyps, premise))
    }
}

fn random_literal<R: Rng + ?Sized>(rng: &mut R, contents: &[Content]) -> Literal {
    let c = &contents[rng.gen_range(0..contents.len())];
    if rng.gen_bool(0.5) {
        c.assert()
    } else {
        c.deny()
    }
}

/// A random base of at most `max_rules` rules over `contents`, mixing
/// axioms, first-level rules and second-level rules with up to two
/// subrules of up to two hypotheses each.
pub fn random_base<R: Rng + ?Sized>(rng: &mut R, contents: &[Content], max_rules: usize) -> Base {
    let n = rng.gen_range(0..=max_rules);
    let rules = (0..n).map(|_| {
        let head = random_literal(rng, contents);
        let subs = (0..rng.gen_range(0..=2))
            .map(|_| {
                let hyps: Vec<Literal> = if rng.gen_bool(0.5) {
                    vec![]
                } else {
                    (0..rng.gen_range(1..=2))
                        .map(|_| random_literal(rng, contents))
                        .collect()
                };
                Subrule::new(hyps, random_literal(rng, contents))
            })
            .collect();
        AtomicRule::new(subs, head)
    });
    Base::new(rules.collect::<Vec<_>>())
}

/// A random query over `contents`: a context of up to two literals and a
/// literal goal, or ⊥ with probability one in five.
pub fn random_query<R: Rng + ?Sized>(rng: &mut R, contents: &[Content]) -> AtomicQuery {
    let context: Vec<Literal> = (0..rng.gen_range(0..=2))
        .map(|_| random_literal(rng, contents))
        .collect();
    if rng.gen_bool(0.2) {
        AtomicQuery::bot(context)
    } else {
        AtomicQuery::new(context, random_literal(rng, contents))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::signature;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn l(s: &str) -> Literal {
        Literal::parse(s).unwrap()
    }

    fn set(ls: &[&str]) -> BTreeSet<Literal> {
        ls.iter().map(|s| l(s)).collect()
    }

    fn base(text: &str) -> Base {
        parse_base(text).unwrap()
    }

    fn winston() -> Base {
        base("=> b-\na- => b+")
    }

    fn check_positive(b: &Base, q: &AtomicQuery) {
        let a = derives(b, q).unwrap();
        assert!(a.derivable, "{q}");
        a.certificate.unwrap().replay(b, q).unwrap();
    }

    #[test]
    fn universe_examples() {
        assert_eq!(
            relevant_universe(&base("=> a+"), &AtomicQuery::new([], l("a+"))),
            set(&["a+", "a-"])
        );
        assert_eq!(
            relevant_universe(&winston(), &AtomicQuery::new([], l("a+"))),
            set(&["a+", "a-", "b+", "b-"])
        );
        assert_eq!(
            relevant_universe(&Base::default(), &AtomicQuery::bot([l("a+")])),
            set(&["a+", "a-"])
        );
    }

    #[test]
    fn derives_examples() {
        check_positive(&base("=> a+"), &AtomicQuery::new([], l("a+")));
        check_positive(&winston(), &AtomicQuery::new([], l("a+")));
        check_positive(&base("=> a+\n=> a-"), &AtomicQuery::new([], l("q+")));
        check_positive(&Base::default(), &AtomicQuery::new([l("a+")], l("a+")));
        let a = derives(&winston(), &AtomicQuery::new([], l("a-"))).unwrap();
        assert!(!a.derivable);
        let model = a.countermodel.unwrap();
        assert!(model.contains(&l("a+")) && model.contains(&l("b-")));
    }

    #[test]
    fn second_level_rules() {
        // (a+ => b+) => c+ : c+ follows once a+ ⊢ b+, and classically also
        // from a- since the subrule is then discharged.
        let b = base("(a+ => b+) => c+");
        assert!(!derives(&b, &AtomicQuery::new([], l("c+"))).unwrap().derivable);
        check_positive(&b, &AtomicQuery::new([l("b+")], l("c+")));
        check_positive(&b, &AtomicQuery::new([l("a-")], l("c+")));
        let b2 = b.union([AtomicRule::first_level([l("a+")], l("b+"))]);
        check_positive(&b2, &AtomicQuery::new([], l("c+")));
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let b = winston();
        let q = AtomicQuery::new([], l("a+"));
        let cert = derives(&b, &q).unwrap().certificate.unwrap();
        assert!(cert.replay(&b, &q).is_ok());
        assert!(cert.replay(&base("=> b-"), &q).is_err());
        assert!(cert.replay(&b, &AtomicQuery::new([], l("a-"))).is_err());
    }

    #[test]
    fn base_text_round_trip() {
        let text = "=> a+\na+, b- => c+\n(a+ => b+), (c- => b+) => d-\n(=> a+), (b+, c+ => d+) => e-\n";
        let b = base(text);
        assert_eq!(b.len(), 4);
        assert_eq!(b.rules()[2].subrules.len(), 2);
        assert_eq!(b.to_string(), text);
        assert_eq!(base(&b.to_string()), b);
        assert!(matches!(parse_base("=> bot"), Err(BasesError::Parse { line: 1, .. })));
        assert!(parse_base("# only a comment\n\n").unwrap().is_empty());
        assert!(parse_base("a+ =>").is_err());
        assert!(parse_base("(a+ => b+ => c+").is_err());
    }

    #[test]
    fn oracle_examples() {
        assert!(
            derives_oracle(&Base::default(), &AtomicQuery::new([l("a+")], l("a+")), 0)
                .unwrap()
                .derivable
        );
        assert!(
            derives_oracle(&winston(), &AtomicQuery::new([], l("a+")), 0)
                .unwrap()
                .derivable
        );
        assert!(
            !derives_oracle(&winston(), &AtomicQuery::new([], l("a-")), 2)
                .unwrap()
                .derivable
        );
        assert!(
            derives_oracle(&base("=> a+\n=> a-"), &AtomicQuery::new([], l("q+")), 0)
                .unwrap()
                .derivable
        );
    }

    #[test]
    fn engine_matches_oracle_on_random_bases() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sig = signature(3);
        for _ in 0..200 {
            let b = random_base(&mut rng, &sig, 6);
            let q = random_query(&mut rng, &sig);
            let fast = derives(&b, &q).unwrap();
            let slow = derives_oracle(&b, &q, 1).unwrap();
            assert_eq!(fast.derivable, slow.derivable, "{q} in\n{b}");
            if let Some(cert) = &fast.certificate {
                cert.replay(&b, &q).unwrap();
            }
        }
    }

    #[test]
    fn countermodels_are_closed_and_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let sig = signature(3);
        for _ in 0..200 {
            let b = random_base(&mut rng, &sig, 6);
            let q = random_query(&mut rng, &sig);
            let a = derives(&b, &q).unwrap();
            let Some(model) = a.countermodel else { continue };
            assert!(q.context.is_subset(&model));
            if let Goal::Lit(g) = &q.goal {
                assert!(!model.contains(g));
            }
            for lit in &model {
                assert!(!model.contains(&lit.dual()));
            }
            for r in b.rules() {
                if r.subrules.iter().all(|s| supports_subrule(&model, s)) {
                    assert!(model.contains(&r.head), "{r} not closed");
                }
            }
        }
    }
}
