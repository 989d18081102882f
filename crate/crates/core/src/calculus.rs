//! Natural deduction for classical logic: the intuitionistic introduction
//! and elimination rules plus `DM` (conclude `φ^⊥` from a refutation of `φ`)
//! and `EXC` (`⊥` from `φ` and `φ^⊥`).
//!
//! Proof trees are checked node by node. Hypotheses are `Hyp` leaves with a
//! numeric label bound by exactly one ancestor `ImpI`, `OrE` or `DM` whose
//! `discharge` matches; open premises are `Assume` leaves.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::syntax::{cong, dual, random_formula, Content, Formula};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    TopI,
    BotE,
    ImpI,
    ImpE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    DM,
    EXC,
    Hyp,
    Assume,
}

impl Rule {
    pub fn is_classical(self) -> bool {
        matches!(self, Rule::DM | Rule::EXC)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawNode", into = "RawNode")]
pub struct ProofNode {
    pub rule: Rule,
    pub conclusion: Formula,
    pub premises: Vec<ProofNode>,
    /// Binder label for `ImpI`, `OrE` and `DM`.
    pub discharge: Option<u32>,
    /// Reference label for `Hyp`.
    pub label: Option<u32>,
}

impl ProofNode {
    pub fn new(rule: Rule, conclusion: Formula, premises: Vec<ProofNode>) -> Self {
        ProofNode {
            rule,
            conclusion,
            premises,
            discharge: None,
            label: None,
        }
    }

    pub fn assume(formula: Formula) -> Self {
        Self::new(Rule::Assume, formula, vec![])
    }

    pub fn hyp(label: u32, formula: Formula) -> Self {
        ProofNode {
            label: Some(label),
            ..Self::new(Rule::Hyp, formula, vec![])
        }
    }

    pub fn binder(rule: Rule, label: u32, conclusion: Formula, premises: Vec<ProofNode>) -> Self {
        ProofNode {
            discharge: Some(label),
            ..Self::new(rule, conclusion, premises)
        }
    }

    /// Height of the tree; a leaf has depth 1.
    pub fn depth(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofNode::size).sum::<usize>()
    }

    pub fn uses_classical_rules(&self) -> bool {
        self.rule.is_classical() || self.premises.iter().any(ProofNode::uses_classical_rules)
    }

    /// The node at `path` (a sequence of premise indices).
    pub fn at(&self, path: &[usize]) -> Option<&ProofNode> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get(*i)?.at(rest),
        }
    }

    pub fn at_mut(&mut self, path: &[usize]) -> Option<&mut ProofNode> {
        match path.split_first() {
            None => Some(self),
            Some((i, rest)) => self.premises.get_mut(*i)?.at_mut(rest),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ProofFormatError> {
        serde_json::from_str(text).map_err(|e| ProofFormatError(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof trees always serialise")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed proof script: {0}")]
pub struct ProofFormatError(pub String);

#[derive(Serialize, Deserialize)]
struct RawNode {
    rule: Rule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    conclusion: Option<Formula>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    formula: Option<Formula>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    premises: Vec<ProofNode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    discharge: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<u32>,
}

impl TryFrom<RawNode> for ProofNode {
    type Error = String;

    fn try_from(raw: RawNode) -> Result<Self, String> {
        let conclusion = match (raw.rule, raw.conclusion, raw.formula) {
            (Rule::Assume, Some(c), Some(f)) if c != f => {
                return Err(format!("Assume node has conclusion `{c}` but formula `{f}`"));
            }
            (Rule::Assume, c, f) => f.or(c).ok_or("Assume node needs a `formula`")?,
            (_, Some(c), _) => c,
            (rule, None, _) => return Err(format!("{rule:?} node needs a `conclusion`")),
        };
        Ok(ProofNode {
            rule: raw.rule,
            conclusion,
            premises: raw.premises,
            discharge: raw.discharge,
            label: raw.label,
        })
    }
}

impl From<ProofNode> for RawNode {
    fn from(node: ProofNode) -> Self {
        let (conclusion, formula) = match node.rule {
            Rule::Assume => (None, Some(node.conclusion)),
            _ => (Some(node.conclusion), None),
        };
        RawNode {
            rule: node.rule,
            conclusion,
            formula,
            premises: node.premises,
            discharge: node.discharge,
            label: node.label,
        }
    }
}

/// Location of a node: the premise indices followed from the root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NodePath(pub Vec<usize>);

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for i in &self.0 {
            write!(f, ".{i}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckErrorKind {
    RuleShape(String),
    UnboundHypothesis(u32),
    DischargeMismatch {
        label: u32,
        expected: Formula,
        found: Formula,
    },
    DualMismatch {
        first: Formula,
        second: Formula,
    },
    ShadowedLabel(u32),
}

impl CheckErrorKind {
    /// Stable name of the error class, used in reports.
    pub fn class(&self) -> &'static str {
        match self {
            CheckErrorKind::RuleShape(_) => "rule-shape mismatch",
            CheckErrorKind::UnboundHypothesis(_) => "unbound hypothesis label",
            CheckErrorKind::DischargeMismatch { .. } => "discharge-formula mismatch",
            CheckErrorKind::DualMismatch { .. } => "dual mismatch",
            CheckErrorKind::ShadowedLabel(_) => "shadowed label",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {} at {path}", kind.class(), detail(kind))]
pub struct CheckError {
    pub path: NodePath,
    pub kind: CheckErrorKind,
}

fn detail(kind: &CheckErrorKind) -> String {
    match kind {
        CheckErrorKind::RuleShape(s) => s.clone(),
        CheckErrorKind::UnboundHypothesis(l) => format!("label {l}"),
        CheckErrorKind::DischargeMismatch { label, expected, found } => {
            format!("label {label} discharges `{expected}` but the leaf is `{found}`")
        }
        CheckErrorKind::DualMismatch { first, second } => {
            format!("`{second}` is not a dual of `{first}`")
        }
        CheckErrorKind::ShadowedLabel(l) => format!("label {l} is already bound by an ancestor"),
    }
}

/// A proof tree that passed [`check`], with its open premises.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckedProof {
    pub root: ProofNode,
    pub open_assumptions: Vec<Formula>,
}

impl CheckedProof {
    pub fn conclusion(&self) -> &Formula {
        &self.root.conclusion
    }
}

pub fn check(root: &ProofNode) -> Result<CheckedProof, CheckError> {
    let mut checker = Checker {
        env: Vec::new(),
        open: Vec::new(),
        path: Vec::new(),
    };
    checker.node(root)?;
    Ok(CheckedProof {
        root: root.clone(),
        open_assumptions: checker.open,
    })
}

struct Checker {
    env: Vec<(u32, Formula)>,
    open: Vec<Formula>,
    path: Vec<usize>,
}

impl Checker {
    fn fail<T>(&self, kind: CheckErrorKind) -> Result<T, CheckError> {
        Err(CheckError {
            path: NodePath(self.path.clone()),
            kind,
        })
    }

    fn shape<T>(&self, msg: impl Into<String>) -> Result<T, CheckError> {
        self.fail(CheckErrorKind::RuleShape(msg.into()))
    }

    fn premise(&mut self, node: &ProofNode, i: usize) -> Result<(), CheckError> {
        self.path.push(i);
        self.node(&node.premises[i])?;
        self.path.pop();
        Ok(())
    }

    fn bound_premise(&mut self, node: &ProofNode, i: usize, hyp: Formula) -> Result<(), CheckError> {
        let pushed = match node.discharge {
            Some(label) => {
                if self.env.iter().any(|(l, _)| *l == label) {
                    return self.fail(CheckErrorKind::ShadowedLabel(label));
                }
                self.env.push((label, hyp));
                true
            }
            None => false,
        };
        let result = self.premise(node, i);
        if pushed {
            self.env.pop();
        }
        result
    }

    fn arity(&self, node: &ProofNode, n: usize) -> Result<(), CheckError> {
        if node.premises.len() != n {
            return self.shape(format!(
                "{:?} takes {n} premise(s), found {}",
                node.rule,
                node.premises.len()
            ));
        }
        Ok(())
    }

    fn node(&mut self, node: &ProofNode) -> Result<(), CheckError> {
        let concl = &node.conclusion;
        let prem = |i: usize| &node.premises[i].conclusion;
        if node.discharge.is_some() && !matches!(node.rule, Rule::ImpI | Rule::OrE | Rule::DM) {
            return self.shape(format!("{:?} does not discharge hypotheses", node.rule));
        }
        match node.rule {
            Rule::Assume => {
                self.arity(node, 0)?;
                self.open.push(concl.clone());
            }
            Rule::Hyp => {
                self.arity(node, 0)?;
                let Some(label) = node.label else {
                    return self.shape("Hyp leaf without a label");
                };
                match self.env.iter().rev().find(|(l, _)| *l == label) {
                    None => return self.fail(CheckErrorKind::UnboundHypothesis(label)),
                    Some((_, f)) if f != concl => {
                        return self.fail(CheckErrorKind::DischargeMismatch {
                            label,
                            expected: f.clone(),
                            found: concl.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            Rule::TopI => {
                self.arity(node, 0)?;
                if *concl != Formula::Top {
                    return self.shape("TopI must conclude top");
                }
            }
            Rule::BotE => {
                self.arity(node, 1)?;
                if *prem(0) != Formula::Bot {
                    return self.shape("BotE premise must conclude bot");
                }
                self.premise(node, 0)?;
            }
            Rule::ImpI => {
                self.arity(node, 1)?;
                let Formula::Imp(a, b) = concl else {
                    return self.shape("ImpI must conclude an implication");
                };
                if prem(0) != &**b {
                    return self.shape(format!("ImpI premise must conclude `{b}`, found `{}`", prem(0)));
                }
                self.bound_premise(node, 0, (**a).clone())?;
            }
            Rule::ImpE => {
                self.arity(node, 2)?;
                match prem(0) {
                    Formula::Imp(a, b) if **b == *concl && **a == *prem(1) => {}
                    major => {
                        return self.shape(format!(
                            "ImpE needs `{} -> {concl}` as major premise, found `{major}`",
                            prem(1)
                        ))
                    }
                }
                self.premise(node, 0)?;
                self.premise(node, 1)?;
            }
            Rule::AndI => {
                self.arity(node, 2)?;
                match concl {
                    Formula::And(a, b) if **a == *prem(0) && **b == *prem(1) => {}
                    _ => return self.shape("AndI conclusion must conjoin its premises"),
                }
                self.premise(node, 0)?;
                self.premise(node, 1)?;
            }
            Rule::AndE1 | Rule::AndE2 => {
                self.arity(node, 1)?;
                let Formula::And(a, b) = prem(0) else {
                    return self.shape("AndE premise must be a conjunction");
                };
                let want = if node.rule == Rule::AndE1 { a } else { b };
                if **want != *concl {
                    return self.shape(format!("{:?} must conclude `{want}`", node.rule));
                }
                self.premise(node, 0)?;
            }
            Rule::OrI1 | Rule::OrI2 => {
                self.arity(node, 1)?;
                let Formula::Or(a, b) = concl else {
                    return self.shape("OrI must conclude a disjunction");
                };
                let want = if node.rule == Rule::OrI1 { a } else { b };
                if **want != *prem(0) {
                    return self.shape(format!("{:?} premise must conclude `{want}`", node.rule));
                }
                self.premise(node, 0)?;
            }
            Rule::OrE => {
                self.arity(node, 3)?;
                let Formula::Or(a, b) = prem(0) else {
                    return self.shape("OrE major premise must be a disjunction");
                };
                if prem(1) != concl || prem(2) != concl {
                    return self.shape("OrE minor premises must conclude the conclusion");
                }
                let (a, b) = ((**a).clone(), (**b).clone());
                self.premise(node, 0)?;
                self.bound_premise(node, 1, a)?;
                self.bound_premise(node, 2, b)?;
            }
            Rule::DM => {
                self.arity(node, 1)?;
                if *prem(0) != Formula::Bot {
                    return self.shape("DM premise must conclude bot");
                }
                let mut leaves = Vec::new();
                if let Some(label) = node.discharge {
                    collect_hyps(&node.premises[0], label, &mut leaves);
                }
                // A vacuous discharge leaves φ unconstrained, and ⊥ already
                // gives every conclusion by BotE.
                let Some(refuted) = leaves.first().map(|f| (*f).clone()) else {
                    self.bound_premise(node, 0, dual(concl))?;
                    return Ok(());
                };
                if let Some(other) = leaves.iter().find(|f| ***f != refuted) {
                    return self.fail(CheckErrorKind::DischargeMismatch {
                        label: node.discharge.unwrap_or_default(),
                        expected: refuted,
                        found: (*other).clone(),
                    });
                }
                if !cong(concl, &dual(&refuted)) {
                    return self.fail(CheckErrorKind::DualMismatch {
                        first: refuted,
                        second: concl.clone(),
                    });
                }
                self.bound_premise(node, 0, refuted)?;
            }
            Rule::EXC => {
                self.arity(node, 2)?;
                if *concl != Formula::Bot {
                    return self.shape("EXC must conclude bot");
                }
                let (x, y) = (prem(0), prem(1));
                if !cong(y, &dual(x)) && !cong(x, &dual(y)) {
                    return self.fail(CheckErrorKind::DualMismatch {
                        first: x.clone(),
                        second: y.clone(),
                    });
                }
                self.premise(node, 0)?;
                self.premise(node, 1)?;
            }
        }
        if node.label.is_some() && node.rule != Rule::Hyp {
            return self.shape(format!("{:?} does not take a hypothesis label", node.rule));
        }
        Ok(())
    }
}

fn collect_hyps<'a>(node: &'a ProofNode, label: u32, out: &mut Vec<&'a Formula>) {
    if node.rule == Rule::Hyp && node.label == Some(label) {
        out.push(&node.conclusion);
    }
    if node.discharge == Some(label) {
        return;
    }
    for p in &node.premises {
        collect_hyps(p, label, out);
    }
}

/// Generates `count` random derivations over `signature` of depth at most
/// `max_depth`, each checked before it is returned. Deterministic per seed;
/// item `i` draws from its own stream so runs can be sharded.
pub fn fuzz_derivations(seed: u64, count: usize, signature: &[Content], max_depth: usize) -> Vec<CheckedProof> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut gen = Generator {
                rng,
                signature,
                next_label: 1,
                env: Vec::new(),
            };
            let root = gen.forward(max_depth.max(1));
            check(&root)
                .unwrap_or_else(|e| panic!("generator produced an invalid proof ({e}): {}", root.to_json_pretty()))
        })
        .collect()
}

struct Generator<'a> {
    rng: ChaCha8Rng,
    signature: &'a [Content],
    next_label: u32,
    env: Vec<(u32, Formula)>,
}

impl Generator<'_> {
    fn formula(&mut self) -> Formula {
        let depth = self.rng.gen_range(1..=2);
        random_formula(&mut self.rng, self.signature, depth)
    }

    /// A random formula, preferring hypotheses currently in scope.
    fn formula_or_hyp(&mut self) -> Formula {
        if !self.env.is_empty() && self.rng.gen_bool(0.5) {
            let i = self.rng.gen_range(0..self.env.len());
            return self.env[i].1.clone();
        }
        self.formula()
    }

    fn label(&mut self) -> u32 {
        self.next_label += 1;
        self.next_label - 1
    }

    fn under<T>(&mut self, label: u32, hyp: Formula, f: impl FnOnce(&mut Self) -> T) -> T {
        self.env.push((label, hyp));
        let out = f(self);
        self.env.pop();
        out
    }

    fn leaf(&mut self, goal: Formula) -> ProofNode {
        if goal == Formula::Top && self.rng.gen_bool(0.5) {
            return ProofNode::new(Rule::TopI, Formula::Top, vec![]);
        }
        match self.env.iter().rev().find(|(_, f)| *f == goal) {
            Some((label, _)) => ProofNode::hyp(*label, goal),
            None => ProofNode::assume(goal),
        }
    }

    /// Some variant of `φ` that is `≅` to it.
    fn congruent(&mut self, phi: Formula) -> Formula {
        let twice = dual(&dual(&phi));
        if self.rng.gen_bool(0.3) && cong(&phi, &twice) {
            twice
        } else {
            phi
        }
    }

    /// Forward generation: build premises, then apply a rule to them.
    fn forward(&mut self, budget: usize) -> ProofNode {
        if budget <= 1 {
            let goal = self.formula_or_hyp();
            return self.leaf(goal);
        }
        let d = budget - 1;
        match self.rng.gen_range(0..11) {
            0 => {
                let a = self.forward(d);
                let b = self.forward(d);
                let c = Formula::and(a.conclusion.clone(), b.conclusion.clone());
                ProofNode::new(Rule::AndI, c, vec![a, b])
            }
            1 => {
                let p = self.forward(d);
                let p = match p.conclusion {
                    Formula::And(..) => p,
                    _ => {
                        let goal = Formula::and(self.formula(), self.formula());
                        self.prove(goal, d)
                    }
                };
                let Formula::And(a, b) = p.conclusion.clone() else {
                    unreachable!()
                };
                if self.rng.gen_bool(0.5) {
                    ProofNode::new(Rule::AndE1, *a, vec![p])
                } else {
                    ProofNode::new(Rule::AndE2, *b, vec![p])
                }
            }
            2 => {
                let p = self.forward(d);
                let other = self.formula();
                if self.rng.gen_bool(0.5) {
                    let c = Formula::or(p.conclusion.clone(), other);
                    ProofNode::new(Rule::OrI1, c, vec![p])
                } else {
                    let c = Formula::or(other, p.conclusion.clone());
                    ProofNode::new(Rule::OrI2, c, vec![p])
                }
            }
            3 => {
                let hyp = self.formula();
                let label = self.label();
                let body = self.under(label, hyp.clone(), |g| g.forward(d));
                let c = Formula::imp(hyp, body.conclusion.clone());
                ProofNode::binder(Rule::ImpI, label, c, vec![body])
            }
            4 => {
                let minor = self.forward(d);
                let target = self.formula();
                let major = self.prove(Formula::imp(minor.conclusion.clone(), target.clone()), d);
                ProofNode::new(Rule::ImpE, target, vec![major, minor])
            }
            5 => {
                let target = self.formula();
                self.or_elim(target, d)
            }
            6 => {
                let bot = self.prove(Formula::Bot, d);
                let c = self.formula();
                ProofNode::new(Rule::BotE, c, vec![bot])
            }
            7 | 8 => {
                let refuted = self.formula();
                self.dm(refuted, d)
            }
            _ => {
                let a = self.forward(d);
                let other = dual(&a.conclusion);
                let other = self.congruent(other);
                let b = self.prove(other, d);
                if self.rng.gen_bool(0.5) {
                    ProofNode::new(Rule::EXC, Formula::Bot, vec![a, b])
                } else {
                    ProofNode::new(Rule::EXC, Formula::Bot, vec![b, a])
                }
            }
        }
    }

    fn or_elim(&mut self, goal: Formula, d: usize) -> ProofNode {
        let (x, y) = (self.formula(), self.formula());
        let major = self.prove(Formula::or(x.clone(), y.clone()), d);
        let label = self.label();
        let left = self.under(label, x, |g| g.prove(goal.clone(), d));
        let right = self.under(label, y, |g| g.prove(goal.clone(), d));
        ProofNode::binder(Rule::OrE, label, goal, vec![major, left, right])
    }

    /// `DM` refuting `refuted`, with a conclusion `≅` to its dual.
    fn dm(&mut self, refuted: Formula, d: usize) -> ProofNode {
        let label = self.label();
        let body = self.under(label, refuted.clone(), |g| {
            if d >= 2 && g.rng.gen_bool(0.6) {
                let hyp = ProofNode::hyp(label, refuted.clone());
                let other = g.congruent(dual(&refuted));
                let other = g.prove(other, d - 1);
                ProofNode::new(Rule::EXC, Formula::Bot, vec![hyp, other])
            } else {
                g.prove(Formula::Bot, d)
            }
        });
        let conclusion = self.congruent(dual(&refuted));
        ProofNode::binder(Rule::DM, label, conclusion, vec![body])
    }

    /// Goal-directed generation with a fallback to hypotheses or open
    /// assumptions, so every goal is reachable.
    fn prove(&mut self, goal: Formula, budget: usize) -> ProofNode {
        if budget <= 1 || self.rng.gen_bool(0.2) {
            return self.leaf(goal);
        }
        let d = budget - 1;
        let choices: &[u8] = match goal {
            Formula::Top => &[0, 1, 2, 4],
            Formula::Bot => &[0, 1, 2, 5, 5],
            Formula::Lit(_) => &[1, 2, 3, 4, 4],
            _ => &[0, 0, 1, 2, 3, 4],
        };
        match *choices.choose(&mut self.rng).unwrap() {
            0 => self.introduce(goal, d),
            1 => {
                let minor = self.formula_or_hyp();
                let major = self.prove(Formula::imp(minor.clone(), goal.clone()), d);
                let minor = self.prove(minor, d);
                ProofNode::new(Rule::ImpE, goal, vec![major, minor])
            }
            2 => {
                let other = self.formula();
                if self.rng.gen_bool(0.5) {
                    let p = self.prove(Formula::and(goal.clone(), other), d);
                    ProofNode::new(Rule::AndE1, goal, vec![p])
                } else {
                    let p = self.prove(Formula::and(other, goal.clone()), d);
                    ProofNode::new(Rule::AndE2, goal, vec![p])
                }
            }
            3 => self.or_elim(goal, d),
            4 if !cong(&goal, &dual(&dual(&goal))) => self.introduce(goal, d),
            4 => {
                let refuted = dual(&goal);
                let mut node = self.dm(refuted, d);
                node.conclusion = goal;
                node
            }
            _ => {
                debug_assert_eq!(goal, Formula::Bot);
                let phi = self.formula_or_hyp();
                let a = self.prove(phi.clone(), d);
                let other = self.congruent(dual(&phi));
                let b = self.prove(other, d);
                ProofNode::new(Rule::EXC, Formula::Bot, vec![a, b])
            }
        }
    }

    fn introduce(&mut self, goal: Formula, d: usize) -> ProofNode {
        match goal.clone() {
            Formula::Top => ProofNode::new(Rule::TopI, goal, vec![]),
            Formula::And(a, b) => {
                let pa = self.prove(*a, d);
                let pb = self.prove(*b, d);
                ProofNode::new(Rule::AndI, goal, vec![pa, pb])
            }
            Formula::Or(a, b) => {
                if self.rng.gen_bool(0.5) {
                    let p = self.prove(*a, d);
                    ProofNode::new(Rule::OrI1, goal, vec![p])
                } else {
                    let p = self.prove(*b, d);
                    ProofNode::new(Rule::OrI2, goal, vec![p])
                }
            }
            Formula::Imp(a, b) => {
                let label = self.label();
                let body = self.under(label, *a, |g| g.prove(*b, d));
                ProofNode::binder(Rule::ImpI, label, goal, vec![body])
            }
            Formula::Bot | Formula::Lit(_) => self.leaf(goal),
        }
    }
}
