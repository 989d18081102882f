//! Flattening a sequent into literals and the simulation base over it.
//!
//! `♭` sends each subformula (up to `≅`) of the sequent, the duals of those
//! subformulae, and `⊥`/`⊤` to literals: literals to themselves, and every
//! other class pair to `pᵢ+`/`pᵢ-` for fresh `pᵢ`. The simulation base then
//! mirrors each natural deduction rule by an atomic rule over those
//! literals, so that `♭Γ ⊢ ♭γ` in the base exactly when `Γ ⊨ γ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bases::{derives, AtomicQuery, AtomicRule, Base, BasesError, Goal, Subrule, Trace};
use crate::semantics::{consequence, SemanticsError};
use crate::syntax::{canonical_key, dual, subformulae, Content, Formula, Literal};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimulationError {
    #[error("literal {0} is not in the range of the flattening")]
    NotInRange(Literal),
    #[error(transparent)]
    Bases(#[from] BasesError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl SimulationError {
    pub fn is_resource(&self) -> bool {
        match self {
            SimulationError::Bases(e) => e.is_resource(),
            SimulationError::Semantics(SemanticsError::TooManyContents { .. }) => true,
            _ => false,
        }
    }
}

/// One class of `Ξ ∪ Ξ^⊥ ∪ {⊥, ⊤}` and its literal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatClass {
    pub literal: Literal,
    pub representative: Formula,
    pub members: BTreeSet<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlattenMap {
    /// Subformulae of the sequent, in canonical order.
    pub xi: Vec<Formula>,
    pub classes: Vec<FlatClass>,
    pub fresh_contents: BTreeSet<Content>,
    #[serde(skip)]
    by_key: HashMap<String, usize>,
    #[serde(skip)]
    by_literal: HashMap<Literal, usize>,
}

fn cong_key(phi: &Formula) -> String {
    dual(phi).to_string()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
}

pub fn build_flatten(gamma: &[Formula], goal: &Formula) -> FlattenMap {
    let mut xi: Vec<Formula> = subformulae(gamma.iter(), goal).into_iter().collect();
    xi.sort_by_key(canonical_key);

    // Domain: Ξ, then the duals, then ⊥ and ⊤, each once.
    let mut domain: Vec<Formula> = Vec::new();
    let mut seen: BTreeSet<Formula> = BTreeSet::new();
    for f in xi
        .iter()
        .cloned()
        .chain(xi.iter().map(dual))
        .chain([Formula::Bot, Formula::Top])
    {
        if seen.insert(f.clone()) {
            domain.push(f);
        }
    }
    let pos: HashMap<&Formula, usize> = domain.iter().enumerate().map(|(i, f)| (f, i)).collect();

    // Classes start as ≅-classes. Pairing each member with its dual may
    // force two classes to share a partner; those are merged, which keeps
    // every class within one truth value.
    let mut uf = UnionFind((0..domain.len()).collect());
    let mut first_by_key: HashMap<String, usize> = HashMap::new();
    for (i, f) in domain.iter().enumerate() {
        let j = *first_by_key.entry(cong_key(f)).or_insert(i);
        uf.union(i, j);
    }
    let pairs: Vec<(usize, usize)> = domain
        .iter()
        .enumerate()
        .filter_map(|(i, f)| pos.get(&dual(f)).map(|&j| (i, j)))
        .collect();
    loop {
        let mut partner: HashMap<usize, usize> = HashMap::new();
        let mut changed = false;
        for &(i, j) in &pairs {
            for (x, y) in [(i, j), (j, i)] {
                let (rx, ry) = (uf.find(x), uf.find(y));
                match partner.get(&rx) {
                    Some(&p) if uf.find(p) != ry => {
                        changed |= uf.union(p, ry);
                    }
                    Some(_) => {}
                    None => {
                        partner.insert(rx, ry);
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut members: BTreeMap<usize, BTreeSet<Formula>> = BTreeMap::new();
    for (i, f) in domain.iter().enumerate() {
        members.entry(uf.find(i)).or_default().insert(f.clone());
    }
    let partner_of = |uf: &mut UnionFind, root: usize| -> usize {
        let j = pairs
            .iter()
            .find(|&&(i, _)| uf.find(i) == root)
            .map(|&(_, j)| j)
            .expect("every class has a dual");
        uf.find(j)
    };

    let used: BTreeSet<String> = xi
        .iter()
        .flat_map(|f| f.contents())
        .map(|c| c.name().to_string())
        .collect();
    let mut names = (0..).map(|i| format!("p{i}")).filter(|n| !used.contains(n));
    let mut fresh = || Content::new(&names.next().expect("unbounded")).expect("valid name");

    let mut literal_of: HashMap<usize, Literal> = HashMap::new();
    let bot_content = fresh();
    let bot_root = uf.find(pos[&Formula::Bot]);
    let top_root = uf.find(pos[&Formula::Top]);
    literal_of.insert(bot_root, bot_content.assert());
    literal_of.insert(top_root, bot_content.deny());
    let mut fresh_contents = BTreeSet::from([bot_content]);
    for (i, f) in domain.iter().enumerate() {
        let root = uf.find(i);
        if let Formula::Lit(l) = f {
            literal_of.insert(root, l.clone());
        }
    }
    for i in 0..domain.len() {
        let root = uf.find(i);
        if literal_of.contains_key(&root) {
            continue;
        }
        let c = fresh();
        let partner = partner_of(&mut uf, root);
        literal_of.insert(root, c.assert());
        literal_of.insert(partner, c.deny());
        fresh_contents.insert(c);
    }

    let xi_set: BTreeSet<&Formula> = xi.iter().collect();
    let mut classes = Vec::new();
    for (root, ms) in members {
        let literal = literal_of[&root].clone();
        let in_xi = domain.iter().find(|f| xi_set.contains(f) && ms.contains(*f));
        let representative = match in_xi {
            Some(f) => f.clone(),
            None => domain.iter().find(|f| ms.contains(*f)).expect("nonempty class").clone(),
        };
        classes.push(FlatClass {
            literal,
            representative,
            members: ms,
        });
    }
    classes.sort_by(|a, b| a.literal.cmp(&b.literal));
    let mut by_key = HashMap::new();
    let mut by_literal = HashMap::new();
    for (idx, c) in classes.iter().enumerate() {
        for m in &c.members {
            by_key.insert(cong_key(m), idx);
        }
        by_literal.insert(c.literal.clone(), idx);
    }
    FlattenMap {
        xi,
        classes,
        fresh_contents,
        by_key,
        by_literal,
    }
}

impl FlattenMap {
    /// `♭φ`, for any formula `≅` to a member of the domain.
    pub fn flat(&self, phi: &Formula) -> Option<&Literal> {
        self.by_key.get(&cong_key(phi)).map(|&i| &self.classes[i].literal)
    }

    fn flat_of(&self, phi: &Formula) -> Literal {
        self.flat(phi).expect("formula in the flattening domain").clone()
    }

    /// `♯l`: the class representative of `l`.
    pub fn sharpen(&self, l: &Literal) -> Result<&Formula, SimulationError> {
        self.by_literal
            .get(l)
            .map(|&i| &self.classes[i].representative)
            .ok_or_else(|| SimulationError::NotInRange(l.clone()))
    }

    pub fn range(&self) -> impl Iterator<Item = &Literal> {
        self.classes.iter().map(|c| &c.literal)
    }

    /// Every class maps to the dual of the literal of its members' duals,
    /// wherever those duals are in the domain.
    pub fn is_coherent(&self) -> bool {
        self.classes.iter().all(|c| {
            c.members.iter().all(|m| match self.flat(&dual(m)) {
                Some(d) => *d == c.literal.dual(),
                None => true,
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimulationBase {
    pub base: Base,
    pub map: FlattenMap,
    pub gamma: Vec<Formula>,
    pub goal: Formula,
}

impl fmt::Display for SimulationBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        writeln!(f)?;
        for c in &self.map.classes {
            writeln!(f, "{}\t{}", c.literal, c.representative)?;
        }
        Ok(())
    }
}

pub fn build_simulation_base(gamma: &[Formula], goal: &Formula) -> SimulationBase {
    let map = build_flatten(gamma, goal);
    let fl = |phi: &Formula| map.flat_of(phi);
    let bot = fl(&Formula::Bot);
    let mut base = Base::default();
    base.insert(AtomicRule::axiom(fl(&Formula::Top)));
    for phi in &map.xi {
        base.insert(AtomicRule::first_level([bot.clone()], fl(phi)));
    }
    // ∨E conclusions: ♭(Ξ ∪ Ξ^⊥) and ♭⊥.
    let mut conclusions: Vec<Literal> = Vec::new();
    for phi in map.xi.iter().cloned().chain(map.xi.iter().map(dual)) {
        let l = fl(&phi);
        if !conclusions.contains(&l) {
            conclusions.push(l);
        }
    }
    if !conclusions.contains(&bot) {
        conclusions.push(bot.clone());
    }
    for phi in &map.xi {
        let here = fl(phi);
        match phi {
            Formula::Imp(a, b) => {
                base.insert(AtomicRule::new(vec![Subrule::new([fl(a)], fl(b))], here.clone()));
                base.insert(AtomicRule::first_level([here.clone(), fl(a)], fl(b)));
            }
            Formula::And(a, b) => {
                base.insert(AtomicRule::first_level([fl(a), fl(b)], here.clone()));
                base.insert(AtomicRule::first_level([here.clone()], fl(a)));
                base.insert(AtomicRule::first_level([here.clone()], fl(b)));
            }
            Formula::Or(a, b) => {
                base.insert(AtomicRule::first_level([fl(a)], here.clone()));
                base.insert(AtomicRule::first_level([fl(b)], here.clone()));
                for psi in &conclusions {
                    base.insert(AtomicRule::new(
                        vec![
                            Subrule::plain(here.clone()),
                            Subrule::new([fl(a)], psi.clone()),
                            Subrule::new([fl(b)], psi.clone()),
                        ],
                        psi.clone(),
                    ));
                }
            }
            Formula::Lit(_) | Formula::Bot | Formula::Top => {}
        }
        base.insert(AtomicRule::new(
            vec![Subrule::new([here.clone()], bot.clone())],
            here.dual(),
        ));
        base.insert(AtomicRule::first_level([here.clone(), fl(&dual(phi))], bot.clone()));
    }
    SimulationBase {
        base,
        map,
        gamma: gamma.to_vec(),
        goal: goal.clone(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineRecord {
    pub gamma: Vec<Formula>,
    pub goal: Formula,
    pub semantic: bool,
    pub simulated: bool,
    pub agree: bool,
    pub rules: usize,
    pub fresh_contents: usize,
}

/// Compares `Γ ⊨ γ` with `♭Γ ⊢ ♭γ` in the simulation base.
pub fn pipeline(gamma: &[Formula], goal: &Formula) -> Result<PipelineRecord, SimulationError> {
    let semantic = consequence(gamma, goal)?.holds;
    let sb = build_simulation_base(gamma, goal);
    let q = flat_query(&sb);
    let simulated = derives(&sb.base, &q)?.derivable;
    Ok(PipelineRecord {
        gamma: gamma.to_vec(),
        goal: goal.clone(),
        semantic,
        simulated,
        agree: semantic == simulated,
        rules: sb.base.len(),
        fresh_contents: sb.map.fresh_contents.len(),
    })
}

pub fn flat_query(sb: &SimulationBase) -> AtomicQuery {
    let ctx = sb.gamma.iter().map(|g| sb.map.flat_of(g));
    AtomicQuery::new(ctx, sb.map.flat_of(&sb.goal))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalizeFailure {
    pub context: Vec<Literal>,
    pub goal: Goal,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct NaturalizeReport {
    pub sampled: usize,
    pub derivable: usize,
    pub failures: Vec<NaturalizeFailure>,
}

/// Samples judgements `L ⊢ l` that hold in the simulation base and checks
/// `♯L ⊨ ♯l` for each. Samples are the fired steps along a random branch of
/// the certificate for a random query over the base's range.
pub fn naturalize_check(sb: &SimulationBase, samples: usize, seed: u64) -> Result<NaturalizeReport, SimulationError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let range: Vec<Literal> = sb.map.range().cloned().collect();
    let mut report = NaturalizeReport::default();
    let mut attempts = 0;
    while report.sampled < samples && attempts < samples * 20 {
        attempts += 1;
        let n = rng.gen_range(0..=2.min(range.len()));
        let ctx: BTreeSet<Literal> = range.choose_multiple(&mut rng, n).cloned().collect();
        let goal = if rng.gen_bool(0.2) {
            Goal::Bot
        } else {
            Goal::Lit(range.choose(&mut rng).expect("nonempty range").clone())
        };
        let q = AtomicQuery {
            context: ctx.clone(),
            goal: goal.clone(),
        };
        report.sampled += 1;
        let answer = derives(&sb.base, &q)?;
        if !answer.derivable {
            continue;
        }
        report.derivable += 1;
        let mut judgements = vec![(ctx.clone(), goal)];
        let cert = answer.certificate.expect("certificates are on by default");
        let mut path_ctx = ctx;
        if let Some(g) = &cert.denied_goal {
            path_ctx.insert(g.dual());
        }
        let mut node = &cert.tree;
        loop {
            let fired = match node {
                Trace::Closed { fired, .. } | Trace::Split { fired, .. } => fired,
            };
            for step in fired {
                judgements.push((path_ctx.clone(), Goal::Lit(step.head.clone())));
                path_ctx.insert(step.head.clone());
            }
            match node {
                Trace::Closed { .. } => break,
                Trace::Split {
                    content, assert, deny, ..
                } => {
                    if rng.gen_bool(0.5) {
                        path_ctx.insert(content.assert());
                        node = assert;
                    } else {
                        path_ctx.insert(content.deny());
                        node = deny;
                    }
                }
            }
        }
        for (ctx, goal) in judgements {
            let gamma: Vec<Formula> = ctx
                .iter()
                .map(|l| sb.map.sharpen(l).cloned())
                .collect::<Result<_, _>>()?;
            let target = match &goal {
                Goal::Bot => Formula::Bot,
                Goal::Lit(l) => sb.map.sharpen(l)?.clone(),
            };
            if !consequence(&gamma, &target)?.holds {
                report.failures.push(NaturalizeFailure {
                    context: ctx.into_iter().collect(),
                    goal,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{cong, enumerate, parse, signature};

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn l(s: &str) -> Literal {
        Literal::parse(s).unwrap()
    }

    #[test]
    fn flatten_examples() {
        let m = build_flatten(&[p("a")], &p("a"));
        assert_eq!(m.flat(&p("a")), Some(&l("a+")));
        assert_eq!(m.flat(&p("a-")), Some(&l("a-")));
        assert_eq!(m.flat(&Formula::Bot), Some(&l("p0+")));
        assert_eq!(m.flat(&Formula::Top), Some(&l("p0-")));
        assert_eq!(m.classes.len(), 4);

        let m = build_flatten(&[], &p("a -> b"));
        assert_eq!(m.flat(&p("a -> b")), Some(&l("p1+")));
        assert_eq!(m.flat(&p("a & b-")), Some(&l("p1-")));
        assert_eq!(m.flat(&p("a- | b")), Some(&l("p1+")));
        assert_eq!(m.sharpen(&l("p1-")).unwrap(), &p("a & b-"));
        assert_eq!(m.sharpen(&l("p1+")).unwrap(), &p("a -> b"));
        assert_eq!(m.sharpen(&l("a+")).unwrap(), &p("a"));
        assert!(m.is_coherent());
        assert!(m.sharpen(&l("z+")).is_err());
    }

    #[test]
    fn fresh_names_avoid_the_sequent() {
        let m = build_flatten(&[p("p0 & p1")], &p("p2"));
        for c in &m.fresh_contents {
            assert!(!["p0", "p1", "p2"].contains(&c.name()));
        }
    }

    #[test]
    fn flatten_invariants_over_small_sequents() {
        let sig = signature(2);
        for g in enumerate(&sig, 2).iter().step_by(7) {
            for h in enumerate(&sig, 2).iter().step_by(53) {
                let m = build_flatten(std::slice::from_ref(h), g);
                assert!(m.is_coherent());
                for phi in m.xi.iter().cloned().chain(m.xi.iter().map(dual)) {
                    let sharp = m.sharpen(m.flat(&phi).unwrap()).unwrap();
                    assert_eq!(m.flat(sharp), m.flat(&phi));
                    if m.classes
                        .iter()
                        .all(|c| c.members.iter().all(|x| cong(x, &c.representative)))
                    {
                        assert!(cong(sharp, &phi));
                    }
                }
                let range: BTreeSet<&Literal> = m.range().collect();
                assert_eq!(range.len(), m.classes.len());
            }
        }
    }

    #[test]
    fn rule_count_for_a_single_literal() {
        let sb = build_simulation_base(&[], &p("a"));
        assert_eq!(sb.base.len(), 4, "{}", sb.base);
    }

    #[test]
    fn or_instances() {
        let sb = build_simulation_base(&[p("a")], &p("a | b"));
        let or = sb.map.flat(&p("a | b")).unwrap().clone();
        assert!(sb
            .base
            .rules()
            .contains(&AtomicRule::first_level([l("a+")], or.clone())));
        assert!(sb
            .base
            .rules()
            .contains(&AtomicRule::first_level([l("b+")], or.clone())));
        let elims = sb.base.rules().iter().filter(|r| r.subrules.len() == 3).count();
        // conclusions: a+, b+, a|b, a-, b-, its dual, and ♭⊥
        assert_eq!(elims, 7);
        let range: BTreeSet<&Literal> = sb.map.range().collect();
        assert!(sb.base.literals().iter().all(|x| range.contains(x)));
    }

    #[test]
    fn pipeline_examples() {
        let r = pipeline(&[p("a")], &p("a | b")).unwrap();
        assert!(r.semantic && r.simulated && r.agree);
        let r = pipeline(&[], &p("a & a-")).unwrap();
        assert!(!r.semantic && !r.simulated && r.agree);
        let r = pipeline(&[], &p("((a -> b) -> a) -> a")).unwrap();
        assert!(r.semantic && r.simulated && r.agree);
    }

    #[test]
    fn pairing_conflicts_merge_classes() {
        // (a→b)→a and its dual are both subformulae, and dual∘dual does not
        // return the first to its ≅-class.
        let gamma = [p("(a -> b) -> a")];
        let goal = p("(a -> b) & a-");
        let m = build_flatten(&gamma, &goal);
        assert!(m.is_coherent());
        let r = pipeline(&gamma, &goal).unwrap();
        assert!(r.agree);
    }

    #[test]
    fn naturalizing_samples_hold() {
        let sb = build_simulation_base(&[p("a -> b"), p("a")], &p("b | a-"));
        let report = naturalize_check(&sb, 40, 3).unwrap();
        assert!(report.derivable > 0);
        assert!(report.failures.is_empty(), "{:?}", report.failures);
        assert_eq!(report, naturalize_check(&sb, 40, 3).unwrap());
    }
}
