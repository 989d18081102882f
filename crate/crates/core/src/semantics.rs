//! Truth-table semantics: valuations, evaluation, classical consequence and
//! the bounded Lindenbaum construction.
//!
//! Everything here is exhaustive enumeration over the contents of the query.
//! It is the trusted oracle for the rest of the crate, so it stays naive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::syntax::{dual, enumerate, Content, Formula, Literal, Polarity};

pub const DEFAULT_MAX_CONTENTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("content `{0}` is not in the valuation's domain")]
    OutOfDomain(Content),
    #[error("{found} contents exceed the cap of {cap}")]
    TooManyContents { found: usize, cap: usize },
    #[error("`{0}` is a tautology, so its dual has no consistent extension")]
    Tautology(Formula),
}

/// A total assignment on a finite set of contents, read as the value of the
/// assertion literal; `v(c-) = 1 - v(c+)`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Valuation(BTreeMap<Content, bool>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(BTreeMap::new())
    }

    pub fn set(&mut self, content: Content, value: bool) {
        self.0.insert(content, value);
    }

    pub fn get(&self, content: &Content) -> Option<bool> {
        self.0.get(content).copied()
    }

    pub fn literal(&self, l: &Literal) -> Option<bool> {
        self.get(&l.content).map(|v| match l.polarity {
            Polarity::Assert => v,
            Polarity::Deny => !v,
        })
    }

    pub fn domain(&self) -> impl Iterator<Item = &Content> {
        self.0.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Content, bool)> {
        self.0.iter().map(|(c, v)| (c, *v))
    }

    fn from_mask(contents: &[Content], mask: u64) -> Self {
        let k = contents.len();
        let mut v = Valuation::new();
        for (i, c) in contents.iter().enumerate() {
            v.set(c.clone(), mask >> (k - 1 - i) & 1 == 1);
        }
        v
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, v) in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}={}", u8::from(*v))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(c, v)| (c.name(), u8::from(*v))))
    }
}

/// Evaluates `phi` under `v`, with `→` read as `max{1 - v(φ), v(ψ)}`.
pub fn eval(v: &Valuation, phi: &Formula) -> Result<bool, SemanticsError> {
    if let Some(c) = phi.contents().into_iter().find(|c| v.get(c).is_none()) {
        return Err(SemanticsError::OutOfDomain(c));
    }
    eval_total(v, phi)
}

fn eval_total(v: &Valuation, phi: &Formula) -> Result<bool, SemanticsError> {
    Ok(match phi {
        Formula::Lit(l) => v
            .literal(l)
            .ok_or_else(|| SemanticsError::OutOfDomain(l.content.clone()))?,
        Formula::Bot => false,
        Formula::Top => true,
        Formula::And(a, b) => eval_total(v, a)? && eval_total(v, b)?,
        Formula::Or(a, b) => eval_total(v, a)? || eval_total(v, b)?,
        Formula::Imp(a, b) => !eval_total(v, a)? || eval_total(v, b)?,
    })
}

/// Outcome of a consequence query: `witness` is the lexicographically first
/// counter-valuation when the consequence fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Valuation>,
}

/// A compiled truth-table over a fixed content list. Bit `k-1-i` of a mask is
/// the value of `contents[i]`, so counting masks upward walks valuations in
/// lexicographic order.
pub(crate) struct Table {
    contents: Vec<Content>,
    index: BTreeMap<Content, usize>,
}

impl Table {
    pub(crate) fn new<'a>(formulas: impl IntoIterator<Item = &'a Formula>, cap: usize) -> Result<Self, SemanticsError> {
        let mut set = BTreeSet::new();
        for f in formulas {
            f.collect_contents(&mut set);
        }
        if set.len() > cap || set.len() > 63 {
            return Err(SemanticsError::TooManyContents {
                found: set.len(),
                cap: cap.min(63),
            });
        }
        let contents: Vec<Content> = set.into_iter().collect();
        let index = contents.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        Ok(Table { contents, index })
    }

    pub(crate) fn rows(&self) -> u64 {
        1u64 << self.contents.len()
    }

    pub(crate) fn eval(&self, phi: &Formula, mask: u64) -> bool {
        let k = self.contents.len();
        match phi {
            Formula::Lit(l) => {
                let bit = mask >> (k - 1 - self.index[&l.content]) & 1 == 1;
                match l.polarity {
                    Polarity::Assert => bit,
                    Polarity::Deny => !bit,
                }
            }
            Formula::Bot => false,
            Formula::Top => true,
            Formula::And(a, b) => self.eval(a, mask) && self.eval(b, mask),
            Formula::Or(a, b) => self.eval(a, mask) || self.eval(b, mask),
            Formula::Imp(a, b) => !self.eval(a, mask) || self.eval(b, mask),
        }
    }

    pub(crate) fn valuation(&self, mask: u64) -> Valuation {
        Valuation::from_mask(&self.contents, mask)
    }
}

/// `Γ ⊨ φ` by enumerating every valuation of the contents of `Γ ∪ {φ}`.
pub fn consequence(gamma: &[Formula], phi: &Formula) -> Result<Verdict, SemanticsError> {
    consequence_capped(gamma, phi, DEFAULT_MAX_CONTENTS)
}

pub fn consequence_capped(gamma: &[Formula], phi: &Formula, cap: usize) -> Result<Verdict, SemanticsError> {
    let table = Table::new(gamma.iter().chain(std::iter::once(phi)), cap)?;
    for mask in 0..table.rows() {
        if gamma.iter().all(|g| table.eval(g, mask)) && !table.eval(phi, mask) {
            return Ok(Verdict {
                holds: false,
                witness: Some(table.valuation(mask)),
            });
        }
    }
    Ok(Verdict {
        holds: true,
        witness: None,
    })
}

pub fn tautology(phi: &Formula) -> Result<Verdict, SemanticsError> {
    consequence(&[], phi)
}

/// `φ ≡ ψ`: mutual consequence.
pub fn equivalent(phi: &Formula, psi: &Formula) -> Result<bool, SemanticsError> {
    Ok(consequence(std::slice::from_ref(phi), psi)?.holds && consequence(std::slice::from_ref(psi), phi)?.holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Formula,
    Dual,
}

/// Whether the closure of `Δ` contains `ψ` and/or `ψ^⊥`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub formula: Formula,
    pub entails_formula: bool,
    pub entails_dual: bool,
}

impl Decision {
    /// The decided side, if exactly one holds.
    pub fn side(&self) -> Option<Side> {
        match (self.entails_formula, self.entails_dual) {
            (true, false) => Some(Side::Formula),
            (false, true) => Some(Side::Dual),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lindenbaum {
    /// `Δ`: the dual of the input followed by every enumerated formula that
    /// was consistently added.
    pub delta: Vec<Formula>,
    pub decided: Vec<Decision>,
    pub valuation: Valuation,
}

/// Runs the Lindenbaum construction from `Δ₀ = {φ^⊥}` over every formula of
/// depth at most `enumeration_depth` on the contents of `phi`.
///
/// Consistency is decided semantically: the set of valuations satisfying
/// `Δ` is kept, and a formula is added iff some surviving valuation
/// satisfies it.
pub fn lindenbaum(phi: &Formula, enumeration_depth: usize) -> Result<Lindenbaum, SemanticsError> {
    if tautology(phi)?.holds {
        return Err(SemanticsError::Tautology(phi.clone()));
    }
    let contents: Vec<Content> = phi.contents().into_iter().collect();
    let table = Table::new(std::iter::once(phi), DEFAULT_MAX_CONTENTS)?;
    let start = dual(phi);
    let mut alive: Vec<u64> = (0..table.rows()).filter(|&m| table.eval(&start, m)).collect();
    let mut delta = vec![start];

    let enumeration = enumerate(&contents, enumeration_depth);
    for psi in &enumeration {
        let kept: Vec<u64> = alive.iter().copied().filter(|&m| table.eval(psi, m)).collect();
        if !kept.is_empty() {
            alive = kept;
            delta.push(psi.clone());
        }
    }

    let decided = enumeration
        .into_iter()
        .map(|psi| {
            let d = dual(&psi);
            Decision {
                entails_formula: alive.iter().all(|&m| table.eval(&psi, m)),
                entails_dual: alive.iter().all(|&m| table.eval(&d, m)),
                formula: psi,
            }
        })
        .collect();

    // With no literal enumerated the closure may leave contents open; fall
    // back to the first surviving row.
    let valuation = table.valuation(alive[0]);
    Ok(Lindenbaum {
        delta,
        decided,
        valuation,
    })
}
