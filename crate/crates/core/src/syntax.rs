//! Contents, literals and formulae over them, together with the duality
//! transform, the `≅` relation, logical weight and the text grammar.
//!
//! Grammar (loosest to tightest binding):
//!
//! ```text
//! imp   := or ( "->" imp )?          right-associative
//! or    := and ( "|" and )*          left-associative
//! and   := unary ( "&" unary )*      left-associative
//! unary := "neg" unary | atom
//! atom  := name "+" | name "-" | name | "bot" | "top" | "(" imp ")"
//! ```
//!
//! A bare `name` is the assertion `name+`; `neg φ` expands to `φ -> bot`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A statement name. Two contents are equal iff their names are.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Content(Arc<str>);

impl Content {
    pub fn new(name: &str) -> Result<Self, SyntaxError> {
        if is_valid_name(name) && !is_keyword(name) {
            Ok(Content(Arc::from(name)))
        } else {
            Err(SyntaxError::InvalidName(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn assert(&self) -> Literal {
        Literal::new(self.clone(), Polarity::Assert)
    }

    pub fn deny(&self) -> Literal {
        Literal::new(self.clone(), Polarity::Deny)
    }
}

impl fmt::Debug for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Content {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Content {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Content {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Content::new(&text).map_err(serde::de::Error::custom)
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_keyword(name: &str) -> bool {
    matches!(name, "bot" | "top" | "neg")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Assert,
    Deny,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Assert => Polarity::Deny,
            Polarity::Deny => Polarity::Assert,
        }
    }
}

/// A content paired with a speech act: `c+` (assertion) or `c-` (denial).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub content: Content,
    pub polarity: Polarity,
}

impl Literal {
    pub fn new(content: Content, polarity: Polarity) -> Self {
        Literal { content, polarity }
    }

    /// The literal with the same content and opposite polarity.
    pub fn dual(&self) -> Literal {
        Literal::new(self.content.clone(), self.polarity.flip())
    }

    pub fn parse(text: &str) -> Result<Literal, ParseError> {
        match parse(text)? {
            Formula::Lit(l) => Ok(l),
            _ => Err(ParseError {
                kind: ParseErrorKind::ExpectedLiteral,
                token: 0,
                offset: 0,
            }),
        }
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.polarity {
            Polarity::Assert => '+',
            Polarity::Deny => '-',
        };
        write!(f, "{}{}", self.content, sign)
    }
}

impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Literal::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Lit(Literal),
    Bot,
    Top,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn lit(l: Literal) -> Self {
        Formula::Lit(l)
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Self {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Formula::Lit(l) => Some(l),
            _ => None,
        }
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Formula::Lit(_))
    }

    /// The duality transform, by structural recursion.
    pub fn dual(&self) -> Formula {
        dual(self)
    }

    /// Tree height, counting a literal or constant as depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Lit(_) | Formula::Bot | Formula::Top => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Lit(_) | Formula::Bot | Formula::Top => 1,
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// All contents occurring in the formula.
    pub fn contents(&self) -> BTreeSet<Content> {
        let mut out = BTreeSet::new();
        self.collect_contents(&mut out);
        out
    }

    pub fn collect_contents(&self, out: &mut BTreeSet<Content>) {
        match self {
            Formula::Lit(l) => {
                out.insert(l.content.clone());
            }
            Formula::Bot | Formula::Top => {}
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.collect_contents(out);
                b.collect_contents(out);
            }
        }
    }

    /// Immediate subformulae.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Lit(_) | Formula::Bot | Formula::Top => vec![],
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
        }
    }
}

impl From<Literal> for Formula {
    fn from(l: Literal) -> Self {
        Formula::Lit(l)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 1, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

// Precedence levels: 1 = `->`, 2 = `|`, 3 = `&`, 4 = atoms.
fn write_prec(phi: &Formula, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let (own, lhs, op, rhs, a, b) = match phi {
        Formula::Lit(l) => return write!(f, "{l}"),
        Formula::Bot => return f.write_str("bot"),
        Formula::Top => return f.write_str("top"),
        Formula::Imp(a, b) => (1, 2, "->", 1, a, b),
        Formula::Or(a, b) => (2, 2, "|", 3, a, b),
        Formula::And(a, b) => (3, 3, "&", 4, a, b),
    };
    if ctx > own {
        f.write_str("(")?;
    }
    write_prec(a, lhs, f)?;
    write!(f, " {op} ")?;
    write_prec(b, rhs, f)?;
    if ctx > own {
        f.write_str(")")?;
    }
    Ok(())
}

/// The duality operator: swaps polarities and constants, de Morganises
/// `∧`/`∨`, and sends `φ → ψ` to `φ ∧ ψ^⊥`. Not an involution on formulae.
pub fn dual(phi: &Formula) -> Formula {
    match phi {
        Formula::Lit(l) => Formula::Lit(l.dual()),
        Formula::Bot => Formula::Top,
        Formula::Top => Formula::Bot,
        Formula::And(a, b) => Formula::or(dual(a), dual(b)),
        Formula::Or(a, b) => Formula::and(dual(a), dual(b)),
        Formula::Imp(a, b) => Formula::and((**a).clone(), dual(b)),
    }
}

/// `φ ≅ ψ` iff the duals are syntactically equal.
pub fn cong(phi: &Formula, psi: &Formula) -> bool {
    dual(phi) == dual(psi)
}

/// Logical weight: 0 on literals, 1 on the constants, sum plus one on
/// connectives.
pub fn weight(phi: &Formula) -> usize {
    match phi {
        Formula::Lit(_) => 0,
        // ⊤ is given the weight of ⊥; no support clause recurses through it.
        Formula::Bot | Formula::Top => 1,
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => weight(a) + weight(b) + 1,
    }
}

/// `¬φ` abbreviates `φ → ⊥`.
pub fn negation(phi: &Formula) -> Formula {
    Formula::imp(phi.clone(), Formula::Bot)
}

/// The subformula-closed set of everything occurring in `gamma` and `goal`.
pub fn subformulae<'a>(gamma: impl IntoIterator<Item = &'a Formula>, goal: &Formula) -> BTreeSet<Formula> {
    fn walk(phi: &Formula, out: &mut BTreeSet<Formula>) {
        if out.insert(phi.clone()) {
            for c in phi.children() {
                walk(c, out);
            }
        }
    }
    let mut out = BTreeSet::new();
    for g in gamma {
        walk(g, &mut out);
    }
    walk(goal, &mut out);
    out
}

/// Sort key used wherever a deterministic formula order is needed.
pub fn canonical_key(phi: &Formula) -> (usize, String) {
    (weight(phi), phi.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("invalid content name `{0}`")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical(String),
    UnbalancedParen,
    DanglingConnective,
    UnexpectedToken(String),
    UnexpectedEnd,
    ExpectedLiteral,
}

/// A parse failure with the index of the offending token and its byte offset.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} at token {token} (offset {offset})", describe(&self.kind))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub token: usize,
    pub offset: usize,
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Lexical(s) => format!("lexical error: {s}"),
        ParseErrorKind::UnbalancedParen => "unbalanced parenthesis".into(),
        ParseErrorKind::DanglingConnective => "dangling connective".into(),
        ParseErrorKind::UnexpectedToken(t) => format!("unexpected token `{t}`"),
        ParseErrorKind::UnexpectedEnd => "unexpected end of input".into(),
        ParseErrorKind::ExpectedLiteral => "expected a literal".into(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Lit(Literal),
    Bot,
    Top,
    Neg,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    Comma,
}

impl Tok {
    fn is_connective(&self) -> bool {
        matches!(self, Tok::And | Tok::Or | Tok::Imp)
    }

    fn text(&self) -> String {
        match self {
            Tok::Lit(l) => l.to_string(),
            Tok::Bot => "bot".into(),
            Tok::Top => "top".into(),
            Tok::Neg => "neg".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Imp => "->".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |toks: &Vec<(Tok, usize)>, i: usize, msg: String| ParseError {
        kind: ParseErrorKind::Lexical(msg),
        token: toks.len(),
        offset: i,
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'&' => toks.push((Tok::And, start)),
            b'|' => toks.push((Tok::Or, start)),
            b'(' => toks.push((Tok::LParen, start)),
            b')' => toks.push((Tok::RParen, start)),
            b',' => toks.push((Tok::Comma, start)),
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                toks.push((Tok::Imp, start));
                i += 1;
            }
            b'a'..=b'z' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                let name = &text[start..=i];
                let sign = match bytes.get(i + 1) {
                    Some(b'+') => Some(Polarity::Assert),
                    Some(b'-') if bytes.get(i + 2) != Some(&b'>') => Some(Polarity::Deny),
                    _ => None,
                };
                let tok = match name {
                    "bot" | "top" | "neg" if sign.is_some() => {
                        return Err(err(&toks, start, format!("keyword `{name}` cannot carry a polarity")))
                    }
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "neg" => Tok::Neg,
                    _ => {
                        let content = Content(Arc::from(name));
                        if sign.is_some() {
                            i += 1;
                        }
                        Tok::Lit(Literal::new(content, sign.unwrap_or(Polarity::Assert)))
                    }
                };
                toks.push((tok, start));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(err(&toks, start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        let offset = self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end);
        ParseError {
            kind,
            token: self.pos,
            offset,
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.error(ParseErrorKind::UnexpectedEnd),
            Some(Tok::RParen) => self.error(ParseErrorKind::UnbalancedParen),
            Some(t) if t.is_connective() => self.error(ParseErrorKind::DanglingConnective),
            Some(t) => self.error(ParseErrorKind::UnexpectedToken(t.text())),
        }
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Imp) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        if self.peek() == Some(&Tok::Neg) {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(negation(&inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let out = match self.peek() {
            Some(Tok::Lit(l)) => Formula::Lit(l.clone()),
            Some(Tok::Bot) => Formula::Bot,
            Some(Tok::Top) => Formula::Top,
            Some(Tok::LParen) => {
                let open = self.pos;
                self.pos += 1;
                let inner = self.imp()?;
                if self.peek() != Some(&Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(ParseError {
                            kind: ParseErrorKind::UnbalancedParen,
                            token: open,
                            offset: self.toks[open].1,
                        });
                    }
                    return Err(self.unexpected());
                }
                inner
            }
            _ => return Err(self.unexpected()),
        };
        self.pos += 1;
        Ok(out)
    }
}

/// Parses a single formula.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let phi = p.imp()?;
    if p.pos != p.toks.len() {
        return Err(p.unexpected());
    }
    Ok(phi)
}

/// Parses a comma-separated list of formulae; blank input is the empty list.
pub fn parse_list(text: &str) -> Result<Vec<Formula>, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let mut out = Vec::new();
    if p.toks.is_empty() {
        return Ok(out);
    }
    loop {
        out.push(p.imp()?);
        match p.peek() {
            None => return Ok(out),
            Some(Tok::Comma) => p.pos += 1,
            Some(_) => return Err(p.unexpected()),
        }
    }
}

/// The `n` contents `c0, c1, …` conventionally used for generated signatures.
pub fn signature(n: usize) -> Vec<Content> {
    const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "g"];
    (0..n)
        .map(|i| match NAMES.get(i) {
            Some(name) => Content::new(name).unwrap(),
            None => Content::new(&format!("c{i}")).unwrap(),
        })
        .collect()
}

/// Depth-1 formulae over a signature: every literal, then `bot`, `top`.
pub fn atoms(contents: &[Content]) -> Vec<Formula> {
    let mut out: Vec<Formula> = contents
        .iter()
        .flat_map(|c| [Formula::Lit(c.assert()), Formula::Lit(c.deny())])
        .collect();
    out.push(Formula::Bot);
    out.push(Formula::Top);
    out
}

/// Every formula of depth at most `depth` over the signature (atoms
/// including the constants), ordered by increasing weight, then by printed
/// form.
pub fn enumerate(contents: &[Content], depth: usize) -> Vec<Formula> {
    if depth == 0 {
        return Vec::new();
    }
    let mut all = atoms(contents);
    for _ in 1..depth {
        let mut next = atoms(contents);
        for a in &all {
            for b in &all {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
                next.push(Formula::imp(a.clone(), b.clone()));
            }
        }
        all = next;
    }
    let mut keyed: Vec<((usize, String), Formula)> = all.into_iter().map(|f| (canonical_key(&f), f)).collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    keyed.dedup_by(|x, y| x.0 == y.0);
    keyed.into_iter().map(|(_, f)| f).collect()
}

/// A random formula of depth at most `depth` over `contents`. Constants are
/// drawn with lower probability than literals.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, contents: &[Content], depth: usize) -> Formula {
    assert!(depth >= 1, "formula depth starts at 1");
    if depth == 1 || rng.gen_bool(0.3) {
        return random_atom(rng, contents);
    }
    let a = random_formula(rng, contents, depth - 1);
    let b = random_formula(rng, contents, depth - 1);
    match rng.gen_range(0..3) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        _ => Formula::imp(a, b),
    }
}

pub fn random_atom<R: Rng + ?Sized>(rng: &mut R, contents: &[Content]) -> Formula {
    if contents.is_empty() || rng.gen_bool(0.1) {
        return if rng.gen_bool(0.5) { Formula::Bot } else { Formula::Top };
    }
    let c = &contents[rng.gen_range(0..contents.len())];
    if rng.gen_bool(0.5) {
        Formula::Lit(c.assert())
    } else {
        Formula::Lit(c.deny())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn l(s: &str) -> Formula {
        Formula::Lit(Literal::parse(s).unwrap())
    }

    #[test]
    fn parses_implication_into_bot() {
        assert_eq!(p("a+ -> bot"), Formula::imp(l("a+"), Formula::Bot));
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        assert_eq!(p("a & b | c"), Formula::or(Formula::and(l("a+"), l("b+")), l("c+")));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(p("a -> b -> c"), Formula::imp(l("a"), Formula::imp(l("b"), l("c"))));
        assert_eq!(p("(a -> b) -> c").to_string(), "(a+ -> b+) -> c+");
    }

    #[test]
    fn dangling_connective_reports_token() {
        let err = parse("a -> -> b").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::DanglingConnective);
        assert_eq!(err.token, 2);
        assert_eq!(err.offset, 5);
    }

    #[test]
    fn unbalanced_parens() {
        assert_eq!(parse("(a & b").unwrap_err().kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(parse("a & b)").unwrap_err().kind, ParseErrorKind::UnbalancedParen);
    }

    #[test]
    fn lexical_errors() {
        let err = parse("a % b").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Lexical(_)));
        assert_eq!(err.offset, 2);
        assert!(matches!(parse("bot+").unwrap_err().kind, ParseErrorKind::Lexical(_)));
        assert!(matches!(parse("Abc").unwrap_err().kind, ParseErrorKind::Lexical(_)));
    }

    #[test]
    fn denial_next_to_arrow() {
        assert_eq!(p("a--> b"), Formula::imp(l("a-"), l("b+")));
        assert_eq!(p("a->b"), Formula::imp(l("a+"), l("b+")));
    }

    #[test]
    fn neg_is_sugar() {
        assert_eq!(p("neg a"), Formula::imp(l("a+"), Formula::Bot));
        assert_eq!(negation(&Formula::Bot), Formula::imp(Formula::Bot, Formula::Bot));
        assert_eq!(p("neg neg a & b"), Formula::and(negation(&negation(&l("a"))), l("b")));
    }

    #[test]
    fn list_parsing() {
        assert!(parse_list("  ").unwrap().is_empty());
        assert_eq!(parse_list("a, b -> c").unwrap(), vec![l("a"), p("b -> c")]);
        assert!(parse_list("a,").is_err());
    }

    #[test]
    fn dual_equations() {
        assert_eq!(dual(&p("a -> b")), Formula::and(l("a+"), l("b-")));
        assert_eq!(dual(&dual(&p("a -> b"))), Formula::or(l("a-"), l("b+")));
        assert_ne!(dual(&dual(&p("a -> b"))), p("a -> b"));
        assert_eq!(dual(&Formula::Bot), Formula::Top);
        assert_eq!(dual(&Formula::Top), Formula::Bot);
        assert_eq!(dual(&p("a & b-")), p("a- | b"));
        assert_eq!(dual(&p("a | b-")), p("a- & b"));
    }

    #[test]
    fn cong_examples() {
        assert!(cong(&p("a -> b"), &p("a- | b")));
        assert!(cong(&p("a -> b & c"), &p("a -> b & c")));
        assert!(!cong(&l("a+"), &l("a-")));
    }

    fn antecedents_implication_free(f: &Formula) -> bool {
        match f {
            Formula::Imp(a, b) => !has_imp(a) && antecedents_implication_free(b),
            Formula::And(a, b) | Formula::Or(a, b) => {
                antecedents_implication_free(a) && antecedents_implication_free(b)
            }
            _ => true,
        }
    }

    fn has_imp(f: &Formula) -> bool {
        matches!(f, Formula::Imp(..)) || f.children().into_iter().any(has_imp)
    }

    #[test]
    fn congruent_to_double_dual() {
        let contents = [Content::new("a").unwrap(), Content::new("b").unwrap()];
        for f in enumerate(&contents, 3) {
            assert_eq!(cong(&f, &dual(&dual(&f))), antecedents_implication_free(&f), "{f}");
        }
        let f = p("(a -> b) -> c");
        assert!(!cong(&f, &dual(&dual(&f))));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&l("a+")), 0);
        assert_eq!(weight(&Formula::Bot), 1);
        assert_eq!(weight(&Formula::and(l("a+"), Formula::Bot)), 2);
    }

    #[test]
    fn subformulae_examples() {
        let s = subformulae([&l("a+")], &p("a | b"));
        assert_eq!(s, [l("a+"), l("b+"), p("a | b")].into_iter().collect());
        let s = subformulae(std::iter::empty(), &Formula::Bot);
        assert_eq!(s, [Formula::Bot].into_iter().collect());
        let s = subformulae(std::iter::empty(), &p("a -> a"));
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn enumerate_counts() {
        let sig = signature(1);
        assert_eq!(enumerate(&sig, 1).len(), 4);
        assert_eq!(enumerate(&sig, 2).len(), 4 + 3 * 16);
        let e = enumerate(&sig, 2);
        assert!(e.windows(2).all(|w| canonical_key(&w[0]) < canonical_key(&w[1])));
    }

    #[test]
    fn content_names() {
        assert!(Content::new("x_1").is_ok());
        assert!(Content::new("1x").is_err());
        assert!(Content::new("bot").is_err());
        assert!(Content::new("").is_err());
    }
}
