use std::borrow::Borrow;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A variable name: a nonempty alphanumeric token (underscores allowed).
///
/// Ordered naturally, so `x2 < x10`: names are compared by their
/// alphabetic stem first and then by a trailing decimal suffix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(String);

impl Var {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(is_var_char) {
            return Err(Error::input(format!("invalid variable name `{name}`")));
        }
        Ok(Var(name))
    }

    /// `stem` followed by a decimal index, e.g. `indexed("x", 3)` is `x3`.
    pub fn indexed(stem: &str, i: usize) -> Self {
        Var(format!("{stem}{i}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let digits = self.0.bytes().rev().take_while(u8::is_ascii_digit).count();
        let (stem, num) = self.0.split_at(self.0.len() - digits);
        // Very long digit strings fall back to plain string order.
        (stem, num.parse().ok())
    }
}

pub(crate) fn is_var_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let (s1, n1) = self.split();
        let (s2, n2) = other.split();
        s1.cmp(s2).then(n1.cmp(&n2)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Borrow<str> for Var {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// A word of the free semigroup: a sequence of letters.
///
/// The empty word only appears as the identity `1` of monoid constructions;
/// terms never contain it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Var>,
}

impl Word {
    pub fn new(letters: Vec<Var>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::input("empty word"));
        }
        Ok(Self { letters })
    }

    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    /// Builds a word from letter names, panicking on invalid names.
    /// Intended for literals in tests and fixtures.
    pub fn from_letters<S: AsRef<str>>(letters: &[S]) -> Self {
        Self { letters: letters.iter().map(|l| Var::new(l.as_ref()).expect("valid letter")).collect() }
    }

    pub fn from_vars(letters: Vec<Var>) -> Self {
        Self { letters }
    }

    pub fn single(x: Var) -> Self {
        Self { letters: vec![x] }
    }

    pub fn letters(&self) -> &[Var] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn occ(&self, x: &Var) -> usize {
        self.letters.iter().filter(|l| *l == x).count()
    }

    /// The content c(w): the set of letters occurring in the word.
    pub fn content(&self) -> BTreeSet<Var> {
        self.letters.iter().cloned().collect()
    }

    pub fn is_linear(&self) -> bool {
        self.content().len() == self.letters.len()
    }

    /// Multiplicity of each letter.
    pub fn exponents(&self) -> BTreeMap<Var, usize> {
        let mut out = BTreeMap::new();
        for l in &self.letters {
            *out.entry(l.clone()).or_insert(0) += 1;
        }
        out
    }

    /// Commutative normal form: letters sorted.
    pub fn sorted(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.sort();
        Word { letters }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Word { letters }
    }

    /// Whether `self` occurs as a contiguous infix of `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.letters.windows(self.len()).any(|w| w == self.letters.as_slice())
    }

    /// Compact name such as `a1a2`, `a^3`, `x1^2x2`; `1` for the empty word.
    pub fn compact(&self) -> String {
        if self.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let run = self.letters[i..].iter().take_while(|l| **l == self.letters[i]).count();
            out.push_str(self.letters[i].as_str());
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            f.write_str(l.as_str())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A sum of words. Stored as a set: addition is idempotent and commutative,
/// so repetition and order of summands carry no meaning.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    words: BTreeSet<Word>,
}

impl Term {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::input("empty term"));
        }
        if words.iter().any(Word::is_empty) {
            return Err(Error::input("terms cannot contain the empty word"));
        }
        Ok(Self { words })
    }

    pub fn word(w: Word) -> Self {
        assert!(!w.is_empty(), "terms cannot contain the empty word");
        Self { words: BTreeSet::from([w]) }
    }

    pub fn words(&self) -> impl ExactSizeIterator<Item = &Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn content(&self) -> BTreeSet<Var> {
        self.words.iter().flat_map(|w| w.letters.iter().cloned()).collect()
    }

    /// `self + other`.
    pub fn plus(&self, other: &Term) -> Term {
        Term { words: self.words.union(&other.words).cloned().collect() }
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An identity `lhs = rhs` between terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Variables of both sides, in natural order.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars = self.lhs.content();
        vars.extend(self.rhs.content());
        vars.into_iter().collect()
    }

    /// Both sides have the same content.
    pub fn is_regular(&self) -> bool {
        self.lhs.content() == self.rhs.content()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl fmt::Debug for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Identity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Values for variables, as element indices of some algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assignment {
    images: BTreeMap<Var, usize>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, usize)>) -> Self {
        Self { images: pairs.into_iter().collect() }
    }

    pub fn set(&mut self, x: Var, value: usize) {
        self.images.insert(x, value);
    }

    pub fn get(&self, x: &Var) -> Option<usize> {
        self.images.get(x).copied()
    }

    pub fn value(&self, x: &Var) -> Result<usize> {
        self.get(x).ok_or_else(|| Error::UnassignedVariable(x.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, usize)> {
        self.images.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `x -> element name` pairs for display.
    pub fn named(&self, s: &crate::algebra::FiniteSemiring) -> BTreeMap<String, String> {
        self.images.iter().map(|(k, &v)| (k.to_string(), s.element_name(v).to_string())).collect()
    }
}

// ---------------------------------------------------------------------------
// Parsing
//
//   identity = term "=" term
//   term     = word ("+" word)*
//   word     = variable ("*" variable)*

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Var(String),
    Star,
    Plus,
    Eq,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '*' | '·' => {
                chars.next();
                out.push((pos, Token::Star));
            }
            '+' => {
                chars.next();
                out.push((pos, Token::Plus));
            }
            '=' | '≈' => {
                chars.next();
                out.push((pos, Token::Eq));
            }
            c if is_var_char(c) => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_var_char(c) {
                        break;
                    }
                    name.push(c);
                    chars.next();
                }
                out.push((pos, Token::Var(name)));
            }
            other => {
                return Err(Error::Parse { pos, msg: format!("unexpected character `{other}`") });
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Self { tokens: tokenize(text)?, at: 0, end: text.len() })
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.0)
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at).map(|t| &t.1)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos(), msg: msg.to_string() }
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            match self.peek() {
                Some(Token::Var(v)) => {
                    letters.push(Var(v.clone()));
                    self.at += 1;
                }
                _ => return Err(self.error("expected a variable")),
            }
            if self.peek() == Some(&Token::Star) {
                self.at += 1;
            } else {
                return Ok(Word { letters });
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut words = BTreeSet::new();
        words.insert(self.word()?);
        while self.peek() == Some(&Token::Plus) {
            self.at += 1;
            words.insert(self.word()?);
        }
        Ok(Term { words })
    }

    fn finish(&self) -> Result<()> {
        if self.at < self.tokens.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_identity(text: &str) -> Result<Identity> {
    let mut p = Parser::new(text)?;
    let lhs = p.term()?;
    if p.peek() != Some(&Token::Eq) {
        return Err(p.error("expected `=`"));
    }
    p.at += 1;
    let rhs = p.term()?;
    p.finish()?;
    Ok(Identity { lhs, rhs })
}

pub fn format_term(t: &Term) -> String {
    t.to_string()
}

impl FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_identity(s)
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser::new(s)?;
        let w = p.word()?;
        p.finish()?;
        Ok(w)
    }
}
