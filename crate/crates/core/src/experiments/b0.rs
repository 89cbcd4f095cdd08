//! Bounded checks on B_0: the occurrence property of `≼`, linear isoterms,
//! and the chain `S(a1) < S(a1 a2) < ...` of flat subalgebra varieties.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::ElementMap;
use crate::builtin::{builtin, Builtin};
use crate::error::Result;
use crate::recheck;
use crate::terms::{
    eval, is_isoterm_bounded, nilpotent_identity, preceq, satisfies, Assignment, IsotermOutcome, Satisfaction, Term,
    Var, Word, DEFAULT_BUDGET,
};
use crate::word_semirings::{chain_word, word_semiring, WordElem, WordSemiringSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct B0Params {
    pub max_vars: usize,
    pub max_len: usize,
    pub isoterm_bound: usize,
    pub isoterm_max_n: usize,
    pub chain_max_n: usize,
    pub budget: u64,
}

impl Default for B0Params {
    fn default() -> Self {
        Self { max_vars: 3, max_len: 4, isoterm_bound: 6, isoterm_max_n: 3, chain_max_n: 4, budget: DEFAULT_BUDGET }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OccurrenceCheck {
    pub words: usize,
    pub pairs: u64,
    /// Pairs with `p ≼ q` in B_0.
    pub related: u64,
    /// Pairs with `p ≼ q` where some letter occurs once in `q` but not once in `p`.
    pub violations: Vec<(String, String)>,
    /// The subset of `violations` where, for the offending letter `x` with
    /// `q = q1 x q2`, the contents of `q1` and `q2` are disjoint.
    pub separated_violations: Vec<(String, String)>,
    pub undecided: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotermCheck {
    pub word: String,
    pub bound: usize,
    pub outcome: String,
    pub candidates: u64,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainFact {
    pub n: usize,
    /// `S(a1..an)` embeds in `S(a1..a(n+1))` by the identity on words.
    pub embeds: bool,
    /// `S(a1..an)` satisfies the `(n+1)`-nilpotent identity (exhaustive).
    pub satisfies_nilpotent: bool,
    /// `S(a1..a(n+1))` violates it under `x_i -> a_i`, `y -> a1`.
    pub next_violates: bool,
    pub witness: BTreeMap<String, String>,
}

impl ChainFact {
    pub fn holds(&self) -> bool {
        self.embeds && self.satisfies_nilpotent && self.next_violates
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct B0Report {
    pub params: B0Params,
    pub occurrence: OccurrenceCheck,
    pub isoterms: Vec<IsotermCheck>,
    pub chain: Vec<ChainFact>,
}

impl B0Report {
    /// The occurrence implication as stated, for every related pair.
    pub fn occurrence_holds(&self) -> bool {
        self.occurrence.violations.is_empty() && self.occurrence.undecided == 0
    }

    /// The occurrence implication restricted to letters `x` whose prefix and
    /// suffix in `q` share no letters.
    pub fn separated_occurrence_holds(&self) -> bool {
        self.occurrence.separated_violations.is_empty() && self.occurrence.undecided == 0
    }

    pub fn isoterms_hold(&self) -> bool {
        self.isoterms.iter().all(|c| c.minimal)
    }

    pub fn chain_holds(&self) -> bool {
        self.chain.iter().all(ChainFact::holds)
    }

    pub fn passed(&self) -> bool {
        self.occurrence_holds() && self.isoterms_hold() && self.chain_holds()
    }
}

/// All words over `x1..x{vars}` of length `1..=max_len`, shortest first.
pub fn all_words(vars: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Var> = (1..=vars).map(|i| Var::indexed("x", i)).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Var>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |x| {
                    let mut v = w.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
        out.extend(layer.iter().cloned().map(Word::from_vars));
    }
    out
}

fn occurrence_check(params: &B0Params) -> OccurrenceCheck {
    let b0 = builtin(Builtin::B0);
    let words = all_words(params.max_vars, params.max_len);
    let mut out = OccurrenceCheck { words: words.len(), ..Default::default() };
    for p in &words {
        for q in &words {
            out.pairs += 1;
            match preceq(&b0, &Term::word(p.clone()), &Term::word(q.clone()), params.budget) {
                Satisfaction::Holds { .. } => {
                    out.related += 1;
                    let bad: Vec<Var> = q.content().into_iter().filter(|x| q.occ(x) == 1 && p.occ(x) != 1).collect();
                    if !bad.is_empty() {
                        out.violations.push((p.to_string(), q.to_string()));
                        if bad.iter().any(|x| separated_at(q, x)) {
                            out.separated_violations.push((p.to_string(), q.to_string()));
                        }
                    }
                }
                Satisfaction::Fails(_) => {}
                Satisfaction::TooLarge { .. } => out.undecided += 1,
            }
        }
    }
    out
}

/// Whether `q = q1 x q2` with `c(q1)` and `c(q2)` disjoint.
fn separated_at(q: &Word, x: &Var) -> bool {
    let letters = q.letters();
    let i = letters.iter().position(|y| y == x).expect("x occurs in q");
    let before: std::collections::BTreeSet<&Var> = letters[..i].iter().collect();
    letters[i + 1..].iter().all(|y| !before.contains(y))
}

fn chain_fact(n: usize, budget: u64) -> Result<ChainFact> {
    let small = word_semiring(&WordSemiringSpec::flat(vec![chain_word("a", n)], false, false))?;
    let big = word_semiring(&WordSemiringSpec::flat(vec![chain_word("a", n + 1)], false, false))?;
    let images = small
        .carrier
        .iter()
        .map(|e| match e {
            WordElem::Word(w) => big.index_of_word(w).expect("factors of a1..an are factors of a1..a(n+1)"),
            _ => big.zero(),
        })
        .collect();
    let map = ElementMap::new(images, big.algebra.size());
    let embeds = recheck::is_embedding(&small.algebra, &big.algebra, &map);

    let nil = nilpotent_identity(n)?;
    let satisfies_nilpotent = satisfies(&small.algebra, &nil, budget).holds();

    let b = &big.algebra;
    let mut phi = Assignment::new();
    for i in 1..=n + 1 {
        phi.set(Var::indexed("x", i), b.element(&format!("a{i}"))?);
    }
    phi.set(Var::new("y")?, b.element("a1")?);
    let lhs = eval(b, &nil.lhs, &phi)?;
    let rhs = eval(b, &nil.rhs, &phi)?;
    let env: BTreeMap<String, usize> = phi.iter().map(|(x, v)| (x.to_string(), v)).collect();
    let naive = recheck::naive_eval(b, &nil.to_string(), &env);
    let next_violates = lhs != rhs && naive == Some((lhs, rhs));
    Ok(ChainFact { n, embeds, satisfies_nilpotent, next_violates, witness: phi.named(b) })
}

pub fn b0_checks(params: B0Params) -> Result<B0Report> {
    let occurrence = occurrence_check(&params);
    let b0 = builtin(Builtin::B0);
    let mut isoterms = Vec::new();
    for n in 1..=params.isoterm_max_n {
        let w = Word::from_vars((1..=n).map(|i| Var::indexed("x", i)).collect());
        let out = is_isoterm_bounded(&b0, &w, params.isoterm_bound, params.budget)?;
        let (outcome, candidates, minimal) = match &out {
            IsotermOutcome::MinimalUpToBound { candidates } => ("minimal up to bound".to_string(), *candidates, true),
            IsotermOutcome::Violating { word, candidates } => (format!("violated by {word}"), *candidates, false),
            IsotermOutcome::Inconclusive { candidates, reason } => {
                (format!("inconclusive: {reason}"), *candidates, false)
            }
        };
        isoterms.push(IsotermCheck { word: w.to_string(), bound: params.isoterm_bound, outcome, candidates, minimal });
    }
    let chain = (1..=params.chain_max_n).map(|n| chain_fact(n, params.budget)).collect::<Result<_>>()?;
    Ok(B0Report { params, occurrence, isoterms, chain })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_corpus_size() {
        assert_eq!(all_words(3, 4).len(), 120);
        assert_eq!(all_words(2, 2).len(), 6);
    }

    #[test]
    fn small_run() {
        let params = B0Params {
            max_vars: 2,
            max_len: 3,
            isoterm_bound: 4,
            isoterm_max_n: 2,
            chain_max_n: 2,
            ..B0Params::default()
        };
        let r = b0_checks(params).unwrap();
        assert!(r.occurrence.related > 0);
        assert!(r.isoterms_hold() && r.chain_holds());
        assert!(r.separated_occurrence_holds());
        // x1 ≼ x1 x2 x1 although x2 occurs once on the right only
        assert!(r.occurrence.violations.contains(&("x1".to_string(), "x1*x2*x1".to_string())));
        assert!(!r.passed());
    }

    #[test]
    fn occurrence_counterexample_by_hand() {
        let b0 = builtin(Builtin::B0);
        let t = |s: &str| s.parse::<Term>().unwrap();
        assert!(preceq(&b0, &t("x"), &t("x*y*x"), DEFAULT_BUDGET).holds());
        assert!(recheck::naive_satisfies(&b0, "x + x*y*x = x*y*x").unwrap().is_none());
        // the nonzero values of xyx need y = x in {e11, e22}
        let (e11, e12) = (b0.element("e11").unwrap(), b0.element("e12").unwrap());
        assert_eq!(b0.mul(b0.mul(e12, e12), e12), b0.element("0").unwrap());
        assert_eq!(b0.mul(b0.mul(e11, e11), e11), e11);
    }

    #[test]
    fn xy_below_xyx() {
        let b0 = builtin(Builtin::B0);
        let t = |s: &str| s.parse::<Term>().unwrap();
        assert!(preceq(&b0, &t("x*y"), &t("x*y*x"), DEFAULT_BUDGET).holds());
        assert!(preceq(&b0, &t("x*y*x"), &t("x*y"), DEFAULT_BUDGET).fails());
    }

    #[test]
    fn separation_test() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        let y = Var::new("y").unwrap();
        assert!(!separated_at(&w("x*y*x"), &y));
        assert!(separated_at(&w("x*y*z"), &y));
        assert!(separated_at(&w("x*x*y"), &y));
    }

    #[test]
    fn chain_two() {
        let f = chain_fact(2, DEFAULT_BUDGET).unwrap();
        assert!(f.holds(), "{f:?}");
        assert_eq!(f.witness["y"], "a1");
    }
}
