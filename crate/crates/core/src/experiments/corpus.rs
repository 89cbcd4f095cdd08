//! Seeded identity corpora: regularization (`S^inf` satisfies exactly the
//! regular identities of `S`) and the engine-versus-naive evaluator oracle.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::FiniteSemiring;
use crate::recheck;
use crate::terms::{satisfies, Identity, Satisfaction, Term, Var, Word, DEFAULT_BUDGET};
use crate::word_semirings::s_infinity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusParams {
    pub size: usize,
    pub max_vars: usize,
    pub max_words: usize,
    pub max_len: usize,
    pub seed: u64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self { size: 200, max_vars: 3, max_words: 4, max_len: 4, seed: 0x5eed }
    }
}

fn random_word(rng: &mut ChaCha8Rng, vars: &[Var], max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word::from_vars((0..len).map(|_| vars.choose(rng).expect("nonempty alphabet").clone()).collect())
}

fn random_term(rng: &mut ChaCha8Rng, vars: &[Var], p: &CorpusParams) -> Term {
    let n = rng.gen_range(1..=p.max_words);
    Term::new((0..n).map(|_| random_word(rng, vars, p.max_len))).expect("nonempty words")
}

/// One small edit of a term: add, drop, permute or change a word.
fn mutate(rng: &mut ChaCha8Rng, t: &Term, vars: &[Var], p: &CorpusParams) -> Term {
    let mut words: Vec<Word> = t.words().cloned().collect();
    match rng.gen_range(0..5) {
        0 if words.len() < p.max_words => words.push(random_word(rng, vars, p.max_len)),
        1 if words.len() > 1 => {
            let i = rng.gen_range(0..words.len());
            words.remove(i);
        }
        2 => {
            let i = rng.gen_range(0..words.len());
            let mut letters = words[i].letters().to_vec();
            letters.reverse();
            words[i] = Word::from_vars(letters);
        }
        3 => {
            let i = rng.gen_range(0..words.len());
            let mut letters = words[i].letters().to_vec();
            if letters.len() < p.max_len {
                let j = rng.gen_range(0..letters.len());
                letters.insert(j, letters[j].clone());
            }
            words[i] = Word::from_vars(letters);
        }
        _ => {
            let i = rng.gen_range(0..words.len());
            let mut letters = words[i].letters().to_vec();
            let j = rng.gen_range(0..letters.len());
            letters[j] = vars.choose(rng).expect("nonempty alphabet").clone();
            words[i] = Word::from_vars(letters);
        }
    }
    Term::new(words).expect("mutation keeps a nonempty term")
}

/// An identity with up to `max_vars` variables; the right side is either
/// independent of the left or a one-step mutation of it.
pub fn random_identity(rng: &mut ChaCha8Rng, p: &CorpusParams, mutated: bool) -> Identity {
    let nvars = rng.gen_range(1..=p.max_vars);
    let vars: Vec<Var> = (1..=nvars).map(|i| Var::indexed("x", i)).collect();
    let lhs = random_term(rng, &vars, p);
    let rhs = if mutated { mutate(rng, &lhs, &vars, p) } else { random_term(rng, &vars, p) };
    Identity::new(lhs, rhs)
}

/// Half independent pairs, half mutations.
pub fn regularization_corpus(p: &CorpusParams) -> Vec<Identity> {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    (0..p.size).map(|i| random_identity(&mut rng, p, i % 2 == 1)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RegularizationReport {
    pub algebra: String,
    pub identities: usize,
    pub holding_in_base: usize,
    pub regular: usize,
    pub holding_in_extension: usize,
    pub exceptions: Vec<String>,
    pub undecided: usize,
}

impl RegularizationReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty() && self.undecided == 0
    }
}

/// Checks `S^inf ⊨ φ  ⇔  S ⊨ φ and φ is regular` on every corpus identity.
pub fn regularization_check(s: &FiniteSemiring, corpus: &[Identity]) -> RegularizationReport {
    let ext = s_infinity(s);
    let mut r = RegularizationReport {
        algebra: s.name().unwrap_or("S").to_string(),
        identities: corpus.len(),
        ..Default::default()
    };
    for id in corpus {
        let base = satisfies(s, id, DEFAULT_BUDGET);
        let extended = satisfies(&ext, id, DEFAULT_BUDGET);
        if matches!(base, Satisfaction::TooLarge { .. }) || matches!(extended, Satisfaction::TooLarge { .. }) {
            r.undecided += 1;
            continue;
        }
        r.holding_in_base += usize::from(base.holds());
        r.regular += usize::from(id.is_regular());
        r.holding_in_extension += usize::from(extended.holds());
        if extended.holds() != (base.holds() && id.is_regular()) {
            r.exceptions.push(id.to_string());
        }
    }
    r
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub algebra: String,
    pub identities: usize,
    pub holding: usize,
    pub disagreements: Vec<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Compares `satisfies` with the naive recursive evaluator; engine
/// counterexamples are also re-evaluated naively.
pub fn engine_oracle_check(s: &FiniteSemiring, corpus: &[Identity]) -> OracleReport {
    let mut r =
        OracleReport { algebra: s.name().unwrap_or("S").to_string(), identities: corpus.len(), ..Default::default() };
    for id in corpus {
        let text = id.to_string();
        let engine = satisfies(s, id, DEFAULT_BUDGET);
        let naive = recheck::naive_satisfies(s, &text);
        let agree = match (&engine, &naive) {
            (Satisfaction::Holds { .. }, Ok(None)) => true,
            (Satisfaction::Fails(c), Ok(Some(_))) => {
                let env = c.assignment.iter().map(|(x, v)| (x.to_string(), v)).collect();
                matches!(recheck::naive_eval(s, &text, &env), Some((l, r)) if l != r)
            }
            _ => false,
        };
        r.holding += usize::from(engine.holds());
        if !agree {
            r.disagreements.push(text);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, Builtin};

    #[test]
    fn corpus_is_seeded_and_bounded() {
        let p = CorpusParams { size: 50, ..CorpusParams::default() };
        let a = regularization_corpus(&p);
        assert_eq!(a, regularization_corpus(&p));
        assert_ne!(a, regularization_corpus(&CorpusParams { seed: 1, ..p }));
        for id in &a {
            assert!(id.variables().len() <= 3);
            for t in [&id.lhs, &id.rhs] {
                assert!(t.len() <= 4);
                assert!(t.words().all(|w| (1..=4).contains(&w.len())));
            }
        }
    }

    #[test]
    fn regularization_on_m2() {
        let p = CorpusParams { size: 40, ..CorpusParams::default() };
        let r = regularization_check(&builtin(Builtin::M2), &regularization_corpus(&p));
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn oracle_agrees_on_small_corpus() {
        let p = CorpusParams { size: 40, seed: 9, ..CorpusParams::default() };
        let r = engine_oracle_check(&builtin(Builtin::S7), &regularization_corpus(&p));
        assert!(r.passed(), "{r:?}");
    }
}
