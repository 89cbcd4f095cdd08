//! Evaluation of terms in a finite semiring and satisfaction of identities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::syntax::{Assignment, Identity, Term, Var, Word};
use crate::algebra::FiniteSemiring;
use crate::error::{Error, Result};

/// Default cap on element operations for exhaustive checks.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Value of a single word: left-to-right product of the letter images.
pub fn eval_word(s: &FiniteSemiring, w: &Word, phi: &Assignment) -> Result<usize> {
    let mut letters = w.letters().iter();
    let first = letters.next().ok_or_else(|| Error::input("cannot evaluate the empty word"))?;
    let mut acc = phi.value(first)?;
    for x in letters {
        acc = s.mul(acc, phi.value(x)?);
    }
    Ok(acc)
}

/// Value of a term: the sum of its word values.
pub fn eval(s: &FiniteSemiring, t: &Term, phi: &Assignment) -> Result<usize> {
    let mut words = t.words();
    let first = words.next().expect("terms are nonempty");
    let mut acc = eval_word(s, first, phi)?;
    for w in words {
        acc = s.add(acc, eval_word(s, w, phi)?);
    }
    Ok(acc)
}

/// An identity with variables replaced by dense slots, for tight loops.
pub(crate) struct Compiled {
    pub vars: Vec<Var>,
    pub lhs: Vec<Vec<u32>>,
    pub rhs: Vec<Vec<u32>>,
}

impl Compiled {
    pub fn new(id: &Identity) -> Self {
        let vars = id.variables();
        let slot = |x: &Var| vars.binary_search(x).expect("variable collected") as u32;
        let side = |t: &Term| -> Vec<Vec<u32>> { t.words().map(|w| w.letters().iter().map(slot).collect()).collect() };
        Self { lhs: side(&id.lhs), rhs: side(&id.rhs), vars }
    }

    /// Table lookups needed to evaluate both sides once.
    pub fn cost(&self) -> u64 {
        self.lhs.iter().chain(&self.rhs).map(|w| w.len() as u64).sum()
    }

    #[inline]
    pub fn eval_side(s: &FiniteSemiring, side: &[Vec<u32>], values: &[usize]) -> usize {
        let mut acc = usize::MAX;
        for w in side {
            let mut p = values[w[0] as usize];
            for &x in &w[1..] {
                p = s.mul(p, values[x as usize]);
            }
            acc = if acc == usize::MAX { p } else { s.add(acc, p) };
        }
        acc
    }

    pub fn assignment(&self, values: &[usize]) -> Assignment {
        Assignment::from_pairs(self.vars.iter().cloned().zip(values.iter().copied()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    #[serde(skip)]
    pub assignment: Assignment,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    /// Re-evaluates both sides through the term evaluator and confirms they differ.
    fn confirmed(s: &FiniteSemiring, id: &Identity, assignment: Assignment) -> Self {
        let lhs = eval(s, &id.lhs, &assignment).expect("assignment covers the identity");
        let rhs = eval(s, &id.rhs, &assignment).expect("assignment covers the identity");
        assert_ne!(lhs, rhs, "counterexample for {id} does not re-check");
        Self { assignment, lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Satisfaction {
    /// Every assignment was checked.
    Holds {
        assignments: u64,
    },
    Fails(Counterexample),
    /// Exhaustion would exceed the budget; nothing was concluded.
    TooLarge {
        required: u128,
        budget: u64,
    },
}

impl Satisfaction {
    pub fn holds(&self) -> bool {
        matches!(self, Satisfaction::Holds { .. })
    }

    pub fn fails(&self) -> bool {
        matches!(self, Satisfaction::Fails(_))
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            Satisfaction::Fails(c) => Some(c),
            _ => None,
        }
    }
}

/// Cost in element operations of exhausting `id` over `s`.
pub fn exhaustive_cost(s: &FiniteSemiring, id: &Identity) -> u128 {
    let c = Compiled::new(id);
    (s.size() as u128).saturating_pow(c.vars.len() as u32) * c.cost() as u128
}

/// Decides `id` on `s` by enumerating all `|S|^v` assignments, refusing when
/// that would cost more than `budget` element operations.
pub fn satisfies(s: &FiniteSemiring, id: &Identity, budget: u64) -> Satisfaction {
    let c = Compiled::new(id);
    let n = s.size();
    let required = (n as u128).saturating_pow(c.vars.len() as u32) * c.cost() as u128;
    if required > budget as u128 {
        return Satisfaction::TooLarge { required, budget };
    }
    let mut values = vec![0usize; c.vars.len()];
    let mut count = 0u64;
    loop {
        count += 1;
        if Compiled::eval_side(s, &c.lhs, &values) != Compiled::eval_side(s, &c.rhs, &values) {
            return Satisfaction::Fails(Counterexample::confirmed(s, id, c.assignment(&values)));
        }
        // odometer, last variable fastest
        let mut i = values.len();
        loop {
            if i == 0 {
                return Satisfaction::Holds { assignments: count };
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sampling {
    NoCounterexample { trials: u64 },
    Fails(Counterexample),
}

impl Sampling {
    pub fn found_counterexample(&self) -> bool {
        matches!(self, Sampling::Fails(_))
    }
}

/// Tries the explicit `seeded` assignments first, then `trials` uniformly
/// random ones drawn from a ChaCha8 stream seeded with `seed`.
pub fn sample_satisfies(
    s: &FiniteSemiring,
    id: &Identity,
    trials: u64,
    seed: u64,
    seeded: &[Assignment],
) -> Result<Sampling> {
    if trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    let c = Compiled::new(id);
    for phi in seeded {
        let values = c.vars.iter().map(|x| phi.value(x)).collect::<Result<Vec<_>>>()?;
        if values.iter().any(|&v| v >= s.size()) {
            return Err(Error::input("seeded assignment uses an element out of range"));
        }
        if Compiled::eval_side(s, &c.lhs, &values) != Compiled::eval_side(s, &c.rhs, &values) {
            return Ok(Sampling::Fails(Counterexample::confirmed(s, id, c.assignment(&values))));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0usize; c.vars.len()];
    for _ in 0..trials {
        for v in values.iter_mut() {
            *v = rng.gen_range(0..s.size());
        }
        if Compiled::eval_side(s, &c.lhs, &values) != Compiled::eval_side(s, &c.rhs, &values) {
            return Ok(Sampling::Fails(Counterexample::confirmed(s, id, c.assignment(&values))));
        }
    }
    Ok(Sampling::NoCounterexample { trials })
}

/// `u ≼ v`, i.e. the identity `u + v = v`.
pub fn preceq_identity(u: &Term, v: &Term) -> Identity {
    Identity::new(u.plus(v), v.clone())
}

pub fn preceq(s: &FiniteSemiring, u: &Term, v: &Term, budget: u64) -> Satisfaction {
    satisfies(s, &preceq_identity(u, v), budget)
}

pub fn is_regular(id: &Identity) -> bool {
    id.is_regular()
}

/// `x1 ⋯ x(k+1) + y = x1 ⋯ x(k+1)`: every (k+1)-fold product is additively
/// greatest.
pub fn nilpotent_identity(k: usize) -> Result<Identity> {
    if k == 0 {
        return Err(Error::input("nilpotency index must be at least 1"));
    }
    let product = Word::from_vars((1..=k + 1).map(|i| Var::indexed("x", i)).collect());
    let y = Word::single(Var::new("y")?);
    let rhs = Term::word(product.clone());
    let lhs = Term::new([product, y])?;
    Ok(Identity::new(lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsotermOutcome {
    /// No word `u != w` over c(w) of length at most the bound has `u ≼ w`.
    /// This certifies minimality only up to the bound.
    MinimalUpToBound {
        candidates: u64,
    },
    /// `u ≼ w` holds for this `u != w`.
    Violating {
        word: Word,
        candidates: u64,
    },
    Inconclusive {
        candidates: u64,
        reason: String,
    },
}

/// Bounded search for a word `u != w` with `u ≼_S w`.
///
/// Candidates range over words in the letters of `w` (valid whenever `M_2`
/// embeds in `s`, since then `u ≼ w` forces c(u) = c(w)). Rearrangements of
/// `w` are tried first, then the remaining words of length ℓ(w), then the
/// other lengths in increasing order, each block in lexicographic order.
/// `budget` caps the element operations spent over the whole search.
pub fn is_isoterm_bounded(s: &FiniteSemiring, w: &Word, max_len: usize, budget: u64) -> Result<IsotermOutcome> {
    if w.is_empty() {
        return Err(Error::input("isoterm check needs a nonempty word"));
    }
    if max_len < w.len() {
        return Err(Error::input(format!("bound {max_len} is shorter than the word ({})", w.len())));
    }
    let alphabet: Vec<Var> = w.content().into_iter().collect();
    let target = Term::word(w.clone());
    let exps = w.exponents();
    // (length, only rearrangements of w?, skip rearrangements of w?)
    let blocks = [(w.len(), true, false), (w.len(), false, true)]
        .into_iter()
        .chain((1..=max_len).filter(|&l| l != w.len()).map(|l| (l, false, false)));
    let mut remaining = budget;
    let mut candidates = 0u64;
    for (len, only_anagrams, skip_anagrams) in blocks {
        let mut digits = vec![0usize; len];
        loop {
            let u = Word::from_vars(digits.iter().map(|&d| alphabet[d].clone()).collect());
            let anagram = len == w.len() && u.exponents() == exps;
            if &u != w && (anagram || !only_anagrams) && !(anagram && skip_anagrams) {
                candidates += 1;
                match preceq(s, &Term::word(u.clone()), &target, remaining) {
                    Satisfaction::Holds { .. } => {
                        return Ok(IsotermOutcome::Violating { word: u, candidates });
                    }
                    Satisfaction::Fails(_) => {}
                    Satisfaction::TooLarge { required, .. } => {
                        return Ok(IsotermOutcome::Inconclusive {
                            candidates,
                            reason: format!("checking {u} needs {required} operations, {remaining} left"),
                        });
                    }
                }
                let spent = exhaustive_cost(s, &preceq_identity(&Term::word(u), &target));
                remaining = remaining.saturating_sub(spent.min(u64::MAX as u128) as u64);
            }
            if !advance(&mut digits, alphabet.len()) {
                break;
            }
        }
    }
    Ok(IsotermOutcome::MinimalUpToBound { candidates })
}

/// Odometer step over `base` digits, last digit fastest. Returns false after
/// wrapping back to all zeros.
fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, Builtin};
    use crate::terms::syntax::parse_identity;

    fn phi(s: &FiniteSemiring, pairs: &[(&str, &str)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|(x, e)| (Var::new(*x).unwrap(), s.element(e).unwrap())))
    }

    fn id(text: &str) -> Identity {
        parse_identity(text).unwrap()
    }

    #[test]
    fn evaluates_products_left_to_right() {
        let s = builtin(Builtin::S53);
        let t: Term = "x*y".parse().unwrap();
        assert_eq!(eval(&s, &t, &phi(&s, &[("x", "a"), ("y", "1")])).unwrap(), s.element("a").unwrap());
    }

    #[test]
    fn single_letter_evaluates_to_its_image() {
        for b in Builtin::ALL {
            let s = builtin(b);
            let t: Term = "x".parse().unwrap();
            for e in 0..s.size() {
                let a = Assignment::from_pairs([(Var::new("x").unwrap(), e)]);
                assert_eq!(eval(&s, &t, &a).unwrap(), e);
            }
        }
    }

    #[test]
    fn b0_sum_of_both_orders() {
        let b = builtin(Builtin::B0);
        let t: Term = "x*y + y*x".parse().unwrap();
        let v = eval(&b, &t, &phi(&b, &[("x", "e11"), ("y", "e12")])).unwrap();
        assert_eq!(v, b.element("0").unwrap());
    }

    #[test]
    fn unassigned_variable_is_an_error() {
        let s = builtin(Builtin::S53);
        let t: Term = "x*z".parse().unwrap();
        assert!(matches!(
            eval(&s, &t, &phi(&s, &[("x", "a")])),
            Err(Error::UnassignedVariable(v)) if v == "z"
        ));
    }

    #[test]
    fn commutativity() {
        let comm = id("x*y = y*x");
        assert!(satisfies(&builtin(Builtin::M2), &comm, DEFAULT_BUDGET).holds());
        assert!(satisfies(&builtin(Builtin::S53), &comm, DEFAULT_BUDGET).holds());
        let b0 = builtin(Builtin::B0);
        let Satisfaction::Fails(c) = satisfies(&b0, &comm, DEFAULT_BUDGET) else { panic!("B_0 is not commutative") };
        assert_ne!(c.lhs, c.rhs);
        // The first failing assignment in odometer order.
        let named = c.assignment.named(&b0);
        assert_eq!(named["x"], "e11");
        assert_eq!(named["y"], "e12");
    }

    #[test]
    fn reflexivity_holds_everywhere() {
        for b in Builtin::ALL {
            assert!(satisfies(&builtin(b), &id("x = x"), DEFAULT_BUDGET).holds());
        }
    }

    #[test]
    fn budget_refusal() {
        let s = builtin(Builtin::B21);
        let big = id("x1*x2*x3*x4*x5*x6*x7*x8*x9*x10*x11*x12 = x12*x11");
        assert!(matches!(satisfies(&s, &big, DEFAULT_BUDGET), Satisfaction::TooLarge { .. }));
        assert!(satisfies(&s, &id("x*y = y*x"), 3).eq(&Satisfaction::TooLarge { required: 36 * 4, budget: 3 }));
    }

    #[test]
    fn sampling() {
        let s = builtin(Builtin::S53);
        let r = sample_satisfies(&s, &id("x = x"), 100, 7, &[]).unwrap();
        assert_eq!(r, Sampling::NoCounterexample { trials: 100 });
        assert!(sample_satisfies(&s, &id("x = x"), 0, 7, &[]).is_err());
        let b0 = builtin(Builtin::B0);
        let seeded = [phi(&b0, &[("x", "e11"), ("y", "e12")])];
        let r = sample_satisfies(&b0, &id("x*y = y*x"), 1, 0, &seeded).unwrap();
        assert!(r.found_counterexample());
    }

    #[test]
    fn sampling_is_deterministic() {
        let b0 = builtin(Builtin::B0);
        let i = id("x*y*z = z*y*x");
        let a = sample_satisfies(&b0, &i, 50, 3, &[]).unwrap();
        let b = sample_satisfies(&b0, &i, 50, 3, &[]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn preceq_examples() {
        let t = |s: &str| s.parse::<Term>().unwrap();
        assert!(preceq(&builtin(Builtin::S53), &t("x*y"), &t("x*y"), DEFAULT_BUDGET).holds());
        assert!(preceq(&builtin(Builtin::B0), &t("x*y"), &t("x"), DEFAULT_BUDGET).fails());
        assert!(preceq(&builtin(Builtin::M2), &t("x"), &t("y"), DEFAULT_BUDGET).fails());
        // x ≼ xy is regular, so M_2 satisfies it
        assert!(preceq(&builtin(Builtin::M2), &t("x"), &t("x*y"), DEFAULT_BUDGET).holds());
    }

    #[test]
    fn nilpotent_identities() {
        let n1 = nilpotent_identity(1).unwrap();
        assert_eq!(n1.to_string(), "x1*x2 + y = x1*x2");
        assert!(satisfies(&builtin(Builtin::S53), &n1, DEFAULT_BUDGET).fails());
        let trivial = FiniteSemiring::from_fn(None, vec!["e".into()], |_, _| 0, |_, _| 0).unwrap();
        for k in 1..5 {
            assert!(satisfies(&trivial, &nilpotent_identity(k).unwrap(), DEFAULT_BUDGET).holds());
        }
        assert!(nilpotent_identity(0).is_err());
    }

    #[test]
    fn isoterms() {
        let w = |s: &str| s.parse::<Word>().unwrap();
        let r = is_isoterm_bounded(&builtin(Builtin::B0), &w("x1*x2"), 4, DEFAULT_BUDGET).unwrap();
        assert!(matches!(r, IsotermOutcome::MinimalUpToBound { .. }), "{r:?}");
        let r = is_isoterm_bounded(&builtin(Builtin::M2), &w("x1*x2"), 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(r, IsotermOutcome::Violating { word: w("x2*x1"), candidates: 1 });
        let s53 = builtin(Builtin::S53);
        let r = is_isoterm_bounded(&s53, &w("x1*x2*x3"), 4, DEFAULT_BUDGET).unwrap();
        let IsotermOutcome::Violating { word, .. } = r else { panic!("{r:?}") };
        let target = Term::word(w("x1*x2*x3"));
        assert!(preceq(&s53, &Term::word(word), &target, DEFAULT_BUDGET).holds());
        assert!(preceq(&s53, &Term::word(w("x2*x1*x3")), &target, DEFAULT_BUDGET).holds());
        assert!(is_isoterm_bounded(&s53, &w("x1*x2"), 1, DEFAULT_BUDGET).is_err());
        let r = is_isoterm_bounded(&s53, &w("x1*x2*x3"), 4, 10).unwrap();
        assert!(matches!(r, IsotermOutcome::Inconclusive { .. }));
    }
}
