use proptest::prelude::*;
use semiring_lab::builtin::{builtin, Builtin};
use semiring_lab::recheck::naive_satisfies;
use semiring_lab::terms::{
    is_isoterm_bounded, parse_identity, preceq, sample_satisfies, satisfies, Identity, IsotermOutcome, Term, Var, Word,
    DEFAULT_BUDGET,
};

fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(1usize..=3, 1..=4)
        .prop_map(|ix| Word::from_vars(ix.into_iter().map(|i| Var::indexed("x", i)).collect()))
}

fn term() -> impl Strategy<Value = Term> {
    proptest::collection::vec(word(), 1..=3).prop_map(|ws| Term::new(ws).unwrap())
}

fn identity() -> impl Strategy<Value = Identity> {
    (term(), term()).prop_map(|(l, r)| Identity::new(l, r))
}

proptest! {
    #[test]
    fn display_parse_round_trip(id in identity()) {
        let back = parse_identity(&id.to_string()).unwrap();
        prop_assert_eq!(back, id);
    }

    #[test]
    fn engine_matches_naive_evaluator(id in identity(), b in proptest::sample::select(Builtin::ALL.to_vec())) {
        let s = builtin(b);
        let engine = satisfies(&s, &id, DEFAULT_BUDGET);
        let naive = naive_satisfies(&s, &id.to_string()).unwrap();
        prop_assert_eq!(engine.holds(), naive.is_none());
    }

    #[test]
    fn m2_satisfies_exactly_the_regular_identities(id in identity()) {
        prop_assert_eq!(satisfies(&builtin(Builtin::M2), &id, DEFAULT_BUDGET).holds(), id.is_regular());
    }

    #[test]
    fn sampling_never_refutes_a_valid_identity(id in identity(), seed in any::<u64>()) {
        let s = builtin(Builtin::S53);
        if satisfies(&s, &id, DEFAULT_BUDGET).holds() {
            let r = sample_satisfies(&s, &id, 200, seed, &[]).unwrap();
            prop_assert!(!r.found_counterexample());
        }
    }

    #[test]
    fn preceq_is_reflexive_and_transitive(u in term(), v in term(), w in term()) {
        let s = builtin(Builtin::B0);
        prop_assert!(preceq(&s, &u, &u, DEFAULT_BUDGET).holds());
        if preceq(&s, &u, &v, DEFAULT_BUDGET).holds() && preceq(&s, &v, &w, DEFAULT_BUDGET).holds() {
            prop_assert!(preceq(&s, &u, &w, DEFAULT_BUDGET).holds());
        }
    }
}

#[test]
fn counterexamples_are_confirmed() {
    let b0 = builtin(Builtin::B0);
    let id: Identity = "x*y = y*x".parse().unwrap();
    let c = satisfies(&b0, &id, DEFAULT_BUDGET).counterexample().cloned().expect("B_0 is not commutative");
    assert_ne!(c.lhs, c.rhs);
}

#[test]
fn linear_words_in_b21() {
    let s = builtin(Builtin::B21);
    let w: Word = "x1*x2".parse().unwrap();
    let out = is_isoterm_bounded(&s, &w, 4, DEFAULT_BUDGET).unwrap();
    assert!(matches!(out, IsotermOutcome::MinimalUpToBound { .. }), "{out:?}");
}
