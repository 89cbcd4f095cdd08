use semiring_lab::experiments::{
    b0_checks, build_a, reduction_satisfies, sigma, witness_assignment, B0Params, ReductionVerdict, Report, Verdict,
};
use semiring_lab::hypergraph::{OrderingMode, SearchConfig};
use semiring_lab::terms::{sample_satisfies, satisfies, Assignment, DEFAULT_BUDGET};

#[test]
fn reductions_follow_divisibility() {
    for (p, q, satisfied) in [(2, 3, true), (3, 2, true), (1, 2, true), (2, 2, false), (3, 3, false)] {
        let inst = build_a(3, p).unwrap();
        let sig = sigma(3, q, OrderingMode::Single).unwrap();
        let r = reduction_satisfies(&inst, &sig, SearchConfig::default()).unwrap();
        assert!(r.facts.hold(), "A(3,{p}) q={q} {:?}", r.facts);
        assert_eq!(r.oracle_predicts_satisfied, satisfied);
        let expected = if satisfied { ReductionVerdict::Satisfied } else { ReductionVerdict::Counterexample };
        assert_eq!(r.verdict, expected, "p={p} q={q}");
        if !satisfied {
            assert_eq!(r.counterexample_rechecked, Some(true));
        }
    }
}

#[test]
fn reduction_agrees_with_sampling() {
    let sig = sigma(3, 2, OrderingMode::Single).unwrap();
    // no homomorphism H(3,2) -> H(3,1), so nothing should turn up
    let a31 = build_a(3, 1).unwrap();
    assert_eq!(reduction_satisfies(&a31, &sig, SearchConfig::default()).unwrap().verdict, ReductionVerdict::Satisfied);
    assert!(!sample_satisfies(&a31.algebra, &sig.identity, 20_000, 11, &[]).unwrap().found_counterexample());

    let a32 = build_a(3, 2).unwrap();
    let phi = witness_assignment(&a32, &sig).unwrap();
    assert!(sample_satisfies(&a32.algebra, &sig.identity, 1, 11, &[phi]).unwrap().found_counterexample());
    assert!(satisfies(&a31.algebra, &semiring_lab::terms::nilpotent_identity(3).unwrap(), DEFAULT_BUDGET).holds());
}

#[test]
fn all_orderings_agree_on_sampled_assignments() {
    let inst = build_a(3, 2).unwrap();
    let single = sigma(3, 2, OrderingMode::Single).unwrap();
    let all = sigma(3, 2, OrderingMode::All).unwrap();
    let a = &inst.algebra;
    let phi: Assignment = witness_assignment(&inst, &single).unwrap();
    let l1 = semiring_lab::terms::eval(a, &single.identity.lhs, &phi).unwrap();
    let l2 = semiring_lab::terms::eval(a, &all.identity.lhs, &phi).unwrap();
    assert_eq!(l1, l2);
    assert!(
        sample_satisfies(a, &all.identity, 2000, 3, &[]).unwrap().found_counterexample()
            == sample_satisfies(a, &single.identity, 2000, 3, &[]).unwrap().found_counterexample()
    );
}

#[test]
fn b0_linear_isoterms_and_chain_hold() {
    let r = b0_checks(B0Params { max_vars: 2, max_len: 3, ..B0Params::default() }).unwrap();
    assert!(r.isoterms_hold());
    assert!(r.chain_holds());
    assert!(r.separated_occurrence_holds());
}

#[test]
fn reports_are_single_line_json() {
    let mut r = Report::new("demo", "a claim", serde_json::json!({"k": 3}));
    r.verdict = Verdict::Confirmed;
    let text = r.to_json();
    assert!(!text.trim_end().contains('\n'));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["experiment"], "demo");
    assert_eq!(Verdict::Inconclusive.exit_code(), 2);
}
