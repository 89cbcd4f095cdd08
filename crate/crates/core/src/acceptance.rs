//! The acceptance suite: thirteen end-to-end checks, each with a pinned
//! runtime limit. Used by the `acceptance` test target and by `report all`.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{natural_order, verify_ai_semiring, FiniteSemiring, Op};
use crate::builtin::{builtin, Builtin};
use crate::config::DEFAULT_SEED;
use crate::error::Result;
use crate::experiments::{
    b0_checks, build_a, corroborate_by_sampling, embed_sc_star_in_a, engine_oracle_check, reconstruct_sc_star,
    reduction_satisfies, regularization_check, regularization_corpus, sigma, verify_power_structure, witness_failure,
    B0Params, CorpusParams, ReductionVerdict,
};
use crate::hypergraph::{
    block_hom, hom_exists_oracle, hom_search, is_hypergraph_hom, kneser, CertificateKind, OrderingMode, SearchConfig,
};
use crate::iso::{find_isomorphism, IsoOutcome};
use crate::recheck;
use crate::terms::{Sampling, Word};
use crate::word_semirings::{
    chain_word, s_infinity, subdirect_maxplus_check, truncated_max_plus, word_semiring, WordSemiringSpec,
};

/// Mutations drawn for the axiom check.
pub const MUTATIONS: usize = 20;
/// Seeded trials when the stretch reduction times out.
pub const STRETCH_TRIALS: u64 = 100_000;
/// Identities in the engine-versus-naive corpus.
pub const ORACLE_CORPUS: usize = 500;
/// Wall-clock budget for each homomorphism search.
pub const SEARCH_BUDGET: Duration = Duration::from_secs(600);

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "as_millis")]
    pub elapsed: Duration,
    #[serde(serialize_with = "as_millis")]
    pub limit: Duration,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

impl CriterionResult {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:>2}] {} ({} ms, limit {} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_millis(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, u64, Check); 13] = [
    (1, "semiring axioms and mutation detection", 1, axioms),
    (2, "natural orders of S_53 and B_2^1", 1, orders),
    (3, "named isomorphisms", 5, named_isomorphisms),
    (4, "divisibility semirings rebuilt from powers of S_53", 30, reconstruction),
    (5, "power structure of A(3,2)", 30, power_structure),
    (6, "sigma fails on A(k,q)", 10, witness_side),
    (7, "sigma holds on A(k,p) by homomorphism exhaustion", 600, satisfaction_side),
    (8, "homomorphism search against the divisibility oracle", 60, hom_oracle),
    (9, "S_c*(a1a2a3) embeds in A(3,2)", 5, embedding),
    (10, "regularization corpus", 60, regularization),
    (11, "B_0 occurrence, isoterm and chain checks", 120, b0_suite),
    (12, "max-plus subdirect decomposition", 1, maxplus),
    (13, "engine agrees with the naive evaluator", 60, engine_oracle),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based). Errors count as failures.
pub fn run_criterion(id: u8) -> CriterionResult {
    let &(id, title, limit, check) = CRITERIA.iter().find(|c| c.0 == id).expect("criterion ids are 1..=13");
    let limit = Duration::from_secs(limit);
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    let mut r = CriterionResult { id, title, passed: ok, detail, elapsed, limit };
    if !r.within_limit() {
        r.passed = false;
        r.detail.push_str(" [over time limit]");
    }
    r
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().map(|c| run_criterion(c.0)).collect()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

// 1 -------------------------------------------------------------------------

fn suite_word_semirings() -> Result<Vec<FiniteSemiring>> {
    let w = |s: &str| s.parse::<Word>();
    let specs = vec![
        WordSemiringSpec::flat(vec![w("a")?], false, false),
        WordSemiringSpec::flat(vec![chain_word("a", 2)], false, false),
        WordSemiringSpec::flat(vec![chain_word("a", 3)], false, false),
        WordSemiringSpec::flat(vec![chain_word("a", 5)], false, false),
        WordSemiringSpec::flat(vec![Word::empty()], false, true),
        WordSemiringSpec::flat(vec![w("a*b*a")?, w("b*b")?], false, true),
        WordSemiringSpec::flat(vec![w("a*a*b")?], true, false),
        WordSemiringSpec::divisibility(vec![Word::empty()], true),
        WordSemiringSpec::divisibility(vec![w("a")?], true),
        WordSemiringSpec::divisibility(vec![w("a*a*a")?], true),
        WordSemiringSpec::divisibility(vec![chain_word("a", 4)], false),
        WordSemiringSpec::divisibility(vec![w("a*a*b")?, w("b*c")?], true),
    ];
    let mut out = specs.iter().map(|s| word_semiring(s).map(|w| w.algebra)).collect::<Result<Vec<_>>>()?;
    for k in 1..=6 {
        out.push(truncated_max_plus(k)?);
    }
    out.extend(Builtin::ALL.iter().map(|&b| s_infinity(&builtin(b))));
    out.push(build_a(3, 2)?.algebra);
    out.push(build_a(2, 3)?.algebra);
    Ok(out)
}

/// Every single-entry change of either table of `s`, as `(op, a, b, value)`.
pub fn single_entry_mutations(s: &FiniteSemiring) -> Vec<(Op, usize, usize, usize)> {
    let n = s.size();
    let mut out = Vec::new();
    for op in [Op::Add, Op::Mul] {
        for a in 0..n {
            for b in 0..n {
                let old = match op {
                    Op::Add => s.add(a, b),
                    Op::Mul => s.mul(a, b),
                };
                out.extend((0..n).filter(|&v| v != old).map(|v| (op, a, b, v)));
            }
        }
    }
    out
}

fn axioms() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let builtins: Vec<FiniteSemiring> = Builtin::ALL.iter().map(|&b| builtin(b)).collect();
    let words = suite_word_semirings()?;
    for s in builtins.iter().chain(&words) {
        if !verify_ai_semiring(s).is_ai_semiring() {
            bad.push(s.name().unwrap_or("?").to_string());
        }
    }
    let s53 = builtin(Builtin::S53);
    let all = single_entry_mutations(&s53);
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let drawn: Vec<_> = all.choose_multiple(&mut rng, MUTATIONS).copied().collect();
    let mut undetected = Vec::new();
    for &(op, a, b, v) in &drawn {
        let m = s53.clone().with_entry(op, a, b, v)?;
        if verify_ai_semiring(&m).is_ai_semiring() {
            undetected.push(format!(
                "{op:?}({},{}):={}",
                s53.element_name(a),
                s53.element_name(b),
                s53.element_name(v)
            ));
        }
    }
    let surviving = all
        .iter()
        .filter(|&&(op, a, b, v)| {
            s53.clone().with_entry(op, a, b, v).map(|m| verify_ai_semiring(&m).is_ai_semiring()).unwrap_or(false)
        })
        .count();
    let ok = bad.is_empty() && undetected.is_empty();
    Ok((
        ok,
        format!(
            "{} algebras verified (non-semirings: {:?}); {}/{} drawn mutations detected, undetected {:?}; {surviving} of all {} mutations are still ai-semirings",
            builtins.len() + words.len(),
            bad,
            drawn.len() - undetected.len(),
            drawn.len(),
            undetected,
            all.len()
        ),
    ))
}

// 2 -------------------------------------------------------------------------

fn named_relation(s: &FiniteSemiring, pairs: &[(&str, &str)]) -> Result<BTreeSet<(usize, usize)>> {
    let mut out: BTreeSet<(usize, usize)> = (0..s.size()).map(|a| (a, a)).collect();
    for (l, u) in pairs {
        out.insert((s.element(l)?, s.element(u)?));
    }
    Ok(out)
}

fn orders() -> Result<(bool, String)> {
    let s53 = builtin(Builtin::S53);
    let ord = natural_order(&s53)?;
    let chain = named_relation(&s53, &[("1", "a"), ("a", "0"), ("1", "0")])?;
    let s53_ok = ord.relation().into_iter().collect::<BTreeSet<_>>() == chain
        && ord.is_chain()
        && ord.greatest() == Some(s53.element("0")?);

    // Hasse diagram of B_2^1: 1 below e11 and e22, every unit below 0.
    let b21 = builtin(Builtin::B21);
    let ord = natural_order(&b21)?;
    let expected = named_relation(
        &b21,
        &[("1", "e11"), ("1", "e22"), ("1", "0"), ("e11", "0"), ("e22", "0"), ("e12", "0"), ("e21", "0")],
    )?;
    let b21_ok = ord.relation().into_iter().collect::<BTreeSet<_>>() == expected;
    Ok((s53_ok && b21_ok, format!("S_53 chain 1 < a < 0 {}; B_2^1 diagram {}", mark(s53_ok), mark(b21_ok))))
}

// 3 -------------------------------------------------------------------------

fn iso_rechecked(s: &FiniteSemiring, t: &FiniteSemiring) -> Option<bool> {
    match find_isomorphism(s, t) {
        IsoOutcome::Found { map, .. } => Some(recheck::is_isomorphism(s, t, &map)),
        IsoOutcome::Exhausted { .. } => None,
    }
}

fn named_isomorphisms() -> Result<(bool, String)> {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut expect_iso = |label: String, s: &FiniteSemiring, t: &FiniteSemiring| {
        let r = iso_rechecked(s, t) == Some(true);
        ok &= r;
        lines.push(format!("{label} {}", mark(r)));
    };
    let m2 = builtin(Builtin::M2);
    let s53 = builtin(Builtin::S53);
    let mc1 = word_semiring(&WordSemiringSpec::divisibility(vec![Word::empty()], true))?;
    expect_iso("M_c*(1)=M_2".into(), &mc1.algebra, &m2);
    let mca = word_semiring(&WordSemiringSpec::divisibility(vec!["a".parse()?], true))?;
    expect_iso("M_c*(a)=S_53".into(), &mca.algebra, &s53);
    for k in 1..=6 {
        let t = truncated_max_plus(k)?;
        let word = Word::from_vars(vec![crate::terms::Var::new("a")?; k - 1]);
        let mc = word_semiring(&WordSemiringSpec::divisibility(vec![word], true))?;
        expect_iso(format!("T_{k}=M_c*(a^{})", k - 1), &t, &mc.algebra);
    }
    let distinct = iso_rechecked(&builtin(Builtin::S7), &s53).is_none();
    ok &= distinct;
    lines.push(format!("S_7!=S_53 {}", mark(distinct)));
    Ok((ok, lines.join(", ")))
}

// 4 -------------------------------------------------------------------------

fn reconstruction() -> Result<(bool, String)> {
    let mut ok = true;
    let mut lines = Vec::new();
    for n in 1..=4 {
        let r = reconstruct_sc_star(n)?;
        ok &= r.passed();
        lines.push(format!("n={n}: |quotient|={} {}", r.quotient_size, mark(r.passed())));
    }
    Ok((ok, lines.join(", ")))
}

// 5 -------------------------------------------------------------------------

fn power_structure() -> Result<(bool, String)> {
    let inst = build_a(3, 2)?;
    let p = verify_power_structure(&inst)?;
    let size_ok = inst.algebra.size() == 58;
    let ok = size_ok && p.holds() && verify_ai_semiring(&inst.algebra).is_ai_semiring();
    Ok((
        ok,
        format!(
            "|A(3,2)|={}, A^3={:?}, A^4={:?}, 4-fold products vanish {}",
            inst.algebra.size(),
            p.kth_power,
            p.next_power,
            mark(p.nilpotent_identity_holds())
        ),
    ))
}

// 6 -------------------------------------------------------------------------

fn witness_side() -> Result<(bool, String)> {
    let mut ok = true;
    let mut lines = Vec::new();
    for q in [2, 3] {
        let inst = build_a(3, q)?;
        let sig = sigma(3, q, OrderingMode::Single)?;
        let w = witness_failure(&inst, &sig)?;
        ok &= w.passed() && w.lhs == w.expected_lhs && w.rhs == "0";
        lines.push(format!("q={q}: lhs={} rhs={} {}", w.lhs, w.rhs, mark(w.passed())));
    }
    Ok((ok, lines.join(", ")))
}

// 7 -------------------------------------------------------------------------

fn search_config() -> SearchConfig {
    SearchConfig { time_budget: SEARCH_BUDGET, ..SearchConfig::default() }
}

fn satisfaction_side() -> Result<(bool, String)> {
    let main = reduction_satisfies(&build_a(3, 3)?, &sigma(3, 2, OrderingMode::Single)?, search_config())?;
    let main_ok = main.verdict == ReductionVerdict::Satisfied
        && main.certificate.kind == CertificateKind::Exhausted
        && main.oracle_predicts_satisfied;

    let inst = build_a(3, 2)?;
    let sig = sigma(3, 3, OrderingMode::Single)?;
    let stretch = reduction_satisfies(&inst, &sig, search_config())?;
    let (stretch_ok, stretch_note) = match stretch.verdict {
        ReductionVerdict::Satisfied => {
            (stretch.oracle_predicts_satisfied, format!("exhausted after {} nodes", stretch.certificate.nodes))
        }
        ReductionVerdict::Inconclusive if stretch.certificate.kind == CertificateKind::Timeout => {
            let sample = corroborate_by_sampling(&inst, &sig, STRETCH_TRIALS, DEFAULT_SEED)?;
            let ok = matches!(sample, Sampling::NoCounterexample { .. }) && stretch.oracle_predicts_satisfied;
            (ok, format!("corroborated, not exhausted ({STRETCH_TRIALS} trials)"))
        }
        other => (false, format!("{other:?}")),
    };
    Ok((
        main_ok && stretch_ok,
        format!(
            "sigma(3,2) on A(3,3): {:?} after {} nodes {}; sigma(3,3) on A(3,2): {stretch_note} {}",
            main.verdict,
            main.certificate.nodes,
            mark(main_ok),
            mark(stretch_ok)
        ),
    ))
}

// 8 -------------------------------------------------------------------------

/// Per-search limit inside criterion 8.
pub const HOM_PAIR_LIMIT: Duration = Duration::from_secs(60);

fn hom_oracle() -> Result<(bool, String)> {
    let mut ok = true;
    let mut lines = Vec::new();
    for (m, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 1), (3, 1), (2, 4)] {
        let start = Instant::now();
        let (s, t) = (kneser(3, m)?, kneser(3, n)?);
        let cert = hom_search(&s, &t, search_config())?;
        let elapsed = start.elapsed();
        let found_ok = match &cert.map {
            Some(map) => is_hypergraph_hom(&s, &t, map),
            None => true,
        };
        let agrees = cert.is_conclusive() && cert.is_found() == hom_exists_oracle(m, n);
        let r = agrees && found_ok && elapsed <= HOM_PAIR_LIMIT;
        ok &= r;
        lines.push(format!("({m},{n}) {:?} {}", cert.kind, mark(r)));
    }
    for (m, n) in [(1, 2), (1, 3), (2, 4), (2, 2)] {
        let cert = block_hom(3, m, n)?;
        let r =
            cert.map.as_ref().is_some_and(|map| is_hypergraph_hom(&kneser(3, m).unwrap(), &kneser(3, n).unwrap(), map));
        ok &= r;
        lines.push(format!("block({m},{n}) {}", mark(r)));
    }
    Ok((ok, lines.join(", ")))
}

// 9 -------------------------------------------------------------------------

fn embedding() -> Result<(bool, String)> {
    let e = embed_sc_star_in_a(3, 2)?;
    let ok = e.passed() && e.image_size == 8;
    Ok((ok, format!("image of {} elements, generators {:?}", e.image_size, e.generator_images)))
}

// 10 ------------------------------------------------------------------------

fn regularization() -> Result<(bool, String)> {
    let corpus = regularization_corpus(&CorpusParams::default());
    let mut ok = true;
    let mut lines = Vec::new();
    for b in [Builtin::S53, Builtin::B0, Builtin::S7] {
        let r = regularization_check(&builtin(b), &corpus);
        ok &= r.passed();
        lines.push(format!(
            "{b}: {} hold, {} regular, {} hold in S^inf, {} exceptions",
            r.holding_in_base,
            r.regular,
            r.holding_in_extension,
            r.exceptions.len() + r.undecided
        ));
    }
    Ok((ok, lines.join("; ")))
}

// 11 ------------------------------------------------------------------------

fn b0_suite() -> Result<(bool, String)> {
    let r = b0_checks(B0Params::default())?;
    let occ = &r.occurrence;
    let first = occ.violations.first().map(|(p, q)| format!(", first {p} ≼ {q}")).unwrap_or_default();
    Ok((
        r.passed(),
        format!(
            "{} related pairs, {} occurrence exceptions{first} ({} with separated prefix and suffix); isoterms {}; chain {}",
            occ.related,
            occ.violations.len() + occ.undecided as usize,
            occ.separated_violations.len(),
            mark(r.isoterms_hold()),
            mark(r.chain_holds())
        ),
    ))
}

// 12 ------------------------------------------------------------------------

fn maxplus() -> Result<(bool, String)> {
    let r = subdirect_maxplus_check(5)?;
    let ok = r.injective && r.surjective.iter().all(|&s| s) && r.passed();
    Ok((ok, format!("segment 0..={}, injective {}, surjective {:?}", r.segment_max, r.injective, r.surjective)))
}

// 13 ------------------------------------------------------------------------

fn engine_oracle() -> Result<(bool, String)> {
    let corpus =
        regularization_corpus(&CorpusParams { size: ORACLE_CORPUS, seed: DEFAULT_SEED + 1, ..CorpusParams::default() });
    let mut ok = true;
    let mut lines = Vec::new();
    for b in [Builtin::S53, Builtin::B0] {
        let r = engine_oracle_check(&builtin(b), &corpus);
        ok &= r.passed();
        lines.push(format!(
            "{b}: {} identities, {} hold, {} disagreements",
            r.identities,
            r.holding,
            r.disagreements.len()
        ));
    }
    Ok((ok, lines.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_contiguous() {
        let ids: Vec<u8> = CRITERIA.iter().map(|c| c.0).collect();
        assert_eq!(ids, (1..=13).collect::<Vec<u8>>());
    }

    #[test]
    fn mutation_count() {
        assert_eq!(single_entry_mutations(&builtin(Builtin::S53)).len(), 36);
    }

    #[test]
    fn line_format() {
        let r = run_criterion(12);
        assert!(r.to_string().starts_with("PASS [12]"), "{r}");
    }
}
