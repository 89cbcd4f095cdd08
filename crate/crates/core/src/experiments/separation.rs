//! The algebras `A(k, p)` and the hypergraph identities `sigma(k, q)`.
//!
//! `A(k, p)` is the subalgebra of `S_c*(a1 ... a_kp)` generated by the
//! square-free words of length `p`. Its nonzero elements are square-free
//! words of length at least `p`, so every element is recorded by the bit
//! mask of its letters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{power_sets, ElementMap, FiniteSemiring};
use crate::error::{Error, Result};
use crate::hypergraph::{
    hom_exists_oracle, hom_search, hypergraph_terms, kneser, mask_to_string, vertex_var, CertificateKind,
    HomCertificate, KneserInstance, OrderingMode, SearchConfig,
};
use crate::recheck;
use crate::terms::{eval, sample_satisfies, Assignment, Identity, Sampling, Term, Var, Word};
use crate::word_semirings::{chain_word, word_semiring, WordElem, WordSemiring, WordSemiringSpec};

/// Largest ambient `S_c*(a1 ... a_kp)` (it has `2^(kp)` elements).
pub const AMBIENT_GUARD: usize = 4096;

#[derive(Clone, Debug)]
pub struct SeparationInstance {
    pub k: usize,
    pub p: usize,
    pub ambient: WordSemiring,
    pub algebra: FiniteSemiring,
    /// Inclusion of `algebra` into `ambient.algebra`.
    pub inclusion: ElementMap,
    /// Letter mask of every element; 0 for the zero.
    pub masks: Vec<u64>,
    /// The length-`p` square-free words, as indices into `algebra`.
    pub generators: Vec<usize>,
    pub zero: usize,
    /// The full product `a1 ... a_kp`.
    pub top: usize,
}

impl SeparationInstance {
    pub fn element_with_mask(&self, mask: u64) -> Option<usize> {
        if mask == 0 {
            return None;
        }
        self.masks.iter().position(|&m| m == mask)
    }

    pub fn name(&self, e: usize) -> &str {
        self.algebra.element_name(e)
    }
}

fn letter_mask(w: &Word, letters: &[Var]) -> u64 {
    w.letters().iter().fold(0u64, |acc, x| {
        let i = letters.iter().position(|l| l == x).expect("letter of the ambient alphabet");
        acc | 1 << i
    })
}

pub fn build_a(k: usize, p: usize) -> Result<SeparationInstance> {
    if k == 0 || p == 0 {
        return Err(Error::input("k and p must be positive"));
    }
    let kp = k * p;
    if kp >= 63 || 1usize << kp > AMBIENT_GUARD {
        return Err(Error::SizeGuard(format!("S_c*(a1..a{kp}) has 2^{kp} elements; limit is {AMBIENT_GUARD}")));
    }
    let letters: Vec<Var> = (1..=kp).map(|i| Var::indexed("a", i)).collect();
    let ambient = word_semiring(&WordSemiringSpec::divisibility(vec![chain_word("a", kp)], false))?;
    let amb = &ambient.algebra;
    let amb_masks: Vec<u64> = ambient
        .carrier
        .iter()
        .map(|e| match e {
            WordElem::Word(w) => letter_mask(w, &letters),
            _ => 0,
        })
        .collect();
    let gens: Vec<usize> = (0..amb.size()).filter(|&e| amb_masks[e].count_ones() as usize == p).collect();
    let (algebra, inclusion) = crate::algebra::generate_subalgebra(amb, &gens)?;
    let masks: Vec<u64> = inclusion.images().iter().map(|&e| amb_masks[e]).collect();
    let generators = (0..algebra.size()).filter(|&e| masks[e].count_ones() as usize == p).collect();
    let zero = inclusion
        .images()
        .iter()
        .position(|&e| e == ambient.zero())
        .ok_or_else(|| Error::input("zero is not generated"))?;
    let full = (1u64 << kp) - 1;
    let top = masks.iter().position(|&m| m == full).ok_or_else(|| Error::input("full product is not generated"))?;
    let algebra = algebra.with_name(format!("A({k},{p})"));
    Ok(SeparationInstance { k, p, ambient, algebra, inclusion, masks, generators, zero, top })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerStructure {
    /// `|A^j|` for `j = 1..=k+1`.
    pub sizes: Vec<usize>,
    pub kth_power: Vec<String>,
    pub next_power: Vec<String>,
    pub zero_greatest: bool,
    /// `A^k = {0, a1 ... a_kp}`.
    pub kth_ok: bool,
    /// `A^(k+1) = {0}`.
    pub next_ok: bool,
}

impl PowerStructure {
    /// Every `(k+1)`-fold product is 0 and 0 absorbs sums, which is exactly
    /// the `(k+1)`-nilpotent identity.
    pub fn nilpotent_identity_holds(&self) -> bool {
        self.next_ok && self.zero_greatest
    }

    pub fn holds(&self) -> bool {
        self.kth_ok && self.nilpotent_identity_holds()
    }
}

pub fn verify_power_structure(inst: &SeparationInstance) -> Result<PowerStructure> {
    let a = &inst.algebra;
    let powers = power_sets(a, inst.k + 1);
    let names = |set: &[usize]| set.iter().map(|&e| a.element_name(e).to_string()).collect::<Vec<_>>();
    let mut expected_kth = vec![inst.zero, inst.top];
    expected_kth.sort_unstable();
    let kth = &powers[inst.k - 1];
    let next = &powers[inst.k];
    Ok(PowerStructure {
        sizes: powers.iter().map(Vec::len).collect(),
        kth_power: names(kth),
        next_power: names(next),
        // 0 is greatest in the natural order iff it absorbs every sum
        zero_greatest: (0..a.size()).all(|x| a.add(x, inst.zero) == inst.zero),
        kth_ok: *kth == expected_kth,
        next_ok: *next == vec![inst.zero],
    })
}

#[derive(Clone, Debug)]
pub struct SigmaIdentity {
    pub k: usize,
    pub q: usize,
    pub mode: OrderingMode,
    pub hypergraph: KneserInstance,
    pub t: Term,
    pub q_word: Word,
    /// `t = t + q`.
    pub identity: Identity,
}

pub fn sigma(k: usize, q: usize, mode: OrderingMode) -> Result<SigmaIdentity> {
    let hypergraph = kneser(k, q)?;
    let (t, q_word) = hypergraph_terms(&hypergraph.hypergraph, mode)?;
    let rhs = t.plus(&Term::word(q_word.clone()));
    let identity = Identity::new(t.clone(), rhs);
    Ok(SigmaIdentity { k, q, mode, hypergraph, t, q_word, identity })
}

fn env_for(assignment: &Assignment) -> BTreeMap<String, usize> {
    assignment.iter().map(|(x, v)| (x.to_string(), v)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub q: usize,
    pub lhs: String,
    pub rhs: String,
    pub expected_lhs: String,
    /// Engine values are `lhs = a1 ... a_kq` and `rhs = 0`.
    pub engine_ok: bool,
    /// The naive evaluator reproduces the same two values.
    pub naive_ok: bool,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.engine_ok && self.naive_ok
    }
}

/// Assigns to the variable of vertex `v` the product of the `a_i`, `i` in `v`.
pub fn witness_assignment(inst: &SeparationInstance, sig: &SigmaIdentity) -> Result<Assignment> {
    if inst.k != sig.k || inst.p != sig.q {
        return Err(Error::input(format!(
            "witness needs A({},{}) with sigma({},{}) sharing k and p = q",
            inst.k, inst.p, sig.k, sig.q
        )));
    }
    let mut phi = Assignment::new();
    for (v, &mask) in sig.hypergraph.masks.iter().enumerate() {
        let e = inst.element_with_mask(mask).expect("every p-subset is a generator");
        phi.set(vertex_var(v), e);
    }
    Ok(phi)
}

/// Shows that `sigma(k, p)` fails on `A(k, p)`: under the witness assignment
/// the left side is `a1 ... a_kp` and the right side is 0.
pub fn witness_failure(inst: &SeparationInstance, sig: &SigmaIdentity) -> Result<WitnessReport> {
    let phi = witness_assignment(inst, sig)?;
    let a = &inst.algebra;
    let lhs = eval(a, &sig.identity.lhs, &phi)?;
    let rhs = eval(a, &sig.identity.rhs, &phi)?;
    let naive = recheck::naive_eval(a, &sig.identity.to_string(), &env_for(&phi));
    Ok(WitnessReport {
        k: inst.k,
        q: sig.q,
        lhs: a.element_name(lhs).to_string(),
        rhs: a.element_name(rhs).to_string(),
        expected_lhs: a.element_name(inst.top).to_string(),
        engine_ok: lhs == inst.top && rhs == inst.zero,
        naive_ok: naive == Some((inst.top, inst.zero)),
    })
}

/// The instance facts the reduction relies on, each checked directly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralFacts {
    /// 0 is the greatest element, so a single zero summand makes a sum 0.
    pub zero_greatest: bool,
    /// Every nonzero product of `k` elements is `a1 ... a_kp` and its factors
    /// are length-`p` generators with pairwise disjoint letters.
    pub k_products_force_generators: bool,
    pub nonzero_k_products: u64,
    /// Products of `k + 1` elements are 0.
    pub nilpotent: bool,
    /// `q_H` has more than `k` letters, so it evaluates to 0.
    pub q_word_vanishes: bool,
}

impl StructuralFacts {
    pub fn hold(&self) -> bool {
        self.zero_greatest && self.k_products_force_generators && self.nilpotent && self.q_word_vanishes
    }
}

fn structural_facts(inst: &SeparationInstance, sig: &SigmaIdentity) -> Result<StructuralFacts> {
    let power = verify_power_structure(inst)?;
    let mut ok = true;
    let mut count = 0u64;
    let mut tuple = Vec::with_capacity(inst.k);
    k_products(inst, inst.k, None, &mut tuple, &mut ok, &mut count);
    Ok(StructuralFacts {
        zero_greatest: power.zero_greatest,
        k_products_force_generators: ok,
        nonzero_k_products: count,
        nilpotent: power.next_ok,
        q_word_vanishes: sig.q_word.len() > inst.k,
    })
}

/// Walks all `k`-tuples, pruning as soon as the running product is 0.
fn k_products(
    inst: &SeparationInstance,
    k: usize,
    acc: Option<usize>,
    tuple: &mut Vec<usize>,
    ok: &mut bool,
    count: &mut u64,
) {
    let a = &inst.algebra;
    if tuple.len() == k {
        let prod = acc.expect("k >= 1");
        *count += 1;
        let mut union = 0u64;
        for &x in tuple.iter() {
            let m = inst.masks[x];
            if m.count_ones() as usize != inst.p || union & m != 0 {
                *ok = false;
            }
            union |= m;
        }
        if prod != inst.top {
            *ok = false;
        }
        return;
    }
    for x in 0..a.size() {
        let next = match acc {
            None => x,
            Some(y) => a.mul(y, x),
        };
        if next == inst.zero {
            continue;
        }
        tuple.push(x);
        k_products(inst, k, Some(next), tuple, ok, count);
        tuple.pop();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReductionVerdict {
    Satisfied,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionReport {
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub verdict: ReductionVerdict,
    pub facts: StructuralFacts,
    pub certificate: HomCertificate,
    /// Divisibility prediction: satisfied iff no homomorphism `H(k,q) -> H(k,p)`.
    pub oracle_predicts_satisfied: bool,
    /// Variable to element name, when a homomorphism was found.
    pub counterexample: Option<BTreeMap<String, String>>,
    /// The counterexample re-evaluated to `(a1 ... a_kp, 0)` in both evaluators.
    pub counterexample_rechecked: Option<bool>,
    pub reason: Option<String>,
}

/// Decides `sigma(k, q)` on `A(k, p)` without enumerating assignments.
///
/// Under an assignment the left side is nonzero only if every hyperedge
/// product is nonzero. By the structural facts that forces every variable to a
/// generator and disjoint vertices to disjoint generators, i.e. a
/// homomorphism `H(k, q) -> H(k, p)`; the right side then adds `q_H`, which
/// is 0. So the identity holds iff no such homomorphism exists.
pub fn reduction_satisfies(
    inst: &SeparationInstance,
    sig: &SigmaIdentity,
    config: SearchConfig,
) -> Result<ReductionReport> {
    if inst.k != sig.k {
        return Err(Error::input(format!("k differs: A({},{}) vs sigma({},{})", inst.k, inst.p, sig.k, sig.q)));
    }
    let facts = structural_facts(inst, sig)?;
    let target = kneser(inst.k, inst.p)?;
    let certificate = hom_search(&sig.hypergraph, &target, config)?;
    let mut report = ReductionReport {
        k: inst.k,
        p: inst.p,
        q: sig.q,
        verdict: ReductionVerdict::Inconclusive,
        facts: facts.clone(),
        oracle_predicts_satisfied: !hom_exists_oracle(sig.q, inst.p),
        counterexample: None,
        counterexample_rechecked: None,
        reason: None,
        certificate,
    };
    if !facts.hold() {
        report.reason = Some("a structural fact failed on this instance; the reduction does not apply".into());
        return Ok(report);
    }
    match report.certificate.kind {
        CertificateKind::Exhausted => report.verdict = ReductionVerdict::Satisfied,
        CertificateKind::Timeout => report.reason = Some("homomorphism search ran out of budget".into()),
        CertificateKind::Found => {
            let map = report.certificate.map.as_ref().expect("found certificates carry a map");
            let mut phi = Assignment::new();
            for (v, &t) in map.iter().enumerate() {
                let e = inst.element_with_mask(target.masks[t]).expect("target vertices are generators");
                phi.set(vertex_var(v), e);
            }
            let a = &inst.algebra;
            let lhs = eval(a, &sig.identity.lhs, &phi)?;
            let rhs = eval(a, &sig.identity.rhs, &phi)?;
            let naive = recheck::naive_eval(a, &sig.identity.to_string(), &env_for(&phi));
            let ok = lhs == inst.top && rhs == inst.zero && naive == Some((lhs, rhs));
            report.counterexample = Some(phi.named(a));
            report.counterexample_rechecked = Some(ok);
            report.verdict = if ok { ReductionVerdict::Counterexample } else { ReductionVerdict::Inconclusive };
            if !ok {
                report.reason = Some("homomorphism did not convert into a counterexample".into());
            }
        }
    }
    Ok(report)
}

/// Random assignments looking for a counterexample to `sigma` on `A`.
pub fn corroborate_by_sampling(
    inst: &SeparationInstance,
    sig: &SigmaIdentity,
    trials: u64,
    seed: u64,
) -> Result<Sampling> {
    sample_satisfies(&inst.algebra, &sig.identity, trials, seed, &[])
}

/// `{1,2}`-style names for the generators, for reports.
pub fn generator_subsets(inst: &SeparationInstance) -> Vec<String> {
    inst.generators.iter().map(|&g| mask_to_string(inst.masks[g])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::verify_ai_semiring;
    use crate::terms::{satisfies, DEFAULT_BUDGET};

    #[test]
    fn sizes() {
        assert_eq!(build_a(3, 2).unwrap().algebra.size(), 58);
        let a31 = build_a(3, 1).unwrap();
        assert_eq!(a31.algebra.size(), 8);
        assert_eq!(a31.algebra.size(), a31.ambient.algebra.size());
        assert_eq!(build_a(4, 1).unwrap().algebra.size(), 16);
        assert!(matches!(build_a(5, 3), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn instance_is_valid() {
        let a = build_a(3, 2).unwrap();
        assert!(verify_ai_semiring(&a.algebra).is_ai_semiring());
        assert_eq!(a.generators.len(), 15);
        assert_eq!(a.name(a.top), "a1a2a3a4a5a6");
        assert_eq!(a.name(a.zero), "0");
        assert!(a.masks.iter().all(|&m| m == 0 || m.count_ones() >= 2));
        assert!(recheck::is_homomorphism(&a.algebra, &a.ambient.algebra, &a.inclusion));
        assert_eq!(generator_subsets(&a)[0], "{1,2}");
    }

    #[test]
    fn powers() {
        let a = build_a(3, 2).unwrap();
        let ps = verify_power_structure(&a).unwrap();
        assert!(ps.holds(), "{ps:?}");
        assert_eq!(ps.kth_power, ["0", "a1a2a3a4a5a6"]);
        assert_eq!(ps.next_power, ["0"]);
        let a31 = build_a(3, 1).unwrap();
        let ps = verify_power_structure(&a31).unwrap();
        assert_eq!(ps.kth_power, ["0", "a1a2a3"]);
        // the nilpotent identity really holds, by brute force on the small case
        let nil = crate::terms::nilpotent_identity(3).unwrap();
        assert!(satisfies(&a31.algebra, &nil, DEFAULT_BUDGET).holds());
    }

    #[test]
    fn sigma_shapes() {
        let s = sigma(3, 1, OrderingMode::Single).unwrap();
        assert_eq!(s.identity.lhs, s.identity.rhs);
        let s = sigma(3, 2, OrderingMode::Single).unwrap();
        assert_eq!(s.identity.variables().len(), 15);
        assert_eq!(s.t.len(), 15);
        assert_eq!(s.q_word.len(), 15);
        assert_eq!(s.identity.rhs.len(), 16);
        let s = sigma(3, 3, OrderingMode::Single).unwrap();
        assert_eq!((s.identity.variables().len(), s.t.len()), (84, 280));
    }

    #[test]
    fn witness() {
        let a = build_a(3, 2).unwrap();
        let s = sigma(3, 2, OrderingMode::Single).unwrap();
        let w = witness_failure(&a, &s).unwrap();
        assert!(w.passed(), "{w:?}");
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("a1a2a3a4a5a6", "0"));
        assert!(witness_failure(&a, &sigma(3, 3, OrderingMode::Single).unwrap()).is_err());
    }

    #[test]
    fn all_orderings_evaluate_like_single() {
        let a = build_a(3, 2).unwrap();
        let single = sigma(3, 2, OrderingMode::Single).unwrap();
        let all = sigma(3, 2, OrderingMode::All).unwrap();
        assert_eq!(all.t.len(), 90);
        let phi = witness_assignment(&a, &single).unwrap();
        assert_eq!(eval(&a.algebra, &single.t, &phi).unwrap(), eval(&a.algebra, &all.t, &phi).unwrap());
        assert!(witness_failure(&a, &all).unwrap().passed());
    }

    #[test]
    fn reduction_with_equal_indices_recovers_counterexample() {
        let a = build_a(3, 2).unwrap();
        let s = sigma(3, 2, OrderingMode::Single).unwrap();
        let r = reduction_satisfies(&a, &s, SearchConfig::default()).unwrap();
        assert_eq!(r.verdict, ReductionVerdict::Counterexample);
        assert_eq!(r.counterexample_rechecked, Some(true));
        assert!(!r.oracle_predicts_satisfied);
        assert!(r.facts.hold());
    }

    #[test]
    fn reduction_small_satisfied_case() {
        // no homomorphism H(3,2) -> H(3,1), so A(3,1) satisfies sigma(3,2)
        let a = build_a(3, 1).unwrap();
        let s = sigma(3, 2, OrderingMode::Single).unwrap();
        let r = reduction_satisfies(&a, &s, SearchConfig::default()).unwrap();
        assert_eq!(r.verdict, ReductionVerdict::Satisfied);
        assert!(r.oracle_predicts_satisfied);
        let sampled = corroborate_by_sampling(&a, &s, 2000, 7).unwrap();
        assert!(!sampled.found_counterexample());
    }
}
