//! Kneser hypergraphs, their terms, and homomorphism search between them.
//!
//! The vertices of `H(k, m)` are the `m`-subsets of `[km]`, stored as bit
//! masks (element `i` is bit `i - 1`) in lexicographic order of the sorted
//! subsets. Hyperedges are the partitions of `[km]` into `k` vertices. For
//! `k >= 3` a map between two such hypergraphs sends hyperedges to hyperedges
//! exactly when it sends disjoint vertices to disjoint vertices, so the search
//! runs on the Kneser graph and only the final answer is checked edge by edge.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::recheck;
use crate::terms::{Term, Var, Word};

/// Largest vertex count `kneser` will build.
pub const VERTEX_GUARD: u128 = 20_000;
/// Largest hyperedge count `kneser` will build.
pub const EDGE_GUARD: u128 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypergraph {
    pub vertices: Vec<String>,
    pub edges: Vec<Vec<usize>>,
    pub uniformity: Option<usize>,
}

impl Hypergraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self> {
        let n = vertices.len();
        for e in &edges {
            if e.is_empty() {
                return Err(Error::input("empty hyperedge"));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::input(format!("hyperedge vertex {v} out of range")));
            }
        }
        let sizes: std::collections::BTreeSet<usize> = edges.iter().map(Vec::len).collect();
        let uniformity = (sizes.len() == 1).then(|| *sizes.iter().next().unwrap());
        Ok(Self { vertices, edges, uniformity })
    }
}

#[derive(Clone, Debug)]
pub struct KneserInstance {
    pub k: usize,
    pub m: usize,
    pub masks: Vec<u64>,
    pub hypergraph: Hypergraph,
    /// Kneser graph: `neighbours[v]` are the vertices disjoint from `v`.
    pub neighbours: Vec<Vec<usize>>,
}

impl KneserInstance {
    pub fn vertex_count(&self) -> usize {
        self.masks.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hypergraph.edges.len()
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.k * self.m)
    }

    pub fn index_of_mask(&self, mask: u64) -> Option<usize> {
        self.masks.binary_search_by(|x| lex_key(*x).cmp(&lex_key(mask))).ok()
    }
}

fn full_mask(bits: usize) -> u64 {
    if bits == 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Sort key putting masks in lexicographic order of their element lists.
fn lex_key(mask: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut x = mask;
    while x != 0 {
        out.push(x.trailing_zeros());
        x &= x - 1;
    }
    out
}

/// `{1, 3, 4}` style rendering of a mask.
pub fn mask_to_string(mask: u64) -> String {
    let elems: Vec<String> = lex_key(mask).iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", elems.join(","))
}

pub fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `(km)! / ((m!)^k k!)`, the number of hyperedges of `H(k, m)`.
pub fn partition_count(k: u64, m: u64) -> u128 {
    let mut acc: u128 = 1;
    // choose the block of the least unused element each time
    for j in 0..k {
        let remaining = (k - j) * m;
        acc *= binomial(remaining - 1, m - 1);
    }
    acc
}

/// All `m`-subsets of `[n]` as masks, lexicographic order.
fn subsets(n: usize, m: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..m).collect();
    if m > n {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |acc, &i| acc | 1 << i));
        // rightmost position that can still move
        let Some(p) = (0..m).rev().find(|&p| idx[p] < n - m + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..m {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

pub fn kneser(k: usize, m: usize) -> Result<KneserInstance> {
    if k < 3 {
        return Err(Error::input("Kneser hypergraphs need k >= 3"));
    }
    if m < 1 {
        return Err(Error::input("Kneser hypergraphs need m >= 1"));
    }
    if k * m > 64 {
        return Err(Error::SizeGuard(format!("[{}] does not fit in a 64-bit mask", k * m)));
    }
    let vertices = binomial((k * m) as u64, m as u64);
    let edges = partition_count(k as u64, m as u64);
    if vertices > VERTEX_GUARD || edges > EDGE_GUARD {
        return Err(Error::SizeGuard(format!(
            "H({k},{m}) has {vertices} vertices and {edges} hyperedges; limits are {VERTEX_GUARD} and {EDGE_GUARD}"
        )));
    }
    let masks = subsets(k * m, m);
    let pos: std::collections::HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let full = full_mask(k * m);

    let mut edges = Vec::new();
    let mut current = Vec::with_capacity(k);
    partitions(full, m, &pos, &mut current, &mut edges);
    for e in &edges {
        let union = e.iter().fold(0u64, |acc, &v| {
            assert_eq!(acc & masks[v], 0, "hyperedge blocks overlap");
            acc | masks[v]
        });
        assert_eq!(union, full, "hyperedge does not cover");
    }
    let neighbours = masks.iter().map(|&x| (0..masks.len()).filter(|&j| masks[j] & x == 0).collect()).collect();
    let names = masks.iter().map(|&x| mask_to_string(x)).collect();
    let hypergraph = Hypergraph::new(names, edges)?;
    let inst = KneserInstance { k, m, masks, hypergraph, neighbours };
    assert_eq!(inst.vertex_count() as u128, vertices);
    assert_eq!(inst.edge_count() as u128, partition_count(k as u64, m as u64));
    Ok(inst)
}

/// Fixes the block containing the least unused element, then recurses.
fn partitions(
    remaining: u64,
    m: usize,
    pos: &std::collections::HashMap<u64, usize>,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    let low = remaining & remaining.wrapping_neg();
    let rest = remaining & !low;
    let elems: Vec<u32> = lex_key(rest);
    for pick in subsets(elems.len(), m - 1) {
        let block = low | lex_key(pick).iter().fold(0u64, |acc, &i| acc | 1 << elems[i as usize]);
        current.push(pos[&block]);
        partitions(remaining & !block, m, pos, current, out);
        current.pop();
    }
}

// ---------------------------------------------------------------------------
// Terms

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingMode {
    /// One product per hyperedge, in vertex order.
    Single,
    /// All `k!` orderings of every hyperedge.
    All,
}

impl std::str::FromStr for OrderingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(OrderingMode::Single),
            "all" => Ok(OrderingMode::All),
            other => Err(Error::input(format!("ordering must be `single` or `all`, got `{other}`"))),
        }
    }
}

/// Variable of the `i`-th vertex (0-based): `x1`, `x2`, ...
pub fn vertex_var(i: usize) -> Var {
    Var::indexed("x", i + 1)
}

/// `(t_H, q_H)`: the sum of the hyperedge products and the product of all
/// vertex variables.
pub fn hypergraph_terms(h: &Hypergraph, mode: OrderingMode) -> Result<(Term, Word)> {
    let k = h.uniformity.ok_or_else(|| Error::input("hypergraph is not uniform"))?;
    if h.edges.is_empty() {
        return Err(Error::input("hypergraph has no hyperedges"));
    }
    let mut words = Vec::new();
    for e in &h.edges {
        let mut e = e.clone();
        e.sort_unstable();
        match mode {
            OrderingMode::Single => words.push(Word::from_vars(e.iter().map(|&v| vertex_var(v)).collect())),
            OrderingMode::All => {
                let mut perm: Vec<usize> = (0..k).collect();
                loop {
                    words.push(Word::from_vars(perm.iter().map(|&i| vertex_var(e[i])).collect()));
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
    }
    let q = Word::from_vars((0..h.vertices.len()).map(vertex_var).collect());
    Ok((Term::new(words)?, q))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

// ---------------------------------------------------------------------------
// Homomorphism search

pub const DEFAULT_TIME_BUDGET: Duration = Duration::from_secs(600);
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub time_budget: Duration,
    pub node_budget: u64,
    /// Fix the image of the first source vertex to the first target vertex.
    pub symmetry: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { time_budget: DEFAULT_TIME_BUDGET, node_budget: DEFAULT_NODE_BUDGET, symmetry: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Found,
    Exhausted,
    Timeout,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCertificate {
    pub kind: CertificateKind,
    pub k: usize,
    pub source_m: usize,
    pub target_n: usize,
    /// Image index of every source vertex, when found.
    #[serde(skip)]
    pub map: Option<Vec<usize>>,
    /// The map as `(source subset, target subset)` pairs.
    pub pairs: Option<Vec<(String, String)>>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    /// Symmetry reduction the search relied on, if any.
    pub reduction: Option<String>,
}

impl HomCertificate {
    pub fn is_found(&self) -> bool {
        self.kind == CertificateKind::Found
    }

    pub fn is_conclusive(&self) -> bool {
        self.kind != CertificateKind::Timeout
    }
}

/// Fixed-width bitset over target vertices.
#[derive(Clone)]
struct Domains {
    words: usize,
    bits: Vec<u64>,
}

impl Domains {
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    fn row_mut(&mut self, v: usize) -> &mut [u64] {
        &mut self.bits[v * self.words..(v + 1) * self.words]
    }

    fn count(&self, v: usize) -> u32 {
        self.row(v).iter().map(|w| w.count_ones()).sum()
    }
}

struct HomSearch<'a> {
    source: &'a KneserInstance,
    compat: Vec<Vec<u64>>,
    assigned: Vec<Option<usize>>,
    nodes: u64,
    start: Instant,
    config: SearchConfig,
    timed_out: bool,
}

impl HomSearch<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.config.node_budget
            || (self.nodes.is_multiple_of(1024) && self.start.elapsed() >= self.config.time_budget)
        {
            self.timed_out = true;
        }
        self.timed_out
    }

    /// Most constrained unassigned vertex; ties go to the vertex with the
    /// most unassigned neighbours, then the lowest index.
    fn pick(&self, dom: &Domains) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for v in 0..self.assigned.len() {
            if self.assigned[v].is_some() {
                continue;
            }
            let size = dom.count(v);
            let free = self.source.neighbours[v].iter().filter(|&&u| self.assigned[u].is_none()).count();
            let better = match best {
                None => true,
                Some((s, f, _)) => size < s || (size == s && free > f),
            };
            if better {
                best = Some((size, free, v));
            }
        }
        best.map(|(_, _, v)| v)
    }

    fn dfs(&mut self, dom: &Domains) -> bool {
        let Some(v) = self.pick(dom) else {
            return true;
        };
        let row: Vec<u64> = dom.row(v).to_vec();
        for (wi, &word) in row.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let t = wi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.nodes += 1;
                if self.out_of_budget() {
                    return false;
                }
                if let Some(next) = self.forward(dom, v, t) {
                    self.assigned[v] = Some(t);
                    if self.dfs(&next) {
                        return true;
                    }
                    self.assigned[v] = None;
                    if self.timed_out {
                        return false;
                    }
                }
            }
        }
        false
    }

    /// Domains after `v -> t`, or `None` if some neighbour is wiped out.
    fn forward(&self, dom: &Domains, v: usize, t: usize) -> Option<Domains> {
        let mut next = dom.clone();
        for w in next.row_mut(v).iter_mut() {
            *w = 0;
        }
        next.row_mut(v)[t / 64] = 1 << (t % 64);
        for &u in &self.source.neighbours[v] {
            if self.assigned[u].is_some() {
                continue;
            }
            let mut any = 0;
            for (w, c) in next.row_mut(u).iter_mut().zip(&self.compat[t]) {
                *w &= c;
                any |= *w;
            }
            if any == 0 {
                return None;
            }
        }
        Some(next)
    }
}

/// Backtracking search for a homomorphism `source -> target` on the Kneser
/// graph view, with forward checking and most-constrained-first ordering.
pub fn hom_search(source: &KneserInstance, target: &KneserInstance, config: SearchConfig) -> Result<HomCertificate> {
    if source.k != target.k {
        return Err(Error::input(format!("uniformities differ: {} vs {}", source.k, target.k)));
    }
    let start = Instant::now();
    let nt = target.vertex_count();
    let words = nt.div_ceil(64);
    let compat: Vec<Vec<u64>> = (0..nt)
        .map(|t| {
            let mut row = vec![0u64; words];
            for &u in &target.neighbours[t] {
                row[u / 64] |= 1 << (u % 64);
            }
            row
        })
        .collect();
    let ns = source.vertex_count();
    let mut full_row = vec![u64::MAX; words];
    if !nt.is_multiple_of(64) {
        full_row[words - 1] = (1u64 << (nt % 64)) - 1;
    }
    let mut dom = Domains { words, bits: full_row.repeat(ns) };

    let mut search = HomSearch { source, compat, assigned: vec![None; ns], nodes: 0, start, config, timed_out: false };
    let mut reduction = None;
    let found = if config.symmetry && ns > 0 {
        // Permutations of [kn] act transitively on the target vertices and
        // compose with homomorphisms, so some homomorphism (if any) sends
        // vertex 0 to target vertex 0.
        reduction = Some("image of the first source vertex fixed to the first target vertex".to_string());
        search.nodes += 1;
        match search.forward(&dom, 0, 0) {
            Some(next) => {
                search.assigned[0] = Some(0);
                dom = next;
                search.dfs(&dom)
            }
            None => false,
        }
    } else {
        search.dfs(&dom)
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let mut cert = HomCertificate {
        kind: CertificateKind::Exhausted,
        k: source.k,
        source_m: source.m,
        target_n: target.m,
        map: None,
        pairs: None,
        nodes: search.nodes,
        elapsed_ms,
        reduction,
    };
    if found {
        let map: Vec<usize> = search.assigned.iter().map(|x| x.expect("complete")).collect();
        assert!(is_hypergraph_hom(source, target, &map), "search returned a map that is not a homomorphism");
        cert.kind = CertificateKind::Found;
        cert.pairs = Some(named_pairs(source, target, &map));
        cert.map = Some(map);
    } else if search.timed_out {
        cert.kind = CertificateKind::Timeout;
    }
    Ok(cert)
}

fn named_pairs(source: &KneserInstance, target: &KneserInstance, map: &[usize]) -> Vec<(String, String)> {
    map.iter().enumerate().map(|(v, &t)| (mask_to_string(source.masks[v]), mask_to_string(target.masks[t]))).collect()
}

/// Hyperedge-level check: every hyperedge of `source` goes to a hyperedge of
/// `target`, delegated to the independent mask re-checker.
pub fn is_hypergraph_hom(source: &KneserInstance, target: &KneserInstance, map: &[usize]) -> bool {
    if map.len() != source.vertex_count() || map.iter().any(|&t| t >= target.vertex_count()) {
        return false;
    }
    let pairs: Vec<(u64, u64)> = map.iter().enumerate().map(|(v, &t)| (source.masks[v], target.masks[t])).collect();
    source.k == target.k && recheck::kneser_map_violation(source.k, source.m, target.m, &pairs).is_none()
}

/// The map sending an `m`-subset `S` of `[km]` to the union of the blocks
/// `B_i` (`i` in `S`), where `B_1, ..., B_km` cut `[kn]` into consecutive runs
/// of length `n / m`.
pub fn block_hom(k: usize, m: usize, n: usize) -> Result<HomCertificate> {
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::input(format!("{m} does not divide {n}")));
    }
    let start = Instant::now();
    let source = kneser(k, m)?;
    let target = kneser(k, n)?;
    let r = n / m;
    let map: Vec<usize> = source
        .masks
        .iter()
        .map(|&s| {
            let image = lex_key(s).iter().fold(0u64, |acc, &i| acc | (full_mask(r) << (i as usize * r)));
            target.index_of_mask(image).expect("block image is an n-subset")
        })
        .collect();
    let ok = is_hypergraph_hom(&source, &target, &map);
    assert!(ok, "block map failed its re-check");
    Ok(HomCertificate {
        kind: CertificateKind::Found,
        k,
        source_m: m,
        target_n: n,
        pairs: Some(named_pairs(&source, &target, &map)),
        map: Some(map),
        nodes: 0,
        elapsed_ms: start.elapsed().as_millis() as u64,
        reduction: None,
    })
}

/// A homomorphism `H(k, m) -> H(k, n)` exists iff `m` divides `n`.
pub fn hom_exists_oracle(m: usize, n: usize) -> bool {
    m >= 1 && n.is_multiple_of(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        for (k, m, v, e) in [(3, 1, 3, 1), (3, 2, 15, 15), (3, 3, 84, 280), (4, 2, 28, 105)] {
            let h = kneser(k, m).unwrap();
            assert_eq!((h.vertex_count(), h.edge_count()), (v, e), "H({k},{m})");
            assert_eq!(h.hypergraph.uniformity, Some(k));
        }
        assert_eq!(partition_count(3, 4), 5775);
    }

    #[test]
    fn guards() {
        assert!(kneser(2, 3).is_err());
        assert!(kneser(3, 0).is_err());
        assert!(matches!(kneser(3, 8), Err(Error::SizeGuard(_))));
        assert!(matches!(kneser(5, 13), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn vertex_order_is_lexicographic() {
        let h = kneser(3, 2).unwrap();
        let names: Vec<&str> = h.hypergraph.vertices.iter().take(6).map(String::as_str).collect();
        assert_eq!(names, ["{1,2}", "{1,3}", "{1,4}", "{1,5}", "{1,6}", "{2,3}"]);
        for (i, &x) in h.masks.iter().enumerate() {
            assert_eq!(h.index_of_mask(x), Some(i));
        }
        assert_eq!(h.index_of_mask(0b111), None);
    }

    #[test]
    fn neighbours_are_disjoint_sets() {
        let h = kneser(3, 3).unwrap();
        for (v, ns) in h.neighbours.iter().enumerate() {
            assert_eq!(ns.len(), 20);
            assert!(ns.iter().all(|&u| h.masks[u] & h.masks[v] == 0));
        }
    }

    #[test]
    fn terms() {
        let h = kneser(3, 1).unwrap();
        let (t, q) = hypergraph_terms(&h.hypergraph, OrderingMode::Single).unwrap();
        assert_eq!(t.to_string(), "x1*x2*x3");
        assert_eq!(q.to_string(), "x1*x2*x3");
        let (t, _) = hypergraph_terms(&h.hypergraph, OrderingMode::All).unwrap();
        assert_eq!(t.len(), 6);
        let h = kneser(3, 2).unwrap();
        let (t, q) = hypergraph_terms(&h.hypergraph, OrderingMode::Single).unwrap();
        assert_eq!(t.len(), 15);
        assert!(t.words().all(|w| w.len() == 3));
        assert_eq!(q.len(), 15);
        assert_eq!(t.content().len(), 15);
    }

    #[test]
    fn non_uniform_rejected() {
        let h = Hypergraph::new(vec!["a".into(), "b".into()], vec![vec![0], vec![0, 1]]).unwrap();
        assert!(hypergraph_terms(&h, OrderingMode::Single).is_err());
        assert!(Hypergraph::new(vec!["a".into()], vec![vec![1]]).is_err());
    }

    #[test]
    fn small_searches() {
        let h1 = kneser(3, 1).unwrap();
        let h2 = kneser(3, 2).unwrap();
        let cfg = SearchConfig::default();
        let id = hom_search(&h2, &h2, cfg).unwrap();
        assert!(id.is_found());
        assert_eq!(hom_search(&h2, &h1, cfg).unwrap().kind, CertificateKind::Exhausted);
        assert!(hom_search(&h1, &h2, cfg).unwrap().is_found());
        let plain = SearchConfig { symmetry: false, ..cfg };
        assert_eq!(hom_search(&h2, &h1, plain).unwrap().kind, CertificateKind::Exhausted);
        assert!(hom_search(&h1, &h2, plain).unwrap().is_found());
        assert!(hom_search(&h1, &kneser(4, 1).unwrap(), cfg).is_err());
    }

    #[test]
    fn node_budget_gives_timeout() {
        let h2 = kneser(3, 2).unwrap();
        let h1 = kneser(3, 1).unwrap();
        let cfg = SearchConfig { node_budget: 3, ..SearchConfig::default() };
        assert_eq!(hom_search(&h2, &h1, cfg).unwrap().kind, CertificateKind::Timeout);
    }

    #[test]
    fn block_maps() {
        let c = block_hom(3, 1, 2).unwrap();
        let pairs = c.pairs.unwrap();
        assert_eq!(pairs[0], ("{1}".to_string(), "{1,2}".to_string()));
        assert_eq!(pairs[2], ("{3}".to_string(), "{5,6}".to_string()));
        let id = block_hom(3, 2, 2).unwrap();
        assert_eq!(id.map.unwrap(), (0..15).collect::<Vec<_>>());
        assert_eq!(block_hom(3, 2, 4).unwrap().map.unwrap().len(), 15);
        assert!(block_hom(3, 2, 3).is_err());
    }

    #[test]
    fn oracle() {
        assert!(hom_exists_oracle(2, 4));
        assert!(hom_exists_oracle(5, 5));
        assert!(!hom_exists_oracle(2, 3));
        assert!(!hom_exists_oracle(0, 3));
    }
}
