//! Deliberately naive re-checkers.
//!
//! Nothing here calls into the term engine, the isomorphism search or the
//! homomorphism search. Certificates produced by those are validated again
//! with the plain loops below: a recursive-descent parser and tree evaluator
//! for identities, brute-force homomorphism checks over operation tables, and
//! a subset-level check for Kneser hypergraph maps.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::{ElementMap, FiniteSemiring};

// ---------------------------------------------------------------------------
// Maps between algebras

/// First pair witnessing that `map` is not a homomorphism `s -> t`, described
/// in words; `None` if it is one.
pub fn homomorphism_violation(s: &FiniteSemiring, t: &FiniteSemiring, map: &ElementMap) -> Option<String> {
    let f = map.images();
    if f.len() != s.size() {
        return Some(format!("map has {} images for {} elements", f.len(), s.size()));
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= t.size()) {
        return Some(format!("image index {bad} outside the target"));
    }
    for a in 0..s.size() {
        for b in 0..s.size() {
            if f[s.add(a, b)] != t.add(f[a], f[b]) {
                return Some(format!(
                    "f({} + {}) != f({}) + f({})",
                    s.element_name(a),
                    s.element_name(b),
                    s.element_name(a),
                    s.element_name(b)
                ));
            }
            if f[s.mul(a, b)] != t.mul(f[a], f[b]) {
                return Some(format!(
                    "f({} * {}) != f({}) * f({})",
                    s.element_name(a),
                    s.element_name(b),
                    s.element_name(a),
                    s.element_name(b)
                ));
            }
        }
    }
    None
}

pub fn is_homomorphism(s: &FiniteSemiring, t: &FiniteSemiring, map: &ElementMap) -> bool {
    homomorphism_violation(s, t, map).is_none()
}

pub fn is_embedding(s: &FiniteSemiring, t: &FiniteSemiring, map: &ElementMap) -> bool {
    let distinct: HashSet<usize> = map.images().iter().copied().collect();
    distinct.len() == s.size() && is_homomorphism(s, t, map)
}

pub fn is_isomorphism(s: &FiniteSemiring, t: &FiniteSemiring, map: &ElementMap) -> bool {
    s.size() == t.size() && is_embedding(s, t, map)
}

/// Whether `members` is closed under both operations of `s`.
pub fn is_closed(s: &FiniteSemiring, members: &[usize]) -> bool {
    let set: HashSet<usize> = members.iter().copied().collect();
    members.iter().all(|&a| members.iter().all(|&b| set.contains(&s.add(a, b)) && set.contains(&s.mul(a, b))))
}

// ---------------------------------------------------------------------------
// Naive identity evaluation

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(x) => {
                if !out.contains(x) {
                    out.push(x.clone());
                }
            }
            Expr::Add(a, b) | Expr::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn eval(&self, s: &FiniteSemiring, env: &BTreeMap<String, usize>) -> Option<usize> {
        match self {
            Expr::Var(x) => env.get(x).copied(),
            Expr::Add(a, b) => Some(s.add(a.eval(s, env)?, b.eval(s, env)?)),
            Expr::Mul(a, b) => Some(s.mul(a.eval(s, env)?, b.eval(s, env)?)),
        }
    }
}

struct Naive {
    chars: Vec<char>,
    pos: usize,
}

impl Naive {
    fn skip(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip();
        if self.pos < self.chars.len() && self.chars[self.pos] == c {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Option<Expr> {
        let mut e = self.product()?;
        while self.eat('+') {
            e = Expr::Add(Box::new(e), Box::new(self.product()?));
        }
        Some(e)
    }

    fn product(&mut self) -> Option<Expr> {
        let mut e = self.atom()?;
        while self.eat('*') || self.eat('·') {
            e = Expr::Mul(Box::new(e), Box::new(self.atom()?));
        }
        Some(e)
    }

    fn atom(&mut self) -> Option<Expr> {
        self.skip();
        if self.eat('(') {
            let e = self.sum()?;
            return self.eat(')').then_some(e);
        }
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        (self.pos > start).then(|| Expr::Var(self.chars[start..self.pos].iter().collect()))
    }
}

/// Parses `lhs = rhs` with `+`, `*` and parentheses. Returns `None` on any
/// syntax error.
pub fn naive_parse(text: &str) -> Option<(Expr, Expr)> {
    let mut p = Naive { chars: text.chars().collect(), pos: 0 };
    let lhs = p.sum()?;
    if !(p.eat('=') || p.eat('≈')) {
        return None;
    }
    let rhs = p.sum()?;
    p.skip();
    (p.pos == p.chars.len()).then_some((lhs, rhs))
}

/// Evaluates both sides of `text` under `env` (variable name to element index).
pub fn naive_eval(s: &FiniteSemiring, text: &str, env: &BTreeMap<String, usize>) -> Option<(usize, usize)> {
    let (l, r) = naive_parse(text)?;
    Some((l.eval(s, env)?, r.eval(s, env)?))
}

/// Tries every assignment recursively. `Ok(None)` means the identity holds,
/// `Ok(Some(env))` is a falsifying assignment.
pub fn naive_satisfies(s: &FiniteSemiring, text: &str) -> Result<Option<BTreeMap<String, usize>>, String> {
    let (l, r) = naive_parse(text).ok_or_else(|| format!("cannot parse `{text}`"))?;
    let mut vars = Vec::new();
    l.collect_vars(&mut vars);
    r.collect_vars(&mut vars);
    let mut env = BTreeMap::new();
    Ok(search(s, &l, &r, &vars, &mut env))
}

fn search(
    s: &FiniteSemiring,
    l: &Expr,
    r: &Expr,
    vars: &[String],
    env: &mut BTreeMap<String, usize>,
) -> Option<BTreeMap<String, usize>> {
    match vars.split_first() {
        None => (l.eval(s, env) != r.eval(s, env)).then(|| env.clone()),
        Some((x, rest)) => {
            for v in 0..s.size() {
                env.insert(x.clone(), v);
                if let Some(bad) = search(s, l, r, rest, env) {
                    return Some(bad);
                }
            }
            env.remove(x);
            None
        }
    }
}

// ---------------------------------------------------------------------------
// Kneser maps

/// Checks a map between Kneser hypergraphs given as `(source subset, target
/// subset)` pairs of bit masks: the sources are exactly the `m`-subsets of
/// `[km]`, every image is an `n`-subset of `[kn]`, and every partition of
/// `[km]` into `k` blocks goes to a partition of `[kn]`.
pub fn kneser_map_violation(k: usize, m: usize, n: usize, pairs: &[(u64, u64)]) -> Option<String> {
    let full = |len: usize| if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    let (src_full, tgt_full) = (full(k * m), full(k * n));
    let mut image = BTreeMap::new();
    for &(a, b) in pairs {
        if a & !src_full != 0 || a.count_ones() as usize != m {
            return Some(format!("{a:#b} is not an {m}-subset of [{}]", k * m));
        }
        if b & !tgt_full != 0 || b.count_ones() as usize != n {
            return Some(format!("{b:#b} is not an {n}-subset of [{}]", k * n));
        }
        if image.insert(a, b).is_some() {
            return Some(format!("{a:#b} mapped twice"));
        }
    }
    // every m-subset of [km] must be present
    let mut expected = 0usize;
    let mut x = 0u64;
    while x <= src_full {
        if x.count_ones() as usize == m {
            expected += 1;
            if !image.contains_key(&x) {
                return Some(format!("{x:#b} has no image"));
            }
        }
        if x == u64::MAX {
            break;
        }
        x += 1;
    }
    if expected != image.len() {
        return Some("map has extra sources".into());
    }
    let verts: Vec<u64> = image.keys().copied().collect();
    let mut chosen = Vec::new();
    partitions(&verts, k, src_full, 0, &mut chosen, &image, tgt_full)
}

fn partitions(
    verts: &[u64],
    k: usize,
    src_full: u64,
    used: u64,
    chosen: &mut Vec<u64>,
    image: &BTreeMap<u64, u64>,
    tgt_full: u64,
) -> Option<String> {
    if chosen.len() == k {
        if used != src_full {
            return None;
        }
        let mut acc = 0u64;
        for v in chosen.iter() {
            let w = image[v];
            if acc & w != 0 {
                return Some(format!("images of the partition {chosen:?} overlap"));
            }
            acc |= w;
        }
        return (acc != tgt_full).then(|| format!("images of {chosen:?} do not cover"));
    }
    // blocks in increasing order to visit each partition once
    let lowest = chosen.last().copied().unwrap_or(0);
    for &v in verts {
        if v > lowest && v & used == 0 {
            chosen.push(v);
            let r = partitions(verts, k, src_full, used | v, chosen, image, tgt_full);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}
