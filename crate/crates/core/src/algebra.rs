//! Finite semirings given by operation tables, and the constructions used on
//! them: axiom checking, the natural order, direct products, generated
//! subalgebras and ideal quotients.
//!
//! Elements are dense indices `0..n` with a parallel list of names. Both tables
//! are stored row-major, so `add(a, b)` is a single slice lookup.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite algebra with two binary operations given by total tables.
///
/// Construction only checks totality. Whether the tables actually form an
/// ai-semiring is answered by [`verify_ai_semiring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemiring {
    name: Option<String>,
    elements: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl FiniteSemiring {
    pub fn new(
        name: Option<String>,
        elements: Vec<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty carrier".into()));
        }
        let flatten = |table: Vec<Vec<usize>>, op: &str| -> Result<Vec<u32>> {
            if table.len() != n {
                return Err(Error::MalformedTable(format!("{op} table has {} rows, expected {n}", table.len())));
            }
            let mut flat = Vec::with_capacity(n * n);
            for (r, row) in table.into_iter().enumerate() {
                if row.len() != n {
                    return Err(Error::MalformedTable(format!("{op} row {r} has {} entries, expected {n}", row.len())));
                }
                for (c, v) in row.into_iter().enumerate() {
                    if v >= n {
                        return Err(Error::MalformedTable(format!(
                            "{op}[{r}][{c}] = {v} is out of range for {n} elements"
                        )));
                    }
                    flat.push(v as u32);
                }
            }
            Ok(flat)
        };
        let add = flatten(add, "add")?;
        let mul = flatten(mul, "mul")?;
        Ok(Self { name, elements, add, mul })
    }

    /// Builds the tables by evaluating the two operations on every pair.
    pub fn from_fn(
        name: Option<String>,
        elements: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = elements.len();
        let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect()
        };
        Self::new(name, elements, table(&add), table(&mul))
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.elements[a]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == name)
    }

    /// Like [`index_of`](Self::index_of) but reports a missing name as an input error.
    pub fn element(&self, name: &str) -> Result<usize> {
        self.index_of(name).ok_or_else(|| Error::input(format!("no element named `{name}`")))
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.elements.len() + b] as usize
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.rows(&self.add)
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.rows(&self.mul)
    }

    fn rows(&self, flat: &[u32]) -> Vec<Vec<usize>> {
        flat.chunks(self.size()).map(|row| row.iter().map(|&v| v as usize).collect()).collect()
    }

    /// Overwrites one table entry. Used to build perturbed tables for
    /// negative tests; the result is generally not an ai-semiring.
    pub fn with_entry(mut self, op: Op, a: usize, b: usize, value: usize) -> Result<Self> {
        let n = self.size();
        if a >= n || b >= n || value >= n {
            return Err(Error::MalformedTable(format!("entry ({a}, {b}) := {value} out of range for {n} elements")));
        }
        let table = match op {
            Op::Add => &mut self.add,
            Op::Mul => &mut self.mul,
        };
        table[a * n + b] = value as u32;
        Ok(self)
    }

    /// The subalgebra on `members`, which must be closed under both operations.
    pub fn restrict(&self, members: &[usize]) -> Result<(FiniteSemiring, ElementMap)> {
        let n = self.size();
        let mut position = vec![usize::MAX; n];
        for (i, &m) in members.iter().enumerate() {
            if m >= n {
                return Err(Error::input(format!("element index {m} out of range")));
            }
            if position[m] != usize::MAX {
                return Err(Error::input(format!("element {} listed twice", self.elements[m])));
            }
            position[m] = i;
        }
        for &x in members {
            for &y in members {
                for z in [self.add(x, y), self.mul(x, y)] {
                    if position[z] == usize::MAX {
                        return Err(Error::input(format!(
                            "subset is not closed: {} and {} produce {}",
                            self.elements[x], self.elements[y], self.elements[z]
                        )));
                    }
                }
            }
        }
        let sub = FiniteSemiring::from_fn(
            self.name.clone(),
            members.iter().map(|&m| self.elements[m].clone()).collect(),
            |a, b| position[self.add(members[a], members[b])],
            |a, b| position[self.mul(members[a], members[b])],
        )?;
        let inclusion = ElementMap::new(members.to_vec(), n);
        Ok((sub, inclusion))
    }
}

impl fmt::Display for FiniteSemiring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.size();
        let width = self.elements.iter().map(|e| e.chars().count()).max().unwrap_or(1);
        if let Some(name) = &self.name {
            writeln!(f, "{name} ({n} elements)")?;
        }
        for (symbol, op) in [("+", Op::Add), ("*", Op::Mul)] {
            write!(f, "{symbol:>width$} |")?;
            for e in &self.elements {
                write!(f, " {e:>width$}")?;
            }
            writeln!(f)?;
            writeln!(f, "{}", "-".repeat((width + 1) * (n + 1) + 1))?;
            for a in 0..n {
                write!(f, "{:>width$} |", self.elements[a])?;
                for b in 0..n {
                    let v = match op {
                        Op::Add => self.add(a, b),
                        Op::Mul => self.mul(a, b),
                    };
                    write!(f, " {:>width$}", self.elements[v])?;
                }
                writeln!(f)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Add,
    Mul,
}

// ---------------------------------------------------------------------------
// Axioms

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    AdditiveCommutativity,
    AdditiveAssociativity,
    AdditiveIdempotency,
    MultiplicativeAssociativity,
    /// x(y + z) = xy + xz
    LeftDistributivity,
    /// (x + y)z = xz + yz
    RightDistributivity,
}

impl Law {
    pub const ALL: [Law; 6] = [
        Law::AdditiveCommutativity,
        Law::AdditiveAssociativity,
        Law::AdditiveIdempotency,
        Law::MultiplicativeAssociativity,
        Law::LeftDistributivity,
        Law::RightDistributivity,
    ];
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::AdditiveCommutativity => "x + y = y + x",
            Law::AdditiveAssociativity => "(x + y) + z = x + (y + z)",
            Law::AdditiveIdempotency => "x + x = x",
            Law::MultiplicativeAssociativity => "(xy)z = x(yz)",
            Law::LeftDistributivity => "x(y + z) = xy + xz",
            Law::RightDistributivity => "(x + y)z = xz + yz",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: Law,
    /// First (x, y, z) in lexicographic order violating the law. Laws with
    /// fewer than three variables leave the trailing slots at 0.
    pub counterexample: Option<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<LawCheck>,
}

impl AxiomReport {
    pub fn is_ai_semiring(&self) -> bool {
        self.checks.iter().all(|c| c.counterexample.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| c.counterexample.is_some())
    }

    fn first_failure(&self, s: &FiniteSemiring) -> Option<Error> {
        self.failures().next().map(|c| {
            let w = c.counterexample.unwrap();
            Error::NotAiSemiring { law: c.law, witness: w.map(|e| s.element_name(e).to_string()) }
        })
    }
}

/// Checks the six ai-semiring laws by exhaustive loops.
pub fn verify_ai_semiring(s: &FiniteSemiring) -> AxiomReport {
    let n = s.size();
    let find2 = |bad: &dyn Fn(usize, usize) -> bool| -> Option<[usize; 3]> {
        for x in 0..n {
            for y in 0..n {
                if bad(x, y) {
                    return Some([x, y, 0]);
                }
            }
        }
        None
    };
    let find3 = |bad: &dyn Fn(usize, usize, usize) -> bool| -> Option<[usize; 3]> {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if bad(x, y, z) {
                        return Some([x, y, z]);
                    }
                }
            }
        }
        None
    };
    let checks = Law::ALL
        .iter()
        .map(|&law| {
            let counterexample = match law {
                Law::AdditiveCommutativity => find2(&|x, y| s.add(x, y) != s.add(y, x)),
                Law::AdditiveIdempotency => (0..n).find(|&x| s.add(x, x) != x).map(|x| [x, 0, 0]),
                Law::AdditiveAssociativity => find3(&|x, y, z| s.add(s.add(x, y), z) != s.add(x, s.add(y, z))),
                Law::MultiplicativeAssociativity => find3(&|x, y, z| s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z))),
                Law::LeftDistributivity => find3(&|x, y, z| s.mul(x, s.add(y, z)) != s.add(s.mul(x, y), s.mul(x, z))),
                Law::RightDistributivity => find3(&|x, y, z| s.mul(s.add(x, y), z) != s.add(s.mul(x, z), s.mul(y, z))),
            };
            LawCheck { law, counterexample }
        })
        .collect();
    AxiomReport { checks }
}

/// Fails with the first violated law if `s` is not an ai-semiring.
pub fn require_ai_semiring(s: &FiniteSemiring) -> Result<()> {
    match verify_ai_semiring(s).first_failure(s) {
        Some(err) => Err(err),
        None => Ok(()),
    }
}

/// Checks `ab = ac != 0 => b = c` and `ab = cb != 0 => a = c`, the condition
/// under which a semigroup with zero carries a flat addition.
pub fn zero_cancellative_violation(s: &FiniteSemiring, zero: usize) -> Option<[usize; 3]> {
    let n = s.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if b != c {
                    let ab = s.mul(a, b);
                    if ab != zero && ab == s.mul(a, c) {
                        return Some([a, b, c]);
                    }
                    let ba = s.mul(b, a);
                    if ba != zero && ba == s.mul(c, a) {
                        return Some([b, c, a]);
                    }
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Natural order

/// The order `a <= b` iff `a + b = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalOrder {
    n: usize,
    leq: Vec<bool>,
    greatest: Option<usize>,
}

impl NaturalOrder {
    /// Reads the relation off the addition table without checking the axioms.
    pub fn from_addition(s: &FiniteSemiring) -> Self {
        let n = s.size();
        let leq: Vec<bool> = (0..n * n).map(|i| s.add(i / n, i % n) == i % n).collect();
        let greatest = (0..n).find(|&g| (0..n).all(|a| leq[a * n + g]));
        Self { n, leq, greatest }
    }

    #[inline]
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }

    pub fn greatest(&self) -> Option<usize> {
        self.greatest
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.n).find(|&l| (0..self.n).all(|a| self.le(l, a)))
    }

    /// All pairs `(a, b)` with `a <= b`, including the diagonal.
    pub fn relation(&self) -> Vec<(usize, usize)> {
        (0..self.n * self.n).filter(|&i| self.leq[i]).map(|i| (i / self.n, i % self.n)).collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_chain(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.le(a, b) || self.le(b, a)))
    }
}

/// The natural order of a validated ai-semiring.
pub fn natural_order(s: &FiniteSemiring) -> Result<NaturalOrder> {
    require_ai_semiring(s)?;
    Ok(NaturalOrder::from_addition(s))
}

// ---------------------------------------------------------------------------
// Maps

/// A total map between carriers, stored as an image per source element.
/// Whether it is a homomorphism is a property re-checked on demand by
/// [`crate::recheck`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementMap {
    images: Vec<usize>,
    target_size: usize,
}

impl ElementMap {
    pub fn new(images: Vec<usize>, target_size: usize) -> Self {
        debug_assert!(images.iter().all(|&i| i < target_size));
        Self { images, target_size }
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect(), n)
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn source_size(&self) -> usize {
        self.images.len()
    }

    pub fn target_size(&self) -> usize {
        self.target_size
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.images.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for &i in &self.images {
            seen[i] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn compose(&self, then: &ElementMap) -> ElementMap {
        ElementMap::new(self.images.iter().map(|&i| then.apply(i)).collect(), then.target_size)
    }

    /// Pairs of element names `source -> target`.
    pub fn named_pairs(&self, source: &FiniteSemiring, target: &FiniteSemiring) -> Vec<(String, String)> {
        self.images
            .iter()
            .enumerate()
            .map(|(a, &b)| (source.element_name(a).to_string(), target.element_name(b).to_string()))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Products

/// Componentwise product. Element names are tuples of factor names and the
/// first factor is the most significant digit of the index.
pub fn direct_product(factors: &[&FiniteSemiring]) -> Result<FiniteSemiring> {
    let Some(first) = factors.first() else {
        return Err(Error::input("direct product of an empty family"));
    };
    if factors.len() == 1 {
        return Ok((*first).clone());
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let total = sizes
        .iter()
        .try_fold(1usize, |acc, &s| acc.checked_mul(s))
        .filter(|&t| t <= PRODUCT_GUARD)
        .ok_or_else(|| Error::SizeGuard(format!("product of sizes {sizes:?} exceeds {PRODUCT_GUARD}")))?;

    let coords: Vec<Vec<usize>> = (0..total).map(|i| product_coords(i, &sizes)).collect();
    let index = |c: &[usize]| c.iter().zip(&sizes).fold(0, |acc, (&x, &s)| acc * s + x);
    let names = coords
        .iter()
        .map(|c| {
            let parts: Vec<&str> = c.iter().zip(factors).map(|(&x, f)| f.element_name(x)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name = factors.iter().map(|f| f.name().unwrap_or("?")).collect::<Vec<_>>().join(" x ");
    let combine = |a: usize, b: usize, op: Op| {
        let c: Vec<usize> = coords[a]
            .iter()
            .zip(&coords[b])
            .zip(factors)
            .map(|((&x, &y), f)| match op {
                Op::Add => f.add(x, y),
                Op::Mul => f.mul(x, y),
            })
            .collect();
        index(&c)
    };
    FiniteSemiring::from_fn(Some(name), names, |a, b| combine(a, b, Op::Add), |a, b| combine(a, b, Op::Mul))
}

/// Largest carrier [`direct_product`] will build.
pub const PRODUCT_GUARD: usize = 4096;

/// Coordinates of a product element, most significant factor first.
pub fn product_coords(mut index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut c = vec![0; sizes.len()];
    for (slot, &s) in c.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    c
}

/// Index of the product element with the given coordinates.
pub fn product_index(coords: &[usize], sizes: &[usize]) -> usize {
    coords.iter().zip(sizes).fold(0, |acc, (&x, &s)| acc * s + x)
}

// ---------------------------------------------------------------------------
// Subalgebras

/// Least subset containing `generators` and closed under both operations,
/// returned as an algebra (elements in ambient index order) with its inclusion.
pub fn generate_subalgebra(s: &FiniteSemiring, generators: &[usize]) -> Result<(FiniteSemiring, ElementMap)> {
    if generators.is_empty() {
        return Err(Error::input("empty generating set"));
    }
    let members = closure(s, generators)?;
    s.restrict(&members)
}

/// Worklist saturation; returns the closed set sorted by index.
pub fn closure(s: &FiniteSemiring, generators: &[usize]) -> Result<Vec<usize>> {
    let n = s.size();
    let mut inside = vec![false; n];
    let mut members = Vec::new();
    for &g in generators {
        if g >= n {
            return Err(Error::input(format!("generator index {g} out of range")));
        }
        if !std::mem::replace(&mut inside[g], true) {
            members.push(g);
        }
    }
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for j in 0..=i {
            let y = members[j];
            for z in [s.add(x, y), s.add(y, x), s.mul(x, y), s.mul(y, x)] {
                if !std::mem::replace(&mut inside[z], true) {
                    members.push(z);
                }
            }
        }
        i += 1;
    }
    members.sort_unstable();
    Ok(members)
}

/// The sets `A^1, A^2, ..., A^upto` where `A^(j+1) = { xy : x in A^j, y in A }`
/// and `A` is the whole carrier. Each set is sorted.
pub fn power_sets(s: &FiniteSemiring, upto: usize) -> Vec<Vec<usize>> {
    let n = s.size();
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(upto);
    if upto == 0 {
        return out;
    }
    out.push((0..n).collect());
    while out.len() < upto {
        let prev = out.last().unwrap();
        let mut next = vec![false; n];
        for &x in prev {
            for y in 0..n {
                next[s.mul(x, y)] = true;
            }
        }
        out.push((0..n).filter(|&z| next[z]).collect());
    }
    out
}

// ---------------------------------------------------------------------------
// Ideal quotients

/// A proper nonempty subset that is both a multiplicative ideal and an upward
/// closed set of the natural order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFilter {
    members: BTreeSet<usize>,
}

impl IdealFilter {
    pub fn new(s: &FiniteSemiring, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = s.size();
        let members: BTreeSet<usize> = members.into_iter().collect();
        if members.is_empty() {
            return Err(Error::InvalidIdeal("empty".into()));
        }
        if members.len() == n {
            return Err(Error::InvalidIdeal("not proper: contains every element".into()));
        }
        if let Some(&bad) = members.iter().find(|&&j| j >= n) {
            return Err(Error::InvalidIdeal(format!("index {bad} out of range")));
        }
        let name = |e: usize| s.element_name(e);
        for &j in &members {
            for x in 0..n {
                for (label, z) in [("right", s.mul(j, x)), ("left", s.mul(x, j))] {
                    if !members.contains(&z) {
                        let (l, r) = if label == "right" { (j, x) } else { (x, j) };
                        return Err(Error::InvalidIdeal(format!(
                            "not absorbing: {} * {} = {} lies outside",
                            name(l),
                            name(r),
                            name(z)
                        )));
                    }
                }
                if s.add(j, x) == x && !members.contains(&x) {
                    return Err(Error::InvalidIdeal(format!(
                        "not a filter: {} <= {} but {} lies outside",
                        name(j),
                        name(x),
                        name(x)
                    )));
                }
            }
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(&a)
    }
}

/// Name of the element representing the collapsed ideal.
pub const IDEAL_CLASS: &str = "[J]";

/// Collapses `j` to a single element `[J]`, placed last; the other elements
/// keep their names and relative order.
pub fn ideal_quotient(s: &FiniteSemiring, j: &IdealFilter) -> Result<(FiniteSemiring, ElementMap)> {
    let n = s.size();
    let kept: Vec<usize> = (0..n).filter(|a| !j.contains(*a)).collect();
    let class = kept.len();
    let mut images = vec![class; n];
    for (i, &a) in kept.iter().enumerate() {
        images[a] = i;
    }
    let mut names: Vec<String> = kept.iter().map(|&a| s.element_name(a).to_string()).collect();
    names.push(IDEAL_CLASS.to_string());
    // Any representative of [J] works: J absorbs products and is a filter,
    // so sums and products with it stay inside J.
    let rep = |q: usize| if q == class { *j.members.iter().next().unwrap() } else { kept[q] };
    let quotient = FiniteSemiring::from_fn(
        s.name().map(|nm| format!("{nm}/J")),
        names,
        |a, b| images[s.add(rep(a), rep(b))],
        |a, b| images[s.mul(rep(a), rep(b))],
    )?;
    Ok((quotient, ElementMap::new(images, class + 1)))
}

// ---------------------------------------------------------------------------
// File format

/// On-disk algebra document (format version 1).
///
/// ```json
/// {"version":1,"name":"S_53","elements":["0","a","1"],"add":[[0,0,0],[0,1,1],[0,1,2]],"mul":[[0,0,0],[0,0,1],[0,1,2]]}
/// ```
///
/// `version` and `name` are optional on input. Output is compact JSON with
/// the field order above followed by a single newline.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    #[serde(default = "AlgebraFile::current_version")]
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
}

impl AlgebraFile {
    pub const VERSION: u32 = 1;

    fn current_version() -> u32 {
        Self::VERSION
    }

    pub fn from_algebra(s: &FiniteSemiring) -> Self {
        Self {
            version: Self::VERSION,
            name: s.name.clone(),
            elements: s.elements.clone(),
            add: s.add_table(),
            mul: s.mul_table(),
        }
    }

    pub fn into_algebra(self) -> Result<FiniteSemiring> {
        if self.version != Self::VERSION {
            return Err(Error::input(format!("unsupported algebra file version {}", self.version)));
        }
        FiniteSemiring::new(self.name, self.elements, self.add, self.mul)
    }
}

pub fn to_json(s: &FiniteSemiring) -> String {
    let mut out = serde_json::to_string(&AlgebraFile::from_algebra(s)).expect("algebra serializes");
    out.push('\n');
    out
}

pub fn from_json(text: &str) -> Result<FiniteSemiring> {
    serde_json::from_str::<AlgebraFile>(text)?.into_algebra()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{builtin, Builtin};

    fn s53() -> FiniteSemiring {
        builtin(Builtin::S53)
    }

    #[test]
    fn rejects_malformed_tables() {
        let names = vec!["a".to_string(), "b".to_string()];
        let ok = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteSemiring::new(None, names.clone(), vec![vec![0, 1]], ok.clone()),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteSemiring::new(None, names.clone(), vec![vec![0, 1], vec![1]], ok.clone()),
            Err(Error::MalformedTable(_))
        ));
        assert!(matches!(
            FiniteSemiring::new(None, names, vec![vec![0, 2], vec![1, 1]], ok),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn trivial_algebra_is_ai() {
        let t = FiniteSemiring::from_fn(None, vec!["e".into()], |_, _| 0, |_, _| 0).unwrap();
        assert!(verify_ai_semiring(&t).is_ai_semiring());
    }

    #[test]
    fn mutated_s53_fails_with_counterexample() {
        let s = s53();
        let (a, one) = (s.element("a").unwrap(), s.element("1").unwrap());
        let bad = s.with_entry(Op::Add, a, one, one).unwrap();
        let report = verify_ai_semiring(&bad);
        assert!(!report.is_ai_semiring());
        let comm = report.checks.iter().find(|c| c.law == Law::AdditiveCommutativity).unwrap();
        let [x, y, _] = comm.counterexample.unwrap();
        assert_ne!(bad.add(x, y), bad.add(y, x));
        assert!(matches!(natural_order(&bad), Err(Error::NotAiSemiring { .. })));
    }

    #[test]
    fn s53_order_is_a_chain() {
        let s = s53();
        let ord = natural_order(&s).unwrap();
        let [zero, a, one] = ["0", "a", "1"].map(|e| s.element(e).unwrap());
        assert!(ord.is_chain());
        assert!(ord.lt(one, a) && ord.lt(a, zero));
        assert_eq!(ord.greatest(), Some(zero));
        assert_eq!(ord.least(), Some(one));
        let mut covers = ord.covers();
        covers.sort();
        let mut expected = vec![(one, a), (a, zero)];
        expected.sort();
        assert_eq!(covers, expected);
    }

    #[test]
    fn product_sizes_and_names() {
        let s = s53();
        let p = direct_product(&[&s, &s]).unwrap();
        assert_eq!(p.size(), 9);
        assert!(verify_ai_semiring(&p).is_ai_semiring());
        assert!(p.index_of("(a,1)").is_some());
        assert_eq!(direct_product(&[&s, &s, &s]).unwrap().size(), 27);
        assert_eq!(direct_product(&[&s]).unwrap(), s);
        assert!(direct_product(&[]).is_err());
    }

    #[test]
    fn product_coordinates_round_trip() {
        let sizes = [3, 4, 2];
        for i in 0..24 {
            assert_eq!(product_index(&product_coords(i, &sizes), &sizes), i);
        }
    }

    #[test]
    fn subalgebra_generated_by_a() {
        let s = s53();
        let (sub, inc) = generate_subalgebra(&s, &[s.element("a").unwrap()]).unwrap();
        let mut names: Vec<_> = sub.elements().to_vec();
        names.sort();
        assert_eq!(names, vec!["0", "a"]);
        assert_eq!(inc.target_size(), 3);
        assert!(inc.is_injective());
    }

    #[test]
    fn full_generating_set_gives_everything() {
        let s = s53();
        let (sub, inc) = generate_subalgebra(&s, &[0, 1, 2]).unwrap();
        assert_eq!(sub, s);
        assert_eq!(inc, ElementMap::identity(3));
        assert!(generate_subalgebra(&s, &[]).is_err());
    }

    #[test]
    fn a2_closure_inside_s53_squared() {
        let s = s53();
        let p = direct_product(&[&s, &s]).unwrap();
        let gens = [p.element("(a,1)").unwrap(), p.element("(1,a)").unwrap()];
        let (a2, _) = generate_subalgebra(&p, &gens).unwrap();
        for e in ["(a,a)", "(0,1)", "(1,0)", "(0,a)", "(a,0)", "(0,0)"] {
            assert!(a2.index_of(e).is_some(), "{e} missing");
        }
        assert!(a2.index_of("(1,1)").is_none());
        assert_eq!(a2.size(), 8);
    }

    #[test]
    fn ideal_filter_validation() {
        let s = s53();
        let [zero, a, one] = ["0", "a", "1"].map(|e| s.element(e).unwrap());
        // {a} is not upward closed and a*a = 0 escapes.
        assert!(matches!(IdealFilter::new(&s, [a]), Err(Error::InvalidIdeal(_))));
        // 1 * a = a escapes {1, 0}.
        let err = IdealFilter::new(&s, [one, zero]).unwrap_err();
        assert!(err.to_string().contains("absorbing"), "{err}");
        assert!(IdealFilter::new(&s, [zero, a, one]).is_err());
        assert!(IdealFilter::new(&s, []).is_err());
        let j = IdealFilter::new(&s, [a, zero]).unwrap();
        let (q, map) = ideal_quotient(&s, &j).unwrap();
        assert_eq!(q.size(), 2);
        assert!(map.is_surjective());
        assert!(verify_ai_semiring(&q).is_ai_semiring());
    }

    #[test]
    fn a2_quotient_has_four_elements() {
        let s = s53();
        let p = direct_product(&[&s, &s]).unwrap();
        let gens = [p.element("(a,1)").unwrap(), p.element("(1,a)").unwrap()];
        let (a2, _) = generate_subalgebra(&p, &gens).unwrap();
        let j2: Vec<usize> = (0..a2.size()).filter(|&e| a2.element_name(e).contains('0')).collect();
        let j = IdealFilter::new(&a2, j2.clone()).unwrap();
        let (q, map) = ideal_quotient(&a2, &j).unwrap();
        assert_eq!(q.size(), a2.size() - j2.len() + 1);
        assert_eq!(q.size(), 4);
        assert!(map.is_surjective());
        assert!(verify_ai_semiring(&q).is_ai_semiring());
        assert!(crate::recheck::homomorphism_violation(&a2, &q, &map).is_none());
    }

    #[test]
    fn power_sets_of_trivial_algebra() {
        let t = FiniteSemiring::from_fn(None, vec!["e".into()], |_, _| 0, |_, _| 0).unwrap();
        assert_eq!(power_sets(&t, 4), vec![vec![0]; 4]);
    }

    #[test]
    fn json_round_trip_is_byte_exact() {
        let s = s53();
        let text = to_json(&s);
        assert_eq!(
            text,
            "{\"version\":1,\"name\":\"S_53\",\"elements\":[\"0\",\"a\",\"1\"],\
             \"add\":[[0,0,0],[0,1,1],[0,1,2]],\"mul\":[[0,0,0],[0,0,1],[0,1,2]]}\n"
        );
        let back = from_json(&text).unwrap();
        assert_eq!(back, s);
        assert_eq!(to_json(&back), text);
        // version and name are optional
        let bare = from_json(r#"{"elements":["x"],"add":[[0]],"mul":[[0]]}"#).unwrap();
        assert_eq!(bare.size(), 1);
        assert!(from_json(r#"{"version":2,"elements":["x"],"add":[[0]],"mul":[[0]]}"#).is_err());
    }
}
