//! Isomorphism search between finite semirings.
//!
//! Elements are first coloured by cheap invariants (idempotency, position in
//! the natural order, how many elements they fix under multiplication) and
//! the colouring is refined against the operation tables of both algebras at
//! once. Backtracking then only pairs elements of equal colour, and every
//! assignment is propagated through the tables: once `f(a)` and `f(b)` are
//! fixed, `f(a + b)` and `f(a * b)` are forced.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{ElementMap, FiniteSemiring};
use crate::recheck;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IsoOutcome {
    Found {
        #[serde(skip)]
        map: ElementMap,
        nodes: u64,
    },
    /// The search space was covered without success.
    Exhausted { nodes: u64 },
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found { .. })
    }

    pub fn map(&self) -> Option<&ElementMap> {
        match self {
            IsoOutcome::Found { map, .. } => Some(map),
            IsoOutcome::Exhausted { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            IsoOutcome::Found { nodes, .. } | IsoOutcome::Exhausted { nodes } => *nodes,
        }
    }
}

/// Searches for an isomorphism `s -> t`. A returned map has been re-checked
/// by brute force.
pub fn find_isomorphism(s: &FiniteSemiring, t: &FiniteSemiring) -> IsoOutcome {
    if s.size() != t.size() {
        return IsoOutcome::Exhausted { nodes: 0 };
    }
    let (cs, ct) = refined_colours(s, t);
    let mut hist_s = BTreeMap::new();
    let mut hist_t = BTreeMap::new();
    for &c in &cs {
        *hist_s.entry(c).or_insert(0usize) += 1;
    }
    for &c in &ct {
        *hist_t.entry(c).or_insert(0usize) += 1;
    }
    if hist_s != hist_t {
        return IsoOutcome::Exhausted { nodes: 0 };
    }
    // rarest colours first
    let mut order: Vec<usize> = (0..s.size()).collect();
    order.sort_by_key(|&a| (hist_s[&cs[a]], cs[a], a));

    let mut search = Search {
        s,
        t,
        cs: &cs,
        ct: &ct,
        order: &order,
        fwd: vec![None; s.size()],
        bwd: vec![None; t.size()],
        trail: Vec::new(),
        nodes: 0,
    };
    if search.run() {
        let images = search.fwd.iter().map(|x| x.expect("complete assignment")).collect();
        let map = ElementMap::new(images, t.size());
        assert!(recheck::is_isomorphism(s, t, &map), "isomorphism search returned a map that does not re-check");
        IsoOutcome::Found { map, nodes: search.nodes }
    } else {
        IsoOutcome::Exhausted { nodes: search.nodes }
    }
}

pub fn are_isomorphic(s: &FiniteSemiring, t: &FiniteSemiring) -> bool {
    find_isomorphism(s, t).is_found()
}

struct Search<'a> {
    s: &'a FiniteSemiring,
    t: &'a FiniteSemiring,
    cs: &'a [usize],
    ct: &'a [usize],
    order: &'a [usize],
    fwd: Vec<Option<usize>>,
    bwd: Vec<Option<usize>>,
    trail: Vec<usize>,
    nodes: u64,
}

impl Search<'_> {
    fn run(&mut self) -> bool {
        let Some(&a) = self.order.iter().find(|&&a| self.fwd[a].is_none()) else {
            return true;
        };
        for x in 0..self.t.size() {
            if self.bwd[x].is_some() || self.ct[x] != self.cs[a] {
                continue;
            }
            self.nodes += 1;
            let mark = self.trail.len();
            if self.assign(a, x) && self.run() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let a = self.trail.pop().unwrap();
            let x = self.fwd[a].take().unwrap();
            self.bwd[x] = None;
        }
    }

    /// Assigns `a -> x` and everything it forces; false on a contradiction.
    fn assign(&mut self, a: usize, x: usize) -> bool {
        let mut queue = vec![(a, x)];
        while let Some((a, x)) = queue.pop() {
            match (self.fwd[a], self.bwd[x]) {
                (Some(y), _) if y == x => continue,
                (Some(_), _) | (None, Some(_)) => return false,
                (None, None) => {}
            }
            if self.cs[a] != self.ct[x] {
                return false;
            }
            self.fwd[a] = Some(x);
            self.bwd[x] = Some(a);
            self.trail.push(a);
            for &b in self.trail.iter() {
                let y = self.fwd[b].unwrap();
                queue.push((self.s.add(a, b), self.t.add(x, y)));
                queue.push((self.s.mul(a, b), self.t.mul(x, y)));
                queue.push((self.s.mul(b, a), self.t.mul(y, x)));
            }
        }
        true
    }
}

/// Colours for the elements of `s` and `t` drawn from one palette, so that
/// an isomorphism can only pair equal colours.
fn refined_colours(s: &FiniteSemiring, t: &FiniteSemiring) -> (Vec<usize>, Vec<usize>) {
    let initial = |a: &FiniteSemiring| -> Vec<Vec<usize>> {
        let n = a.size();
        (0..n)
            .map(|x| {
                let below = (0..n).filter(|&y| a.add(y, x) == x).count();
                let above = (0..n).filter(|&y| a.add(x, y) == y).count();
                let left_fixed = (0..n).filter(|&y| a.mul(x, y) == y).count();
                let right_fixed = (0..n).filter(|&y| a.mul(y, x) == y).count();
                let absorbs = (0..n).filter(|&y| a.mul(x, y) == x && a.mul(y, x) == x).count();
                vec![usize::from(a.mul(x, x) == x), below, above, left_fixed, right_fixed, absorbs]
            })
            .collect()
    };
    let mut palette = BTreeMap::new();
    let paint = |sigs: Vec<Vec<usize>>, palette: &mut BTreeMap<Vec<usize>, usize>| -> Vec<usize> {
        sigs.into_iter()
            .map(|sig| {
                let next = palette.len();
                *palette.entry(sig).or_insert(next)
            })
            .collect()
    };
    let mut cs = paint(initial(s), &mut palette);
    let mut ct = paint(initial(t), &mut palette);
    let mut classes = count_classes(&cs, &ct);
    loop {
        let refine = |a: &FiniteSemiring, c: &[usize]| -> Vec<Vec<usize>> {
            let n = a.size();
            (0..n)
                .map(|x| {
                    let mut row: Vec<[usize; 4]> =
                        (0..n).map(|y| [c[y], c[a.add(x, y)], c[a.mul(x, y)], c[a.mul(y, x)]]).collect();
                    row.sort_unstable();
                    let mut sig = vec![c[x]];
                    sig.extend(row.into_iter().flatten());
                    sig
                })
                .collect()
        };
        let mut palette = BTreeMap::new();
        let ns = paint(refine(s, &cs), &mut palette);
        let nt = paint(refine(t, &ct), &mut palette);
        let next = count_classes(&ns, &nt);
        cs = ns;
        ct = nt;
        if next == classes {
            return (cs, ct);
        }
        classes = next;
    }
}

fn count_classes(a: &[usize], b: &[usize]) -> usize {
    let mut all: Vec<usize> = a.iter().chain(b).copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_product, generate_subalgebra};
    use crate::builtin::{builtin, Builtin};

    #[test]
    fn identity_found() {
        let s = builtin(Builtin::S53);
        let out = find_isomorphism(&s, &s);
        assert_eq!(out.map().unwrap(), &ElementMap::identity(3));
    }

    #[test]
    fn s7_is_not_s53() {
        let out = find_isomorphism(&builtin(Builtin::S7), &builtin(Builtin::S53));
        assert!(!out.is_found());
    }

    #[test]
    fn relabelled_copy() {
        let b = builtin(Builtin::B21);
        let perm = [3usize, 5, 0, 1, 4, 2];
        let mut names = vec![String::new(); 6];
        for (i, &p) in perm.iter().enumerate() {
            names[p] = b.element_name(i).to_string();
        }
        let copy = FiniteSemiring::from_fn(
            None,
            names,
            |x, y| {
                let inv = |z: usize| perm.iter().position(|&p| p == z).unwrap();
                perm[b.add(inv(x), inv(y))]
            },
            |x, y| {
                let inv = |z: usize| perm.iter().position(|&p| p == z).unwrap();
                perm[b.mul(inv(x), inv(y))]
            },
        )
        .unwrap();
        assert!(find_isomorphism(&b, &copy).is_found());
        assert!(find_isomorphism(&copy, &b).is_found());
    }

    #[test]
    fn symmetric_on_builtins() {
        for a in Builtin::ALL {
            for b in Builtin::ALL {
                let ab = find_isomorphism(&builtin(a), &builtin(b)).is_found();
                let ba = find_isomorphism(&builtin(b), &builtin(a)).is_found();
                assert_eq!(ab, ba);
                assert_eq!(ab, a == b, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn product_factors_commute() {
        let s53 = builtin(Builtin::S53);
        let m2 = builtin(Builtin::M2);
        let p = direct_product(&[&s53, &m2]).unwrap();
        let q = direct_product(&[&m2, &s53]).unwrap();
        assert!(find_isomorphism(&p, &q).is_found());
        let (sub, _) = generate_subalgebra(&p, &[0]).unwrap();
        assert!(!find_isomorphism(&sub, &q).is_found());
    }
}
