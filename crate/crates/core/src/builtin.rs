//! The named small algebras: S_7, S_53, M_2, B_2^1, B_0 and Sigma_7.

use std::fmt;
use std::str::FromStr;

use crate::algebra::FiniteSemiring;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    S7,
    S53,
    M2,
    B21,
    B0,
    Sigma7,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [Builtin::S7, Builtin::S53, Builtin::M2, Builtin::B21, Builtin::B0, Builtin::Sigma7];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::S7 => "S_7",
            Builtin::S53 => "S_53",
            Builtin::M2 => "M_2",
            Builtin::B21 => "B_2^1",
            Builtin::B0 => "B_0",
            Builtin::Sigma7 => "Sigma_7",
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String =
            s.chars().filter(|c| !matches!(c, '_' | '^' | '-' | ' ')).flat_map(char::to_lowercase).collect();
        match key.as_str() {
            "s7" => Ok(Builtin::S7),
            "s53" => Ok(Builtin::S53),
            "m2" => Ok(Builtin::M2),
            "b21" => Ok(Builtin::B21),
            "b0" => Ok(Builtin::B0),
            "sigma7" | "σ7" => Ok(Builtin::Sigma7),
            _ => Err(Error::UnknownBuiltin(s.to_string())),
        }
    }
}

pub fn builtin(which: Builtin) -> FiniteSemiring {
    let s = match which {
        Builtin::S7 => three_element(S7_ADD),
        Builtin::S53 => three_element(S53_ADD),
        Builtin::M2 => m2(),
        Builtin::B21 => b21(),
        Builtin::B0 => b0(),
        Builtin::Sigma7 => sigma7(),
    };
    s.with_name(which.name())
}

/// Looks a builtin up by name, accepting spellings such as `S_53`, `s53`, `B_2^1`.
pub fn builtin_by_name(name: &str) -> Result<FiniteSemiring> {
    Ok(builtin(name.parse()?))
}

// Element order 0, a, 1 throughout, as printed in the Cayley tables.
const S7_ADD: [[usize; 3]; 3] = [[0, 0, 0], [0, 1, 0], [0, 0, 2]];
const S53_ADD: [[usize; 3]; 3] = [[0, 0, 0], [0, 1, 1], [0, 1, 2]];
// S_7 and S_53 share this multiplication.
const THREE_MUL: [[usize; 3]; 3] = [[0, 0, 0], [0, 0, 1], [0, 1, 2]];

fn three_element(add: [[usize; 3]; 3]) -> FiniteSemiring {
    FiniteSemiring::from_fn(None, vec!["0".into(), "a".into(), "1".into()], |x, y| add[x][y], |x, y| THREE_MUL[x][y])
        .expect("static table")
}

fn m2() -> FiniteSemiring {
    // 0 and 1 with 1 + 0 = 0: the flat monoid {1}^0.
    FiniteSemiring::from_fn(None, vec!["0".into(), "1".into()], |x, y| if x == y { x } else { 0 }, |x, y| x * y)
        .expect("static table")
}

type Matrix = [[u8; 2]; 2];

/// The Brandt monoid B_2^1 as 0/1 matrices, in the order 0, 1, e12, e21, e11, e22.
const B21_MATRICES: [(&str, Matrix); 6] = [
    ("0", [[0, 0], [0, 0]]),
    ("1", [[1, 0], [0, 1]]),
    ("e12", [[0, 1], [0, 0]]),
    ("e21", [[0, 0], [1, 0]]),
    ("e11", [[1, 0], [0, 0]]),
    ("e22", [[0, 0], [0, 1]]),
];

/// Covering pairs (lower, upper) of the additive order of B_2^1:
/// 1 sits below e11 and e22, and every e_ij sits below 0.
const B21_COVERS: [(&str, &str); 6] =
    [("1", "e11"), ("1", "e22"), ("e12", "0"), ("e21", "0"), ("e11", "0"), ("e22", "0")];

fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut c = [[0u8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = (0..2).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn b21() -> FiniteSemiring {
    let names: Vec<String> = B21_MATRICES.iter().map(|(n, _)| n.to_string()).collect();
    let idx = |n: &str| names.iter().position(|m| m == n).unwrap();
    let mul_idx = |a: usize, b: usize| {
        let prod = matmul(&B21_MATRICES[a].1, &B21_MATRICES[b].1);
        B21_MATRICES.iter().position(|(_, m)| *m == prod).expect("Brandt monoid is closed under matrix multiplication")
    };
    let covers: Vec<(usize, usize)> = B21_COVERS.iter().map(|(l, u)| (idx(l), idx(u))).collect();
    let join = joins_from_covers(names.len(), &covers).expect("every pair in the Hasse diagram has a join");
    FiniteSemiring::from_fn(None, names, |a, b| join[a][b], mul_idx).expect("static table")
}

/// Binary joins of the partial order generated by `covers`, or `None` if some
/// pair has no least upper bound.
pub(crate) fn joins_from_covers(n: usize, covers: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut le = vec![vec![false; n]; n];
    for (a, row) in le.iter_mut().enumerate() {
        row[a] = true;
    }
    for &(l, u) in covers {
        le[l][u] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let upper: Vec<usize> = (0..n).filter(|&u| le[a][u] && le[b][u]).collect();
            join[a][b] = *upper.iter().find(|&&u| upper.iter().all(|&v| le[u][v]))?;
        }
    }
    Some(join)
}

fn b0() -> FiniteSemiring {
    let full = b21();
    let members: Vec<usize> = ["0", "e11", "e12", "e22"].iter().map(|n| full.index_of(n).unwrap()).collect();
    full.restrict(&members).expect("B_0 is a subalgebra of B_2^1").0
}

/// B_2^1 with a new bottom element that is additively neutral and
/// multiplicatively absorbing.
fn sigma7() -> FiniteSemiring {
    let base = b21();
    let bot = base.size();
    let mut names = base.elements().to_vec();
    names.push("bot".into());
    FiniteSemiring::from_fn(
        None,
        names,
        |a, b| match (a == bot, b == bot) {
            (true, _) => b,
            (_, true) => a,
            _ => base.add(a, b),
        },
        |a, b| if a == bot || b == bot { bot } else { base.mul(a, b) },
    )
    .expect("static table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{natural_order, verify_ai_semiring};

    #[test]
    fn every_builtin_is_an_ai_semiring() {
        for b in Builtin::ALL {
            let s = builtin(b);
            let report = verify_ai_semiring(&s);
            assert!(report.is_ai_semiring(), "{b}: {:?}", report.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = Builtin::ALL.iter().map(|&b| builtin(b).size()).collect();
        assert_eq!(sizes, vec![3, 3, 2, 6, 4, 7]);
    }

    #[test]
    fn names_parse() {
        for b in Builtin::ALL {
            assert_eq!(b.name().parse::<Builtin>().unwrap(), b);
        }
        assert_eq!("Σ_7".parse::<Builtin>().unwrap(), Builtin::Sigma7);
        assert!(matches!("S_8".parse::<Builtin>(), Err(Error::UnknownBuiltin(_))));
    }

    #[test]
    fn s53_table_entries() {
        let s = builtin(Builtin::S53);
        let [zero, a, one] = ["0", "a", "1"].map(|e| s.element(e).unwrap());
        assert_eq!(s.mul(a, a), zero);
        assert_eq!(s.mul(a, one), a);
        assert_eq!(s.add(a, one), a);
    }

    #[test]
    fn s7_and_s53_share_multiplication_only() {
        let s7 = builtin(Builtin::S7);
        let s53 = builtin(Builtin::S53);
        assert_eq!(s7.mul_table(), s53.mul_table());
        assert_ne!(s7.add_table(), s53.add_table());
    }

    #[test]
    fn m2_is_the_flat_monoid() {
        let m = builtin(Builtin::M2);
        let [zero, one] = ["0", "1"].map(|e| m.element(e).unwrap());
        assert_eq!(m.mul(one, one), one);
        assert_eq!(m.mul(one, zero), zero);
        assert_eq!(m.mul(zero, one), zero);
        assert_eq!(m.add(one, zero), zero);
        let ord = natural_order(&m).unwrap();
        assert!(ord.lt(one, zero));
        assert_eq!(ord.greatest(), Some(zero));
    }

    #[test]
    fn b0_products_and_sums() {
        let b = builtin(Builtin::B0);
        let [zero, e11, e12, e22] = ["0", "e11", "e12", "e22"].map(|e| b.element(e).unwrap());
        assert_eq!(b.mul(e11, e12), e12);
        assert_eq!(b.mul(e12, e12), zero);
        assert_eq!(b.mul(e12, e22), e12);
        assert_eq!(b.mul(e22, e11), zero);
        assert_eq!(b.add(e11, e22), zero);
        assert_eq!(b.add(e11, e12), zero);
    }

    #[test]
    fn b21_order_matches_hasse_diagram() {
        let s = builtin(Builtin::B21);
        let ord = natural_order(&s).unwrap();
        let idx = |n: &str| s.element(n).unwrap();
        let mut covers = ord.covers();
        covers.sort();
        let mut expected: Vec<(usize, usize)> = B21_COVERS.iter().map(|(l, u)| (idx(l), idx(u))).collect();
        expected.sort();
        assert_eq!(covers, expected);
        assert_eq!(ord.greatest(), Some(idx("0")));
        // 1 is incomparable with the off-diagonal units, so joins with them are 0
        assert_eq!(s.add(idx("1"), idx("e12")), idx("0"));
        assert_eq!(s.add(idx("1"), idx("e11")), idx("e11"));
    }

    #[test]
    fn missing_join_is_detected() {
        // two incomparable maximal elements
        assert!(joins_from_covers(3, &[(0, 1), (0, 2)]).is_none());
    }

    #[test]
    fn sigma7_bottom() {
        let s = builtin(Builtin::Sigma7);
        let bot = s.element("bot").unwrap();
        let ord = natural_order(&s).unwrap();
        assert_eq!(ord.least(), Some(bot));
        for x in 0..s.size() {
            assert_eq!(s.add(bot, x), x);
            assert_eq!(s.mul(bot, x), bot);
            assert_eq!(s.mul(x, bot), bot);
        }
    }
}
