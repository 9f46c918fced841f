//! Root systems of the compact simple Lie algebras, in the simple-root basis.
//!
//! Roots are integer coefficient vectors over the simple roots. Node labels
//! follow Bourbaki for every type except E8, which uses the chain labeling
//!
//! ```text
//! a1 - a2 - a3 - a4 - a5 - a6 - a7
//!                     |
//!                     a8
//! ```
//!
//! with highest root `2,3,4,5,6,4,2,3`. Relative to Bourbaki's E8 numbering the
//! nodes correspond as `a1..a8 = B8, B7, B6, B5, B4, B3, B1, B2`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num::Zero;

use crate::error::{Error, Result};
use crate::Q;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Lie type such as `E8` or `B3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct LieType {
    pub family: Family,
    pub rank: usize,
}

impl LieType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::InvalidType(format!("{:?}{}", family, rank)))
        }
    }

    /// Closed-form count of positive roots.
    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1) / 2,
            (Family::B, _) | (Family::C, _) => n * n,
            (Family::D, _) => n * (n - 1),
            (Family::E, 6) => 36,
            (Family::E, 7) => 63,
            (Family::E, _) => 120,
            (Family::F, _) => 24,
            (Family::G, _) => 6,
        }
    }

    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_root_count()
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::InvalidType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .trim()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        LieType::new(family, rank).map_err(|_| Error::InvalidType(s.to_string()))
    }
}

/// A root as its coefficient vector over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        Root(v)
    }

    pub fn coeffs(&self) -> &[i32] {
        &self.0
    }

    pub fn height(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn neg(&self) -> Root {
        Root(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Root) -> Root {
        Root(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub lie_type: LieType,
    /// `cartan[i][j] = <a_i, a_j^vee> = 2 (a_i, a_j) / (a_j, a_j)`.
    pub cartan: Vec<Vec<i32>>,
    /// Inner products of simple roots; long roots have squared length 2.
    pub gram: Vec<Vec<Q>>,
    /// Ordered by height, then lexicographically by coefficients.
    pub positive_roots: Vec<Root>,
    pub highest_root: Root,
    index: HashMap<Vec<i32>, usize>,
}

fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

/// Simple-root Gram matrix for each type.
fn simple_gram(t: LieType) -> Vec<Vec<Q>> {
    let n = t.rank;
    let mut g = vec![vec![Q::zero(); n]; n];
    let link = |g: &mut Vec<Vec<Q>>, i: usize, j: usize, v: Q| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match t.family {
        Family::A | Family::D | Family::E => {
            for i in 0..n {
                g[i][i] = q(2, 1);
            }
            match (t.family, n) {
                (Family::A, _) => {
                    for i in 0..n - 1 {
                        link(&mut g, i, i + 1, q(-1, 1));
                    }
                }
                (Family::D, _) => {
                    for i in 0..n - 2 {
                        link(&mut g, i, i + 1, q(-1, 1));
                    }
                    link(&mut g, n - 3, n - 1, q(-1, 1));
                }
                (Family::E, 8) => {
                    for i in 0..6 {
                        link(&mut g, i, i + 1, q(-1, 1));
                    }
                    link(&mut g, 4, 7, q(-1, 1));
                }
                (Family::E, _) => {
                    // Bourbaki: 1-3-4-5-..., 2-4
                    link(&mut g, 0, 2, q(-1, 1));
                    link(&mut g, 1, 3, q(-1, 1));
                    for i in 2..n - 1 {
                        link(&mut g, i, i + 1, q(-1, 1));
                    }
                }
                _ => unreachable!(),
            }
        }
        Family::B => {
            for i in 0..n - 1 {
                g[i][i] = q(2, 1);
                link(&mut g, i, i + 1, q(-1, 1));
            }
            g[n - 1][n - 1] = q(1, 1);
        }
        Family::C => {
            for i in 0..n - 1 {
                g[i][i] = q(1, 1);
            }
            for i in 0..n - 2 {
                link(&mut g, i, i + 1, q(-1, 2));
            }
            g[n - 1][n - 1] = q(2, 1);
            link(&mut g, n - 2, n - 1, q(-1, 1));
        }
        Family::F => {
            g[0][0] = q(2, 1);
            g[1][1] = q(2, 1);
            g[2][2] = q(1, 1);
            g[3][3] = q(1, 1);
            link(&mut g, 0, 1, q(-1, 1));
            link(&mut g, 1, 2, q(-1, 1));
            link(&mut g, 2, 3, q(-1, 2));
        }
        Family::G => {
            g[0][0] = q(2, 3);
            g[1][1] = q(2, 1);
            link(&mut g, 0, 1, q(-1, 1));
        }
    }
    g
}

pub fn build_root_system(lie_type: LieType) -> Result<RootSystem> {
    let t = LieType::new(lie_type.family, lie_type.rank)?;
    let n = t.rank;
    let gram = simple_gram(t);
    let cartan: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = q(2, 1) * gram[i][j] / gram[j][j];
                    debug_assert!(v.is_integer());
                    v.to_integer() as i32
                })
                .collect()
        })
        .collect();

    // Layered closure: a root b plus a simple root a_j is a root iff q > 0,
    // where the a_j-string through b runs from b - p a_j to b + q a_j and
    // p - q = <b, a_j^vee>.
    let mut layers: Vec<Vec<Root>> = vec![(0..n).map(|i| Root::simple(n, i)).collect()];
    let mut known: HashMap<Vec<i32>, ()> = layers[0].iter().map(|r| (r.0.clone(), ())).collect();
    loop {
        let mut next: Vec<Root> = Vec::new();
        for b in layers.last().unwrap() {
            for j in 0..n {
                let aj = Root::simple(n, j);
                let mut p = 0;
                let mut down = b.sub(&aj);
                while known.contains_key(&down.0) {
                    p += 1;
                    down = down.sub(&aj);
                }
                let pairing: i32 = (0..n).map(|i| b.0[i] * cartan[i][j]).sum();
                let qlen = p - pairing;
                if qlen > 0 {
                    let up = b.add(&aj);
                    if !known.contains_key(&up.0) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        next.sort();
        if known.len() + next.len() > t.positive_root_count() {
            return Err(Error::InvalidType(format!("{t}: root closure does not terminate")));
        }
        for r in &next {
            known.insert(r.0.clone(), ());
        }
        layers.push(next);
    }

    let mut positive_roots = Vec::new();
    for mut layer in layers {
        layer.sort();
        positive_roots.extend(layer);
    }
    let highest_root = positive_roots.last().cloned().expect("nonempty");
    let index = positive_roots
        .iter()
        .enumerate()
        .map(|(i, r)| (r.0.clone(), i))
        .collect();
    Ok(RootSystem {
        lie_type: t,
        cartan,
        gram,
        positive_roots,
        highest_root,
        index,
    })
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn dim(&self) -> usize {
        self.rank() + 2 * self.positive_roots.len()
    }

    /// Coefficient of `a_i` in the highest root; `i` is 1-based.
    pub fn height(&self, i: usize) -> Result<u32> {
        self.check_node(i)?;
        Ok(self.highest_root.0[i - 1] as u32)
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::NodeOutOfRange {
                index: i,
                rank: self.rank(),
            })
        } else {
            Ok(())
        }
    }

    pub fn inner(&self, a: &Root, b: &Root) -> Q {
        let n = self.rank();
        let mut acc = Q::zero();
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b.0[j] != 0 {
                    acc += self.gram[i][j] * Q::from_integer(a.0[i] as i128 * b.0[j] as i128);
                }
            }
        }
        acc
    }

    /// `<a, b^vee> = 2 (a, b) / (b, b)`.
    pub fn pairing(&self, a: &Root, b: &Root) -> i32 {
        let v = Q::from(2) * self.inner(a, b) / self.inner(b, b);
        v.to_integer() as i32
    }

    pub fn positive_index(&self, r: &Root) -> Option<usize> {
        self.index.get(&r.0).copied()
    }

    /// True when `r` is a root (positive or negative).
    pub fn is_root(&self, r: &Root) -> bool {
        if r.is_positive() {
            self.index.contains_key(&r.0)
        } else {
            self.index.contains_key(&r.neg().0)
        }
    }

    /// Largest `p` with `b - p a` a root.
    pub fn string_down(&self, a: &Root, b: &Root) -> i32 {
        let mut p = 0;
        let mut cur = b.sub(a);
        while !cur.is_zero() && self.is_root(&cur) {
            p += 1;
            cur = cur.sub(a);
        }
        p
    }

    /// Largest `q` with `b + q a` a root.
    pub fn string_up(&self, a: &Root, b: &Root) -> i32 {
        let mut q = 0;
        let mut cur = b.add(a);
        while !cur.is_zero() && self.is_root(&cur) {
            q += 1;
            cur = cur.add(a);
        }
        q
    }

    pub fn is_long(&self, r: &Root) -> bool {
        self.inner(r, r) == Q::from(2)
    }

    /// Plain-text listing of the positive roots.
    pub fn dump(&self) -> String {
        let mut s = format!(
            "{}: {} positive roots, highest root {}\n",
            self.lie_type,
            self.positive_roots.len(),
            self.highest_root
                .0
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(",")
        );
        for (i, r) in self.positive_roots.iter().enumerate() {
            s.push_str(&format!("{:4}  {}  height {}\n", i + 1, r, r.height()));
        }
        s
    }
}
