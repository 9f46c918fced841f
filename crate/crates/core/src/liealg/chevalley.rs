//! Chevalley basis `{h_i, e_r}` of the complex simple Lie algebra with integer
//! structure constants, signs fixed by the extraspecial-pair algorithm.
//!
//! Conventions: `[e_r, e_s] = N_{r,s} e_{r+s}`, `[e_r, e_{-r}] = h_r` (the
//! coroot), `[h_i, e_r] = <r, a_i^vee> e_r`, `N_{-r,-s} = -N_{r,s}` and
//! `|N_{r,s}| = p + 1` with `p` the largest integer such that `s - p r` is a root.

use std::collections::HashMap;

use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};
use crate::Q;

const NONE: u32 = u32::MAX;

/// Sparse integer vector over the Chevalley basis.
pub type IntVec = Vec<(usize, i64)>;

#[derive(Debug, Clone)]
pub struct ChevalleyData {
    pub rs: RootSystem,
    /// Positive roots first (as in `rs`), then their negatives in the same order.
    pub roots: Vec<Root>,
    /// `(r, r)` for every root index.
    pub norms: Vec<Q>,
    /// `n[r * 2P + s] = N_{r,s}`, zero when `r + s` is not a root.
    n: Vec<i64>,
    sum: Vec<u32>,
    /// Coefficients of `h_r` over the simple coroots `h_1..h_l`, for positive `r`.
    pub coroots: Vec<Vec<i64>>,
    /// `cartan_action[r][i] = <r, a_i^vee>`.
    pub cartan_action: Vec<Vec<i64>>,
}

impl ChevalleyData {
    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn n_pos(&self) -> usize {
        self.rs.positive_roots.len()
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.rank() + self.n_roots()
    }

    pub fn neg(&self, r: usize) -> usize {
        let p = self.n_pos();
        if r < p {
            r + p
        } else {
            r - p
        }
    }

    pub fn is_positive(&self, r: usize) -> bool {
        r < self.n_pos()
    }

    /// Index of `r + s` when it is a root.
    pub fn sum(&self, r: usize, s: usize) -> Option<usize> {
        let v = self.sum[r * self.n_roots() + s];
        (v != NONE).then_some(v as usize)
    }

    /// `N_{r,s}`; zero when `r + s` is not a root.
    pub fn n(&self, r: usize, s: usize) -> i64 {
        self.n[r * self.n_roots() + s]
    }

    /// Chevalley basis index of `e_r`.
    pub fn e(&self, r: usize) -> usize {
        self.rank() + r
    }

    /// `[x, y]` for Chevalley basis indices (`0..l` Cartan, then `e_r`).
    pub fn bracket(&self, x: usize, y: usize) -> IntVec {
        let l = self.rank();
        match (x < l, y < l) {
            (true, true) => Vec::new(),
            (true, false) => {
                let r = y - l;
                vec![(y, self.cartan_action[r][x])]
                    .into_iter()
                    .filter(|&(_, c)| c != 0)
                    .collect()
            }
            (false, true) => self.bracket(y, x).into_iter().map(|(i, c)| (i, -c)).collect(),
            (false, false) => {
                let (r, s) = (x - l, y - l);
                if s == self.neg(r) {
                    let (base, sign) = if self.is_positive(r) { (r, 1) } else { (s, -1) };
                    self.coroots[base]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (i, sign * c))
                        .collect()
                } else if let Some(t) = self.sum(r, s) {
                    vec![(self.e(t), self.n(r, s))]
                } else {
                    Vec::new()
                }
            }
        }
    }

    fn bracket_vec(&self, x: usize, v: &IntVec) -> IntVec {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(y, c) in v {
            for (z, d) in self.bracket(x, y) {
                *acc.entry(z).or_insert(0) += c * d;
            }
        }
        acc.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Exhaustive Jacobi check over all basis triples. Returns the first
    /// violating triple, if any.
    pub fn find_jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        (0..dim).into_par_iter().find_map_first(|a| {
            for b in a + 1..dim {
                let ab = self.bracket(a, b);
                for c in b + 1..dim {
                    let bc = self.bracket(b, c);
                    let ca = self.bracket(c, a);
                    let mut acc: HashMap<usize, i64> = HashMap::new();
                    for (z, v) in self
                        .bracket_vec(a, &bc)
                        .into_iter()
                        .chain(self.bracket_vec(b, &ca))
                        .chain(self.bracket_vec(c, &ab))
                    {
                        *acc.entry(z).or_insert(0) += v;
                    }
                    if acc.values().any(|&v| v != 0) {
                        return Some((a, b, c));
                    }
                }
            }
            None
        })
    }
}

struct Builder<'a> {
    rs: &'a RootSystem,
    roots: Vec<Root>,
    norms: Vec<Q>,
    sum: Vec<u32>,
    npos: HashMap<(usize, usize), i64>,
}

impl Builder<'_> {
    fn np(&self) -> usize {
        self.rs.positive_roots.len()
    }

    fn neg(&self, r: usize) -> usize {
        let p = self.np();
        if r < p {
            r + p
        } else {
            r - p
        }
    }

    fn sum(&self, r: usize, s: usize) -> Option<usize> {
        let v = self.sum[r * self.roots.len() + s];
        (v != NONE).then_some(v as usize)
    }

    fn err(&self, r: usize, s: usize, detail: impl Into<String>) -> Error {
        Error::ChevalleyInconsistent {
            alpha: self.roots[r].to_string(),
            beta: self.roots[s].to_string(),
            detail: detail.into(),
        }
    }

    fn to_int(&self, v: Q, r: usize, s: usize) -> Result<i64> {
        if v.is_integer() {
            Ok(*v.numer() as i64)
        } else {
            Err(self.err(r, s, format!("non-integral value {v}")))
        }
    }

    /// `N_{r,s}` for arbitrary roots with `r + s` a root, reduced to positive
    /// pairs of smaller height through the `r + s + t = 0` relations.
    fn n(&self, r: usize, s: usize) -> Result<i64> {
        let p = self.np();
        let t = self.sum(r, s).ok_or_else(|| self.err(r, s, "sum is not a root"))?;
        match (r < p, s < p) {
            (true, true) => self
                .npos
                .get(&(r, s))
                .copied()
                .ok_or_else(|| self.err(r, s, "positive pair not yet assigned")),
            (true, false) => {
                if t < p {
                    let v = -self.norms[t] / self.norms[r] * Q::from(self.n(self.neg(s), t)? as i128);
                    self.to_int(v, r, s)
                } else {
                    let v = self.norms[t] / self.norms[s] * Q::from(self.n(self.neg(t), r)? as i128);
                    self.to_int(v, r, s)
                }
            }
            (false, true) => Ok(-self.n(s, r)?),
            (false, false) => Ok(-self.n(self.neg(r), self.neg(s))?),
        }
    }

    fn n_or_zero(&self, r: usize, s: usize) -> Result<i64> {
        if self.sum(r, s).is_some() {
            self.n(r, s)
        } else {
            Ok(0)
        }
    }

    fn string_down(&self, r: usize, s: usize) -> i64 {
        self.rs.string_down(&self.roots[r], &self.roots[s]) as i64
    }
}

pub fn chevalley(rs: &RootSystem) -> Result<ChevalleyData> {
    let l = rs.rank();
    let p = rs.positive_roots.len();
    let mut roots: Vec<Root> = rs.positive_roots.clone();
    roots.extend(rs.positive_roots.iter().map(|r| r.neg()));
    let m = roots.len();
    let index: HashMap<&[i32], usize> = roots.iter().enumerate().map(|(i, r)| (r.coeffs(), i)).collect();
    let mut sum = vec![NONE; m * m];
    for r in 0..m {
        for s in 0..m {
            let t = roots[r].add(&roots[s]);
            if let Some(&k) = index.get(t.coeffs()) {
                sum[r * m + s] = k as u32;
            }
        }
    }
    let norms: Vec<Q> = roots.iter().map(|r| rs.inner(r, r)).collect();

    let mut b = Builder {
        rs,
        roots,
        norms,
        sum,
        npos: HashMap::new(),
    };

    // Positive roots are already sorted by height then lexicographically, so
    // index order is the total order used to pick extraspecial pairs.
    for xi in 0..p {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for g in 0..p {
            for d in g + 1..p {
                if b.sum(g, d) == Some(xi) {
                    pairs.push((g, d));
                }
            }
        }
        if pairs.is_empty() {
            continue;
        }
        let (alpha, beta) = pairs[0];
        let nab = b.string_down(alpha, beta) + 1;
        b.npos.insert((alpha, beta), nab);
        b.npos.insert((beta, alpha), -nab);
        let xi2 = b.norms[xi];
        for &(g, d) in &pairs[1..] {
            let ma = b.neg(alpha);
            let mb = b.neg(beta);
            let mut bracket = Q::zero();
            if let Some(da) = b.sum(d, ma) {
                let term = Q::from((b.n(d, ma)? * b.n_or_zero(g, mb)?) as i128) / b.norms[da];
                bracket += term;
            }
            if let Some(ga) = b.sum(g, ma) {
                let term = Q::from((b.n(ma, g)? * b.n_or_zero(d, mb)?) as i128) / b.norms[ga];
                bracket += term;
            }
            let v = xi2 / Q::from(nab as i128) * bracket;
            let ngd = b.to_int(v, g, d)?;
            let expect = b.string_down(g, d) + 1;
            if ngd.abs() != expect {
                return Err(b.err(g, d, format!("|N| = {} but string gives {}", ngd.abs(), expect)));
            }
            b.npos.insert((g, d), ngd);
            b.npos.insert((d, g), -ngd);
        }
    }

    let mut n = vec![0i64; m * m];
    for r in 0..m {
        for s in 0..m {
            if b.sum(r, s).is_some() {
                n[r * m + s] = b.n(r, s)?;
            }
        }
    }
    for r in 0..m {
        for s in 0..m {
            if b.sum(r, s).is_none() {
                continue;
            }
            let v = n[r * m + s];
            if v != -n[s * m + r] {
                return Err(b.err(r, s, "antisymmetry fails"));
            }
            if v.abs() != b.string_down(r, s) + 1 {
                return Err(b.err(
                    r,
                    s,
                    format!("|N| = {} vs p + 1 = {}", v.abs(), b.string_down(r, s) + 1),
                ));
            }
        }
    }

    // h_r = sum_i m_i (a_i, a_i) / (r, r) h_i
    let mut coroots = Vec::with_capacity(p);
    for (r, root) in rs.positive_roots.iter().enumerate() {
        let mut c = Vec::with_capacity(l);
        for i in 0..l {
            let v = Q::from(root.coeffs()[i] as i128) * rs.gram[i][i] / b.norms[r];
            c.push(b.to_int(v, r, r)?);
        }
        coroots.push(c);
    }
    let cartan_action: Vec<Vec<i64>> = b
        .roots
        .iter()
        .map(|r| {
            (0..l)
                .map(|i| (0..l).map(|j| r.coeffs()[j] as i64 * rs.cartan[j][i] as i64).sum())
                .collect()
        })
        .collect();

    Ok(ChevalleyData {
        rs: rs.clone(),
        roots: b.roots,
        norms: b.norms,
        n,
        sum: b.sum,
        coroots,
        cartan_action,
    })
}
