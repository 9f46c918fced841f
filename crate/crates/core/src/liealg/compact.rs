//! Compact real form `t ⊕ Σ (R A_a + R B_a)` with an exact bracket table on a
//! basis that is orthogonal for `B = -Killing`.
//!
//! Over the Chevalley basis the raw generators are `i h_j`,
//! `A_a = e_a - e_{-a}` and `B_a = i (e_a + e_{-a})`. The Cartan generators are
//! Gram–Schmidt orthogonalized over the rationals. Basis vectors are never
//! normalized explicitly: squared norms `n_x = B(x, x)` are carried alongside,
//! so the orthonormal structure constants enter only through the rational
//! squares `c^2 n_z / (n_x n_y)`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul};

use num::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::chevalley::ChevalleyData;
use crate::error::{Error, Result};
use crate::rootsys::RootSystem;
use crate::{q_to_f64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisLabel {
    /// Orthogonalized Cartan element, by construction order.
    Cartan(usize),
    /// `e_a - e_{-a}` for the positive root with this index.
    A(usize),
    /// `i (e_a + e_{-a})`.
    B(usize),
}

/// Sparse rational vector over the compact basis.
pub type QVec = Vec<(usize, Q)>;

#[derive(Debug, Clone, PartialEq)]
pub struct CompactLieAlgebra {
    pub dim: usize,
    pub rank: usize,
    pub labels: Vec<BasisLabel>,
    /// `B(x, x)` for each basis element.
    pub norms: Vec<Q>,
    /// `B(i h_a, i h_b) = killing_scale * (h_a, h_b)` where `( , )` is the
    /// long-roots-have-length-2 form transported to coroots.
    pub killing_scale: Q,
    table: Vec<QVec>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cx {
    re: Q,
    im: Q,
}

impl Cx {
    fn new(re: Q, im: Q) -> Self {
        Cx { re, im }
    }
    fn int(re: i64, im: i64) -> Self {
        Cx::new(Q::from(re as i128), Q::from(im as i128))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for Cx {
    type Output = Cx;
    fn add(self, o: Cx) -> Cx {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for Cx {
    type Output = Cx;
    fn mul(self, o: Cx) -> Cx {
        Cx::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

fn add_into(acc: &mut BTreeMap<usize, Q>, v: &[(usize, Q)], scale: Q) {
    for (i, c) in v {
        let e = acc.entry(*i).or_insert_with(Q::zero);
        *e += *c * scale;
    }
}

/// Raw compact generator `x` written over the Chevalley basis.
fn to_chevalley(cd: &ChevalleyData, x: usize) -> Vec<(usize, Cx)> {
    let l = cd.rank();
    if x < l {
        return vec![(x, Cx::int(0, 1))];
    }
    let p = (x - l) / 2;
    let (ep, em) = (cd.e(p), cd.e(cd.neg(p)));
    if (x - l).is_multiple_of(2) {
        vec![(ep, Cx::int(1, 0)), (em, Cx::int(-1, 0))]
    } else {
        vec![(ep, Cx::int(0, 1)), (em, Cx::int(0, 1))]
    }
}

fn from_chevalley(cd: &ChevalleyData, v: &BTreeMap<usize, Cx>) -> Result<QVec> {
    let l = cd.rank();
    let zero = Cx::int(0, 0);
    let get = |i: usize| v.get(&i).copied().unwrap_or(zero);
    let bad = |what: &str| Error::DegenerateKilling(format!("bracket leaves the compact form ({what})"));
    let mut out = QVec::new();
    for j in 0..l {
        let w = get(j);
        if !w.re.is_zero() {
            return Err(bad("Cartan part"));
        }
        if !w.im.is_zero() {
            out.push((j, w.im));
        }
    }
    let half = Q::new(1, 2);
    for p in 0..cd.n_pos() {
        let zp = get(cd.e(p));
        let zm = get(cd.e(cd.neg(p)));
        if zp.is_zero() && zm.is_zero() {
            continue;
        }
        let a = Cx::new(zp.re - zm.re, zp.im - zm.im);
        let s = zp + zm;
        if !a.im.is_zero() || !s.re.is_zero() {
            return Err(bad("root part"));
        }
        if !a.re.is_zero() {
            out.push((l + 2 * p, a.re * half));
        }
        if !s.im.is_zero() {
            out.push((l + 2 * p + 1, s.im * half));
        }
    }
    Ok(out)
}

fn raw_bracket(cd: &ChevalleyData, x: usize, y: usize) -> Result<QVec> {
    let mut acc: BTreeMap<usize, Cx> = BTreeMap::new();
    for (a, ca) in to_chevalley(cd, x) {
        for (b, cb) in to_chevalley(cd, y) {
            let coef = ca * cb;
            for (z, n) in cd.bracket(a, b) {
                let e = acc.entry(z).or_insert(Cx::int(0, 0));
                *e = *e + coef * Cx::int(n, 0);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    from_chevalley(cd, &acc)
}

fn lookup(v: &[(usize, Q)], i: usize) -> Q {
    v.iter().find(|(j, _)| *j == i).map(|(_, c)| *c).unwrap_or_else(Q::zero)
}

/// `B(x, y) = -tr(ad x ad y)` from a dense table of sparse rows.
fn trace_form(table: &[QVec], dim: usize, x: &[(usize, Q)], y: &[(usize, Q)]) -> Q {
    let mut tr = Q::zero();
    for w in 0..dim {
        // [y, w]
        let mut yw: BTreeMap<usize, Q> = BTreeMap::new();
        for (b, cb) in y {
            add_into(&mut yw, &table[b * dim + w], *cb);
        }
        // w-coefficient of [x, [y, w]]
        for (z, cz) in yw {
            if cz.is_zero() {
                continue;
            }
            for (a, ca) in x {
                tr += ca * cz * lookup(&table[a * dim + z], w);
            }
        }
    }
    -tr
}

impl CompactLieAlgebra {
    pub fn from_chevalley(cd: &ChevalleyData) -> Result<Self> {
        let l = cd.rank();
        let dim = cd.dim();

        let raw: Vec<QVec> = (0..dim * dim)
            .into_par_iter()
            .map(|k| raw_bracket(cd, k / dim, k % dim))
            .collect::<Result<_>>()?;

        // Cartan Gram matrix and rational Gram–Schmidt.
        let unit = |i: usize| vec![(i, Q::one())];
        let gram: Vec<Vec<Q>> = (0..l)
            .map(|a| (0..l).map(|b| trace_form(&raw, dim, &unit(a), &unit(b))).collect())
            .collect();
        let mut t = vec![vec![Q::zero(); l]; l];
        let mut cartan_norms = vec![Q::zero(); l];
        for k in 0..l {
            t[k][k] = Q::one();
            for m in 0..k {
                let ip: Q = (0..l).map(|j| t[m][j] * gram[k][j]).sum();
                let f = ip / cartan_norms[m];
                for j in 0..l {
                    let v = t[m][j];
                    t[k][j] -= f * v;
                }
            }
            cartan_norms[k] = (0..l)
                .flat_map(|i| (0..l).map(move |j| (i, j)))
                .map(|(i, j)| t[k][i] * t[k][j] * gram[i][j])
                .sum();
            if cartan_norms[k] <= Q::zero() {
                return Err(Error::DegenerateKilling(format!("Cartan element {k}")));
            }
        }

        let rs = &cd.rs;
        let scale = gram[0][0] * rs.gram[0][0] / Q::from(4);
        for a in 0..l {
            for b in 0..l {
                let coroot_ip = Q::from(4) * rs.gram[a][b] / (rs.gram[a][a] * rs.gram[b][b]);
                if gram[a][b] != scale * coroot_ip {
                    return Err(Error::DegenerateKilling(format!(
                        "Cartan trace form is not a multiple of the root form at ({a}, {b})"
                    )));
                }
            }
        }

        // Final basis over raw generators.
        let basis: Vec<QVec> = (0..dim)
            .map(|x| {
                if x < l {
                    (0..l).filter(|&j| !t[x][j].is_zero()).map(|j| (j, t[x][j])).collect()
                } else {
                    unit(x)
                }
            })
            .collect();
        let to_final = |v: BTreeMap<usize, Q>| -> QVec {
            let c: Vec<Q> = (0..l).map(|j| v.get(&j).copied().unwrap_or_else(Q::zero)).collect();
            let mut s = vec![Q::zero(); l];
            for j in (0..l).rev() {
                let mut acc = c[j];
                for k in j + 1..l {
                    acc -= s[k] * t[k][j];
                }
                s[j] = acc;
            }
            let mut out: QVec = s.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            out.extend(v.into_iter().filter(|(i, c)| *i >= l && !c.is_zero()));
            out
        };
        let table: Vec<QVec> = (0..dim * dim)
            .into_par_iter()
            .map(|k| {
                let (x, y) = (k / dim, k % dim);
                let mut acc = BTreeMap::new();
                for (a, ca) in &basis[x] {
                    for (b, cb) in &basis[y] {
                        add_into(&mut acc, &raw[a * dim + b], *ca * *cb);
                    }
                }
                to_final(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
            })
            .collect();

        let mut norms = cartan_norms;
        for x in l..dim {
            let n = trace_form(&table, dim, &unit(x), &unit(x));
            if n <= Q::zero() {
                return Err(Error::DegenerateKilling(format!("root element {x}")));
            }
            norms.push(n);
        }

        let mut labels: Vec<BasisLabel> = (0..l).map(BasisLabel::Cartan).collect();
        for p in 0..cd.n_pos() {
            labels.push(BasisLabel::A(p));
            labels.push(BasisLabel::B(p));
        }
        Ok(CompactLieAlgebra {
            dim,
            rank: l,
            labels,
            norms,
            killing_scale: scale,
            table,
        })
    }

    pub fn build(rs: &RootSystem) -> Result<Self> {
        let cd = super::chevalley::chevalley(rs)?;
        Self::from_chevalley(&cd)
    }

    /// `[x, y]` expanded over the (orthogonal, unnormalized) basis.
    pub fn bracket(&self, x: usize, y: usize) -> &[(usize, Q)] {
        &self.table[x * self.dim + y]
    }

    /// Positive roots carried by basis element `x`, if any.
    pub fn root_of(&self, x: usize) -> Option<usize> {
        match self.labels[x] {
            BasisLabel::A(p) | BasisLabel::B(p) => Some(p),
            BasisLabel::Cartan(_) => None,
        }
    }

    /// Basis indices of `A_p`, `B_p`.
    pub fn root_pair(&self, p: usize) -> [usize; 2] {
        [self.rank + 2 * p, self.rank + 2 * p + 1]
    }

    /// Square of the structure constant `A^z_{xy}` of the B-orthonormal basis.
    pub fn squared_constant(&self, x: usize, y: usize, z: usize) -> Q {
        let c = lookup(self.bracket(x, y), z);
        c * c * self.norms[z] / (self.norms[x] * self.norms[y])
    }

    pub(crate) fn raw_table(&self) -> &[QVec] {
        &self.table
    }

    pub(crate) fn from_parts(
        rank: usize,
        labels: Vec<BasisLabel>,
        norms: Vec<Q>,
        killing_scale: Q,
        table: Vec<QVec>,
    ) -> Self {
        CompactLieAlgebra {
            dim: labels.len(),
            rank,
            labels,
            norms,
            killing_scale,
            table,
        }
    }

    /// Exact check of `B([x,y],z) + B(y,[x,z]) = 0` and antisymmetry on every
    /// basis triple with a nonzero term.
    pub fn check_ad_invariance(&self) -> std::result::Result<(), String> {
        let dim = self.dim;
        (0..dim).into_par_iter().try_for_each(|x| {
            for y in 0..dim {
                let xy = self.bracket(x, y);
                let yx = self.bracket(y, x);
                if xy.len() != yx.len() || xy.iter().any(|(z, c)| lookup(yx, *z) != -*c) {
                    return Err(format!("antisymmetry fails at ({x}, {y})"));
                }
                for (z, c) in xy {
                    let other = lookup(self.bracket(x, *z), y);
                    if *c * self.norms[*z] + other * self.norms[y] != Q::zero() {
                        return Err(format!("ad-invariance fails at ({x}, {y}, {z})"));
                    }
                }
            }
            Ok(())
        })
    }

    /// Sparse adjoint matrix of the orthonormalized `x`, as (row, col, value).
    fn ad_orthonormal(&self, x: usize) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for y in 0..self.dim {
            for (z, c) in self.bracket(x, y) {
                let v = q_to_f64(c)
                    * (q_to_f64(&self.norms[*z]) / (q_to_f64(&self.norms[x]) * q_to_f64(&self.norms[y]))).sqrt();
                out.push((*z, y, v));
            }
        }
        out
    }

    /// Largest deviation of the orthonormalized Gram matrix `-tr(ad ad)` from
    /// the identity, evaluated in floating point over all basis pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let dim = self.dim;
        let ads: Vec<Vec<(usize, usize, f64)>> = (0..dim).into_par_iter().map(|x| self.ad_orthonormal(x)).collect();
        let a = |y: usize, z: usize, w: usize| -> f64 {
            let c = lookup(self.bracket(y, z), w);
            if c.is_zero() {
                return 0.0;
            }
            q_to_f64(&c) * (q_to_f64(&self.norms[w]) / (q_to_f64(&self.norms[y]) * q_to_f64(&self.norms[z]))).sqrt()
        };
        (0..dim)
            .into_par_iter()
            .map(|x| {
                let mut worst: f64 = 0.0;
                for y in x..dim {
                    // tr(ad x ad y) = sum over (z, w) of (ad x)[z][w] (ad y)[w][z]
                    let tr: f64 = ads[x].iter().map(|&(z, w, v)| v * a(y, z, w)).sum();
                    let target = if x == y { 1.0 } else { 0.0 };
                    worst = worst.max((-tr - target).abs());
                }
                worst
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Trace-form squared norm of an arbitrary vector, computed from the table.
    pub fn trace_norm(&self, v: &[(usize, Q)]) -> Q {
        trace_form(&self.table, self.dim, v, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn alg(s: &str) -> CompactLieAlgebra {
        CompactLieAlgebra::build(&build_root_system(s.parse().unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn su2_is_three_dimensional_with_equal_constants() {
        let a = alg("A1");
        assert_eq!(a.dim, 3);
        let mut vals = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                for z in 0..3 {
                    let v = a.squared_constant(x, y, z);
                    if !v.is_zero() {
                        vals.push(v);
                    }
                }
            }
        }
        assert_eq!(vals.len(), 6);
        assert!(vals.iter().all(|v| *v == vals[0]));
    }

    #[test]
    fn bracket_is_antisymmetric_and_self_bracket_vanishes() {
        let a = alg("B2");
        for x in 0..a.dim {
            assert!(a.bracket(x, x).is_empty());
        }
        a.check_ad_invariance().unwrap();
    }

    #[test]
    fn a2_root_pair_brackets_into_cartan() {
        let a = alg("A2");
        let [ua, va] = a.root_pair(0);
        let br = a.bracket(ua, va);
        assert!(br.iter().any(|(z, c)| *z < a.rank && !c.is_zero()));
    }

    #[test]
    fn dimensions_all_types() {
        for (t, d) in [
            ("A1", 3),
            ("A3", 15),
            ("B3", 21),
            ("C3", 21),
            ("D4", 28),
            ("G2", 14),
            ("F4", 52),
        ] {
            let a = alg(t);
            assert_eq!(a.dim, d, "{t}");
            assert!(a.orthonormality_defect() < 1e-10, "{t}");
        }
    }

    #[test]
    fn killing_scale_is_twice_dual_coxeter() {
        for (t, s) in [("A1", 4), ("A3", 8), ("B3", 10), ("C3", 8), ("G2", 8), ("F4", 18)] {
            assert_eq!(alg(t).killing_scale, Q::from(s), "{t}");
        }
    }

    #[test]
    fn bracket_norms_agree_with_trace_form() {
        let a = alg("A2");
        for x in 0..a.dim {
            for y in 0..a.dim {
                let br = a.bracket(x, y).to_vec();
                let expansion: Q = br.iter().map(|(z, c)| c * c * a.norms[*z]).sum();
                assert!(expansion >= Q::zero());
                assert_eq!(a.trace_norm(&br), expansion, "({x}, {y})");
            }
        }
    }
}
