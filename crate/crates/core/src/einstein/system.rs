//! Polynomial Einstein system: cleared-denominator `r_i - r_{i+1}` with
//! `x_1 = 1`.

use std::collections::BTreeMap;

use num::integer::Integer;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ricci::{ricci_exact, ricci_symbolic_table};
use crate::triples::TripleTable;
use crate::Q;

/// `poly = scale * x^shift * (r_i - r_{i+1})` on `x_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Multiplier {
    pub scale: Q,
    pub shift: Vec<i32>,
}

#[derive(Debug, Clone)]
pub struct PolySystem {
    /// Variables `x_2 .. x_N`.
    pub n_vars: usize,
    pub equations: Vec<Poly>,
    pub multipliers: Vec<Multiplier>,
    pub table: TripleTable,
    pub dims: Vec<usize>,
}

fn gcd_lcm(coefs: impl Iterator<Item = Q>) -> (i128, i128) {
    coefs.fold((0, 1), |(g, l), c| (g.gcd(c.numer()), l.lcm(c.denom())))
}

pub fn build_system(t: &TripleTable, dims: &[usize]) -> Result<PolySystem> {
    let n = t.n;
    if dims.len() != n {
        return Err(Error::Dimension(format!("{} dims for {n} modules", dims.len())));
    }
    let var: Vec<usize> = (0..n).collect();
    let r = ricci_symbolic_table(t, dims, &var, n);
    let mut equations = Vec::new();
    let mut multipliers = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let diff = r[k].sub(&r[k + 1]);
        // x_1 = 1: drop its exponent and merge
        let mut merged: BTreeMap<Vec<i32>, Q> = BTreeMap::new();
        for (e, c) in diff.to_laurent() {
            *merged.entry(e[1..].to_vec()).or_insert_with(Q::zero) += c;
        }
        merged.retain(|_, c| !c.is_zero());
        if merged.is_empty() {
            return Err(Error::Dimension(format!(
                "r_{} - r_{} vanishes identically",
                k + 1,
                k + 2
            )));
        }
        let mut shift = vec![0i32; n - 1];
        for (v, s) in shift.iter_mut().enumerate() {
            *s = -merged.keys().map(|e| e[v]).min().unwrap();
        }
        let (g, l) = gcd_lcm(merged.values().copied());
        let scale = Q::new(l, g);
        let terms = merged
            .iter()
            .map(|(e, c)| {
                let ex: Vec<u32> = e.iter().zip(&shift).map(|(a, b)| (a + b) as u32).collect();
                (ex, *c * scale)
            })
            .collect();
        equations.push(Poly::new(n - 1, terms));
        multipliers.push(Multiplier { scale, shift });
    }
    Ok(PolySystem {
        n_vars: n - 1,
        equations,
        multipliers,
        table: t.clone(),
        dims: dims.to_vec(),
    })
}

impl PolySystem {
    /// `scale * x^shift * (r_i - r_{i+1})` evaluated in floating point from
    /// the Ricci formula, at `x = (1, y)`.
    pub fn rational_side(&self, y: &[f64]) -> Result<Vec<f64>> {
        let mut x = vec![1.0];
        x.extend_from_slice(y);
        let r = crate::ricci::ricci_components(&self.table, &self.dims, &x)?;
        Ok(self
            .multipliers
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mono: f64 = m.shift.iter().zip(y).map(|(&s, &v)| v.powi(s)).product();
                crate::q_to_f64(&m.scale) * mono * (r[k] - r[k + 1])
            })
            .collect())
    }

    /// Exact identity check of polynomial against the Ricci formula at a
    /// rational point `(1, y)`.
    pub fn agrees_exactly(&self, y: &[Q]) -> Result<bool> {
        let mut x = vec![Q::one()];
        x.extend_from_slice(y);
        let r = ricci_exact(&self.table, &self.dims, &x)?;
        Ok(self
            .equations
            .iter()
            .zip(&self.multipliers)
            .enumerate()
            .all(|(k, (p, m))| {
                let mono: Q = m
                    .shift
                    .iter()
                    .zip(y)
                    .map(|(&s, v)| if s >= 0 { v.pow(s) } else { v.recip().pow(-s) })
                    .product();
                p.eval_q(y) == m.scale * mono * (r[k] - r[k + 1])
            }))
    }

    /// Largest `|f_i(y)| / max|coef(f_i)|`.
    pub fn normalized_residual(&self, y: &[f64]) -> f64 {
        self.equations
            .iter()
            .map(|p| (p.eval(y) / p.max_abs_coef()).abs())
            .fold(0.0, f64::max)
    }

    pub fn describe(&self) -> String {
        self.equations
            .iter()
            .enumerate()
            .map(|(k, p)| format!("f{} = {}\n", k + 1, p))
            .collect()
    }

    /// Sign convention check: the multiplier is positive on the open orthant.
    pub fn multipliers_positive(&self) -> bool {
        self.multipliers.iter().all(|m| m.scale.is_positive())
    }
}
