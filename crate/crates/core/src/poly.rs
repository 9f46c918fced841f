//! Laurent polynomials with exact coefficients.
//!
//! [`SymPoly`] carries coefficients that are affine forms in a set of unknown
//! triples, so the same Ricci code produces numeric polynomials (no unknowns)
//! and the linear systems behind the submersion method (unknown triples).

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::{fmt_q, q_to_f64, Q};

/// `c_0 + c_1 u_1 + ... + c_m u_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinForm(pub Vec<Q>);

impl LinForm {
    pub fn zero(unknowns: usize) -> Self {
        LinForm(vec![Q::zero(); unknowns + 1])
    }

    pub fn constant(unknowns: usize, c: Q) -> Self {
        let mut v = Self::zero(unknowns);
        v.0[0] = c;
        v
    }

    /// The unknown `u_i` (0-based).
    pub fn unknown(unknowns: usize, i: usize) -> Self {
        let mut v = Self::zero(unknowns);
        v.0[i + 1] = Q::one();
        v
    }

    pub fn unknowns(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add_scaled(&mut self, other: &LinForm, s: Q) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += *b * s;
        }
    }

    pub fn scaled(&self, s: Q) -> LinForm {
        LinForm(self.0.iter().map(|c| *c * s).collect())
    }

    /// Row `[c_1 .. c_m | -c_0]` of the equation `self = 0`.
    pub fn as_equation(&self) -> Vec<Q> {
        let mut row: Vec<Q> = self.0[1..].to_vec();
        row.push(-self.0[0]);
        row
    }

    pub fn constant_part(&self) -> Q {
        self.0[0]
    }
}

/// Laurent polynomial in `nvars` variables with [`LinForm`] coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoly {
    pub nvars: usize,
    pub unknowns: usize,
    pub terms: BTreeMap<Vec<i32>, LinForm>,
}

impl SymPoly {
    pub fn zero(nvars: usize, unknowns: usize) -> Self {
        SymPoly {
            nvars,
            unknowns,
            terms: BTreeMap::new(),
        }
    }

    pub fn add_term(&mut self, exps: Vec<i32>, coef: &LinForm, s: Q) {
        debug_assert_eq!(exps.len(), self.nvars);
        let e = self.terms.entry(exps).or_insert_with(|| LinForm::zero(self.unknowns));
        e.add_scaled(coef, s);
    }

    pub fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c, -Q::one());
        }
        out.prune();
        out
    }

    pub fn coefficient(&self, exps: &[i32]) -> LinForm {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| LinForm::zero(self.unknowns))
    }

    /// Substitutes exact values for all variables.
    pub fn eval(&self, x: &[Q]) -> LinForm {
        let mut acc = LinForm::zero(self.unknowns);
        for (e, c) in &self.terms {
            let mut m = Q::one();
            for (v, &k) in x.iter().zip(e) {
                m *= if k >= 0 { v.pow(k) } else { v.recip().pow(-k) };
            }
            acc.add_scaled(c, m);
        }
        acc
    }

    /// Coefficients of the plain-rational polynomial (no unknowns).
    pub fn to_laurent(&self) -> BTreeMap<Vec<i32>, Q> {
        assert_eq!(self.unknowns, 0, "polynomial still has unknown coefficients");
        self.terms
            .iter()
            .filter(|(_, c)| !c.0[0].is_zero())
            .map(|(e, c)| (e.clone(), c.0[0]))
            .collect()
    }
}

/// Polynomial with nonnegative exponents and rational coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, Q)>,
    coef_f64: Vec<f64>,
}

impl Poly {
    pub fn new(nvars: usize, mut terms: Vec<(Vec<u32>, Q)>) -> Self {
        terms.retain(|(_, c)| !c.is_zero());
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let coef_f64 = terms.iter().map(|(_, c)| q_to_f64(c)).collect();
        Poly { nvars, terms, coef_f64 }
    }

    pub fn max_abs_coef(&self) -> f64 {
        self.coef_f64.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(e, _)| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn eval_q(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |m, (&k, v)| m * v.pow(k as i32)))
            .sum()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .zip(&self.coef_f64)
            .map(|((e, _), c)| e.iter().zip(x).fold(*c, |m, (&k, v)| m * v.powi(k as i32)))
            .sum()
    }

    /// Value and `x_k dp/dx_k` for each variable (the log-coordinate gradient).
    /// `Σ |c_e x^e|`, the natural scale of rounding error in [`Poly::eval`].
    pub fn eval_abs(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .zip(&self.coef_f64)
            .map(|((e, _), c)| e.iter().zip(x).fold(c.abs(), |m, (&k, v)| m * v.powi(k as i32)))
            .sum()
    }

    pub fn eval_log_grad(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut val = 0.0;
        for ((e, _), c) in self.terms.iter().zip(&self.coef_f64) {
            let m = e.iter().zip(x).fold(*c, |m, (&k, v)| m * v.powi(k as i32));
            val += m;
            for (g, &k) in grad.iter_mut().zip(e) {
                if k != 0 {
                    *g += k as f64 * m;
                }
            }
        }
        val
    }
}

impl fmt::Display for Poly {
    /// Variables print as `x2, x3, ...` since `x1` is normalized away.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        format!("x{}", i + 2)
                    } else {
                        format!("x{}^{}", i + 2, k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_q(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}
