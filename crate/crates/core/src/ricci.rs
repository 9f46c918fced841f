//! Ricci components of a diagonal invariant metric `x_1 B|m_1 + ... + x_N B|m_N`:
//!
//! ```text
//! r_k = 1/(2 x_k) + 1/(4 d_k) Σ_{i,j} x_k/(x_i x_j) [k;ij]
//!                 - 1/(2 d_k) Σ_{i,j} x_j/(x_k x_i) [j;ki]
//! ```

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{LinForm, SymPoly};
use crate::triples::TripleTable;
use crate::Q;

fn check_inputs(t: &TripleTable, dims: &[usize], x_len: usize) -> Result<()> {
    if dims.len() != t.n || x_len != t.n {
        return Err(Error::Dimension(format!(
            "{} modules in the table, {} dimensions, {} metric entries",
            t.n,
            dims.len(),
            x_len
        )));
    }
    Ok(())
}

/// Neumaier-compensated sum.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, v: f64) {
        let t = self.s + v;
        if self.s.abs() >= v.abs() {
            self.c += (self.s - t) + v;
        } else {
            self.c += (v - t) + self.s;
        }
        self.s = t;
    }
    fn value(&self) -> f64 {
        self.s + self.c
    }
}

pub fn ricci_components(t: &TripleTable, dims: &[usize], x: &[f64]) -> Result<Vec<f64>> {
    check_inputs(t, dims, x.len())?;
    for (i, &v) in x.iter().enumerate() {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::NonPositiveMetric { index: i + 1, value: v });
        }
    }
    let n = t.n;
    let tv: Vec<f64> = (0..n * n * n)
        .map(|p| crate::q_to_f64(&t.get(p / (n * n) + 1, (p / n) % n + 1, p % n + 1)))
        .collect();
    let tri = |a: usize, b: usize, c: usize| tv[(a * n + b) * n + c];
    Ok((0..n)
        .map(|k| {
            let dk = dims[k] as f64;
            let mut plus = Sum::default();
            let mut minus = Sum::default();
            for i in 0..n {
                for j in 0..n {
                    let a = tri(k, i, j);
                    if a != 0.0 {
                        plus.add(x[k] / (x[i] * x[j]) * a);
                    }
                    let b = tri(j, k, i);
                    if b != 0.0 {
                        minus.add(x[j] / (x[k] * x[i]) * b);
                    }
                }
            }
            1.0 / (2.0 * x[k]) + plus.value() / (4.0 * dk) - minus.value() / (2.0 * dk)
        })
        .collect())
}

pub fn ricci_exact(t: &TripleTable, dims: &[usize], x: &[Q]) -> Result<Vec<Q>> {
    check_inputs(t, dims, x.len())?;
    for (i, v) in x.iter().enumerate() {
        if *v <= Q::zero() {
            return Err(Error::NonPositiveMetric {
                index: i + 1,
                value: crate::q_to_f64(v),
            });
        }
    }
    let n = t.n;
    Ok((0..n)
        .map(|k| {
            let dk = Q::from(dims[k] as i128);
            let mut plus = Q::zero();
            let mut minus = Q::zero();
            for i in 0..n {
                for j in 0..n {
                    plus += x[k] / (x[i] * x[j]) * t.get(k + 1, i + 1, j + 1);
                    minus += x[j] / (x[k] * x[i]) * t.get(j + 1, k + 1, i + 1);
                }
            }
            Q::one() / (Q::from(2) * x[k]) + plus / (Q::from(4) * dk) - minus / (Q::from(2) * dk)
        })
        .collect())
}

/// Ricci components as Laurent polynomials.
///
/// Module `k` (0-based) carries the variable `var_of[k]` out of `nvars`, so
/// submersion-shaped metrics (several modules sharing one variable) are
/// expressed directly. `triple(i, j, k)` (1-based) supplies the coefficient,
/// typically an unknown of a linear system or a constant.
pub fn ricci_symbolic(
    dims: &[usize],
    var_of: &[usize],
    nvars: usize,
    unknowns: usize,
    triple: &dyn Fn(usize, usize, usize) -> LinForm,
) -> Vec<SymPoly> {
    let n = dims.len();
    let one = LinForm::constant(unknowns, Q::one());
    let mono = |ups: &[usize], downs: &[usize]| {
        let mut e = vec![0i32; nvars];
        for &u in ups {
            e[var_of[u]] += 1;
        }
        for &d in downs {
            e[var_of[d]] -= 1;
        }
        e
    };
    (0..n)
        .map(|k| {
            let dk = Q::from(dims[k] as i128);
            let mut p = SymPoly::zero(nvars, unknowns);
            p.add_term(mono(&[], &[k]), &one, Q::new(1, 2));
            for i in 0..n {
                for j in 0..n {
                    let a = triple(k + 1, i + 1, j + 1);
                    if !a.is_zero() {
                        p.add_term(mono(&[k], &[i, j]), &a, Q::one() / (Q::from(4) * dk));
                    }
                    let b = triple(j + 1, k + 1, i + 1);
                    if !b.is_zero() {
                        p.add_term(mono(&[j], &[k, i]), &b, -Q::one() / (Q::from(2) * dk));
                    }
                }
            }
            p.prune();
            p
        })
        .collect()
}

/// Symbolic components with the table's constant entries.
pub fn ricci_symbolic_table(t: &TripleTable, dims: &[usize], var_of: &[usize], nvars: usize) -> Vec<SymPoly> {
    ricci_symbolic(dims, var_of, nvars, 0, &|i, j, k| LinForm::constant(0, t.get(i, j, k)))
}

pub fn scalar_curvature(dims: &[usize], r: &[f64]) -> f64 {
    dims.iter().zip(r).map(|(&d, &v)| d as f64 * v).sum()
}

/// Which submersion is being checked; see [`verify_submersion_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubmersionCase {
    /// `E8` painted at node 4 over `E8/SU(5)×SU(5)`: `x = (y1, y2, y2, y1, z1)`.
    E,
    /// `E8` painted at node 5 over `E8/SU(6)×SU(2)×SU(3)`: `x = (y1, y2, y3, y2, y1, z1)`.
    F,
}

impl SubmersionCase {
    /// Horizontal blocks (1-based modules) and the vertical module.
    pub fn blocks(self) -> (Vec<Vec<usize>>, usize) {
        match self {
            SubmersionCase::E => (vec![vec![1, 4], vec![2, 3]], 5),
            SubmersionCase::F => (vec![vec![1, 5], vec![2, 4], vec![3]], 6),
        }
    }

    /// Variable index of each module: blocks first, the fiber variable last.
    pub fn var_of(self) -> (Vec<usize>, usize) {
        let (blocks, v) = self.blocks();
        let n = v;
        let mut var = vec![0; n];
        for (b, mods) in blocks.iter().enumerate() {
            for &m in mods {
                var[m - 1] = b;
            }
        }
        var[v - 1] = blocks.len();
        (var, blocks.len() + 1)
    }

    pub fn metric(self, y: &[f64], z: f64) -> Vec<f64> {
        let (var, _) = self.var_of();
        var.iter().map(|&v| if v < y.len() { y[v] } else { z }).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SubmersionReport {
    /// Largest gap between horizontal parts of modules in the same block.
    pub max_defect: f64,
    /// Largest gap between the assembled `r_k` and direct evaluation.
    pub reconstruction_defect: f64,
}

impl SubmersionReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_defect <= tol && self.reconstruction_defect <= tol
    }
}

/// Evaluates the full Ricci components at the submersion-shaped metric and
/// checks that modules in one horizontal block have equal fiber-independent
/// parts, i.e. that `r_a - r_b` consists only of terms carrying the fiber
/// variable.
pub fn verify_submersion_identities(
    case: SubmersionCase,
    t: &TripleTable,
    dims: &[usize],
    y: &[f64],
    z: f64,
) -> Result<SubmersionReport> {
    let (blocks, vmod) = case.blocks();
    if t.n != vmod || y.len() != blocks.len() {
        return Err(Error::Dimension(format!(
            "{case:?} needs {} modules and {} base parameters",
            vmod,
            blocks.len()
        )));
    }
    let (var, nvars) = case.var_of();
    let x = case.metric(y, z);
    let direct = ricci_components(t, dims, &x)?;
    let sym = ricci_symbolic_table(t, dims, &var, nvars);
    let zi = nvars - 1;
    let eval_split = |p: &SymPoly| {
        let (mut horiz, mut rest) = (0.0, 0.0);
        for (e, c) in &p.terms {
            let mut m = crate::q_to_f64(&c.constant_part());
            for (v, &k) in e.iter().enumerate() {
                m *= if v == zi { z.powi(k) } else { y[v].powi(k) };
            }
            if e[zi] == 0 {
                horiz += m;
            } else {
                rest += m;
            }
        }
        (horiz, rest)
    };
    let split: Vec<(f64, f64)> = sym.iter().map(eval_split).collect();
    let mut reconstruction_defect: f64 = 0.0;
    for (k, (h, v)) in split.iter().enumerate() {
        reconstruction_defect = reconstruction_defect.max((h + v - direct[k]).abs());
    }
    let mut max_defect: f64 = 0.0;
    for mods in &blocks {
        for w in mods.windows(2) {
            let (a, b) = (w[0] - 1, w[1] - 1);
            max_defect = max_defect.max((split[a].0 - split[b].0).abs());
            // r_a - r_b equals the difference of the fiber-dependent parts
            let full = direct[a] - direct[b];
            max_defect = max_defect.max((full - (split[a].1 - split[b].1)).abs());
        }
    }
    Ok(SubmersionReport {
        max_defect,
        reconstruction_defect,
    })
}
