//! Multistart damped Newton in log coordinates `u = log x`, which keeps every
//! iterate in the open positive orthant.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::system::PolySystem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub seed: u64,
    pub starts: usize,
    /// Target for the coefficient-normalized residual `max |f_i| / max|coef f_i|`.
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Relative coordinate distance under which two solutions are merged.
    pub dedup_radius: f64,
    /// Starts are drawn from `u ∈ [-box, box]^(N-1)`.
    pub start_box: f64,
    /// Largest accepted `max_k |r_k - λ|` on re-evaluation.
    pub spread_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            seed: 0,
            starts: 20_000,
            newton_tol: 1e-11,
            max_iter: 80,
            dedup_radius: 1e-6,
            start_box: 3.0,
            spread_tol: 1e-8,
        }
    }
}

const PRIMES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as f64;
    let mut inv = 1.0 / b;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base as u64) as f64 * inv;
        i /= base as u64;
        inv /= b;
    }
    out
}

/// Halton points with a seeded Cranley–Patterson rotation, mapped to the box.
pub fn start_points(cfg: &SolverConfig, dim: usize) -> Vec<Vec<f64>> {
    assert!(dim <= PRIMES.len(), "too many variables for the start sequence");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let shift: Vec<f64> = (0..dim).map(|_| rng.random::<f64>()).collect();
    (0..cfg.starts as u64)
        .map(|i| {
            (0..dim)
                .map(|d| {
                    let v = (radical_inverse(i + 1, PRIMES[d]) + shift[d]).fract();
                    (2.0 * v - 1.0) * cfg.start_box
                })
                .collect()
        })
        .collect()
}

struct Eval {
    f: DVector<f64>,
    j: DMatrix<f64>,
}

fn evaluate(ps: &PolySystem, norms: &[f64], u: &[f64]) -> Eval {
    let n = ps.n_vars;
    let x: Vec<f64> = u.iter().map(|v| v.exp()).collect();
    let mut f = DVector::zeros(n);
    let mut j = DMatrix::zeros(n, n);
    let mut g = vec![0.0; n];
    for (i, p) in ps.equations.iter().enumerate() {
        let v = p.eval_log_grad(&x, &mut g);
        f[i] = v / norms[i];
        for k in 0..n {
            j[(i, k)] = g[k] / norms[i];
        }
    }
    Eval { f, j }
}

/// Residual relative to the size of the terms; small coefficient-normalized
/// residuals far out in the orthant, where every monomial is tiny, do not count.
fn relative_residual(ps: &PolySystem, u: &[f64]) -> f64 {
    let x: Vec<f64> = u.iter().map(|v| v.exp()).collect();
    ps.equations
        .iter()
        .map(|p| (p.eval(&x) / p.eval_abs(&x)).abs())
        .fold(0.0, f64::max)
}

const RELATIVE_ACCEPT: f64 = 1e-9;

/// Newton from one start; returns `u` on convergence.
fn newton(ps: &PolySystem, norms: &[f64], u0: &[f64], cfg: &SolverConfig) -> Option<Vec<f64>> {
    const U_LIMIT: f64 = 14.0;
    const STEP_CAP: f64 = 1.0;
    let mut u = u0.to_vec();
    let mut ev = evaluate(ps, norms, &u);
    let mut nrm = ev.f.norm();
    for _ in 0..cfg.max_iter {
        if ev.f.amax() < cfg.newton_tol {
            // a couple of polishing steps, kept only if they help
            for _ in 0..2 {
                let Some(d) = ev.j.clone().lu().solve(&(-&ev.f)) else {
                    break;
                };
                let cand: Vec<f64> = u.iter().zip(d.iter()).map(|(a, b)| a + b).collect();
                let ce = evaluate(ps, norms, &cand);
                if ce.f.amax() < ev.f.amax() {
                    u = cand;
                    ev = ce;
                } else {
                    break;
                }
            }
            return (relative_residual(ps, &u) < RELATIVE_ACCEPT).then_some(u);
        }
        let mut d = ev.j.clone().lu().solve(&(-&ev.f))?;
        if !d.iter().all(|v| v.is_finite()) {
            return None;
        }
        let dmax = d.amax();
        if dmax > STEP_CAP {
            d *= STEP_CAP / dmax;
        }
        let mut alpha = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let cand: Vec<f64> = u.iter().zip(d.iter()).map(|(a, b)| a + alpha * b).collect();
            let ce = evaluate(ps, norms, &cand);
            let cn = ce.f.norm();
            if cn.is_finite() && cn < (1.0 - 1e-4 * alpha) * nrm {
                u = cand;
                ev = ce;
                nrm = cn;
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if !accepted || u.iter().any(|v| v.abs() > U_LIMIT) {
            return None;
        }
    }
    (ev.f.amax() < cfg.newton_tol && relative_residual(ps, &u) < RELATIVE_ACCEPT).then_some(u)
}

fn rel_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()))
        .fold(0.0, f64::max)
}

/// All positive solutions found from the configured starts, as full metric
/// vectors with `x_1 = 1`, in order of first discovery.
pub fn solve_positive(ps: &PolySystem, cfg: &SolverConfig) -> Vec<Vec<f64>> {
    if ps.n_vars == 0 {
        return vec![vec![1.0]];
    }
    let norms: Vec<f64> = ps.equations.iter().map(|p| p.max_abs_coef()).collect();
    let starts = start_points(cfg, ps.n_vars);
    let found: Vec<Option<Vec<f64>>> = starts.par_iter().map(|u0| newton(ps, &norms, u0, cfg)).collect();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for u in found.into_iter().flatten() {
        let mut x = vec![1.0];
        x.extend(u.iter().map(|v| v.exp()));
        if out.iter().all(|y| rel_dist(&x, y) > cfg.dedup_radius) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn halton_is_deterministic_and_in_box() {
        let cfg = SolverConfig {
            starts: 500,
            seed: 3,
            ..Default::default()
        };
        let a = start_points(&cfg, 4);
        assert_eq!(a, start_points(&cfg, 4));
        assert!(a.iter().flatten().all(|v| v.abs() <= 3.0));
        let other = start_points(&SolverConfig { seed: 4, ..cfg }, 4);
        assert_ne!(a, other);
    }

    #[test]
    fn radical_inverse_base_two() {
        assert_eq!(radical_inverse(1, 2), 0.5);
        assert_eq!(radical_inverse(3, 2), 0.75);
        assert_eq!(radical_inverse(2, 3), 2.0 / 3.0);
    }
}
