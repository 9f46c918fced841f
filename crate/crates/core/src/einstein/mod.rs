//! Invariant Einstein metrics: polynomial system, positive solutions, and
//! their classification up to isometry and homothety.

pub mod solver;
pub mod system;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::flag::FlagSpace;
use crate::ricci::{ricci_components, scalar_curvature};
use crate::triples::TripleTable;

pub use solver::{solve_positive, start_points, SolverConfig};
pub use system::{build_system, Multiplier, PolySystem};

/// Relative tolerance for recognizing the Kähler–Einstein line `(1, 2, ..., N)`.
pub const KAHLER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EinsteinSolution {
    /// Metric vector normalized to `x_1 = 1`.
    pub x: Vec<f64>,
    /// Einstein constant: dimension-weighted mean of the `r_k`.
    pub lambda: f64,
    /// `max_k |r_k - λ|`.
    pub lambda_spread: f64,
    pub scalar: f64,
    pub log_volume: f64,
    pub volume: f64,
    /// Scale-invariant normalized scalar curvature `V^(1/d) S`.
    pub h_invariant: f64,
    /// Propagated uncertainty of `h_invariant`.
    pub h_uncertainty: f64,
    pub is_kahler: bool,
    /// Coefficient-normalized polynomial residual.
    pub residual: f64,
    /// Isometry class, numbered in increasing `h_invariant`.
    pub class_id: usize,
}

impl EinsteinSolution {
    /// The same metric rescaled to Einstein constant 1.
    pub fn unit_lambda(&self) -> Vec<f64> {
        self.x.iter().map(|v| v * self.lambda).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EinsteinClassification {
    /// Kähler–Einstein first, then increasing `h_invariant`.
    pub solutions: Vec<EinsteinSolution>,
    pub kahler: usize,
    pub non_kahler: usize,
    /// The number of isometry classes up to homothety, `E(M)`.
    pub isometry_classes: usize,
    /// Converged Newton solutions rejected on Ricci re-evaluation.
    pub rejected: usize,
}

fn is_kahler(x: &[f64]) -> bool {
    x.iter()
        .enumerate()
        .all(|(k, v)| (v / x[0] - (k + 1) as f64).abs() <= KAHLER_TOL * (k + 1) as f64)
}

/// Invariants of a metric vector that is expected to be Einstein.
pub fn describe_solution(t: &TripleTable, dims: &[usize], x: &[f64]) -> Result<EinsteinSolution> {
    let r = ricci_components(t, dims, x)?;
    let d: usize = dims.iter().sum();
    let scalar = scalar_curvature(dims, &r);
    let lambda = scalar / d as f64;
    let lambda_spread = r.iter().map(|v| (v - lambda).abs()).fold(0.0, f64::max);
    let log_volume: f64 = dims.iter().zip(x).map(|(&di, v)| di as f64 * v.ln()).sum();
    let h_invariant = (log_volume / d as f64).exp() * scalar;
    let h_uncertainty = h_invariant.abs() * (lambda_spread / lambda.abs()).max(100.0 * f64::EPSILON);
    Ok(EinsteinSolution {
        x: x.to_vec(),
        lambda,
        lambda_spread,
        scalar,
        log_volume,
        volume: log_volume.exp(),
        h_invariant,
        h_uncertainty,
        is_kahler: is_kahler(x),
        residual: 0.0,
        class_id: 0,
    })
}

/// Groups sorted solutions into classes: a jump in `h_invariant` larger than
/// ten times the local uncertainty starts a new class.
fn assign_classes(sols: &mut [EinsteinSolution]) -> usize {
    sols.sort_by(|a, b| a.h_invariant.total_cmp(&b.h_invariant));
    let mut class = 0;
    for i in 0..sols.len() {
        if i > 0 {
            let gap = (sols[i].h_invariant - sols[i - 1].h_invariant).abs();
            if gap > 10.0 * sols[i].h_uncertainty.max(sols[i - 1].h_uncertainty) {
                class += 1;
            }
        }
        sols[i].class_id = class;
    }
    if sols.is_empty() {
        0
    } else {
        class + 1
    }
}

/// Solves and classifies the Einstein equations of a table with module
/// dimensions `dims`.
pub fn classify_table(t: &TripleTable, dims: &[usize], cfg: &SolverConfig) -> Result<EinsteinClassification> {
    let (raw, ps) = if t.n == 1 {
        (vec![vec![1.0]], None)
    } else {
        let ps = build_system(t, dims)?;
        (solve_positive(&ps, cfg), Some(ps))
    };
    let mut solutions = Vec::new();
    let mut rejected = 0;
    for x in raw {
        let mut s = describe_solution(t, dims, &x)?;
        if s.lambda_spread / s.lambda.abs() > cfg.spread_tol {
            log::warn!("rejecting candidate {:?}: Ricci spread {:.3e}", x, s.lambda_spread);
            rejected += 1;
            continue;
        }
        s.residual = ps.as_ref().map_or(0.0, |p| p.normalized_residual(&x[1..]));
        solutions.push(s);
    }
    let isometry_classes = assign_classes(&mut solutions);
    solutions.sort_by(|a, b| {
        b.is_kahler
            .cmp(&a.is_kahler)
            .then(a.h_invariant.total_cmp(&b.h_invariant))
    });
    let kahler = solutions.iter().filter(|s| s.is_kahler).count();
    Ok(EinsteinClassification {
        non_kahler: solutions.len() - kahler,
        kahler,
        isometry_classes,
        rejected,
        solutions,
    })
}

pub fn classify(fs: &FlagSpace, t: &TripleTable, cfg: &SolverConfig) -> Result<EinsteinClassification> {
    classify_table(t, &fs.dims, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_module() -> (TripleTable, Vec<usize>) {
        let rs = crate::rootsys::build_root_system("B3".parse().unwrap()).unwrap();
        let fs = crate::flag::paint(&rs, 2).unwrap();
        let alg = crate::liealg::CompactLieAlgebra::build(&rs).unwrap();
        (crate::triples::triples_oracle(&fs, &alg).unwrap(), fs.dims)
    }

    #[test]
    fn single_module_is_unique() {
        let t = TripleTable::new(1);
        let c = classify_table(&t, &[10], &SolverConfig::default()).unwrap();
        assert_eq!(c.solutions.len(), 1);
        assert_eq!(c.isometry_classes, 1);
        assert!(c.solutions[0].is_kahler);
        assert!((c.solutions[0].lambda - 0.5).abs() < 1e-15);
    }

    #[test]
    fn homothety_leaves_h_fixed() {
        let (t, dims) = two_module();
        let a = describe_solution(&t, &dims, &[1.0, 1.7]).unwrap();
        let b = describe_solution(&t, &dims, &[3.0, 5.1]).unwrap();
        assert!((a.h_invariant - b.h_invariant).abs() < 1e-12 * a.h_invariant);
    }

    #[test]
    fn two_module_has_kahler_and_one_more() {
        let (t, dims) = two_module();
        let cfg = SolverConfig {
            starts: 200,
            ..Default::default()
        };
        let c = classify_table(&t, &dims, &cfg).unwrap();
        assert_eq!(c.kahler, 1);
        assert_eq!(c.non_kahler, 1);
        assert_eq!(c.isometry_classes, 2);
        assert!(c.solutions[0].is_kahler);
        assert!((c.solutions[0].x[1] - 2.0).abs() < 1e-9);
    }
}
