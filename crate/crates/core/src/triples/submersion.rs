//! Triples from Riemannian submersions, without touching a bracket table.
//!
//! For `E8` painted at node 4 (five modules) and node 5 (six modules) the
//! nonzero triples are unknowns constrained by two families of linear
//! equations:
//!
//! * the Kähler–Einstein metric `(1, 2, ..., N)` is Einstein, so all `r_k`
//!   agree there;
//! * along the fibration `G/H → G/K` with totally geodesic fibers, the
//!   fiber-independent part of each horizontal `r_k` is the Ricci component of
//!   the base `G/K`. Matching Laurent coefficients monomial by monomial gives
//!   one equation per monomial, with the base triples as extra unknowns.
//!
//! The six-module case needs one more input, taken from the twistor fiber
//! `E7/U(1)×SU(3)×SU(5)` whose own triples follow from its Kähler–Einstein
//! condition and rescale by the Killing-form ratio `B_E7 / B_E8 = 3/5`.

use std::collections::BTreeSet;

use num::Zero;

use super::{allowed_keys, key, Key, TripleTable};
use crate::error::{Error, Result};
use crate::linalg::solve_unique;
use crate::poly::{LinForm, SymPoly};
use crate::ricci::{ricci_symbolic, SubmersionCase};
use crate::Q;

pub const DIMS_E: [usize; 5] = [80, 60, 40, 20, 8];
pub const DIMS_F: [usize; 6] = [60, 60, 40, 30, 12, 10];
const BASE_DIMS_E: [usize; 2] = [100, 100];
const BASE_DIMS_F: [usize; 3] = [72, 90, 40];
const FIBER_DIMS: [usize; 3] = [60, 30, 10];

/// Killing-form ratio between the twistor fiber's group and `E8`.
pub const FIBER_SCALE: (i128, i128) = (3, 5);

/// Solution of a submersion system: the total-space table and the base triples.
#[derive(Debug, Clone)]
pub struct SubmersionSolution {
    pub table: TripleTable,
    pub base: TripleTable,
}

fn lookup_form(keys: &[Key], offset: usize, width: usize) -> impl Fn(usize, usize, usize) -> LinForm + '_ {
    move |i, j, k| match keys.iter().position(|kk| *kk == key(i, j, k)) {
        Some(p) => LinForm::unknown(width, offset + p),
        None => LinForm::zero(width),
    }
}

/// `r_k - r_{k+1} = 0` at integer point `x` as equation rows.
fn einstein_rows(dims: &[usize], keys: &[Key], offset: usize, width: usize, x: &[Q]) -> Vec<Vec<Q>> {
    let n = dims.len();
    let var: Vec<usize> = (0..n).collect();
    let tri = lookup_form(keys, offset, width);
    let r: Vec<LinForm> = ricci_symbolic(dims, &var, n, width, &tri)
        .iter()
        .map(|p| p.eval(x))
        .collect();
    r.windows(2)
        .map(|w| {
            let mut d = w[0].clone();
            d.add_scaled(&w[1], -Q::from(1));
            d.as_equation()
        })
        .collect()
}

fn ke_point(n: usize) -> Vec<Q> {
    (1..=n as i128).map(Q::from).collect()
}

/// Fiber-independent coefficients of each horizontal `r_k` matched against
/// the base Ricci component of its block.
fn submersion_rows(
    case: SubmersionCase,
    dims: &[usize],
    keys: &[Key],
    base_dims: &[usize],
    base_keys: &[Key],
    width: usize,
) -> Vec<Vec<Q>> {
    let (blocks, _) = case.blocks();
    let (var, nvars) = case.var_of();
    let zi = nvars - 1;
    let total = ricci_symbolic(dims, &var, nvars, width, &lookup_form(keys, 0, width));
    let base_var: Vec<usize> = (0..blocks.len()).collect();
    let base: Vec<SymPoly> = ricci_symbolic(
        base_dims,
        &base_var,
        nvars,
        width,
        &lookup_form(base_keys, keys.len(), width),
    );
    let mut rows = Vec::new();
    for (b, mods) in blocks.iter().enumerate() {
        for &m in mods {
            let r = &total[m - 1];
            let monomials: BTreeSet<Vec<i32>> = r
                .terms
                .keys()
                .filter(|e| e[zi] == 0)
                .chain(base[b].terms.keys())
                .cloned()
                .collect();
            for e in monomials {
                let mut d = r.coefficient(&e);
                d.add_scaled(&base[b].coefficient(&e), -Q::from(1));
                if !d.is_zero() {
                    rows.push(d.as_equation());
                }
            }
        }
    }
    rows
}

fn fixed_row(width: usize, idx: usize, v: Q) -> Vec<Q> {
    let mut row = vec![Q::zero(); width + 1];
    row[idx] = Q::from(1);
    row[width] = v;
    row
}

fn solve_system(
    case: SubmersionCase,
    dims: &[usize],
    base_dims: &[usize],
    base_keys: &[Key],
    fixed: &[(Key, Q)],
) -> Result<SubmersionSolution> {
    let n = dims.len();
    let keys = allowed_keys(n);
    let width = keys.len() + base_keys.len();
    let mut rows = einstein_rows(dims, &keys, 0, width, &ke_point(n));
    rows.extend(submersion_rows(case, dims, &keys, base_dims, base_keys, width));
    for (k, v) in fixed {
        let idx = keys
            .iter()
            .position(|kk| kk == k)
            .expect("fixed triple is an allowed key");
        rows.push(fixed_row(width, idx, *v));
    }
    let sol = solve_unique(&rows, width)?;
    let mut table = TripleTable::new(n);
    for (k, v) in keys.iter().zip(&sol) {
        table.set(k[0], k[1], k[2], *v);
    }
    let mut base = TripleTable::new(base_dims.len());
    for (k, v) in base_keys.iter().zip(&sol[keys.len()..]) {
        base.set(k[0], k[1], k[2], *v);
    }
    if table.nonzero().any(|(_, v)| *v < Q::zero()) {
        return Err(Error::Inconsistent);
    }
    Ok(SubmersionSolution { table, base })
}

/// Five-module case, with the base triples of `E8/SU(5)×SU(5)`.
pub fn case_e_system() -> Result<SubmersionSolution> {
    solve_system(SubmersionCase::E, &DIMS_E, &BASE_DIMS_E, &[[1, 1, 2], [1, 2, 2]], &[])
}

pub fn triples_case_e() -> Result<TripleTable> {
    Ok(case_e_system()?.table)
}

/// `([2;11]_f, [3;12]_f)` on `E7/U(1)×SU(3)×SU(5)` from its Kähler–Einstein
/// condition alone.
pub fn fiber_triples_e7() -> Result<(Q, Q)> {
    let keys = allowed_keys(3);
    let rows = einstein_rows(&FIBER_DIMS, &keys, 0, keys.len(), &ke_point(3));
    let sol = solve_unique(&rows, keys.len())?;
    Ok((sol[0], sol[1]))
}

/// Fiber triples expressed in the `E8` normalization: `([4;22], [6;24])`.
pub fn fiber_triples_rescaled() -> Result<(Q, Q)> {
    let (a, b) = fiber_triples_e7()?;
    let c = Q::new(FIBER_SCALE.0, FIBER_SCALE.1);
    Ok((a * c, b * c))
}

/// Six-module case, with the base triples of `E8/SU(6)×SU(2)×SU(3)`.
pub fn case_f_system() -> Result<SubmersionSolution> {
    let (t422, t624) = fiber_triples_rescaled()?;
    let sol = solve_system(
        SubmersionCase::F,
        &DIMS_F,
        &BASE_DIMS_F,
        &[[1, 1, 2], [1, 2, 3], [2, 2, 2]],
        &[([2, 2, 4], t422)],
    )?;
    // the second fiber triple is not an input; it must come out on its own
    if sol.table.get(2, 4, 6) != t624 {
        return Err(Error::Inconsistent);
    }
    Ok(sol)
}

pub fn triples_case_f() -> Result<TripleTable> {
    Ok(case_f_system()?.table)
}

/// Submersion-method table for `E8` painted at `node`, when one exists.
pub fn submersion_triples(lie: &str, node: usize) -> Result<TripleTable> {
    match (lie, node) {
        ("E8", 4) => triples_case_e(),
        ("E8", 5) => triples_case_f(),
        _ => Err(Error::NoSubmersionMethod),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    #[test]
    fn fiber_values() {
        assert_eq!(fiber_triples_e7().unwrap(), (q(10, 1), q(10, 3)));
        assert_eq!(fiber_triples_rescaled().unwrap(), (q(6, 1), q(2, 1)));
    }

    #[test]
    fn case_e_relations() {
        let t = triples_case_e().unwrap();
        assert_eq!(t.get(1, 1, 2), q(3, 1) * t.get(1, 3, 4));
        assert_eq!(t.get(1, 2, 3), q(2, 1) * t.get(2, 2, 4));
    }

    #[test]
    fn case_f_relations() {
        let t = triples_case_f().unwrap();
        assert_eq!(t.get(1, 1, 2), q(4, 1) * t.get(1, 4, 5));
        assert_eq!(t.get(1, 3, 4), q(2, 1) * t.get(2, 3, 5));
        assert_eq!(t.get(1, 2, 3), q(3, 1) * t.get(2, 3, 5));
    }

    #[test]
    fn no_method_for_other_spaces() {
        assert!(matches!(submersion_triples("E8", 3), Err(Error::NoSubmersionMethod)));
        assert!(matches!(submersion_triples("F4", 4), Err(Error::NoSubmersionMethod)));
    }
}
