//! Dense exact linear systems over the rationals.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Q;

fn big(v: &Q) -> BigRational {
    BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))
}

fn small(v: &BigRational) -> Result<Q> {
    match (v.numer().to_i128(), v.denom().to_i128()) {
        (Some(n), Some(d)) => Ok(Q::new(n, d)),
        _ => Err(Error::Parse(format!("rational {v} exceeds 128-bit range"))),
    }
}

/// Solves `A x = b` for a possibly overdetermined but consistent system with a
/// unique solution. Rows are `[a_1 .. a_n | b]`.
pub fn solve_unique(rows: &[Vec<Q>], n: usize) -> Result<Vec<Q>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n + 1, "row length");
            r.iter().map(big).collect()
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = BigRational::one() / &m[rank][col];
        for v in m[rank].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..m.len() {
            if i != rank && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=n {
                    let t = &f * &m[rank][j];
                    m[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if m[rank..].iter().any(|r| !r[n].is_zero()) {
        return Err(Error::Inconsistent);
    }
    if rank < n {
        return Err(Error::Singular { rank, unknowns: n });
    }
    (0..n).map(|i| small(&m[i][n])).collect()
}
