//! Invariant Einstein metrics on generalized flag manifolds `G/H` with second
//! Betti number one.
//!
//! The pipeline runs: root system → painted node → isotropy modules →
//! structure-constant triples → Ricci components → polynomial Einstein system
//! → positive solutions and isometry classes. Triples are computed twice, once
//! by brute force on an explicit compact Lie algebra and once (for the two
//! largest `E8` spaces) through linear systems coming from Riemannian
//! submersions, and the two are required to agree exactly.

#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod einstein;
pub mod error;
pub mod flag;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod ricci;
pub mod rootsys;
pub mod triples;

pub use error::{Error, Result};

/// Exact rational used throughout.
pub type Q = num::rational::Ratio<i128>;

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `p/q` or `p`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

pub fn q_to_f64(v: &Q) -> f64 {
    *v.numer() as f64 / *v.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        for v in [Q::new(4, 3), Q::from_integer(12), Q::new(-10, 6), Q::from_integer(0)] {
            assert_eq!(parse_q(&fmt_q(&v)).unwrap(), v);
        }
        assert_eq!(fmt_q(&Q::new(8, 2)), "4");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
