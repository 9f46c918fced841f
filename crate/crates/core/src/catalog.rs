//! The flag manifolds with `b_2 = 1` and their known counts `E(M)` of
//! non-isometric invariant Einstein metrics.
//!
//! Every such space is `G` with one simple root painted, and the number of
//! isotropy summands is that root's height. The count depends only on the
//! height, except for `E8/U(1)×SU(3)×SO(10)` (height 4, five metrics).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, Family, LieType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub lie_type: LieType,
    pub node: usize,
    /// Number of isotropy summands.
    pub height: usize,
    /// `A` ... `F`, by number of summands.
    pub class: char,
    pub expected: usize,
}

/// `(class, E(M))` for a painting of the given height.
pub fn expected_count(t: LieType, node: usize, height: usize) -> Option<(char, usize)> {
    let class = (b'A' + height.checked_sub(1)? as u8) as char;
    let count = match height {
        1 => 1,
        2 => 2,
        3 => 3,
        4 if t.family == Family::E && t.rank == 8 && node == 3 => 5,
        4 => 3,
        5 => 6,
        6 => 5,
        _ => return None,
    };
    Some((class, count))
}

pub fn entry(t: LieType, node: usize) -> Result<CatalogEntry> {
    let rs = build_root_system(t)?;
    let height = rs.height(node)? as usize;
    let (class, expected) =
        expected_count(t, node, height).ok_or_else(|| Error::InvalidType(format!("{t} node {node}")))?;
    Ok(CatalogEntry {
        lie_type: t,
        node,
        height,
        class,
        expected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subset {
    /// Exceptional groups below `E8`, `E8`'s two largest spaces, and small
    /// classical groups.
    Quick,
    /// Every node of every type up to rank 8.
    All,
}

impl FromStr for Subset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Subset::Quick),
            "all" => Ok(Subset::All),
            _ => Err(Error::Parse(format!("unknown subset `{s}` (expected quick or all)"))),
        }
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subset::Quick => "quick",
            Subset::All => "all",
        })
    }
}

fn types_up_to(max_rank: usize) -> Vec<LieType> {
    let mut out = Vec::new();
    for family in [Family::A, Family::B, Family::C, Family::D] {
        for rank in 1..=max_rank {
            if let Ok(t) = LieType::new(family, rank) {
                out.push(t);
            }
        }
    }
    for (family, rank) in [
        (Family::G, 2),
        (Family::F, 4),
        (Family::E, 6),
        (Family::E, 7),
        (Family::E, 8),
    ] {
        out.push(LieType::new(family, rank).unwrap());
    }
    out
}

pub fn table1(subset: Subset) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    match subset {
        Subset::All => {
            for t in types_up_to(8) {
                for node in 1..=t.rank {
                    out.push(entry(t, node)?);
                }
            }
        }
        Subset::Quick => {
            for t in types_up_to(4) {
                if t.family == Family::E && t.rank == 8 {
                    out.push(entry(t, 4)?);
                    out.push(entry(t, 5)?);
                    continue;
                }
                for node in 1..=t.rank {
                    out.push(entry(t, node)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::paint;

    fn label(t: &str, node: usize) -> (String, usize) {
        let rs = build_root_system(t.parse().unwrap()).unwrap();
        let e = entry(rs.lie_type, node).unwrap();
        (paint(&rs, node).unwrap().isotropy_label(), e.expected)
    }

    #[test]
    fn exceptional_rows() {
        let rows = [
            ("G2", 1, "U(1)×SU(2)", 3),
            ("G2", 2, "U(1)×SU(2)", 2),
            ("F4", 1, "U(1)×Sp(3)", 2),
            ("F4", 4, "U(1)×SO(7)", 2),
            ("F4", 2, "U(1)×SU(2)×SU(3)", 3),
            ("F4", 3, "U(1)×SU(3)×SU(2)", 3),
            ("E6", 1, "U(1)×SO(10)", 1),
            ("E6", 2, "U(1)×SU(6)", 2),
            ("E6", 4, "U(1)×SU(2)×SU(3)×SU(3)", 3),
            ("E7", 7, "U(1)×E6", 1),
            ("E7", 1, "U(1)×SO(12)", 2),
            ("E7", 5, "U(1)×SU(5)×SU(3)", 3),
            ("E7", 4, "U(1)×SU(2)×SU(3)×SU(4)", 3),
            ("E8", 1, "U(1)×E7", 2),
            ("E8", 7, "U(1)×SO(14)", 2),
            ("E8", 8, "U(1)×SU(8)", 3),
            ("E8", 3, "U(1)×SU(3)×SO(10)", 5),
            ("E8", 4, "U(1)×SU(4)×SU(5)", 6),
            ("E8", 5, "U(1)×SU(5)×SU(3)×SU(2)", 5),
        ];
        for (t, node, h, count) in rows {
            let (got, expected) = label(t, node);
            // component order follows node order; compare as multisets
            let mut a: Vec<&str> = got.split('×').collect();
            let mut b: Vec<&str> = h.split('×').collect();
            a.sort();
            b.sort();
            assert_eq!(a, b, "{t} node {node}: {got}");
            assert_eq!(expected, count, "{t} node {node}");
        }
    }

    #[test]
    fn subsets() {
        let quick = table1(Subset::Quick).unwrap();
        let all = table1(Subset::All).unwrap();
        assert!(quick.len() < all.len());
        assert!(all.iter().any(|e| e.class == 'F'));
        assert_eq!(all.iter().filter(|e| e.class == 'E').count(), 1);
        assert!(all.iter().all(|e| e.height <= 6));
        assert_eq!("quick".parse::<Subset>().unwrap(), Subset::Quick);
        assert!("most".parse::<Subset>().is_err());
    }
}
