//! Structure-constant triples `[k;ij]`: the brute-force oracle over the compact
//! bracket table, and the submersion-method linear systems in [`submersion`].

pub mod submersion;

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flag::FlagSpace;
use crate::liealg::CompactLieAlgebra;
use crate::{fmt_q, parse_q, q_to_f64, Q};

/// Sorted module triple `{i, j, k}`, 1-based.
pub type Key = [usize; 3];

pub fn key(i: usize, j: usize, k: usize) -> Key {
    let mut t = [i, j, k];
    t.sort();
    t
}

/// Triples allowed by the bracket inclusions: `{a, b, a + b}` with `a <= b`.
pub fn allowed_keys(n: usize) -> Vec<Key> {
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            if a + b <= n {
                out.push([a, b, a + b]);
            }
        }
    }
    out
}

/// Fully symmetric table; only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleTable {
    pub n: usize,
    values: BTreeMap<Key, Q>,
}

impl TripleTable {
    pub fn new(n: usize) -> Self {
        TripleTable {
            n,
            values: BTreeMap::new(),
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Q {
        self.values.get(&key(i, j, k)).copied().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Q) {
        assert!(
            i >= 1 && j >= 1 && k >= 1 && i.max(j).max(k) <= self.n,
            "module index out of range"
        );
        if v.is_zero() {
            self.values.remove(&key(i, j, k));
        } else {
            self.values.insert(key(i, j, k), v);
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&Key, &Q)> {
        self.values.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entries that violate nonnegativity or the `k = i + j` selection rule.
    pub fn rule_violations(&self) -> Vec<Key> {
        self.values
            .iter()
            .filter(|(k, v)| **v < Q::zero() || k[0] + k[1] != k[2])
            .map(|(k, _)| *k)
            .collect()
    }

    pub fn to_text(&self) -> String {
        self.values
            .iter()
            .map(|(k, v)| format!("{{{},{},{}}}: {}\n", k[0], k[1], k[2], fmt_q(v)))
            .collect()
    }

    pub fn from_text(n: usize, text: &str) -> Result<Self> {
        let mut t = TripleTable::new(n);
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let bad = || Error::Parse(format!("bad triple line `{line}`"));
            let (lhs, rhs) = line.split_once(':').ok_or_else(bad)?;
            let idx: Vec<usize> = lhs
                .trim()
                .trim_start_matches('{')
                .trim_end_matches('}')
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad())?;
            if idx.len() != 3 || idx.iter().any(|&i| i == 0 || i > n) {
                return Err(bad());
            }
            t.set(idx[0], idx[1], idx[2], parse_q(rhs)?);
        }
        Ok(t)
    }

    /// `"{i,j,k}" -> "p/q"` map for structured reports.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(k, v)| (format!("{{{},{},{}}}", k[0], k[1], k[2]), fmt_q(v)))
            .collect()
    }
}

impl fmt::Display for TripleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// Basis indices of the compact algebra spanning `m_k` (1-based `k`).
fn module_basis(fs: &FlagSpace, alg: &CompactLieAlgebra, k: usize) -> Vec<usize> {
    fs.module_roots[k - 1].iter().flat_map(|&p| alg.root_pair(p)).collect()
}

/// `Σ (A^z_{xy})²` over `x ∈ m_i`, `y ∈ m_j`, `z ∈ m_k`.
fn raw_sum(alg: &CompactLieAlgebra, module_of: &[usize], bases: &[Vec<usize>], i: usize, j: usize, k: usize) -> Q {
    let mut acc = Q::zero();
    for &x in &bases[i - 1] {
        for &y in &bases[j - 1] {
            for (z, _) in alg.bracket(x, y) {
                if module_of[*z] == k {
                    acc += alg.squared_constant(x, y, *z);
                }
            }
        }
    }
    acc
}

fn oracle_setup(fs: &FlagSpace, alg: &CompactLieAlgebra) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    if alg.dim != fs.rs.dim() || alg.rank != fs.rs.rank() {
        return Err(Error::Dimension(format!(
            "algebra of dimension {} does not match {}",
            alg.dim, fs.rs.lie_type
        )));
    }
    let mtab = fs.module_table();
    let module_of: Vec<usize> = (0..alg.dim).map(|x| alg.root_of(x).map_or(0, |p| mtab[p])).collect();
    let bases: Vec<Vec<usize>> = (1..=fs.n).map(|k| module_basis(fs, alg, k)).collect();
    Ok((module_of, bases))
}

/// Brute-force triples over every multiset `{i <= j <= k}`.
pub fn triples_oracle(fs: &FlagSpace, alg: &CompactLieAlgebra) -> Result<TripleTable> {
    let (module_of, bases) = oracle_setup(fs, alg)?;
    let n = fs.n;
    let keys: Vec<Key> = (1..=n)
        .flat_map(|i| (i..=n).flat_map(move |j| (j..=n).map(move |k| [i, j, k])))
        .collect();
    let vals: Vec<(Key, Q)> = keys
        .par_iter()
        .map(|&[i, j, k]| ([i, j, k], raw_sum(alg, &module_of, &bases, i, j, k)))
        .collect();
    let mut t = TripleTable::new(n);
    for (k, v) in vals {
        t.set(k[0], k[1], k[2], v);
    }
    Ok(t)
}

/// Recomputes every nonzero entry with each permutation of module roles and
/// lists the multisets where they disagree.
pub fn oracle_symmetry_defects(fs: &FlagSpace, alg: &CompactLieAlgebra, t: &TripleTable) -> Result<Vec<Key>> {
    let (module_of, bases) = oracle_setup(fs, alg)?;
    let mut bad = Vec::new();
    for (k, v) in t.nonzero() {
        let [a, b, c] = *k;
        for (i, j, l) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
            if raw_sum(alg, &module_of, &bases, i, j, l) != *v {
                bad.push(*k);
                break;
            }
        }
    }
    Ok(bad)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub key: Key,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Agreement {
    pub passed: bool,
    pub size_mismatch: Option<(usize, usize)>,
    pub mismatches: Vec<Mismatch>,
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed {
            return write!(f, "triples agree");
        }
        if let Some((a, b)) = self.size_mismatch {
            writeln!(f, "tables have {a} and {b} modules")?;
        }
        for m in &self.mismatches {
            writeln!(
                f,
                "{{{},{},{}}}: {} vs {}",
                m.key[0], m.key[1], m.key[2], m.left, m.right
            )?;
        }
        Ok(())
    }
}

fn union_keys<'a>(a: impl Iterator<Item = &'a Key>, b: impl Iterator<Item = &'a Key>) -> Vec<Key> {
    let mut keys: Vec<Key> = a.chain(b).copied().collect();
    keys.sort();
    keys.dedup();
    keys
}

/// Exact comparison of two rational tables.
pub fn assert_agreement(a: &TripleTable, b: &TripleTable) -> Agreement {
    let mismatches: Vec<Mismatch> = union_keys(a.values.keys(), b.values.keys())
        .into_iter()
        .filter(|k| a.get(k[0], k[1], k[2]) != b.get(k[0], k[1], k[2]))
        .map(|k| Mismatch {
            key: k,
            left: fmt_q(&a.get(k[0], k[1], k[2])),
            right: fmt_q(&b.get(k[0], k[1], k[2])),
        })
        .collect();
    let size_mismatch = (a.n != b.n).then_some((a.n, b.n));
    Agreement {
        passed: size_mismatch.is_none() && mismatches.is_empty(),
        size_mismatch,
        mismatches,
    }
}

/// Comparison against floating values keyed like the table, within `1e-9`.
pub fn assert_agreement_f64(a: &TripleTable, n: usize, b: &BTreeMap<Key, f64>) -> Agreement {
    let mismatches: Vec<Mismatch> = union_keys(a.values.keys(), b.keys())
        .into_iter()
        .filter(|k| (q_to_f64(&a.get(k[0], k[1], k[2])) - b.get(k).copied().unwrap_or(0.0)).abs() > 1e-9)
        .map(|k| Mismatch {
            key: k,
            left: fmt_q(&a.get(k[0], k[1], k[2])),
            right: format!("{}", b.get(&k).copied().unwrap_or(0.0)),
        })
        .collect();
    let size_mismatch = (a.n != n).then_some((a.n, n));
    Agreement {
        passed: size_mismatch.is_none() && mismatches.is_empty(),
        size_mismatch,
        mismatches,
    }
}
