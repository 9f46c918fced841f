//! Flag manifolds `G/H` with one painted node: isotropy modules, dimensions
//! and the Kähler–Einstein metric.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Family, Root, RootSystem};

#[derive(Debug, Clone)]
pub struct FlagSpace {
    pub rs: RootSystem,
    /// 1-based painted node.
    pub painted: usize,
    /// Height of the painted root, i.e. the number of isotropy modules.
    pub n: usize,
    /// `module_roots[k-1]` holds the indices of `Δ⁺(a_i, k)` in `rs.positive_roots`.
    pub module_roots: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    /// Positive roots of the isotropy subalgebra.
    pub h_roots: Vec<usize>,
    pub h_dim: usize,
}

/// Invariant metric `x_1 B|m_1 + ... + x_N B|m_N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricVector(pub Vec<f64>);

impl MetricVector {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        for (i, &v) in x.iter().enumerate() {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::NonPositiveMetric { index: i + 1, value: v });
            }
        }
        Ok(MetricVector(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleOf {
    Isotropy,
    Module(usize),
}

pub fn paint(rs: &RootSystem, i: usize) -> Result<FlagSpace> {
    rs.check_node(i)?;
    let n = rs.highest_root.coeffs()[i - 1] as usize;
    let mut module_roots = vec![Vec::new(); n];
    let mut h_roots = Vec::new();
    for (idx, r) in rs.positive_roots.iter().enumerate() {
        match r.coeffs()[i - 1] {
            0 => h_roots.push(idx),
            k => module_roots[k as usize - 1].push(idx),
        }
    }
    if let Some(k) = module_roots.iter().position(|m| m.is_empty()) {
        return Err(Error::EmptyModule(k + 1));
    }
    let dims = module_roots.iter().map(|m| 2 * m.len()).collect();
    let h_dim = rs.rank() + 2 * h_roots.len();
    Ok(FlagSpace {
        rs: rs.clone(),
        painted: i,
        n,
        module_roots,
        dims,
        h_roots,
        h_dim,
    })
}

impl FlagSpace {
    pub fn kahler_einstein_metric(&self) -> MetricVector {
        MetricVector((1..=self.n).map(|k| k as f64).collect())
    }

    pub fn module_of(&self, a: &Root) -> Result<ModuleOf> {
        if self.rs.positive_index(a).is_none() {
            return Err(Error::NotAPositiveRoot(a.to_string()));
        }
        Ok(match a.coeffs()[self.painted - 1] {
            0 => ModuleOf::Isotropy,
            k => ModuleOf::Module(k as usize),
        })
    }

    /// Module index (1-based, 0 for isotropy) of each positive root.
    pub fn module_table(&self) -> Vec<usize> {
        self.rs
            .positive_roots
            .iter()
            .map(|r| r.coeffs()[self.painted - 1] as usize)
            .collect()
    }

    pub fn dim_m(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `H` as `U(1)` times the compact groups of the white subdiagram.
    pub fn isotropy_label(&self) -> String {
        let mut parts = vec!["U(1)".to_string()];
        parts.extend(
            white_components(&self.rs, self.painted)
                .into_iter()
                .map(|c| group_name(&self.rs, &c)),
        );
        parts.join("×")
    }

    /// `G/H` in the usual notation, e.g. `E8/U(1)×SU(4)×SU(5)`.
    pub fn name(&self) -> String {
        format!("{}/{}", self.rs.lie_type, self.isotropy_label())
    }

    pub fn describe(&self) -> String {
        let mut s = format!(
            "{} painted at node {} (height {})\nisotropy {} of dimension {}\n",
            self.rs.lie_type,
            self.painted,
            self.n,
            self.isotropy_label(),
            self.h_dim
        );
        for (k, roots) in self.module_roots.iter().enumerate() {
            s.push_str(&format!("m{}: dim {}\n", k + 1, self.dims[k]));
            for &r in roots {
                s.push_str(&format!("  {}\n", self.rs.positive_roots[r]));
            }
        }
        s
    }
}

impl fmt::Display for FlagSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn adjacent(rs: &RootSystem, a: usize, b: usize) -> bool {
    a != b && rs.cartan[a][b] != 0
}

/// Connected components (0-based nodes) of the diagram with `painted` removed.
fn white_components(rs: &RootSystem, painted: usize) -> Vec<Vec<usize>> {
    let l = rs.rank();
    let mut seen = vec![false; l];
    seen[painted - 1] = true;
    let mut comps = Vec::new();
    for start in 0..l {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let a = comp[k];
            for b in 0..l {
                if !seen[b] && adjacent(rs, a, b) {
                    seen[b] = true;
                    comp.push(b);
                }
            }
            k += 1;
        }
        comp.sort();
        comps.push(comp);
    }
    comps
}

fn group_name(rs: &RootSystem, comp: &[usize]) -> String {
    let n = comp.len();
    let multi = comp
        .iter()
        .flat_map(|&a| comp.iter().map(move |&b| (a, b)))
        .any(|(a, b)| a != b && rs.cartan[a][b] < -1);
    if multi {
        let triple = comp
            .iter()
            .flat_map(|&a| comp.iter().map(move |&b| (a, b)))
            .any(|(a, b)| rs.cartan[a][b] == -3);
        if triple {
            return "G2".into();
        }
        if n == 4 {
            return "F4".into();
        }
        let max_len = comp.iter().map(|&a| rs.gram[a][a]).max().unwrap();
        let short = comp.iter().filter(|&&a| rs.gram[a][a] < max_len).count();
        if n == 2 {
            return if rs.lie_type.family == Family::C {
                "Sp(2)".into()
            } else {
                "SO(5)".into()
            };
        }
        return if short == 1 {
            format!("SO({})", 2 * n + 1)
        } else {
            format!("Sp({n})")
        };
    }
    let degree = |a: usize| comp.iter().filter(|&&b| adjacent(rs, a, b)).count();
    match comp.iter().find(|&&a| degree(a) == 3) {
        None => format!("SU({})", n + 1),
        Some(&center) => {
            // arm lengths from the branch node
            let mut arms: Vec<usize> = Vec::new();
            for &nb in comp.iter().filter(|&&b| adjacent(rs, center, b)) {
                let (mut prev, mut cur, mut len) = (center, nb, 1);
                loop {
                    let next = comp.iter().find(|&&b| b != prev && adjacent(rs, cur, b));
                    match next {
                        Some(&nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => format!("SO({})", 2 * n),
                [1, 2, 2] => "E6".into(),
                [1, 2, 3] => "E7".into(),
                [1, 2, 4] => "E8".into(),
                _ => format!("?{n}"),
            }
        }
    }
}
