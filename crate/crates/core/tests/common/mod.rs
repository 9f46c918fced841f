#![allow(dead_code)]

use std::io::Write;
use std::sync::OnceLock;

use flag_einstein::flag::{paint, FlagSpace};
use flag_einstein::liealg::CompactLieAlgebra;
use flag_einstein::rootsys::build_root_system;
use flag_einstein::triples::{triples_oracle, TripleTable};

/// Reference non-Kähler solutions for `E8/U(1)×SU(4)×SU(5)`, `x_1 = 1`.
pub const CASE_E_X: [[f64; 4]; 5] = [
    [1.0213742, 0.54600746, 1.0535169, 1.1087938],
    [1.0373227, 1.0471761, 1.0308150, 0.29861996],
    [0.59978523, 1.0837088, 0.90182312, 1.2229122],
    [0.72071315, 1.0254588, 0.47523403, 1.0709463],
    [1.0829413, 1.0408835, 0.53261506, 1.1035115],
];
pub const CASE_E_LAMBDA: [f64; 5] = [0.36550657, 0.33727144, 0.37877040, 0.38698208, 0.33939371];
pub const CASE_E_H: [f64; 5] = [68.7023, 68.4799, 68.8906, 68.6914, 68.7757];
/// The same metrics scaled to Einstein constant 1.
pub const CASE_E_UNIT: [[f64; 5]; 5] = [
    [0.36550657, 0.37331898, 0.19956931, 0.38506736, 0.40527143],
    [0.33727144, 0.34985931, 0.35318260, 0.34766447, 0.10071598],
    [0.37877040, 0.22718089, 0.41047683, 0.34158391, 0.46320296],
    [0.38698208, 0.27890308, 0.39683418, 0.18390705, 0.41443703],
    [0.33939371, 0.36754348, 0.35326931, 0.18076620, 0.37452488],
];

/// Reference non-Kähler solutions for `E8/U(1)×SU(2)×SU(3)×SU(5)`, `x_1 = 1`.
///
/// `x_3` of (4) is commonly quoted as 1.14673, which is not consistent with
/// its own λ = 1 form (0.359988 / 0.313933 = 1.146703) nor a root of the
/// system to better than 1.4e-5; the consistent value is used here.
pub const CASE_F_X: [[f64; 5]; 4] = [
    [0.954875, 0.965321, 1.00534, 0.290091, 1.01965],
    [0.986536, 0.636844, 1.06853, 1.13323, 0.921127],
    [0.90422, 0.778283, 0.927483, 1.03408, 0.359949],
    [0.82308, 1.14670, 1.17377, 1.42664, 1.46519],
];
/// The quoted form of (4), kept to pin the inconsistency down.
pub const CASE_F_X4_QUOTED: [f64; 5] = [0.82308, 1.14673, 1.17377, 1.42664, 1.46519];
pub const CASE_F_H: [f64; 4] = [67.805543, 68.468503, 68.228353, 68.685589];
/// Einstein constants as printed for solutions (2) and (4).
pub const CASE_F_LAMBDA_PRINTED: [(usize, f64); 2] = [(1, 0.348602829), (3, 0.313933143)];
pub const CASE_F_UNIT: [[f64; 6]; 4] = [
    [0.349296, 0.333534, 0.337183, 0.35116, 0.101328, 0.356159],
    [0.348603, 0.343909, 0.222006, 0.372492, 0.395047, 0.321107],
    [0.367518, 0.332318, 0.286033, 0.340867, 0.380043, 0.132288],
    [0.313933, 0.258393, 0.359988, 0.368484, 0.44787, 0.459972],
];

/// Reference polynomial system for case E in `(x2, x3, x4, x5)`.
pub fn case_e_polys(v: &[f64]) -> [f64; 4] {
    let (x2, x3, x4, x5) = (v[0], v[1], v[2], v[3]);
    let p = |b: f64, e: i32| b.powi(e);
    [
        -15.0 * p(x2, 3) * x3 * x4 * x5
            - 14.0 * p(x2, 3) * x4 * x5
            - 2.0 * p(x2, 3) * x4
            - 3.0 * p(x2, 2) * p(x3, 2) * x5
            - p(x2, 2) * x3 * p(x4, 2)
            + 60.0 * p(x2, 2) * x3 * x4 * x5
            + p(x2, 2) * x3
            - 3.0 * p(x2, 2) * p(x4, 2) * x5
            + 3.0 * p(x2, 2) * x5
            + 2.0 * x2 * p(x3, 2) * x4 * x5
            + 2.0 * x2 * p(x3, 2) * x4
            - x2 * p(x5, 2) * (x2 * x3 - 2.0 * x4)
            - 48.0 * x2 * x3 * x4 * x5
            + 14.0 * x2 * x4 * x5
            + 4.0 * x3 * p(x4, 2) * x5,
        6.0 * p(x2, 3) * x3 * x4 * x5 + 20.0 * p(x2, 3) * x4 * x5 + 5.0 * p(x2, 3) * x4
            - 6.0 * p(x2, 2) * p(x3, 2) * x5
            + 6.0 * p(x2, 2) * p(x4, 2) * x5
            - 60.0 * p(x2, 2) * x4 * x5
            + 6.0 * p(x2, 2) * x5
            - 20.0 * x2 * p(x3, 2) * x4 * x5
            - 5.0 * x2 * p(x3, 2) * x4
            + 48.0 * x2 * x3 * x4 * x5
            + x2 * x4 * p(x5, 2)
            + 4.0 * x2 * x4 * x5
            - 4.0 * x3 * p(x4, 2) * x5,
        -12.0 * p(x2, 3) * x4 * x5 - 3.0 * p(x2, 3) * x4 + 18.0 * p(x2, 2) * p(x3, 2) * x5
            - 4.0 * p(x2, 2) * x3 * p(x4, 2)
            - 48.0 * p(x2, 2) * x3 * x5
            + 4.0 * p(x2, 2) * x3
            - 18.0 * p(x2, 2) * p(x4, 2) * x5
            + 60.0 * p(x2, 2) * x4 * x5
            + 6.0 * p(x2, 2) * x5
            + 12.0 * x2 * p(x3, 2) * x4 * x5
            + 3.0 * x2 * p(x3, 2) * x4
            + x2 * p(x5, 2) * (4.0 * x2 * x3 - 3.0 * x4)
            - 12.0 * x2 * x4 * x5
            - 6.0 * x3 * p(x4, 2) * x5,
        15.0 * p(x2, 3) * x4 - 12.0 * p(x2, 2) * p(x3, 2) * x5 + 14.0 * p(x2, 2) * x3 * p(x4, 2)
            - 60.0 * p(x2, 2) * x3 * x4
            + 48.0 * p(x2, 2) * x3 * x5
            + 6.0 * p(x2, 2) * x3
            + 12.0 * p(x2, 2) * p(x4, 2) * x5
            - 12.0 * p(x2, 2) * x5
            + 15.0 * x2 * p(x3, 2) * x4
            - x2 * p(x5, 2) * (14.0 * x2 * x3 + 15.0 * x4)
            + 6.0 * x3 * p(x4, 2) * x5,
    ]
}

/// Reference polynomial system for case F in `(x2, ..., x6)`.
pub fn case_f_polys(v: &[f64]) -> [f64; 5] {
    let (x2, x3, x4, x5, x6) = (v[0], v[1], v[2], v[3], v[4]);
    let p = |b: f64, e: i32| b.powi(e);
    [
        -6.0 * x3 * p(x4, 2) * x5 * x6 + 2.0 * p(x2, 3) * (x4 * (1.0 + 6.0 * x5) * x6 + x3 * (x5 + 6.0 * x4 * x5 * x6))
            - 2.0
                * x2
                * (p(x3, 2) * x4 * x6 + x4 * x5 * (6.0 + x5) * x6 + x3 * x5 * (p(x4, 2) - 26.0 * x4 * x6 + p(x6, 2)))
            + p(x2, 2)
                * (4.0 * p(x3, 2) * x5 * x6
                    + 4.0 * (-1.0 + p(x4, 2)) * x5 * x6
                    + x3 * (2.0 * p(x4, 2) * x6
                        + 2.0 * (-1.0 + p(x5, 2)) * x6
                        + x4 * (-1.0 + p(x5, 2) - 60.0 * x5 * x6 + p(x6, 2)))),
        -6.0 * p(x3, 2) * p(x4, 2) * x5 * x6
            + 3.0 * p(x2, 2) * x5 * x6 * (-2.0 * p(x3, 3) + 2.0 * x3 * (1.0 - 10.0 * x4 + p(x4, 2)) + x4 * x6)
            + p(x2, 3) * x3 * (5.0 * x4 * (1.0 + 3.0 * x5) * x6 + 2.0 * x3 * (x5 + 2.0 * x4 * x5 * x6))
            + x2 * x3
                * (x4 * x5 * (3.0 + x5) * x6
                    - 5.0 * p(x3, 2) * x4 * (1.0 + 3.0 * x5) * x6
                    - 2.0 * x3 * x5 * (p(x4, 2) - 26.0 * x4 * x6 + p(x6, 2))),
        -6.0 * p(x3, 2) * p(x4, 2) * x5 * x6
            + p(x2, 2)
                * x6
                * (14.0 * p(x3, 3) * x5 + 2.0 * x3 * (1.0 + 30.0 * x4 - 7.0 * p(x4, 2)) * x5
                    - 4.0 * p(x3, 2) * (-1.0 + p(x4, 2) + 12.0 * x5 - p(x5, 2))
                    - 3.0 * x4 * x5 * x6)
            + p(x2, 3) * x3 * (4.0 * x3 * x5 - 3.0 * x4 * (1.0 + 3.0 * x5) * x6)
            + x2 * x3
                * (-3.0 * x4 * x5 * (3.0 + x5) * x6
                    + 3.0 * p(x3, 2) * x4 * (1.0 + 3.0 * x5) * x6
                    + 4.0 * x3 * x5 * (-p(x4, 2) + p(x6, 2))),
        6.0 * x3 * p(x4, 2) * x5 * x6
            + p(x2, 3) * (-4.0 * x3 * x5 + 10.0 * x4 * x6)
            + 2.0 * x2 * (5.0 * p(x3, 2) * x4 * x6 - 5.0 * x4 * p(x5, 2) * x6 + 2.0 * x3 * x5 * (p(x4, 2) - p(x6, 2)))
            + p(x2, 2)
                * (-8.0 * p(x3, 2) * x5 * x6
                    + 8.0 * (-1.0 + p(x4, 2)) * x5 * x6
                    + x3 * (14.0 * p(x4, 2) * x6 + 2.0 * (3.0 + 24.0 * x5 - 7.0 * p(x5, 2)) * x6
                        - 5.0 * x4 * (-1.0 + p(x5, 2) + 12.0 * x6 - p(x6, 2)))),
        2.0 * p(x2, 2) * x3 * (6.0 * x3 * x5 - 5.0 * x4 * x6)
            - 2.0 * x3 * (5.0 * p(x3, 2) * x4 * x6 - 5.0 * x4 * p(x5, 2) * x6 + 6.0 * x3 * x5 * (-p(x4, 2) + p(x6, 2)))
            + x2 * (-6.0 * x4 * x5 * p(x6, 2)
                + p(x3, 2)
                    * (-10.0 * p(x4, 2) * x6
                        + 10.0 * (-1.0 + p(x5, 2)) * x6
                        + x4 * (1.0 - 48.0 * x5 + 11.0 * p(x5, 2) + 60.0 * x6 - 11.0 * p(x6, 2)))),
    ]
}

pub fn e8_algebra() -> &'static CompactLieAlgebra {
    static ALG: OnceLock<CompactLieAlgebra> = OnceLock::new();
    ALG.get_or_init(|| CompactLieAlgebra::build(&build_root_system("E8".parse().unwrap()).unwrap()).unwrap())
}

pub fn e8_space(node: usize) -> FlagSpace {
    paint(&build_root_system("E8".parse().unwrap()).unwrap(), node).unwrap()
}

pub fn e8_oracle(node: usize) -> TripleTable {
    triples_oracle(&e8_space(node), e8_algebra()).unwrap()
}

/// `(i, j, k, value)` listing as a table of `n` modules.
pub fn table(n: usize, entries: &[(usize, usize, usize, i128, i128)]) -> TripleTable {
    let mut t = TripleTable::new(n);
    for &(i, j, k, p, q) in entries {
        t.set(i, j, k, flag_einstein::Q::new(p, q));
    }
    t
}

/// Index of the entry of `found` closest to `target`, and that distance.
pub fn nearest(found: &[Vec<f64>], target: &[f64]) -> (usize, f64) {
    found
        .iter()
        .enumerate()
        .map(|(i, x)| (i, x.iter().zip(target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

/// Writes past the test harness's output capture, so the line appears in
/// the run log even for passing tests.
pub fn report_line(line: &str) {
    let out = std::io::stdout();
    let mut lock = out.lock();
    let _ = writeln!(lock, "{line}");
    let _ = lock.flush();
}

/// Collects named checks and prints one verdict line for a criterion.
pub struct Verdict {
    pub name: String,
    pub failures: Vec<String>,
}

impl Verdict {
    pub fn new(name: &str) -> Self {
        Verdict {
            name: name.to_string(),
            failures: Vec::new(),
        }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn finish(self) {
        if self.failures.is_empty() {
            report_line(&format!("{}: PASS", self.name));
        } else {
            report_line(&format!("{}: FAIL", self.name));
            for f in &self.failures {
                report_line(&format!("    {f}"));
            }
            panic!("{} failed: {:#?}", self.name, self.failures);
        }
    }
}
