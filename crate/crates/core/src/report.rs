//! End-to-end runs and their TOML reports.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, CatalogEntry};
use crate::einstein::{classify, EinsteinClassification, SolverConfig};
use crate::error::{Error, Result};
use crate::flag::{paint, FlagSpace};
use crate::liealg::load_or_build;
use crate::rootsys::{build_root_system, LieType};
use crate::triples::submersion::submersion_triples;
use crate::triples::{assert_agreement, triples_oracle, TripleTable};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleSource {
    Oracle,
    Paper,
    Both,
}

impl FromStr for TripleSource {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "oracle" => Ok(TripleSource::Oracle),
            "paper" => Ok(TripleSource::Paper),
            "both" => Ok(TripleSource::Both),
            _ => Err(Error::Parse(format!("unknown triple source `{s}`"))),
        }
    }
}

impl fmt::Display for TripleSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleSource::Oracle => "oracle",
            TripleSource::Paper => "paper",
            TripleSource::Both => "both",
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub source: TripleSource,
    pub solver: SolverConfig,
    pub cache_dir: Option<PathBuf>,
    pub expect: Option<usize>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            source: TripleSource::Both,
            solver: SolverConfig::default(),
            cache_dir: None,
            expect: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceInfo {
    pub lie_type: String,
    pub node: usize,
    pub name: String,
    pub isotropy: String,
    pub modules: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleInfo {
    /// Which computations produced `values`.
    pub source: String,
    /// Set when two sources were compared.
    pub agreement: Option<bool>,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub kahler: usize,
    pub non_kahler: usize,
    pub isometry_classes: usize,
    pub rejected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    pub x: Vec<f64>,
    pub x_unit_lambda: Vec<f64>,
    pub lambda: f64,
    pub lambda_spread: f64,
    pub scalar: f64,
    pub log_volume: f64,
    pub h_invariant: f64,
    pub kahler: bool,
    pub residual: f64,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub space: SpaceInfo,
    pub dims: Vec<usize>,
    pub isotropy_dim: usize,
    pub triples: TripleInfo,
    pub solver: SolverConfig,
    pub counts: Counts,
    pub expected: Option<usize>,
    pub notes: Vec<String>,
    pub solutions: Vec<SolutionRecord>,
    /// Wall-clock seconds per stage; kept out of the serialized report so
    /// that it stays a pure function of its inputs.
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

/// A report together with the assertions that failed while producing it.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub report: RunReport,
    pub failures: Vec<String>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Stopwatch {
    start: Instant,
    laps: Vec<(String, f64)>,
}

impl Stopwatch {
    fn new() -> Self {
        Stopwatch {
            start: Instant::now(),
            laps: Vec::new(),
        }
    }
    fn lap(&mut self, name: &str) {
        self.laps.push((name.to_string(), self.start.elapsed().as_secs_f64()));
        self.start = Instant::now();
    }
}

fn oracle_table(fs: &FlagSpace, opts: &RunOptions) -> Result<TripleTable> {
    let alg = load_or_build(fs.rs.lie_type, opts.cache_dir.as_deref())?;
    triples_oracle(fs, &alg)
}

/// Triples per the requested source, with the notes and failures to report.
fn resolve_triples(
    fs: &FlagSpace,
    opts: &RunOptions,
    notes: &mut Vec<String>,
    failures: &mut Vec<String>,
) -> Result<(TripleTable, TripleInfo)> {
    let lie = fs.rs.lie_type.to_string();
    let paper = match submersion_triples(&lie, fs.painted) {
        Ok(t) => Some(t),
        Err(Error::NoSubmersionMethod) => None,
        Err(e) => return Err(e),
    };
    let info = |source: &str, agreement, t: &TripleTable| TripleInfo {
        source: source.to_string(),
        agreement,
        values: t.to_map(),
    };
    match (opts.source, paper) {
        (TripleSource::Paper, Some(p)) => {
            let i = info("paper", None, &p);
            Ok((p, i))
        }
        (TripleSource::Paper, None) => Err(Error::NoSubmersionMethod),
        (TripleSource::Both, Some(p)) => {
            let o = oracle_table(fs, opts)?;
            let ag = assert_agreement(&o, &p);
            if !ag.passed {
                failures.push(format!("oracle and submersion triples differ:\n{ag}"));
            }
            let i = info("both", Some(ag.passed), &o);
            Ok((o, i))
        }
        (TripleSource::Both, None) => {
            notes.push("no submersion system for this space; triples from the bracket table only".into());
            let o = oracle_table(fs, opts)?;
            let i = info("oracle", None, &o);
            Ok((o, i))
        }
        (TripleSource::Oracle, _) => {
            let o = oracle_table(fs, opts)?;
            let i = info("oracle", None, &o);
            Ok((o, i))
        }
    }
}

/// Triples for `fs` per `opts.source`; the second value is the diff when two
/// sources disagree.
pub fn triples_for(fs: &FlagSpace, opts: &RunOptions) -> Result<(TripleTable, Option<String>)> {
    let (mut notes, mut failures) = (Vec::new(), Vec::new());
    let (t, _) = resolve_triples(fs, opts, &mut notes, &mut failures)?;
    for n in notes {
        log::warn!("{n}");
    }
    Ok((t, (!failures.is_empty()).then(|| failures.join("\n"))))
}

fn records(c: &EinsteinClassification) -> Vec<SolutionRecord> {
    c.solutions
        .iter()
        .map(|s| SolutionRecord {
            x: s.x.clone(),
            x_unit_lambda: s.unit_lambda(),
            lambda: s.lambda,
            lambda_spread: s.lambda_spread,
            scalar: s.scalar,
            log_volume: s.log_volume,
            h_invariant: s.h_invariant,
            kahler: s.is_kahler,
            residual: s.residual,
            class: s.class_id,
        })
        .collect()
}

pub fn run_classify(t: LieType, node: usize, opts: &RunOptions) -> Result<RunOutcome> {
    let mut sw = Stopwatch::new();
    let rs = build_root_system(t)?;
    let fs = paint(&rs, node)?;
    sw.lap("flag");
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let (table, triples) = resolve_triples(&fs, opts, &mut notes, &mut failures)?;
    sw.lap("triples");
    let violations = table.rule_violations();
    if !violations.is_empty() {
        failures.push(format!("triples violate the selection rule at {violations:?}"));
    }
    let c = classify(&fs, &table, &opts.solver)?;
    sw.lap("solve");
    if c.kahler != 1 {
        failures.push(format!(
            "found {} Kähler–Einstein solutions, expected exactly one",
            c.kahler
        ));
    }
    if let Some(bad) = c.solutions.iter().find(|s| s.residual >= opts.solver.newton_tol) {
        failures.push(format!("solution {:?} has residual {:e}", bad.x, bad.residual));
    }
    if let Some(e) = opts.expect {
        if c.isometry_classes != e {
            failures.push(format!("expected {e} isometry classes, found {}", c.isometry_classes));
        }
    }
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        space: SpaceInfo {
            lie_type: t.to_string(),
            node,
            name: fs.name(),
            isotropy: fs.isotropy_label(),
            modules: fs.n,
        },
        dims: fs.dims.clone(),
        isotropy_dim: fs.h_dim,
        triples,
        solver: opts.solver.clone(),
        counts: Counts {
            kahler: c.kahler,
            non_kahler: c.non_kahler,
            isometry_classes: c.isometry_classes,
            rejected: c.rejected,
        },
        expected: opts.expect,
        notes,
        solutions: records(&c),
        timings: std::mem::take(&mut sw.laps),
    };
    Ok(RunOutcome { report, failures })
}

impl RunReport {
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_toml(s: &str) -> Result<Self> {
        toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Human-readable table of solutions.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} ({} modules, dims {:?})\n",
            self.space.name, self.space.modules, self.dims
        );
        s.push_str(&format!(
            "{:>3}  {:<8} {:>15} {:>15}  {}\n",
            "#", "kind", "lambda", "H_g", "x (x1 = 1)"
        ));
        for (i, r) in self.solutions.iter().enumerate() {
            let x: Vec<String> = r.x.iter().map(|v| sig9(*v)).collect();
            s.push_str(&format!(
                "{:>3}  {:<8} {:>15} {:>15}  ({})\n",
                i + 1,
                if r.kahler { "Kähler" } else { "Einstein" },
                sig9(r.lambda),
                sig9(r.h_invariant),
                x.join(", ")
            ));
        }
        s.push_str(&format!(
            "{} Kähler, {} non-Kähler, {} isometry classes\n",
            self.counts.kahler, self.counts.non_kahler, self.counts.isometry_classes
        ));
        for n in &self.notes {
            s.push_str(&format!("note: {n}\n"));
        }
        s
    }

    pub fn timings_text(&self) -> String {
        self.timings
            .iter()
            .map(|(k, v)| format!("{k}: {v:.3} s"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Nine significant digits.
pub fn sig9(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let mag = v.abs().log10().floor() as i32;
    if (-4..9).contains(&mag) {
        format!("{:.*}", (8 - mag).max(0) as usize, v)
    } else {
        format!("{v:.8e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub entry: CatalogEntry,
    pub name: String,
    pub computed: Option<usize>,
    pub passed: bool,
    pub detail: Vec<String>,
}

/// Runs every catalog entry of `subset` through the full pipeline.
pub fn run_table1(subset: catalog::Subset, opts: &RunOptions) -> Result<Vec<Table1Row>> {
    let mut rows = Vec::new();
    for entry in catalog::table1(subset)? {
        let o = RunOptions {
            expect: Some(entry.expected),
            ..opts.clone()
        };
        let out = run_classify(entry.lie_type, entry.node, &o)?;
        log::info!("{} node {}: {}", entry.lie_type, entry.node, out.report.timings_text());
        rows.push(Table1Row {
            name: out.report.space.name.clone(),
            computed: Some(out.report.counts.isometry_classes),
            passed: out.passed(),
            detail: out.failures,
            entry,
        });
    }
    Ok(rows)
}

pub fn table1_text(rows: &[Table1Row]) -> String {
    let mut s = format!(
        "{:<5} {:>4}  {:<38} {:>5} {:>8} {:>8}  {}\n",
        "type", "node", "space", "class", "expected", "computed", "status"
    );
    for r in rows {
        s.push_str(&format!(
            "{:<5} {:>4}  {:<38} {:>5} {:>8} {:>8}  {}\n",
            r.entry.lie_type.to_string(),
            r.entry.node,
            r.name,
            r.entry.class,
            r.entry.expected,
            r.computed.map_or("-".to_string(), |c| c.to_string()),
            if r.passed { "ok" } else { "FAIL" }
        ));
        for d in &r.detail {
            s.push_str(&format!("      {d}\n"));
        }
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    s.push_str(&format!("{} spaces, {} mismatches\n", rows.len(), failed));
    s
}
