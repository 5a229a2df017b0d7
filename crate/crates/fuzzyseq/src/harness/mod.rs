//! Named experiments and the reports they produce.
//!
//! Declarative experiments are JSON files (see [`crate::spec`]); the
//! inequality suites that need randomized or hand-built inputs are coded in
//! [`suites`]. Every experiment yields a [`Report`] whose body depends only
//! on the experiment definition and the code.

mod chain;
mod oracle;
pub(crate) mod runner;
pub mod suites;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use fuzzyseq_core::{LacunaryError, ParamError, VerdictError, VerdictKind};

use crate::spec::{ExperimentSpec, OrderAxis, SpecError};

pub use chain::Chain;
pub use oracle::{verify_closed_forms, ALPHA_GRID, ORACLE_TOLERANCE};
pub use runner::run_spec;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Lacunary(#[from] LacunaryError),
    #[error(transparent)]
    Verdict(#[from] VerdictError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Indeterminate,
    Fail,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Indeterminate => "indeterminate",
            Status::Fail => "fail",
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub r: usize,
    pub k_r: u64,
    pub h_r: u64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictSummary {
    pub kind: String,
    pub points: usize,
    pub window: usize,
    pub head_max: f64,
    pub tail_min: f64,
    pub tail_max: f64,
    pub slope: Option<f64>,
}

impl From<&fuzzyseq_core::Verdict> for VerdictSummary {
    fn from(v: &fuzzyseq_core::Verdict) -> Self {
        VerdictSummary {
            kind: v.kind.name().to_string(),
            points: v.points,
            window: v.window,
            head_max: v.head_max,
            tail_min: v.tail_min,
            tail_max: v.tail_max,
            slope: v.slope,
        }
    }
}

impl VerdictSummary {
    pub fn kind(&self) -> Option<VerdictKind> {
        VerdictKind::from_name(&self.kind)
    }
}

/// One grid cell: a statistic series, its verdict and the expectation it met.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellReport {
    pub key: String,
    pub limit: String,
    pub estimator: String,
    pub kind: String,
    pub axis: OrderAxis,
    pub order: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    pub m: u32,
    pub expected: Vec<String>,
    pub verdict: Option<VerdictSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
    pub series: Vec<SeriesPoint>,
}

impl CellReport {
    pub fn verdict_kind(&self) -> Option<VerdictKind> {
        self.verdict.as_ref().and_then(VerdictSummary::kind)
    }
}

/// An inequality, equality or label check. `holds` is the observed truth of
/// `lhs op rhs`; the row passes when it matches `expected`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub instance: String,
    /// The block reported: the tightest one for per-block chains.
    pub r: Option<usize>,
    pub lhs: f64,
    pub op: String,
    pub rhs: f64,
    pub holds: bool,
    pub expected: bool,
    pub pass: bool,
}

impl CheckRow {
    pub fn new(
        name: &str,
        instance: String,
        r: Option<usize>,
        lhs: f64,
        op: &str,
        rhs: f64,
        holds: bool,
    ) -> Self {
        CheckRow {
            name: name.to_string(),
            instance,
            r,
            lhs,
            op: op.to_string(),
            rhs,
            holds,
            expected: true,
            pass: holds,
        }
    }

    pub fn expecting(mut self, expected: bool) -> Self {
        self.expected = expected;
        self.pass = self.holds == expected;
        self
    }
}

/// Largest endpoint deviation between computed Δ^m cuts and the published
/// closed form over one `(m, index class, α)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub example: String,
    pub m: u32,
    pub class: String,
    pub alpha: f64,
    pub samples: u64,
    pub lo_deviation: f64,
    pub hi_deviation: f64,
    pub expected_hi: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LimitRow {
    pub name: String,
    pub m: u32,
    pub source: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub threads: usize,
    pub generated_unix_ms: u128,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub experiment: String,
    pub title: String,
    pub covers: Vec<String>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub limits: Vec<LimitRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub deviations: Vec<DeviationRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl Report {
    pub fn new(experiment: &str, title: &str, covers: &[&str]) -> Self {
        Report {
            experiment: experiment.to_string(),
            title: title.to_string(),
            covers: covers.iter().map(|s| s.to_string()).collect(),
            status: Status::Pass,
            limits: Vec::new(),
            cells: Vec::new(),
            checks: Vec::new(),
            deviations: Vec::new(),
            meta: None,
        }
    }

    /// Fail if anything failed, else indeterminate if any cell was, else pass.
    pub fn settle(&mut self) {
        let cells = self.cells.iter().map(|c| c.status);
        let checks = self.checks.iter().map(|c| Status::from_bool(c.pass));
        let deviations = self.deviations.iter().map(|d| Status::from_bool(d.pass));
        self.status = cells
            .chain(checks)
            .chain(deviations)
            .max()
            .unwrap_or(Status::Pass);
    }

    pub fn cell(&self, key: &str) -> Option<&CellReport> {
        self.cells.iter().find(|c| c.key == key)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut n = (0, 0, 0);
        let statuses = self
            .cells
            .iter()
            .map(|c| c.status)
            .chain(self.checks.iter().map(|c| Status::from_bool(c.pass)))
            .chain(self.deviations.iter().map(|d| Status::from_bool(d.pass)));
        for s in statuses {
            match s {
                Status::Pass => n.0 += 1,
                Status::Fail => n.1 += 1,
                Status::Indeterminate => n.2 += 1,
            }
        }
        n
    }
}

const BUILTIN: [&str; 4] = [
    include_str!("../../experiments/exp-beta-gt-1.json"),
    include_str!("../../experiments/exp-thm-2.5.json"),
    include_str!("../../experiments/exp-thm-2.7.json"),
    include_str!("../../experiments/exp-thm-2.12.json"),
];

/// Every result label the catalog must cover, each by exactly one experiment.
pub const RESULTS: [&str; 18] = [
    "beta-gt-1-example",
    "lemma-2.2",
    "thm-2.3",
    "thm-2.5",
    "thm-2.5-strictness",
    "thm-2.7",
    "thm-2.7-strictness",
    "thm-2.9",
    "thm-2.10",
    "thm-2.11",
    "thm-2.12",
    "thm-2.12-strictness",
    "thm-2.14",
    "thm-2.15",
    "thm-2.16",
    "thm-3.2",
    "thm-3.3",
    "thm-3.4",
];

#[derive(Debug, Clone)]
pub enum Experiment {
    Spec(Box<ExperimentSpec>),
    Inclusions,
    ThetaConditions,
    Uniqueness,
    Modulus,
}

impl Experiment {
    pub fn id(&self) -> &str {
        match self {
            Experiment::Spec(s) => &s.id,
            Experiment::Inclusions => suites::INCLUSIONS,
            Experiment::ThetaConditions => suites::THETA_CONDITIONS,
            Experiment::Uniqueness => suites::UNIQUENESS,
            Experiment::Modulus => suites::MODULUS,
        }
    }

    pub fn covers(&self) -> Vec<String> {
        let fixed: &[&str] = match self {
            Experiment::Spec(s) => return s.covers.clone(),
            Experiment::Inclusions => &suites::INCLUSIONS_COVERS,
            Experiment::ThetaConditions => &suites::THETA_COVERS,
            Experiment::Uniqueness => &suites::UNIQUENESS_COVERS,
            Experiment::Modulus => &suites::MODULUS_COVERS,
        };
        fixed.iter().map(|s| s.to_string()).collect()
    }

    pub fn run(&self) -> Result<Report, HarnessError> {
        match self {
            Experiment::Spec(s) => run_spec(s),
            Experiment::Inclusions => suites::inclusions(),
            Experiment::ThetaConditions => suites::theta_conditions(),
            Experiment::Uniqueness => suites::uniqueness(),
            Experiment::Modulus => suites::modulus(),
        }
    }
}

/// The built-in experiments in reporting order.
pub fn catalog() -> Vec<Experiment> {
    let mut out: Vec<Experiment> = BUILTIN
        .iter()
        .map(|text| {
            Experiment::Spec(Box::new(
                ExperimentSpec::from_json(text).expect("built-in spec parses"),
            ))
        })
        .collect();
    out.extend([
        Experiment::Inclusions,
        Experiment::ThetaConditions,
        Experiment::Uniqueness,
        Experiment::Modulus,
    ]);
    out
}

pub fn find(id: &str) -> Option<Experiment> {
    catalog().into_iter().find(|e| e.id() == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn every_result_is_covered_exactly_once() {
        let mut owners: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for e in catalog() {
            for label in e.covers() {
                owners.entry(label).or_default().push(e.id().to_string());
            }
        }
        for label in RESULTS {
            let ids = owners.remove(label).unwrap_or_default();
            assert_eq!(ids.len(), 1, "{label} covered by {ids:?}");
        }
        assert!(owners.is_empty(), "unlisted labels: {owners:?}");
    }

    #[test]
    fn catalog_ids_are_unique() {
        let ids: Vec<String> = catalog().iter().map(|e| e.id().to_string()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
        assert!(find("exp-thm-2.7").is_some());
        assert!(find("nope").is_none());
    }

    #[test]
    fn status_settles_to_the_worst() {
        let mut r = Report::new("x", "", &[]);
        r.checks.push(CheckRow::new(
            "a",
            String::new(),
            None,
            1.0,
            ">=",
            0.0,
            true,
        ));
        r.settle();
        assert_eq!(r.status, Status::Pass);
        r.checks
            .push(CheckRow::new("b", String::new(), None, 0.0, ">=", 1.0, false).expecting(false));
        r.settle();
        assert_eq!(r.status, Status::Pass);
        r.checks.push(CheckRow::new(
            "c",
            String::new(),
            None,
            0.0,
            ">=",
            1.0,
            false,
        ));
        r.settle();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.counts(), (2, 1, 0));
    }
}
