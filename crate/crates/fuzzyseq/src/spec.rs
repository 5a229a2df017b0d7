//! JSON experiment files and the smaller specs shared with the CLI.
//!
//! ```json
//! {
//!   "id": "exp-demo",
//!   "sequence": {"example": "thm-2.12-strict"},
//!   "theta": {"rule": "powers", "base": 2},
//!   "limits": [{"name": "dominant", "value": "auto"}],
//!   "grid": {"beta": [0.3], "gamma": [0.5], "p": [1], "epsilon": [1], "m": [1]},
//!   "estimators": ["strong"],
//!   "horizon": 24,
//!   "expectations": [
//!     {"match": {"axis": "beta"}, "verdicts": ["growing", "bounded-away"]},
//!     {"match": {"axis": "gamma"}, "verdicts": ["tends-to-zero"]}
//!   ],
//!   "relations": [{"kind": "mean-monotone"}]
//! }
//! ```

use std::fmt;
use std::str::FromStr;

use fuzzyseq_core::estimators::dominant_limit;
use fuzzyseq_core::{
    CatalogSequence, Difference, ExampleId, FuzzyNumber, FuzzySequence, GrowthPolicy, IndexClass,
    LacunaryError, LacunaryRule, LacunaryStructure, ModulusFunction, Rule, RuleError, RuleSequence,
    StatisticKind, Thresholds, VerdictKind,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::literal::{parse_fuzzy, LiteralError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("unknown example id `{0}`")]
    UnknownExample(String),
    #[error("sequence spec needs exactly one of `example` or `rules`")]
    SequenceShape,
    #[error("unknown index class `{0}` (expected cube, square, even or all)")]
    IndexClass(String),
    #[error(transparent)]
    Rules(#[from] RuleError),
    #[error("invalid fuzzy literal")]
    Literal(#[from] LiteralError),
    #[error("theta spec needs either `rule` or `explicit`")]
    ThetaShape,
    #[error("unknown theta `{0}`")]
    ThetaRule(String),
    #[error(transparent)]
    Lacunary(#[from] LacunaryError),
    #[error("limit `{0}`: {1}")]
    Limit(String, String),
    #[error("unknown estimator `{0}`")]
    Estimator(String),
    #[error("unknown modulus `{0}`")]
    Modulus(String),
    #[error("unknown verdict `{0}`")]
    Verdict(String),
    #[error("beta = {0} > 1 requires the pathology flag (allowBetaGtOne, --allow-beta-gt-1)")]
    BetaGate(f64),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("cell `{cell}` matches {count} expectations; exactly one is required")]
    Expectation { cell: String, count: usize },
    #[error("malformed JSON")]
    Json(#[from] serde_json::Error),
}

/// Either a reference sequence or an inline first-match rule list.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<RuleSpec>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RuleSpec {
    pub index_class: String,
    pub value: String,
}

#[derive(Debug, Clone)]
pub enum AnySequence {
    Example(CatalogSequence),
    Rules(RuleSequence),
}

impl AnySequence {
    pub fn example(&self) -> Option<ExampleId> {
        match self {
            AnySequence::Example(s) => Some(s.id()),
            AnySequence::Rules(_) => None,
        }
    }
}

impl FuzzySequence for AnySequence {
    fn term(&self, k: u64) -> FuzzyNumber {
        match self {
            AnySequence::Example(s) => s.term(k),
            AnySequence::Rules(s) => s.term(k),
        }
    }

    fn representative_index(&self, m: u32) -> u64 {
        match self {
            AnySequence::Example(s) => s.representative_index(m),
            AnySequence::Rules(s) => s.representative_index(m),
        }
    }
}

impl SequenceSpec {
    pub fn example(id: ExampleId) -> Self {
        SequenceSpec {
            example: Some(id.name().to_string()),
            rules: None,
        }
    }

    /// An example id, or a JSON sequence spec.
    pub fn parse_arg(arg: &str) -> Result<Self, SpecError> {
        if arg.trim_start().starts_with('{') {
            Ok(serde_json::from_str(arg)?)
        } else {
            Ok(SequenceSpec {
                example: Some(arg.to_string()),
                rules: None,
            })
        }
    }

    pub fn build(&self) -> Result<AnySequence, SpecError> {
        match (&self.example, &self.rules) {
            (Some(id), None) => id
                .parse::<ExampleId>()
                .map(|id| AnySequence::Example(id.sequence()))
                .map_err(|_| SpecError::UnknownExample(id.clone())),
            (None, Some(rules)) => {
                let rules = rules
                    .iter()
                    .map(|r| {
                        let class = IndexClass::from_name(&r.index_class)
                            .ok_or_else(|| SpecError::IndexClass(r.index_class.clone()))?;
                        Ok(Rule {
                            class,
                            value: parse_fuzzy(&r.value)?,
                        })
                    })
                    .collect::<Result<Vec<_>, SpecError>>()?;
                Ok(AnySequence::Rules(RuleSequence::new(rules)?))
            }
            _ => Err(SpecError::SequenceShape),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShrinkPolicy {
    #[default]
    Error,
    Warn,
}

/// `{"rule": "powers", "base": 2}`, `{"rule": "triangular"}`,
/// `{"rule": "squares"}` or `{"explicit": [0, ...]}`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ThetaSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "is_default")]
    pub on_shrink: ShrinkPolicy,
}

fn is_default<T: Default + PartialEq>(t: &T) -> bool {
    *t == T::default()
}

impl ThetaSpec {
    pub fn powers(base: u64) -> Self {
        ThetaSpec {
            rule: Some("powers".into()),
            base: Some(base),
            ..Default::default()
        }
    }

    /// Short CLI form: `powers2`, `powers3`, `triangular`, `squares` or
    /// `explicit:0,2,6,14`.
    pub fn parse_arg(arg: &str) -> Result<Self, SpecError> {
        let bad = || SpecError::ThetaRule(arg.to_string());
        if let Some(list) = arg.strip_prefix("explicit:") {
            let terms = list
                .split(',')
                .map(|t| t.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(ThetaSpec {
                explicit: Some(terms),
                ..Default::default()
            });
        }
        if let Some(base) = arg.strip_prefix("powers") {
            let base = if base.is_empty() {
                2
            } else {
                base.parse().map_err(|_| bad())?
            };
            return Ok(ThetaSpec::powers(base));
        }
        match arg {
            "triangular" | "squares" => Ok(ThetaSpec {
                rule: Some(arg.into()),
                ..Default::default()
            }),
            _ => Err(bad()),
        }
    }

    /// The structure with blocks `1..=r_max` (explicit lists are cut to `r_max`).
    pub fn build(&self, r_max: u32) -> Result<LacunaryStructure, SpecError> {
        match (&self.rule, &self.explicit) {
            (Some(rule), None) => {
                let rule = match rule.as_str() {
                    "powers" => LacunaryRule::Powers {
                        base: self.base.unwrap_or(2),
                    },
                    "triangular" => LacunaryRule::Triangular,
                    "squares" => LacunaryRule::Squares,
                    other => return Err(SpecError::ThetaRule(other.to_string())),
                };
                Ok(LacunaryStructure::from_rule(rule, r_max)?)
            }
            (None, Some(kr)) => {
                let take = kr.len().min(r_max as usize + 1);
                let policy = match self.on_shrink {
                    ShrinkPolicy::Error => GrowthPolicy::Error,
                    ShrinkPolicy::Warn => GrowthPolicy::Warn,
                };
                Ok(LacunaryStructure::explicit(kr[..take].to_vec(), policy)?)
            }
            _ => Err(SpecError::ThetaShape),
        }
    }
}

/// Where a limit candidate comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitSource {
    /// Δ^m value at the sequence's representative index.
    Auto,
    /// Published closed form of the reference sequence at index `k`.
    Oracle(u64),
    /// Computed Δ^m value at index `k`.
    At(u64),
    Literal(FuzzyNumber),
}

impl FromStr for LimitSource {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let s = s.trim();
        let index = |t: &str| {
            t.parse::<u64>().ok().filter(|&k| k >= 1).ok_or_else(|| {
                SpecError::Limit(s.to_string(), "index must be a positive integer".into())
            })
        };
        if s == "auto" {
            Ok(LimitSource::Auto)
        } else if let Some(k) = s.strip_prefix("oracle:") {
            Ok(LimitSource::Oracle(index(k)?))
        } else if let Some(k) = s.strip_prefix("at:") {
            Ok(LimitSource::At(index(k)?))
        } else {
            Ok(LimitSource::Literal(parse_fuzzy(s)?))
        }
    }
}

impl fmt::Display for LimitSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LimitSource::Auto => f.write_str("auto"),
            LimitSource::Oracle(k) => write!(f, "oracle:{k}"),
            LimitSource::At(k) => write!(f, "at:{k}"),
            LimitSource::Literal(x) => write!(f, "{x}"),
        }
    }
}

impl LimitSource {
    pub fn resolve(&self, seq: &AnySequence, m: u32) -> Result<FuzzyNumber, SpecError> {
        match self {
            LimitSource::Auto => Ok(dominant_limit(seq, m)),
            LimitSource::At(k) => Ok(Difference::new(seq, m).term(*k)),
            LimitSource::Literal(x) => Ok(x.clone()),
            LimitSource::Oracle(k) => {
                let id = seq.example().ok_or_else(|| {
                    SpecError::Limit(self.to_string(), "needs a reference sequence".into())
                })?;
                id.closed_form_number(m, *k).ok_or_else(|| {
                    SpecError::Limit(
                        self.to_string(),
                        format!("no closed form for {id} at m={m}"),
                    )
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedLimit {
    pub name: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Estimator {
    Density,
    Strong,
    Cesaro,
    Prefix,
    Modulus(ModulusFunction),
}

impl FromStr for Estimator {
    type Err = SpecError;

    /// `density`, `strong`, `cesaro`, `prefix`, or `modulus:<name>`.
    fn from_str(s: &str) -> Result<Self, SpecError> {
        match s {
            "density" => Ok(Estimator::Density),
            "strong" => Ok(Estimator::Strong),
            "cesaro" => Ok(Estimator::Cesaro),
            "prefix" => Ok(Estimator::Prefix),
            "modulus" => Ok(Estimator::Modulus(ModulusFunction::Identity)),
            _ => match s.strip_prefix("modulus:") {
                Some(name) => ModulusFunction::from_name(name)
                    .map(Estimator::Modulus)
                    .ok_or_else(|| SpecError::Modulus(name.to_string())),
                None => Err(SpecError::Estimator(s.to_string())),
            },
        }
    }
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Estimator::Density => f.write_str("density"),
            Estimator::Strong => f.write_str("strong"),
            Estimator::Cesaro => f.write_str("cesaro"),
            Estimator::Prefix => f.write_str("prefix"),
            Estimator::Modulus(m) => write!(f, "modulus:{m}"),
        }
    }
}

impl Estimator {
    pub fn kind(&self) -> StatisticKind {
        match self {
            Estimator::Density => StatisticKind::LacunaryDensity,
            Estimator::Strong => StatisticKind::StrongLacunaryMean,
            Estimator::Cesaro => StatisticKind::CesaroMean,
            Estimator::Prefix => StatisticKind::PrefixDensity,
            Estimator::Modulus(_) => StatisticKind::ModulusMean,
        }
    }

    pub fn uses_epsilon(&self) -> bool {
        self.kind().is_density()
    }

    pub fn uses_p(&self) -> bool {
        !self.uses_epsilon()
    }

    pub fn is_prefix(&self) -> bool {
        matches!(self, Estimator::Cesaro | Estimator::Prefix)
    }

    pub fn modulus(&self) -> Option<&ModulusFunction> {
        match self {
            Estimator::Modulus(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default)]
    pub beta: Vec<f64>,
    #[serde(default)]
    pub gamma: Vec<f64>,
    #[serde(default = "one_f64")]
    pub p: Vec<f64>,
    #[serde(default = "one_f64")]
    pub epsilon: Vec<f64>,
    #[serde(default = "one_u32")]
    pub m: Vec<u32>,
}

fn one_f64() -> Vec<f64> {
    vec![1.0]
}

fn one_u32() -> Vec<u32> {
    vec![1]
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ThresholdSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub growth: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat_slope: Option<f64>,
}

impl ThresholdSpec {
    pub fn resolve(&self) -> Thresholds {
        let d = Thresholds::default();
        Thresholds {
            zero: self.zero.unwrap_or(d.zero),
            growth: self.growth.unwrap_or(d.growth),
            flat_slope: self.flat_slope.unwrap_or(d.flat_slope),
        }
    }
}

/// Which grid axis an order value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderAxis {
    Beta,
    Gamma,
}

impl fmt::Display for OrderAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderAxis::Beta => "beta",
            OrderAxis::Gamma => "gamma",
        })
    }
}

/// Cell filter; absent fields match everything.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellMatch {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub estimator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<OrderAxis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Vec<u32>>,
}

/// Every block from `from_r` on must equal `equals` exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ValueExpectation {
    pub from_r: usize,
    pub equals: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    #[serde(rename = "match", default)]
    pub when: CellMatch,
    pub verdicts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ValueExpectation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `density(β, r) >= density(γ, r)` for `β <= γ`.
    OrderMonotone,
    /// `strong(β, r) >= strong(γ, r)` for `β <= γ`.
    MeanMonotone,
    /// `strong(β, p, r) >= ε^p density(γ, ε, r)` for `β <= γ`.
    Chebyshev,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub kind: RelationKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct OracleSpec {
    pub m_max: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentSpec {
    pub id: String,
    #[serde(default)]
    pub title: String,
    /// Result labels this experiment is responsible for.
    #[serde(default)]
    pub covers: Vec<String>,
    pub sequence: SequenceSpec,
    pub theta: ThetaSpec,
    #[serde(default = "auto_limit")]
    pub limits: Vec<NamedLimit>,
    pub grid: GridSpec,
    pub estimators: Vec<String>,
    pub horizon: u32,
    #[serde(default)]
    pub thresholds: ThresholdSpec,
    #[serde(default)]
    pub allow_beta_gt_one: bool,
    pub expectations: Vec<Expectation>,
    #[serde(default)]
    pub relations: Vec<Relation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
}

fn auto_limit() -> Vec<NamedLimit> {
    vec![NamedLimit {
        name: "auto".into(),
        value: "auto".into(),
    }]
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn parse_verdict(name: &str) -> Result<VerdictKind, SpecError> {
    VerdictKind::from_name(name).ok_or_else(|| SpecError::Verdict(name.to_string()))
}
