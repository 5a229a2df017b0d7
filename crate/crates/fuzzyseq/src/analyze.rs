//! Ad hoc statistic series for one sequence, limit and order.

use rayon::prelude::*;

use fuzzyseq_core::estimators::{block_totals, prefix_totals};
use fuzzyseq_core::{verdict, BlockStatistic, Thresholds, Verdict};

use crate::harness::runner::order_params;
use crate::harness::HarnessError;
use crate::spec::{Estimator, LimitSource, SequenceSpec, ThetaSpec};

#[derive(Debug, Clone)]
pub struct AnalyzeConfig {
    pub sequence: SequenceSpec,
    pub limit: LimitSource,
    pub m: u32,
    pub beta: f64,
    pub epsilon: f64,
    pub theta: ThetaSpec,
    pub r_max: u32,
    pub estimator: Estimator,
    pub p: f64,
    pub allow_beta_gt_one: bool,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone)]
pub struct Analysis {
    pub series: Vec<BlockStatistic>,
    /// `None` when the series is too short to classify.
    pub verdict: Option<Verdict>,
}

/// Validates everything, then computes one row per block (per checkpoint
/// `k_r` for the prefix kinds).
pub fn analyze(cfg: &AnalyzeConfig) -> Result<Analysis, HarnessError> {
    let params =
        order_params(cfg.beta, cfg.epsilon, cfg.m, cfg.allow_beta_gt_one)?.with_p(cfg.p)?;
    let seq = cfg.sequence.build()?;
    let theta = cfg.theta.build(cfg.r_max)?;
    let x0 = cfg.limit.resolve(&seq, cfg.m)?;
    let kind = cfg.estimator.kind();

    let series: Vec<BlockStatistic> = if cfg.estimator.is_prefix() {
        let checkpoints: Vec<u64> = (1..=theta.r_max())
            .map(|r| theta.k(r))
            .collect::<Result<_, _>>()?;
        prefix_totals(&seq, &x0, &params, &checkpoints)
            .into_iter()
            .enumerate()
            .map(|(i, (n, t))| t.prefix_statistic(n, i + 1, cfg.beta, kind))
            .collect()
    } else {
        let modulus = cfg.estimator.modulus();
        (1..=theta.r_max())
            .into_par_iter()
            .map(|r| {
                Ok(block_totals(&seq, &x0, &params, modulus, &theta, r)?
                    .block_statistic(&theta, r, cfg.beta, kind)?)
            })
            .collect::<Result<_, HarnessError>>()?
    };
    let verdict = verdict(&series, &cfg.thresholds).ok();
    Ok(Analysis { series, verdict })
}

/// `r,k_r,h_r,kind,value` per row, then `verdict,,,<verdict>,<tail max>`.
pub fn to_csv(a: &Analysis) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["r", "k_r", "h_r", "kind", "value"])
        .expect("in-memory write");
    for s in &a.series {
        w.write_record([
            s.r.to_string(),
            s.k_r.to_string(),
            s.h_r.to_string(),
            s.kind.name().to_string(),
            format!("{}", s.value),
        ])
        .expect("in-memory write");
    }
    let (name, tail) = match &a.verdict {
        Some(v) => (v.kind.name(), format!("{}", v.tail_max)),
        None => ("none", String::new()),
    };
    w.write_record(["verdict", "", "", name, &tail])
        .expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}
