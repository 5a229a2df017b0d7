use std::collections::BTreeMap;

use rayon::prelude::*;

use fuzzyseq_core::estimators::{block_totals, prefix_totals};
use fuzzyseq_core::{
    verdict, BlockStatistic, FuzzyNumber, LacunaryStructure, OrderParams, RangeTotals,
    StatisticKind, Thresholds, VerdictError, VerdictKind,
};

use super::{
    CellReport, Chain, HarnessError, LimitRow, Report, SeriesPoint, Status, VerdictSummary,
};
use crate::harness::oracle::{verify_closed_forms, ALPHA_GRID};
use crate::spec::{
    parse_verdict, AnySequence, CellMatch, Estimator, Expectation, ExperimentSpec, LimitSource,
    OrderAxis, RelationKind, SpecError,
};

/// Validated order parameters; β > 1 only behind the pathology flag.
pub(crate) fn order_params(
    beta: f64,
    epsilon: f64,
    m: u32,
    allow_gt_one: bool,
) -> Result<OrderParams, SpecError> {
    if beta > 1.0 && !allow_gt_one {
        return Err(SpecError::BetaGate(beta));
    }
    let params = if allow_gt_one {
        OrderParams::with_pathology(beta, epsilon, m)
    } else {
        OrderParams::new(beta, epsilon, m)
    };
    params.map_err(|e| SpecError::Param(e.to_string()))
}

/// Everything one pass over the sequence shares: the limit, `m`, ε, `p`, the
/// modulus and whether totals are per block or per prefix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct ScanKey {
    limit: usize,
    m: u32,
    epsilon: u64,
    p: u64,
    modulus: Option<String>,
    prefix: bool,
}

struct Cell {
    key: String,
    limit: usize,
    estimator: usize,
    m: u32,
    axis: OrderAxis,
    order: f64,
    epsilon: Option<f64>,
    p: Option<f64>,
    scan: usize,
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn matches(
    m: &CellMatch,
    cell: &Cell,
    limit_name: &str,
    estimator: &Estimator,
) -> Result<bool, SpecError> {
    let in_list = |list: &Option<Vec<f64>>, v: Option<f64>| match (list, v) {
        (None, _) => true,
        (Some(list), Some(v)) => list.contains(&v),
        (Some(_), None) => false,
    };
    if let Some(name) = &m.limit {
        if name != limit_name {
            return Ok(false);
        }
    }
    if let Some(e) = &m.estimator {
        if &e.parse::<Estimator>()? != estimator {
            return Ok(false);
        }
    }
    Ok(m.axis.is_none_or(|a| a == cell.axis)
        && in_list(&m.order, Some(cell.order))
        && in_list(&m.epsilon, cell.epsilon)
        && in_list(&m.p, cell.p)
        && m.m.as_ref().is_none_or(|ms| ms.contains(&cell.m)))
}

fn verdict_note(e: VerdictError) -> String {
    e.to_string()
}

/// Runs a declarative experiment.
///
/// Cells are enumerated limit, estimator, `m`, order (β axis first), then ε
/// for density kinds or `p` for mean kinds. Passes over the sequence are
/// shared between cells that differ only in order, blocks run in parallel,
/// and per-block sums stay sequential in `k`, so the report does not depend
/// on the thread count.
pub fn run_spec(spec: &ExperimentSpec) -> Result<Report, HarnessError> {
    let seq = spec.sequence.build()?;
    let theta = spec.theta.build(spec.horizon)?;
    let r_max = theta.r_max();
    let thresholds = spec.thresholds.resolve();
    let estimators = spec
        .estimators
        .iter()
        .map(|e| e.parse::<Estimator>())
        .collect::<Result<Vec<_>, _>>()?;
    let limits = spec
        .limits
        .iter()
        .map(|l| Ok((l.name.clone(), l.value.parse::<LimitSource>()?)))
        .collect::<Result<Vec<_>, SpecError>>()?;
    let expectations = spec
        .expectations
        .iter()
        .map(|e| {
            let verdicts = e
                .verdicts
                .iter()
                .map(|v| parse_verdict(v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((e, verdicts))
        })
        .collect::<Result<Vec<(&Expectation, Vec<VerdictKind>)>, SpecError>>()?;

    let mut report = Report::new(&spec.id, &spec.title, &[]);
    report.covers = spec.covers.clone();

    let mut x0: BTreeMap<(usize, u32), FuzzyNumber> = BTreeMap::new();
    for (li, (name, source)) in limits.iter().enumerate() {
        for &m in &spec.grid.m {
            let value = source.resolve(&seq, m)?;
            report.limits.push(LimitRow {
                name: name.clone(),
                m,
                source: source.to_string(),
                value: value.to_string(),
            });
            x0.insert((li, m), value);
        }
    }

    let orders: Vec<(OrderAxis, f64)> = spec
        .grid
        .beta
        .iter()
        .map(|&b| (OrderAxis::Beta, b))
        .chain(spec.grid.gamma.iter().map(|&g| (OrderAxis::Gamma, g)))
        .collect();
    for &(_, order) in &orders {
        order_params(order, 1.0, 0, spec.allow_beta_gt_one)?;
    }
    for &e in &spec.grid.epsilon {
        order_params(1.0, e, 0, false)?;
    }
    for &p in &spec.grid.p {
        OrderParams::new(1.0, 1.0, 0)?.with_p(p)?;
    }

    let mut scans: BTreeMap<ScanKey, usize> = BTreeMap::new();
    let mut cells = Vec::new();
    for (li, (limit_name, _)) in limits.iter().enumerate() {
        for (ei, est) in estimators.iter().enumerate() {
            for &m in &spec.grid.m {
                for &(axis, order) in &orders {
                    let variants: Vec<(Option<f64>, Option<f64>)> = if est.uses_epsilon() {
                        spec.grid.epsilon.iter().map(|&e| (Some(e), None)).collect()
                    } else {
                        spec.grid.p.iter().map(|&p| (None, Some(p))).collect()
                    };
                    for (epsilon, p) in variants {
                        let scan_key = ScanKey {
                            limit: li,
                            m,
                            epsilon: epsilon.unwrap_or(1.0).to_bits(),
                            p: p.unwrap_or(1.0).to_bits(),
                            modulus: est.modulus().map(|f| f.to_string()),
                            prefix: est.is_prefix(),
                        };
                        let next = scans.len();
                        let scan = *scans.entry(scan_key).or_insert(next);
                        let mut key = format!(
                            "limit={};estimator={est};m={m};{axis}={}",
                            limit_name,
                            fmt_num(order)
                        );
                        if let Some(e) = epsilon {
                            key.push_str(&format!(";eps={}", fmt_num(e)));
                        }
                        if let Some(p) = p {
                            key.push_str(&format!(";p={}", fmt_num(p)));
                        }
                        cells.push(Cell {
                            key,
                            limit: li,
                            estimator: ei,
                            m,
                            axis,
                            order,
                            epsilon,
                            p,
                            scan,
                        });
                    }
                }
            }
        }
    }

    let mut chosen = Vec::with_capacity(cells.len());
    for cell in &cells {
        let hits = expectations
            .iter()
            .filter_map(|(e, v)| {
                match matches(
                    &e.when,
                    cell,
                    &limits[cell.limit].0,
                    &estimators[cell.estimator],
                ) {
                    Ok(true) => Some(Ok((*e, v))),
                    Ok(false) => None,
                    Err(err) => Some(Err(err)),
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        if hits.len() != 1 {
            return Err(SpecError::Expectation {
                cell: cell.key.clone(),
                count: hits.len(),
            }
            .into());
        }
        chosen.push(hits[0]);
    }

    let mut jobs: Vec<(ScanKey, usize)> = scans.into_iter().collect();
    jobs.sort_by_key(|(_, i)| *i);
    let checkpoints: Vec<u64> = (1..=r_max).map(|r| theta.k(r)).collect::<Result<_, _>>()?;
    let totals = jobs
        .par_iter()
        .map(|(key, _)| {
            scan_totals(
                &seq,
                &x0[&(key.limit, key.m)],
                key,
                &estimators,
                &theta,
                &checkpoints,
            )
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;

    for (cell, (expectation, allowed)) in cells.iter().zip(chosen) {
        let est = &estimators[cell.estimator];
        let kind = est.kind();
        let series = cell_series(
            &totals[cell.scan],
            est.is_prefix(),
            &theta,
            &checkpoints,
            cell.order,
            kind,
        )?;
        report.cells.push(assess(
            cell,
            &limits[cell.limit].0,
            est,
            series,
            expectation,
            allowed,
            &thresholds,
        ));
    }

    for relation in &spec.relations {
        relation_checks(relation.kind, &report.cells, &mut report.checks);
    }

    if let Some(oracle) = &spec.oracle {
        let id = seq.example().ok_or_else(|| {
            SpecError::Limit("oracle".into(), "needs a reference sequence".into())
        })?;
        report.deviations = verify_closed_forms(id, oracle.m_max, &ALPHA_GRID);
    }
    report.settle();
    Ok(report)
}

fn scan_totals(
    seq: &AnySequence,
    x0: &FuzzyNumber,
    key: &ScanKey,
    estimators: &[Estimator],
    theta: &LacunaryStructure,
    checkpoints: &[u64],
) -> Result<Vec<RangeTotals>, HarnessError> {
    let params =
        OrderParams::new(1.0, f64::from_bits(key.epsilon), key.m)?.with_p(f64::from_bits(key.p))?;
    if key.prefix {
        return Ok(prefix_totals(seq, x0, &params, checkpoints)
            .into_iter()
            .map(|(_, t)| t)
            .collect());
    }
    let modulus = key.modulus.as_ref().and_then(|name| {
        estimators
            .iter()
            .filter_map(Estimator::modulus)
            .find(|f| &f.to_string() == name)
    });
    (1..=theta.r_max())
        .into_par_iter()
        .map(|r| Ok(block_totals(seq, x0, &params, modulus, theta, r)?))
        .collect()
}

fn cell_series(
    totals: &[RangeTotals],
    prefix: bool,
    theta: &LacunaryStructure,
    checkpoints: &[u64],
    order: f64,
    kind: StatisticKind,
) -> Result<Vec<BlockStatistic>, HarnessError> {
    totals
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let r = i + 1;
            if prefix {
                Ok(t.prefix_statistic(checkpoints[i], r, order, kind))
            } else {
                Ok(t.block_statistic(theta, r, order, kind)?)
            }
        })
        .collect()
}

fn assess(
    cell: &Cell,
    limit: &str,
    est: &Estimator,
    series: Vec<BlockStatistic>,
    expectation: &Expectation,
    allowed: &[VerdictKind],
    thresholds: &Thresholds,
) -> CellReport {
    let mut note = None;
    let verdict = match verdict(&series, thresholds) {
        Ok(v) => Some(v),
        Err(e) => {
            note = Some(verdict_note(e));
            None
        }
    };
    let mut status = match &verdict {
        Some(v) if allowed.contains(&v.kind) => Status::Pass,
        Some(v) if v.kind == VerdictKind::Inconclusive => Status::Indeterminate,
        Some(_) => Status::Fail,
        None => Status::Indeterminate,
    };
    if let Some(value) = &expectation.value {
        let off = series
            .iter()
            .find(|s| s.r >= value.from_r && s.value != value.equals);
        if let Some(s) = off {
            note = Some(format!("r={} value {} != {}", s.r, s.value, value.equals));
            status = Status::Fail;
        }
    }
    CellReport {
        key: cell.key.clone(),
        limit: limit.to_string(),
        estimator: est.to_string(),
        kind: est.kind().name().to_string(),
        axis: cell.axis,
        order: cell.order,
        epsilon: cell.epsilon,
        p: cell.p,
        m: cell.m,
        expected: allowed.iter().map(|v| v.name().to_string()).collect(),
        verdict: verdict.as_ref().map(VerdictSummary::from),
        note,
        status,
        series: series
            .iter()
            .map(|s| SeriesPoint {
                r: s.r,
                k_r: s.k_r,
                h_r: s.h_r,
                value: s.value,
            })
            .collect(),
    }
}

fn group_label(c: &CellReport) -> String {
    let mut s = format!("limit={};m={}", c.limit, c.m);
    if let Some(e) = c.epsilon {
        s.push_str(&format!(";eps={}", fmt_num(e)));
    }
    if let Some(p) = c.p {
        s.push_str(&format!(";p={}", fmt_num(p)));
    }
    s
}

fn pair_chain(name: &str, lo: &CellReport, hi: &CellReport, factor: f64, slack: f64) -> Chain {
    let instance = format!(
        "{} {}={} vs {} {}={}",
        group_label(lo),
        lo.axis,
        fmt_num(lo.order),
        group_label(hi),
        hi.axis,
        fmt_num(hi.order)
    );
    let mut chain = Chain::ge(name, instance, slack);
    for (a, b) in lo.series.iter().zip(&hi.series) {
        chain.push(a.r, a.value, factor * b.value);
    }
    chain
}

/// Per-block relations between cells of the same limit and `m`, for every
/// ordered pair with the first order at most the second.
fn relation_checks(kind: RelationKind, cells: &[CellReport], out: &mut Vec<super::CheckRow>) {
    let density = StatisticKind::LacunaryDensity.name();
    let strong = StatisticKind::StrongLacunaryMean.name();
    let same_group = |a: &CellReport, b: &CellReport| {
        a.limit == b.limit && a.m == b.m && a.epsilon == b.epsilon && a.p == b.p
    };
    match kind {
        RelationKind::OrderMonotone | RelationKind::MeanMonotone => {
            let (want, name) = if kind == RelationKind::OrderMonotone {
                (density, "order-monotone")
            } else {
                (strong, "mean-monotone")
            };
            let pool: Vec<&CellReport> = cells.iter().filter(|c| c.kind == want).collect();
            for (i, a) in pool.iter().enumerate() {
                for b in &pool[i + 1..] {
                    if !same_group(a, b) {
                        continue;
                    }
                    let (lo, hi) = if a.order <= b.order { (a, b) } else { (b, a) };
                    out.push(pair_chain(name, lo, hi, 1.0, 0.0).finish());
                }
            }
        }
        RelationKind::Chebyshev => {
            for s in cells.iter().filter(|c| c.kind == strong) {
                for d in cells.iter().filter(|c| c.kind == density) {
                    if s.limit != d.limit || s.m != d.m || s.order > d.order {
                        continue;
                    }
                    let (Some(p), Some(eps)) = (s.p, d.epsilon) else {
                        continue;
                    };
                    let slack = if p == 1.0 { 0.0 } else { 1e-12 };
                    out.push(pair_chain("chebyshev", s, d, eps.powf(p), slack).finish());
                }
            }
        }
    }
}
