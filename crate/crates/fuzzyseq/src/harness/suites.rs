//! Coded experiments: per-block inequality chains, hypothesis labels for
//! lacunary structures, and limit uniqueness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use fuzzyseq_core::estimators::{block_totals, for_each_distance, prefix_totals};
use fuzzyseq_core::{
    check_modulus, verdict, BlockStatistic, Difference, ExampleId, Exponent, FuzzyNumber,
    FuzzySequence, LacunaryRule, LacunaryStructure, ModulusFunction, OrderParams, RangeTotals,
    StatisticKind, Thresholds, VerdictKind,
};

use super::{Chain, CheckRow, HarnessError, Report};
use crate::random::{self, Scaled, Summed};
use crate::spec::{LimitSource, SequenceSpec};

pub const INCLUSIONS: &str = "exp-inclusions";
pub const THETA_CONDITIONS: &str = "exp-theta-conditions";
pub const UNIQUENESS: &str = "exp-uniqueness";
pub const MODULUS: &str = "exp-modulus";

pub const INCLUSIONS_COVERS: [&str; 5] = ["lemma-2.2", "thm-2.3", "thm-2.5", "thm-2.7", "thm-2.12"];
pub const THETA_COVERS: [&str; 5] = ["thm-2.9", "thm-2.10", "thm-2.11", "thm-2.14", "thm-2.15"];
pub const UNIQUENESS_COVERS: [&str; 2] = ["thm-2.16", "thm-3.4"];
pub const MODULUS_COVERS: [&str; 2] = ["thm-3.2", "thm-3.3"];

pub const SEED: u64 = 0x5eed_2024;

/// Relative slack for chains whose sides carry a rounded constant factor.
pub const CONST_SLACK: f64 = 1e-12;
/// Relative slack for chains whose sides are summed in different orders.
pub const SUM_SLACK: f64 = 1e-9;
/// Largest `d(X′, X″)` accepted between two limits that both converge.
pub const UNIQUENESS_TOLERANCE: f64 = 1e-6;
/// Finite stand-in for `lim inf > 1` and `lim inf > 0` style hypotheses:
/// the infimum over the second half of the horizon must reach this bound.
pub const LIMINF_RATIO_BOUND: f64 = 1.2;
pub const LIMINF_POSITIVE_BOUND: f64 = 0.1;
/// Finite stand-in for `lim sup < ∞`: the supremum over the second half of
/// the horizon stays below this bound.
pub const LIMSUP_BOUND: f64 = 10.0;

const CONVERGENCE_EPSILONS: [f64; 3] = [0.01, 0.1, 1.0];
const CONVERGENCE_HORIZON: u32 = 24;
const PERIODIC_P: [f64; 3] = [0.5, 1.0, 2.0];
const MODULI: [&str; 3] = ["identity", "pow:0.5", "xover1px"];

fn num(x: f64) -> String {
    format!("{x}")
}

fn params(beta: f64, epsilon: f64, m: u32) -> Result<OrderParams, HarnessError> {
    Ok(OrderParams::new(beta, epsilon, m)?)
}

fn block_series(
    theta: &LacunaryStructure,
    totals: &[RangeTotals],
    beta: f64,
    kind: StatisticKind,
) -> Result<Vec<BlockStatistic>, HarnessError> {
    totals
        .iter()
        .enumerate()
        .map(|(i, t)| Ok(t.block_statistic(theta, i + 1, beta, kind)?))
        .collect()
}

fn all_blocks<S: FuzzySequence + Sync + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    modulus: Option<&ModulusFunction>,
    theta: &LacunaryStructure,
) -> Result<Vec<RangeTotals>, HarnessError> {
    (1..=theta.r_max())
        .into_par_iter()
        .map(|r| Ok(block_totals(seq, x0, params, modulus, theta, r)?))
        .collect()
}

fn delta_at<S: FuzzySequence + ?Sized>(seq: &S, m: u32, k: u64) -> FuzzyNumber {
    Difference::new(seq, m).term(k)
}

/// Order pairs `(lo, hi)` with `lo < hi`, or `lo <= hi` when `with_equal`.
fn order_pairs(orders: &[f64], with_equal: bool) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (i, &a) in orders.iter().enumerate() {
        for &b in &orders[i..] {
            if a < b || (with_equal && a == b) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Per-block inequalities on randomized dyadic sequences.
pub fn inclusions() -> Result<Report, HarnessError> {
    let mut report = Report::new(
        INCLUSIONS,
        "Per-block inclusion inequalities",
        &INCLUSIONS_COVERS,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let theta = LacunaryStructure::powers_of_two(12)?;
    let k_max = theta.k(theta.r_max())?;
    let orders = [0.25, 0.5, 1.0];
    let epsilons = [0.5, 1.0, 2.0];
    let ps = [0.5, 1.0, 2.0];

    for s in 0..3 {
        let period = 17 + 4 * s;
        let mask: Vec<bool> = (0..period).map(|_| rng.random_bool(0.3)).collect();
        let in_k = |k: u64| mask[((k - 1) % period as u64) as usize];
        for (a, b) in order_pairs(&orders, false) {
            let mut chain = Chain::le(
                "lemma-2.2",
                format!("set={s};alpha={};beta={}", num(a), num(b)),
                0.0,
            );
            for r in 1..=theta.r_max() {
                let count = theta.block_indices(r)?.filter(|&k| in_k(k)).count() as f64;
                chain.push(r, count / theta.h_pow(r, b)?, count / theta.h_pow(r, a)?);
            }
            report.checks.push(chain.finish());
        }
    }

    let seqs: Vec<_> = (0..3)
        .map(|i| random::tabulated(&mut rng, 13 + 6 * i, 0.6))
        .collect();
    for (i, seq) in seqs.iter().enumerate() {
        let other = &seqs[(i + 1) % seqs.len()];
        for m in 0..=2u32 {
            let x0 = delta_at(seq, m, 1);
            let tag = format!("seq={i};m={m}");
            let by_eps = epsilons
                .iter()
                .map(|&e| all_blocks(seq, &x0, &params(1.0, e, m)?, None, &theta))
                .collect::<Result<Vec<_>, _>>()?;
            let by_p = ps
                .iter()
                .map(|&p| all_blocks(seq, &x0, &params(1.0, 1.0, m)?.with_p(p)?, None, &theta))
                .collect::<Result<Vec<_>, _>>()?;

            for (ei, &e) in epsilons.iter().enumerate() {
                for (b, g) in order_pairs(&orders, false) {
                    let lo = block_series(&theta, &by_eps[ei], b, StatisticKind::LacunaryDensity)?;
                    let hi = block_series(&theta, &by_eps[ei], g, StatisticKind::LacunaryDensity)?;
                    let mut chain = Chain::ge(
                        "thm-2.5",
                        format!("{tag};eps={};beta={};gamma={}", num(e), num(b), num(g)),
                        0.0,
                    );
                    for (x, y) in lo.iter().zip(&hi) {
                        chain.push(x.r, x.value, y.value);
                    }
                    report.checks.push(chain.finish());
                }
            }
            for (pi, &p) in ps.iter().enumerate() {
                for (b, g) in order_pairs(&orders, false) {
                    let lo = block_series(&theta, &by_p[pi], b, StatisticKind::StrongLacunaryMean)?;
                    let hi = block_series(&theta, &by_p[pi], g, StatisticKind::StrongLacunaryMean)?;
                    let mut chain = Chain::ge(
                        "thm-2.12",
                        format!("{tag};p={};beta={};gamma={}", num(p), num(b), num(g)),
                        0.0,
                    );
                    for (x, y) in lo.iter().zip(&hi) {
                        chain.push(x.r, x.value, y.value);
                    }
                    report.checks.push(chain.finish());
                }
                for (ei, &e) in epsilons.iter().enumerate() {
                    let factor = e.powf(p);
                    let slack = if p == 1.0 { 0.0 } else { CONST_SLACK };
                    for (b, g) in order_pairs(&orders, true) {
                        let strong =
                            block_series(&theta, &by_p[pi], b, StatisticKind::StrongLacunaryMean)?;
                        let density =
                            block_series(&theta, &by_eps[ei], g, StatisticKind::LacunaryDensity)?;
                        let instance = format!(
                            "{tag};p={};eps={};beta={};gamma={}",
                            num(p),
                            num(e),
                            num(b),
                            num(g)
                        );
                        let mut chain = Chain::ge("thm-2.7", instance, slack);
                        for (x, y) in strong.iter().zip(&density) {
                            chain.push(x.r, x.value, factor * y.value);
                        }
                        report.checks.push(chain.finish());
                    }
                }
            }

            for &e in &epsilons {
                for c in [-2.0, 0.5, 3.0] {
                    let scaled = Scaled { inner: seq, c };
                    let cx0 = x0.scale(c);
                    let mut lhs = Vec::new();
                    for_each_distance(&scaled, &cx0, m, 1..=k_max, |_, d| lhs.push(d >= e));
                    let mut mismatches = 0u64;
                    let mut idx = 0;
                    for_each_distance(seq, &x0, m, 1..=k_max, |_, d| {
                        mismatches += u64::from(lhs[idx] != (d >= e / c.abs()));
                        idx += 1;
                    });
                    report.checks.push(CheckRow::new(
                        "thm-2.3-scaling",
                        format!("{tag};eps={};c={}", num(e), num(c)),
                        None,
                        mismatches as f64,
                        "==",
                        0.0,
                        mismatches == 0,
                    ));
                }
                let y0 = delta_at(other, m, 1);
                let sum = Summed { x: seq, y: other };
                let sum0 = x0.add(&y0);
                let mut in_x = Vec::new();
                let mut in_y = Vec::new();
                for_each_distance(seq, &x0, m, 1..=k_max, |_, d| in_x.push(d >= e / 2.0));
                for_each_distance(other, &y0, m, 1..=k_max, |_, d| in_y.push(d >= e / 2.0));
                let mut outside = 0u64;
                let mut idx = 0;
                for_each_distance(&sum, &sum0, m, 1..=k_max, |_, d| {
                    outside += u64::from(d >= e && !in_x[idx] && !in_y[idx]);
                    idx += 1;
                });
                report.checks.push(CheckRow::new(
                    "thm-2.3-sum",
                    format!("{tag};eps={}", num(e)),
                    None,
                    outside as f64,
                    "==",
                    0.0,
                    outside == 0,
                ));
            }
        }
    }
    report.settle();
    Ok(report)
}

/// Infimum or supremum of `stat(r)` over the second half of `2..=r_max`.
fn tail_extreme(
    theta: &LacunaryStructure,
    stat: impl Fn(usize) -> Result<f64, HarnessError>,
    sup: bool,
) -> Result<f64, HarnessError> {
    let r_max = theta.r_max();
    let from = (r_max / 2 + 1).max(2);
    let mut acc = if sup {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    };
    for r in from..=r_max {
        let v = stat(r)?;
        acc = if sup { acc.max(v) } else { acc.min(v) };
    }
    Ok(acc)
}

struct NamedTheta {
    name: &'static str,
    theta: LacunaryStructure,
    /// Expected labels: liminf q > 1, limsup q < ∞, and per β in
    /// [`LABEL_BETAS`] liminf h^β/k > 0 and limsup k_r/k_{r−1}^β < ∞.
    expect: [bool; 2],
    expect_by_beta: [[bool; 2]; 2],
}

const LABEL_BETAS: [f64; 2] = [0.5, 1.0];

fn named_thetas() -> Result<Vec<NamedTheta>, HarnessError> {
    let factorials: Vec<u64> = std::iter::once(0)
        .chain((1..=20u64).scan(1u64, |f, r| {
            *f *= r;
            Some(*f)
        }))
        .collect();
    // k_1 = 1! = 1 and k_2 = 2! = 2 give h_2 = 1 = h_1; start the list at 2!.
    let mut kr = vec![0];
    kr.extend_from_slice(&factorials[2..]);
    Ok(vec![
        NamedTheta {
            name: "powers2",
            theta: LacunaryStructure::from_rule(LacunaryRule::Powers { base: 2 }, 40)?,
            expect: [true, true],
            expect_by_beta: [[false, false], [true, true]],
        },
        NamedTheta {
            name: "powers3",
            theta: LacunaryStructure::from_rule(LacunaryRule::Powers { base: 3 }, 30)?,
            expect: [true, true],
            expect_by_beta: [[false, false], [true, true]],
        },
        NamedTheta {
            name: "triangular",
            theta: LacunaryStructure::from_rule(LacunaryRule::Triangular, 2000)?,
            expect: [false, true],
            expect_by_beta: [[false, false], [false, true]],
        },
        NamedTheta {
            name: "squares",
            theta: LacunaryStructure::from_rule(LacunaryRule::Squares, 2000)?,
            expect: [false, true],
            expect_by_beta: [[false, false], [false, true]],
        },
        NamedTheta {
            name: "factorial",
            theta: LacunaryStructure::explicit(kr, Default::default())?,
            expect: [true, false],
            expect_by_beta: [[false, false], [true, false]],
        },
    ])
}

fn hypothesis_labels(report: &mut Report) -> Result<(), HarnessError> {
    for t in named_thetas()? {
        let theta = &t.theta;
        let q = |r: usize| Ok(theta.q(r)?.unwrap_or(f64::INFINITY));
        let inf_q = tail_extreme(theta, q, false)?;
        let sup_q = tail_extreme(theta, q, true)?;
        let inst = format!("theta={};r_max={}", t.name, theta.r_max());
        for name in ["thm-2.9-hypothesis", "thm-2.14-hypothesis"] {
            report.checks.push(
                CheckRow::new(
                    name,
                    inst.clone(),
                    None,
                    inf_q,
                    ">=",
                    LIMINF_RATIO_BOUND,
                    inf_q >= LIMINF_RATIO_BOUND,
                )
                .expecting(t.expect[0]),
            );
        }
        report.checks.push(
            CheckRow::new(
                "thm-2.11-hypothesis",
                inst.clone(),
                None,
                sup_q,
                "<=",
                LIMSUP_BOUND,
                sup_q <= LIMSUP_BOUND,
            )
            .expecting(t.expect[1]),
        );
        for (bi, &beta) in LABEL_BETAS.iter().enumerate() {
            let inst = format!("{inst};beta={}", num(beta));
            let ratio = |r: usize| Ok(theta.h_pow(r, beta)? / theta.k(r)? as f64);
            let growth = |r: usize| Ok(theta.k(r)? as f64 / (theta.k(r - 1)? as f64).powf(beta));
            let lo = tail_extreme(theta, ratio, false)?;
            let hi = tail_extreme(theta, growth, true)?;
            report.checks.push(
                CheckRow::new(
                    "thm-2.10-hypothesis",
                    inst.clone(),
                    None,
                    lo,
                    ">=",
                    LIMINF_POSITIVE_BOUND,
                    lo >= LIMINF_POSITIVE_BOUND,
                )
                .expecting(t.expect_by_beta[bi][0]),
            );
            report.checks.push(
                CheckRow::new(
                    "thm-2.15-hypothesis",
                    inst,
                    None,
                    hi,
                    "<=",
                    LIMSUP_BOUND,
                    hi <= LIMSUP_BOUND,
                )
                .expecting(t.expect_by_beta[bi][1]),
            );
        }
    }
    Ok(())
}

/// Hypothesis labels for several lacunary structures, and the inequality
/// chains behind the density and mean comparisons on the reference sequences.
pub fn theta_conditions() -> Result<Report, HarnessError> {
    let mut report = Report::new(
        THETA_CONDITIONS,
        "Lacunary hypotheses and comparison chains",
        &THETA_COVERS,
    );
    hypothesis_labels(&mut report)?;

    let theta = LacunaryStructure::powers_of_two(20)?;
    let r_max = theta.r_max();
    let (inf_q, _) = theta.ratio_stats(r_max)?;
    let delta = inf_q - 1.0;
    let thresholds = Thresholds::default();
    let m = 1;
    let epsilon = 0.5;

    let mut checkpoints = Vec::new();
    for r in 1..=r_max {
        let prev = theta.k(r - 1)?;
        if prev + 1 < theta.k(r)? {
            checkpoints.push(prev + 1);
        }
        checkpoints.push(theta.k(r)?);
    }
    checkpoints.dedup();

    let rows: Vec<Vec<CheckRow>> = ExampleId::ALL
        .par_iter()
        .map(|&id| -> Result<Vec<CheckRow>, HarnessError> {
            let seq = id.sequence();
            let x0 = fuzzyseq_core::estimators::dominant_limit(&seq, m);
            let base = params(1.0, epsilon, m)?;
            let blocks = all_blocks(&seq, &x0, &base, None, &theta)?;
            let prefix = prefix_totals(&seq, &x0, &base, &checkpoints);
            let at = |n: u64| {
                prefix
                    .iter()
                    .find(|(k, _)| *k == n)
                    .map(|(_, t)| *t)
                    .expect("checkpoint")
            };
            let k = |r: usize| theta.k(r).expect("r in range");
            let mut out = Vec::new();
            for beta in LABEL_BETAS {
                let tag = format!("example={id};m={m};eps={};beta={}", num(epsilon), num(beta));

                let mut c29a = Chain::ge("thm-2.9", format!("{tag};step=prefix-covers-block"), 0.0);
                let mut c29b = Chain::ge(
                    "thm-2.9",
                    format!("{tag};step=block-ratio;delta={}", num(delta)),
                    CONST_SLACK,
                );
                let mut c210 = Chain::ge("thm-2.10", tag.clone(), CONST_SLACK);
                let mut c214a = Chain::le(
                    "thm-2.14",
                    format!("{tag};step=block-within-prefix"),
                    SUM_SLACK,
                );
                let mut c214b = Chain::le(
                    "thm-2.14",
                    format!("{tag};step=ratio-bound;delta={}", num(delta)),
                    CONST_SLACK,
                );
                let mut c215a =
                    Chain::le("thm-2.15", format!("{tag};step=prefix-to-block-end"), 0.0);
                let mut c215b = Chain::le("thm-2.15", format!("{tag};step=block-means"), SUM_SLACK);
                let mut c211a =
                    Chain::le("thm-2.11", format!("{tag};step=prefix-to-block-end"), 0.0);
                let mut c211b = Chain::le(
                    "thm-2.11",
                    format!("{tag};step=ratio-times-block-density"),
                    CONST_SLACK,
                );
                let bound = ((1.0 + delta) / delta).powf(beta);
                let mut sup_tau: f64 = 0.0;
                let mut sup_density: f64 = 0.0;
                for r in 1..=r_max {
                    let block = blocks[r - 1];
                    let h_beta = theta.h_pow(r, beta)?;
                    let k_r = k(r);
                    let k_beta = (k_r as f64).powf(beta);
                    let upto = at(k_r);
                    let block_count = block.count as f64;

                    c29a.push(r, upto.count as f64 / k_beta, block_count / k_beta);
                    c29b.push(
                        r,
                        block_count / k_beta,
                        (delta / (1.0 + delta)).powf(beta) * block_count / h_beta,
                    );
                    c210.push(
                        r,
                        upto.count as f64 / k_r as f64,
                        (h_beta / k_r as f64) * (block_count / h_beta),
                    );

                    let tau = block.power_sum / h_beta;
                    c214a.push(r, tau, (k_beta / h_beta) * (upto.power_sum / k_beta));
                    c214b.push(r, k_beta / h_beta, bound);

                    sup_tau = sup_tau.max(block.power_sum / theta.h(r)? as f64);
                    sup_density = sup_density.max(block_count / h_beta);
                    if r >= 2 {
                        let prev = k(r - 1) as f64;
                        for t in [k(r - 1) + 1, k_r] {
                            c211a.push(r, at(t).count as f64 / t as f64, upto.count as f64 / prev);
                        }
                        c211b.push(
                            r,
                            upto.count as f64 / prev,
                            (k_r as f64 / prev) * sup_density,
                        );

                        let prev_beta = (k(r - 1) as f64).powf(beta);
                        let end = upto.power_sum / prev_beta;
                        for t in [k(r - 1) + 1, k_r] {
                            c215a.push(r, at(t).power_sum / (t as f64).powf(beta), end);
                        }
                        c215b.push(r, end, sup_tau * k_r as f64 / prev_beta);
                    }
                }
                out.extend(
                    [c29a, c29b, c210, c211a, c211b, c214a, c214b, c215a, c215b].map(Chain::finish),
                );

                let lacunary = block_series(&theta, &blocks, beta, StatisticKind::LacunaryDensity)?;
                let ordinary: Vec<BlockStatistic> = (1..=r_max)
                    .map(|r| at(k(r)).prefix_statistic(k(r), r, 1.0, StatisticKind::PrefixDensity))
                    .collect();
                let lv = verdict(&lacunary, &thresholds)?;
                let ov = verdict(&ordinary, &thresholds)?;
                // A finite horizon can only contradict the inclusion, by an
                // ordinary density that stays away from zero or grows.
                let antecedent = lv.kind == VerdictKind::TendsToZero;
                let contradicted =
                    matches!(ov.kind, VerdictKind::BoundedAway | VerdictKind::Growing);
                out.push(CheckRow::new(
                    "thm-2.11-verdicts",
                    format!("{tag};lacunary={};ordinary={}", lv.kind, ov.kind),
                    None,
                    lv.tail_max,
                    "not-contradicted-by",
                    ov.tail_max,
                    !(antecedent && contradicted),
                ));
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    report.checks.extend(rows.into_iter().flatten());
    report.settle();
    Ok(report)
}

struct Candidate {
    name: String,
    value: FuzzyNumber,
}

fn candidates(id: ExampleId, m: u32) -> Result<Vec<Candidate>, HarnessError> {
    let seq = SequenceSpec::example(id).build()?;
    let sources = if id == ExampleId::OrderGtOne {
        ["oracle:1000000", "oracle:1000001", "auto"]
    } else {
        ["auto", "at:1000001", "at:1"]
    };
    sources
        .iter()
        .map(|s| {
            let value = s.parse::<LimitSource>()?.resolve(&seq, m)?;
            Ok(Candidate {
                name: s.to_string(),
                value,
            })
        })
        .collect()
}

/// Per-block counts of `d >= ε` for every ε in [`CONVERGENCE_EPSILONS`], in one pass.
fn epsilon_counts<S: FuzzySequence + Sync + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    m: u32,
    theta: &LacunaryStructure,
) -> Result<Vec<[RangeTotals; 3]>, HarnessError> {
    (1..=theta.r_max())
        .into_par_iter()
        .map(|r| {
            let mut counts = [0u64; 3];
            for_each_distance(seq, x0, m, theta.block_indices(r)?, |_, d| {
                for (c, &e) in counts.iter_mut().zip(&CONVERGENCE_EPSILONS) {
                    *c += u64::from(d >= e);
                }
            });
            Ok(counts.map(|count| RangeTotals {
                count,
                power_sum: 0.0,
            }))
        })
        .collect()
}

fn power_sum_constant(x: f64, exponent: &Exponent, ks: impl Iterator<Item = u64>) -> f64 {
    ks.map(|k| {
        if x == 0.0 {
            0.0
        } else {
            x.powf(exponent.at(k))
        }
    })
    .sum()
}

/// Two candidate limits that both converge must coincide; the triangle and
/// p-power chains behind that hold per block for any pair.
pub fn uniqueness() -> Result<Report, HarnessError> {
    let mut report = Report::new(
        UNIQUENESS,
        "Uniqueness of converging limits",
        &UNIQUENESS_COVERS,
    );
    let theta = LacunaryStructure::powers_of_two(CONVERGENCE_HORIZON)?;
    let prefix_theta = LacunaryStructure::powers_of_two(18)?;
    let chain_theta = LacunaryStructure::powers_of_two(12)?;
    let thresholds = Thresholds::default();
    let m = 1;
    let betas = [0.5, 1.0];
    let exponent = Exponent::Periodic(PERIODIC_P.to_vec());
    let (_, h_high) = exponent.bounds();
    let d_const = f64::max(1.0, 2f64.powf(h_high - 1.0));
    let checkpoints: Vec<u64> = (1..=prefix_theta.r_max())
        .map(|r| prefix_theta.k(r))
        .collect::<Result<_, _>>()?;

    let rows: Vec<Vec<CheckRow>> = ExampleId::ALL
        .par_iter()
        .map(|&id| -> Result<Vec<CheckRow>, HarnessError> {
            let seq = id.sequence();
            let cands = candidates(id, m)?;
            let mut out = Vec::new();
            // converges[c][b]: density tends to zero for every ε at β = betas[b].
            let mut converges = vec![[true; 2]; cands.len()];
            for (ci, c) in cands.iter().enumerate() {
                let counts = epsilon_counts(&seq, &c.value, m, &theta)?;
                for ei in 0..CONVERGENCE_EPSILONS.len() {
                    let totals: Vec<RangeTotals> = counts.iter().map(|t| t[ei]).collect();
                    for (bi, &beta) in betas.iter().enumerate() {
                        let series =
                            block_series(&theta, &totals, beta, StatisticKind::LacunaryDensity)?;
                        let v = verdict(&series, &thresholds)?;
                        converges[ci][bi] &= v.kind == VerdictKind::TendsToZero;
                    }
                }
            }
            for (i, a) in cands.iter().enumerate() {
                for (j, b) in cands.iter().enumerate().skip(i + 1) {
                    let gap = a.value.distance(&b.value);
                    let pair = format!("example={id};m={m};limits={} vs {}", a.name, b.name);
                    for (bi, &beta) in betas.iter().enumerate() {
                        if converges[i][bi] && converges[j][bi] {
                            out.push(CheckRow::new(
                                "uniqueness",
                                format!("{pair};beta={}", num(beta)),
                                None,
                                gap,
                                "<=",
                                UNIQUENESS_TOLERANCE,
                                gap <= UNIQUENESS_TOLERANCE,
                            ));
                        }
                    }

                    let one = params(1.0, 1.0, m)?;
                    let pa = prefix_totals(&seq, &a.value, &one, &checkpoints);
                    let pb = prefix_totals(&seq, &b.value, &one, &checkpoints);
                    for &beta in &betas {
                        let mut chain =
                            Chain::ge("thm-2.16", format!("{pair};beta={}", num(beta)), SUM_SLACK);
                        for (r, ((t, ta), (_, tb))) in pa.iter().zip(&pb).enumerate() {
                            let scale = (*t as f64).powf(beta);
                            chain.push(
                                r + 1,
                                (ta.power_sum + tb.power_sum) / scale,
                                *t as f64 * gap / scale,
                            );
                        }
                        out.push(chain.finish());
                    }

                    let with_exp = params(1.0, 1.0, m)?.with_exponent(exponent.clone())?;
                    for name in MODULI {
                        let f = ModulusFunction::from_name(name).expect("built-in modulus");
                        let instance =
                            format!("{pair};f={name};p_k={PERIODIC_P:?};D={}", num(d_const));
                        let mut chain = Chain::le("thm-3.4", instance, SUM_SLACK);
                        let fa = all_blocks(&seq, &a.value, &with_exp, Some(&f), &chain_theta)?;
                        let fb = all_blocks(&seq, &b.value, &with_exp, Some(&f), &chain_theta)?;
                        for r in 1..=chain_theta.r_max() {
                            let h_beta = chain_theta.h_pow(r, 1.0)?;
                            let lhs = power_sum_constant(
                                f.eval(gap),
                                &exponent,
                                chain_theta.block_indices(r)?,
                            );
                            let rhs = d_const * (fa[r - 1].power_sum + fb[r - 1].power_sum);
                            chain.push(r, lhs / h_beta, rhs / h_beta);
                        }
                        out.push(chain.finish());
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    report.checks.extend(rows.into_iter().flatten());
    report.settle();
    Ok(report)
}

/// Modulus axiom checks and the modulus-mean chains on reference and random
/// sequences.
pub fn modulus() -> Result<Report, HarnessError> {
    let mut report = Report::new(MODULUS, "Modulus means against densities", &MODULUS_COVERS);
    for name in ["identity", "pow:0.5", "xover1px", "log1p", "xsq"] {
        let f = ModulusFunction::from_name(name).expect("built-in modulus");
        let check = check_modulus(&f, 10_000);
        let outcome = match &check.outcome {
            Ok(()) => "pass".to_string(),
            Err(v) => v.to_string(),
        };
        report.checks.push(
            CheckRow::new(
                "modulus-axioms",
                format!("f={name};bounded={};{outcome}", check.bounded),
                None,
                check.samples as f64,
                "passes",
                0.0,
                check.passed(),
            )
            .expecting(name != "xsq"),
        );
    }

    let theta = LacunaryStructure::powers_of_two(14)?;
    let m = 1;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x3a);
    let mut seqs: Vec<(String, Box<dyn FuzzySequence + Sync>)> = ExampleId::ALL
        .iter()
        .map(|&id| {
            (
                format!("example={id}"),
                Box::new(id.sequence()) as Box<dyn FuzzySequence + Sync>,
            )
        })
        .collect();
    for i in 0..2 {
        let seq = random::tabulated(&mut rng, 19 + 4 * i, 0.5);
        seqs.push((format!("random={i}"), Box::new(seq)));
    }
    let exponents = [
        Exponent::Constant(1.0),
        Exponent::Periodic(PERIODIC_P.to_vec()),
    ];
    let pairs = [(0.5, 0.5), (0.5, 1.0), (1.0, 1.0)];

    let rows: Vec<Vec<CheckRow>> = seqs
        .par_iter()
        .map(|(label, seq)| -> Result<Vec<CheckRow>, HarnessError> {
            let seq: &(dyn FuzzySequence + Sync) = seq.as_ref();
            let x0 = fuzzyseq_core::estimators::dominant_limit(seq, m);
            let mut out = Vec::new();
            for name in MODULI {
                let f = ModulusFunction::from_name(name).expect("built-in modulus");
                for exponent in &exponents {
                    let (h, big_h) = exponent.bounds();
                    for epsilon in [0.5, 1.0] {
                        let p = params(1.0, epsilon, m)?.with_exponent(exponent.clone())?;
                        let totals = all_blocks(seq, &x0, &p, Some(&f), &theta)?;
                        let fe = f.eval(epsilon);
                        let floor = fe.powf(h).min(fe.powf(big_h));
                        let ceiling = fe.powf(h).max(fe.powf(big_h));
                        let tag = format!(
                            "{label};m={m};f={name};p_k={};eps={}",
                            match exponent {
                                Exponent::Constant(p) => num(*p),
                                Exponent::Periodic(v) => format!("{v:?}"),
                            },
                            num(epsilon)
                        );
                        for (beta, gamma) in pairs {
                            let inst = format!("{tag};beta={};gamma={}", num(beta), num(gamma));
                            let mut order = Chain::ge("thm-3.2", format!("{inst};step=order"), 0.0);
                            let mut count =
                                Chain::ge("thm-3.2", format!("{inst};step=count"), SUM_SLACK);
                            for (i, t) in totals.iter().enumerate() {
                                let r = i + 1;
                                let hb = theta.h_pow(r, beta)?;
                                let hg = theta.h_pow(r, gamma)?;
                                order.push(r, t.power_sum / hb, t.power_sum / hg);
                                count.push(r, t.power_sum / hg, t.count as f64 * floor / hg);
                            }
                            out.push(order.finish());
                            out.push(count.finish());
                        }
                        let Some(k_bound) = f.bound() else { continue };
                        let k_factor = k_bound.powf(h).max(k_bound.powf(big_h));
                        for beta in [0.5, 1.0] {
                            let inst = format!("{tag};beta={};K={}", num(beta), num(k_bound));
                            let mut chain = Chain::le("thm-3.3", inst.clone(), SUM_SLACK);
                            for (i, t) in totals.iter().enumerate() {
                                let r = i + 1;
                                let hb = theta.h_pow(r, beta)?;
                                let h_r = theta.h(r)? as f64;
                                chain.push(
                                    r,
                                    t.power_sum / hb,
                                    k_factor * t.count as f64 / hb + (h_r / hb) * ceiling,
                                );
                            }
                            out.push(chain.finish());
                            let r = theta.r_max();
                            let ratio = theta.h(r)? as f64 / theta.h_pow(r, beta)?;
                            out.push(
                                CheckRow::new(
                                    "thm-3.3-hypothesis",
                                    inst,
                                    Some(r),
                                    ratio,
                                    "==",
                                    1.0,
                                    (ratio - 1.0).abs() <= CONST_SLACK,
                                )
                                .expecting(beta == 1.0),
                            );
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    report.checks.extend(rows.into_iter().flatten());
    report.settle();
    Ok(report)
}
