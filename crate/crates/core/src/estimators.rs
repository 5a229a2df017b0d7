//! Block and prefix statistics of `d(Δ^m X_k, X_0)`.
//!
//! Every estimator streams the indices it needs in increasing `k` and sums
//! sequentially, so results do not depend on how callers schedule blocks.
//! Counts use `d >= ε` on the computed distance with no tolerance.

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::fuzzy::FuzzyNumber;
use crate::lacunary::{LacunaryError, LacunaryStructure};
use crate::math;
use crate::modulus::ModulusFunction;
use crate::sequence::{DifferenceWindow, FuzzySequence};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamError {
    /// β outside (0, 1] without the pathology flag, or β <= 0.
    BetaOutOfRange(f64),
    NonPositiveEpsilon(f64),
    /// Exponents must satisfy `0 < h <= p_k <= H < ∞`.
    BadExponent,
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::BetaOutOfRange(b) if *b > 1.0 => {
                write!(f, "beta = {b} > 1 requires the pathology flag")
            }
            ParamError::BetaOutOfRange(b) => write!(f, "beta must lie in (0, 1], got {b}"),
            ParamError::NonPositiveEpsilon(e) => write!(f, "epsilon must be positive, got {e}"),
            ParamError::BadExponent => f.write_str("exponents must be finite and positive"),
        }
    }
}

impl core::error::Error for ParamError {}

/// The exponent sequence `p_k`.
#[derive(Debug, Clone, PartialEq)]
pub enum Exponent {
    Constant(f64),
    /// `p_k = values[(k − 1) mod len]`.
    Periodic(Vec<f64>),
}

impl Exponent {
    fn validate(&self) -> Result<(), ParamError> {
        let ok = |p: &f64| p.is_finite() && *p > 0.0;
        match self {
            Exponent::Constant(p) if ok(p) => Ok(()),
            Exponent::Periodic(v) if !v.is_empty() && v.iter().all(ok) => Ok(()),
            _ => Err(ParamError::BadExponent),
        }
    }

    #[inline]
    pub fn at(&self, k: u64) -> f64 {
        match self {
            Exponent::Constant(p) => *p,
            Exponent::Periodic(v) => v[((k - 1) % v.len() as u64) as usize],
        }
    }

    /// `(h, H) = (inf p_k, sup p_k)`.
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            Exponent::Constant(p) => (*p, *p),
            Exponent::Periodic(v) => (
                v.iter().copied().fold(f64::INFINITY, f64::min),
                v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            ),
        }
    }
}

/// β, p (or p_k), ε and m, validated together.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderParams {
    beta: f64,
    exponent: Exponent,
    epsilon: f64,
    m: u32,
    pathology: bool,
}

fn check_beta(beta: f64, pathology: bool) -> Result<(), ParamError> {
    let upper_ok = pathology || beta <= 1.0;
    if beta > 0.0 && beta.is_finite() && upper_ok {
        Ok(())
    } else {
        Err(ParamError::BetaOutOfRange(beta))
    }
}

impl OrderParams {
    /// `p = 1`; β must lie in (0, 1].
    pub fn new(beta: f64, epsilon: f64, m: u32) -> Result<Self, ParamError> {
        Self::build(beta, epsilon, m, false)
    }

    /// Allows β > 1, which exists only to exhibit non-unique limits.
    pub fn with_pathology(beta: f64, epsilon: f64, m: u32) -> Result<Self, ParamError> {
        Self::build(beta, epsilon, m, true)
    }

    fn build(beta: f64, epsilon: f64, m: u32, pathology: bool) -> Result<Self, ParamError> {
        check_beta(beta, pathology)?;
        if !(epsilon > 0.0) {
            return Err(ParamError::NonPositiveEpsilon(epsilon));
        }
        Ok(OrderParams {
            beta,
            exponent: Exponent::Constant(1.0),
            epsilon,
            m,
            pathology,
        })
    }

    pub fn with_p(self, p: f64) -> Result<Self, ParamError> {
        self.with_exponent(Exponent::Constant(p))
    }

    pub fn with_exponent(mut self, exponent: Exponent) -> Result<Self, ParamError> {
        exponent.validate()?;
        self.exponent = exponent;
        Ok(self)
    }

    /// Same parameters at another order.
    pub fn with_beta(mut self, beta: f64) -> Result<Self, ParamError> {
        check_beta(beta, self.pathology)?;
        self.beta = beta;
        Ok(self)
    }

    pub fn with_epsilon(mut self, epsilon: f64) -> Result<Self, ParamError> {
        if !(epsilon > 0.0) {
            return Err(ParamError::NonPositiveEpsilon(epsilon));
        }
        self.epsilon = epsilon;
        Ok(self)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }
    pub fn pathology(&self) -> bool {
        self.pathology
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StatisticKind {
    LacunaryDensity,
    StrongLacunaryMean,
    CesaroMean,
    PrefixDensity,
    ModulusMean,
}

impl StatisticKind {
    pub fn name(&self) -> &'static str {
        match self {
            StatisticKind::LacunaryDensity => "lacunary-density",
            StatisticKind::StrongLacunaryMean => "strong-lacunary-mean",
            StatisticKind::CesaroMean => "cesaro-mean",
            StatisticKind::PrefixDensity => "prefix-density",
            StatisticKind::ModulusMean => "modulus-mean",
        }
    }

    pub fn is_density(&self) -> bool {
        matches!(
            self,
            StatisticKind::LacunaryDensity | StatisticKind::PrefixDensity
        )
    }
}

impl fmt::Display for StatisticKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of a statistic series. Prefix statistics store `n` in both
/// `k_r` and `h_r`, since `n` is their divisor base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockStatistic {
    pub r: usize,
    pub k_r: u64,
    pub h_r: u64,
    pub value: f64,
    pub kind: StatisticKind,
}

/// Raw per-range totals before scaling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeTotals {
    /// `|{k : d(Δ^m X_k, X_0) >= ε}|`
    pub count: u64,
    /// `Σ g(d)^{p_k}`, with `g` the modulus (identity when absent).
    pub power_sum: f64,
}

#[inline]
fn power(x: f64, p: f64) -> f64 {
    // pow(0, p) = 0 and pow(x, 1) = x exactly, so the shortcuts change nothing.
    if x == 0.0 {
        0.0
    } else if p == 1.0 {
        x
    } else {
        math::powf(x, p)
    }
}

/// Calls `visit(k, d(Δ^m X_k, X_0))` for each `k` in `range`, in order.
pub fn for_each_distance<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    m: u32,
    range: RangeInclusive<u64>,
    mut visit: impl FnMut(u64, f64),
) {
    for (k, x) in DifferenceWindow::new(seq, m, range) {
        visit(k, x.distance(x0));
    }
}

/// Count of `d >= ε` and the power sum over `range`.
pub fn range_totals<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    modulus: Option<&ModulusFunction>,
    range: RangeInclusive<u64>,
) -> RangeTotals {
    let mut count = 0u64;
    let mut power_sum = 0.0;
    let eps = params.epsilon;
    for_each_distance(seq, x0, params.m, range, |k, d| {
        if d >= eps {
            count += 1;
        }
        let g = match modulus {
            Some(f) => f.eval(d),
            None => d,
        };
        power_sum += power(g, params.exponent.at(k));
    });
    RangeTotals { count, power_sum }
}

/// `(1/n^β) |{k <= n : d(Δ^m X_k, X_0) >= ε}|`
pub fn prefix_density<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    n: u64,
) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let t = range_totals(seq, x0, params, None, 1..=n);
    t.count as f64 / math::order_power(n, params.beta)
}

/// Raw totals over block `r` of `theta`.
pub fn block_totals<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    modulus: Option<&ModulusFunction>,
    theta: &LacunaryStructure,
    r: usize,
) -> Result<RangeTotals, LacunaryError> {
    Ok(range_totals(
        seq,
        x0,
        params,
        modulus,
        theta.block_indices(r)?,
    ))
}

impl RangeTotals {
    fn numerator(&self, kind: StatisticKind) -> f64 {
        if kind.is_density() {
            self.count as f64
        } else {
            self.power_sum
        }
    }

    /// Block `r` totals scaled by `h_r^{-β}`.
    pub fn block_statistic(
        &self,
        theta: &LacunaryStructure,
        r: usize,
        beta: f64,
        kind: StatisticKind,
    ) -> Result<BlockStatistic, LacunaryError> {
        Ok(BlockStatistic {
            r,
            k_r: theta.k(r)?,
            h_r: theta.h(r)?,
            value: self.numerator(kind) / theta.h_pow(r, beta)?,
            kind,
        })
    }

    /// Prefix totals up to `n` scaled by `n^{-β}`, reported as row `r`.
    pub fn prefix_statistic(
        &self,
        n: u64,
        r: usize,
        beta: f64,
        kind: StatisticKind,
    ) -> BlockStatistic {
        let value = if n == 0 {
            0.0
        } else {
            self.numerator(kind) / math::order_power(n, beta)
        };
        BlockStatistic {
            r,
            k_r: n,
            h_r: n,
            value,
            kind,
        }
    }
}

fn block<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    modulus: Option<&ModulusFunction>,
    theta: &LacunaryStructure,
    r: usize,
    kind: StatisticKind,
) -> Result<BlockStatistic, LacunaryError> {
    block_totals(seq, x0, params, modulus, theta, r)?.block_statistic(theta, r, params.beta, kind)
}

/// `(1/h_r^β) |{k ∈ I_r : d(Δ^m X_k, X_0) >= ε}|`
pub fn lacunary_density<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    theta: &LacunaryStructure,
    r: usize,
) -> Result<BlockStatistic, LacunaryError> {
    block(
        seq,
        x0,
        params,
        None,
        theta,
        r,
        StatisticKind::LacunaryDensity,
    )
}

/// `(1/h_r^β) Σ_{k ∈ I_r} d(Δ^m X_k, X_0)^{p_k}`
pub fn strong_lacunary_mean<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    theta: &LacunaryStructure,
    r: usize,
) -> Result<BlockStatistic, LacunaryError> {
    block(
        seq,
        x0,
        params,
        None,
        theta,
        r,
        StatisticKind::StrongLacunaryMean,
    )
}

/// `(1/h_r^β) Σ_{k ∈ I_r} f(d(Δ^m X_k, X_0))^{p_k}`
pub fn modulus_mean<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    f: &ModulusFunction,
    theta: &LacunaryStructure,
    r: usize,
) -> Result<BlockStatistic, LacunaryError> {
    block(
        seq,
        x0,
        params,
        Some(f),
        theta,
        r,
        StatisticKind::ModulusMean,
    )
}

/// `(1/n^β) Σ_{k <= n} d(Δ^m X_k, X_0)^{p_k}`, reported with `r = 0`.
pub fn cesaro_mean<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    n: u64,
) -> BlockStatistic {
    let value = if n == 0 {
        0.0
    } else {
        range_totals(seq, x0, params, None, 1..=n).power_sum / math::order_power(n, params.beta)
    };
    BlockStatistic {
        r: 0,
        k_r: n,
        h_r: n,
        value,
        kind: StatisticKind::CesaroMean,
    }
}

/// Running totals at increasing checkpoints `n_1 < n_2 < …`, in one pass.
/// Partial sums accumulate in `k` order, as in the single-`n` estimators.
pub fn prefix_totals<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    checkpoints: &[u64],
) -> Vec<(u64, RangeTotals)> {
    assert!(
        checkpoints.first().is_none_or(|&n| n > 0),
        "checkpoints start at 1"
    );
    assert!(
        checkpoints.windows(2).all(|w| w[0] < w[1]),
        "checkpoints must increase"
    );
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut rest = checkpoints.iter().copied().peekable();
    let Some(&last) = checkpoints.last() else {
        return out;
    };
    let mut totals = RangeTotals {
        count: 0,
        power_sum: 0.0,
    };
    let eps = params.epsilon;
    for_each_distance(seq, x0, params.m, 1..=last, |k, d| {
        if d >= eps {
            totals.count += 1;
        }
        totals.power_sum += power(d, params.exponent.at(k));
        if rest.peek() == Some(&k) {
            rest.next();
            out.push((k, totals));
        }
    });
    out
}

/// Prefix statistics at increasing checkpoints; row `i` gets `r = i + 1`.
/// Values agree bit for bit with [`prefix_density`] and [`cesaro_mean`].
pub fn prefix_series<S: FuzzySequence + ?Sized>(
    seq: &S,
    x0: &FuzzyNumber,
    params: &OrderParams,
    checkpoints: &[u64],
    kind: StatisticKind,
) -> Vec<BlockStatistic> {
    assert!(
        matches!(
            kind,
            StatisticKind::CesaroMean | StatisticKind::PrefixDensity
        ),
        "prefix_series handles prefix kinds only"
    );
    prefix_totals(seq, x0, params, checkpoints)
        .into_iter()
        .enumerate()
        .map(|(i, (n, t))| t.prefix_statistic(n, i + 1, params.beta, kind))
        .collect()
}

/// The Δ^m value at the sequence's representative index: the limit candidate
/// of its dominant index class.
pub fn dominant_limit<S: FuzzySequence + ?Sized>(seq: &S, m: u32) -> FuzzyNumber {
    let k = seq.representative_index(m);
    DifferenceWindow::new(seq, m, k..=k)
        .next()
        .map(|(_, x)| x)
        .expect("single-index window")
}
