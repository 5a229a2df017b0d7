//! Finite-horizon classification of a statistic series.
//!
//! A limit `lim_{r→∞} s_r` cannot be read off finitely many blocks. The
//! verdict instead looks at the tail window (last quarter of the points),
//! the head window (first quarter) and the least-squares slope of
//! `ln s_r` against `ln h_r`:
//!
//! * tends-to-zero: tail max below `zero` and negative slope (or an all-zero tail);
//! * growing: tail min above `growth` × head max;
//! * bounded-away: tail min above `zero` and |slope| <= `flat_slope`;
//! * inconclusive otherwise.

use core::fmt;

use crate::estimators::BlockStatistic;

pub const MIN_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    pub zero: f64,
    pub growth: f64,
    pub flat_slope: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            zero: 1e-3,
            growth: 10.0,
            flat_slope: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    TendsToZero,
    BoundedAway,
    Growing,
    Inconclusive,
}

impl VerdictKind {
    pub const ALL: [VerdictKind; 4] = [
        VerdictKind::TendsToZero,
        VerdictKind::BoundedAway,
        VerdictKind::Growing,
        VerdictKind::Inconclusive,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::TendsToZero => "tends-to-zero",
            VerdictKind::BoundedAway => "bounded-away",
            VerdictKind::Growing => "growing",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        VerdictKind::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A verdict with the numbers it was decided on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub points: usize,
    pub window: usize,
    pub head_max: f64,
    pub tail_min: f64,
    pub tail_max: f64,
    /// Slope of `ln value` on `ln h_r` over the positive points; `None` with
    /// fewer than two of them or a single distinct `h_r`.
    pub slope: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictError {
    TooShort { len: usize },
}

impl fmt::Display for VerdictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerdictError::TooShort { len } => write!(
                f,
                "series has {len} points; a verdict needs at least {MIN_POINTS}"
            ),
        }
    }
}

impl core::error::Error for VerdictError {}

fn log_log_slope(series: &[BlockStatistic]) -> Option<f64> {
    let pts = series
        .iter()
        .filter(|s| s.value > 0.0 && s.h_r > 0)
        .map(|s| (libm::log(s.h_r as f64), libm::log(s.value)));
    let (mut n, mut sx, mut sy) = (0.0, 0.0, 0.0);
    for (x, y) in pts.clone() {
        n += 1.0;
        sx += x;
        sy += y;
    }
    if n < 2.0 {
        return None;
    }
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in pts {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn verdict(series: &[BlockStatistic], t: &Thresholds) -> Result<Verdict, VerdictError> {
    let n = series.len();
    if n < MIN_POINTS {
        return Err(VerdictError::TooShort { len: n });
    }
    let window = n.div_ceil(4);
    let head = &series[..window];
    let tail = &series[n - window..];
    let head_max = head
        .iter()
        .map(|s| s.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_max = tail
        .iter()
        .map(|s| s.value)
        .fold(f64::NEG_INFINITY, f64::max);
    let tail_min = tail.iter().map(|s| s.value).fold(f64::INFINITY, f64::min);
    let slope = log_log_slope(series);

    let kind = if tail_max < t.zero && (tail_max == 0.0 || slope.is_some_and(|s| s < 0.0)) {
        VerdictKind::TendsToZero
    } else if tail_min > t.growth * head_max {
        VerdictKind::Growing
    } else if tail_min > t.zero && slope.is_some_and(|s| s.abs() <= t.flat_slope) {
        VerdictKind::BoundedAway
    } else {
        VerdictKind::Inconclusive
    };

    Ok(Verdict {
        kind,
        points: n,
        window,
        head_max,
        tail_min,
        tail_max,
        slope,
    })
}
