use core::fmt;

/// A closed real interval `[lo, hi]` with `lo <= hi`.
///
/// Endpoints may be infinite; NaN is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// Returns `None` when `lo > hi` or either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Caller guarantees `lo <= hi`; used on results of monotone endpoint maps.
    pub(crate) fn from_ordered(lo: f64, hi: f64) -> Self {
        debug_assert!(!(lo > hi), "unordered interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    #[inline]
    pub fn lo(&self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// `[u1 + u2, v1 + v2]`
    pub fn add(&self, other: &Interval) -> Interval {
        Interval::from_ordered(self.lo + other.lo, self.hi + other.hi)
    }

    /// `[u1 - v2, v1 - u2]`
    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::from_ordered(self.lo - other.hi, self.hi - other.lo)
    }

    pub fn scale(&self, c: f64) -> Interval {
        if c >= 0.0 {
            Interval::from_ordered(c * self.lo, c * self.hi)
        } else {
            Interval::from_ordered(c * self.hi, c * self.lo)
        }
    }

    /// `[min u_i v_j, max u_i v_j]`
    pub fn mul(&self, other: &Interval) -> Interval {
        let p = [
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        ];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::from_ordered(lo, hi)
    }

    /// Larger of the two endpoint gaps.
    pub fn endpoint_gap(&self, other: &Interval) -> f64 {
        let lo = (self.lo - other.lo).abs();
        let hi = (self.hi - other.hi).abs();
        if lo >= hi {
            lo
        } else {
            hi
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
