use alloc::vec::Vec;
use core::fmt;

use crate::interval::Interval;

/// Number of uniform α levels used when a product has to be sampled and
/// neither operand brings its own grid.
pub const DEFAULT_GRID_LEVELS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FuzzyError {
    AlphaOutOfRange(f64),
    /// Trapezoid parameters not in `a <= b <= c <= e` order.
    Unordered,
    NonFinite,
    /// Grid does not start at α = 0 and end at α = 1.
    GridEndpoints,
    /// Grid α values not strictly increasing; carries the offending position.
    GridNotIncreasing(usize),
    /// Fewer than two grid levels.
    GridTooSmall,
    ZeroLevels,
}

impl fmt::Display for FuzzyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyError::AlphaOutOfRange(a) => write!(f, "alpha {a} is outside [0, 1]"),
            FuzzyError::Unordered => {
                f.write_str("trapezoid parameters must satisfy a <= b <= c <= e")
            }
            FuzzyError::NonFinite => f.write_str("fuzzy number parameters must be finite"),
            FuzzyError::GridEndpoints => f.write_str("alpha grid must start at 0 and end at 1"),
            FuzzyError::GridNotIncreasing(i) => {
                write!(f, "alpha grid is not strictly increasing at position {i}")
            }
            FuzzyError::GridTooSmall => f.write_str("alpha grid needs at least two levels"),
            FuzzyError::ZeroLevels => f.write_str("grid resolution must be positive"),
        }
    }
}

impl core::error::Error for FuzzyError {}

/// Trapezoidal fuzzy number with α-cut `[a + α(b - a), e - α(e - c)]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trapezoid {
    a: f64,
    b: f64,
    c: f64,
    e: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, e: f64) -> Result<Self, FuzzyError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && e.is_finite()) {
            return Err(FuzzyError::NonFinite);
        }
        if !(a <= b && b <= c && c <= e) {
            return Err(FuzzyError::Unordered);
        }
        Ok(Trapezoid { a, b, c, e })
    }

    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(a, b, b, c)
    }

    pub fn crisp(x: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(x, x, x, x)
    }

    fn ordered(a: f64, b: f64, c: f64, e: f64) -> Self {
        debug_assert!(
            a <= b && b <= c && c <= e,
            "unordered trapezoid {a} {b} {c} {e}"
        );
        Trapezoid { a, b, c, e }
    }

    /// `[a, b, c, e]`
    pub fn params(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.e]
    }

    pub fn cut(&self, alpha: f64) -> Interval {
        let lo = self.a + alpha * (self.b - self.a);
        let hi = self.e - alpha * (self.e - self.c);
        // Both endpoints are affine in α; rounding can only cross them when b == c.
        Interval::from_ordered(lo, if hi < lo { lo } else { hi })
    }

    pub fn add(&self, o: &Trapezoid) -> Trapezoid {
        Trapezoid::ordered(self.a + o.a, self.b + o.b, self.c + o.c, self.e + o.e)
    }

    pub fn sub(&self, o: &Trapezoid) -> Trapezoid {
        Trapezoid::ordered(self.a - o.e, self.b - o.c, self.c - o.b, self.e - o.a)
    }

    pub fn scale(&self, k: f64) -> Trapezoid {
        if k >= 0.0 {
            Trapezoid::ordered(k * self.a, k * self.b, k * self.c, k * self.e)
        } else {
            Trapezoid::ordered(k * self.e, k * self.c, k * self.b, k * self.a)
        }
    }

    /// Supremum metric; the endpoint gaps are affine in α so the sup sits at α ∈ {0, 1}.
    pub fn distance(&self, o: &Trapezoid) -> f64 {
        let d = [
            (self.a - o.a).abs(),
            (self.b - o.b).abs(),
            (self.c - o.c).abs(),
            (self.e - o.e).abs(),
        ];
        d.iter().copied().fold(0.0, f64::max)
    }
}

/// Fuzzy number given by α-cuts on a finite grid `0 = α_0 < … < α_G = 1`,
/// linear in α between grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledGrid {
    alphas: Vec<f64>,
    cuts: Vec<Interval>,
}

impl SampledGrid {
    /// Checks the grid structure only; use [`FuzzyNumber::validate`] for the
    /// fuzzy-number axioms.
    pub fn new(levels: Vec<(f64, Interval)>) -> Result<Self, FuzzyError> {
        if levels.len() < 2 {
            return Err(FuzzyError::GridTooSmall);
        }
        if levels[0].0 != 0.0 || levels[levels.len() - 1].0 != 1.0 {
            return Err(FuzzyError::GridEndpoints);
        }
        for (i, w) in levels.windows(2).enumerate() {
            if !(w[0].0 < w[1].0) {
                return Err(FuzzyError::GridNotIncreasing(i + 1));
            }
        }
        let (alphas, cuts) = levels.into_iter().unzip();
        Ok(SampledGrid { alphas, cuts })
    }

    /// Samples `cut` at `levels + 1` uniform α values.
    pub fn uniform(levels: usize, cut: impl Fn(f64) -> Interval) -> Result<Self, FuzzyError> {
        if levels == 0 {
            return Err(FuzzyError::ZeroLevels);
        }
        let alphas = uniform_alphas(levels);
        let cuts = alphas.iter().map(|&a| cut(a)).collect();
        Ok(SampledGrid { alphas, cuts })
    }

    fn from_parts(alphas: Vec<f64>, cuts: Vec<Interval>) -> Self {
        debug_assert_eq!(alphas.len(), cuts.len());
        SampledGrid { alphas, cuts }
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn cuts(&self) -> &[Interval] {
        &self.cuts
    }

    pub fn levels(&self) -> impl Iterator<Item = (f64, Interval)> + '_ {
        self.alphas.iter().copied().zip(self.cuts.iter().copied())
    }

    fn cut(&self, alpha: f64) -> Interval {
        let i = self.alphas.partition_point(|&a| a < alpha);
        if i < self.alphas.len() && self.alphas[i] == alpha {
            return self.cuts[i];
        }
        // 0 < alpha < 1 here, so 1 <= i < len
        let (a0, a1) = (self.alphas[i - 1], self.alphas[i]);
        let (c0, c1) = (self.cuts[i - 1], self.cuts[i]);
        let t = (alpha - a0) / (a1 - a0);
        let lo = c0.lo() + t * (c1.lo() - c0.lo());
        let hi = c0.hi() + t * (c1.hi() - c0.hi());
        Interval::from_ordered(lo, if hi < lo { lo } else { hi })
    }
}

fn uniform_alphas(levels: usize) -> Vec<f64> {
    (0..=levels).map(|i| i as f64 / levels as f64).collect()
}

/// Sorted union of two α grids.
fn merge_alphas(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some(&a), Some(&b)) if a < b => {
                i += 1;
                a
            }
            (Some(&a), Some(&b)) if b < a => {
                j += 1;
                b
            }
            (Some(&a), Some(_)) => {
                i += 1;
                j += 1;
                a
            }
            (Some(&a), None) => {
                i += 1;
                a
            }
            (None, Some(&b)) => {
                j += 1;
                b
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

/// Which axiom a candidate fuzzy number violates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxiomViolation {
    /// `cut(1)` is empty.
    Normality,
    /// `cut(upper)` is not contained in `cut(lower)` although `lower < upper`.
    Convexity { lower: f64, upper: f64 },
    /// `cut(0)` is not a bounded interval.
    UnboundedSupport,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Validity {
    Valid,
    Invalid(AxiomViolation),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

impl fmt::Display for Validity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Validity::Valid => f.write_str("pass"),
            Validity::Invalid(AxiomViolation::Normality) => f.write_str("fail(normality)"),
            Validity::Invalid(AxiomViolation::Convexity { lower, upper }) => {
                write!(f, "fail(convexity, alpha pair ({lower}, {upper}))")
            }
            Validity::Invalid(AxiomViolation::UnboundedSupport) => f.write_str("fail(support)"),
        }
    }
}

/// A fuzzy number in one of two representations.
///
/// Sums, differences and scalar multiples of trapezoids stay trapezoidal and
/// exact. Products, and anything touching a sampled grid, produce a grid on the
/// merged α levels. Product endpoints are quadratic in α, so the grid holds
/// exact values at grid points and interpolation error is O(G⁻²) in between.
#[derive(Debug, Clone, PartialEq)]
pub enum FuzzyNumber {
    Trapezoidal(Trapezoid),
    Sampled(SampledGrid),
}

impl From<Trapezoid> for FuzzyNumber {
    fn from(t: Trapezoid) -> Self {
        FuzzyNumber::Trapezoidal(t)
    }
}

impl From<SampledGrid> for FuzzyNumber {
    fn from(g: SampledGrid) -> Self {
        FuzzyNumber::Sampled(g)
    }
}

impl FuzzyNumber {
    pub fn trapezoidal(a: f64, b: f64, c: f64, e: f64) -> Result<Self, FuzzyError> {
        Trapezoid::new(a, b, c, e).map(Into::into)
    }

    pub fn triangular(a: f64, b: f64, c: f64) -> Result<Self, FuzzyError> {
        Trapezoid::triangular(a, b, c).map(Into::into)
    }

    pub fn crisp(x: f64) -> Result<Self, FuzzyError> {
        Trapezoid::crisp(x).map(Into::into)
    }

    /// Fuzzy number whose α-cut is `[lo(α), hi(α)]` for affine endpoint
    /// functions, given by their values at α = 0 and α = 1.
    pub fn from_affine_cuts(at_zero: Interval, at_one: Interval) -> Result<Self, FuzzyError> {
        Self::trapezoidal(at_zero.lo(), at_one.lo(), at_one.hi(), at_zero.hi())
    }

    pub fn as_trapezoid(&self) -> Option<&Trapezoid> {
        match self {
            FuzzyNumber::Trapezoidal(t) => Some(t),
            FuzzyNumber::Sampled(_) => None,
        }
    }

    pub fn alpha_cut(&self, alpha: f64) -> Result<Interval, FuzzyError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(FuzzyError::AlphaOutOfRange(alpha));
        }
        Ok(self.cut_unchecked(alpha))
    }

    fn cut_unchecked(&self, alpha: f64) -> Interval {
        match self {
            FuzzyNumber::Trapezoidal(t) => t.cut(alpha),
            FuzzyNumber::Sampled(g) => g.cut(alpha),
        }
    }

    /// α levels at which the endpoint functions may bend.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            FuzzyNumber::Trapezoidal(_) => &[0.0, 1.0],
            FuzzyNumber::Sampled(g) => g.alphas(),
        }
    }

    pub fn support(&self) -> Interval {
        self.cut_unchecked(0.0)
    }

    pub fn core(&self) -> Interval {
        self.cut_unchecked(1.0)
    }

    pub fn is_crisp(&self) -> bool {
        self.breakpoints()
            .iter()
            .all(|&a| self.cut_unchecked(a).width() == 0.0)
    }

    fn zip_grid(
        &self,
        other: &FuzzyNumber,
        op: impl Fn(Interval, Interval) -> Interval,
    ) -> FuzzyNumber {
        let alphas = merge_alphas(self.breakpoints(), other.breakpoints());
        let cuts = alphas
            .iter()
            .map(|&a| op(self.cut_unchecked(a), other.cut_unchecked(a)))
            .collect();
        SampledGrid::from_parts(alphas, cuts).into()
    }

    pub fn add(&self, other: &FuzzyNumber) -> FuzzyNumber {
        match (self, other) {
            (FuzzyNumber::Trapezoidal(x), FuzzyNumber::Trapezoidal(y)) => x.add(y).into(),
            _ => self.zip_grid(other, |x, y| x.add(&y)),
        }
    }

    pub fn sub(&self, other: &FuzzyNumber) -> FuzzyNumber {
        match (self, other) {
            (FuzzyNumber::Trapezoidal(x), FuzzyNumber::Trapezoidal(y)) => x.sub(y).into(),
            _ => self.zip_grid(other, |x, y| x.sub(&y)),
        }
    }

    pub fn scale(&self, c: f64) -> FuzzyNumber {
        match self {
            FuzzyNumber::Trapezoidal(t) => t.scale(c).into(),
            FuzzyNumber::Sampled(g) => SampledGrid::from_parts(
                g.alphas.clone(),
                g.cuts.iter().map(|i| i.scale(c)).collect(),
            )
            .into(),
        }
    }

    /// Product on the merged grid, or on a uniform grid of
    /// [`DEFAULT_GRID_LEVELS`] levels when both operands are trapezoidal.
    pub fn mul(&self, other: &FuzzyNumber) -> FuzzyNumber {
        self.mul_with_levels(other, DEFAULT_GRID_LEVELS)
    }

    /// As [`mul`](Self::mul), refining to at least `levels` uniform levels.
    /// A zero `levels` uses only the operands' own breakpoints.
    pub fn mul_with_levels(&self, other: &FuzzyNumber, levels: usize) -> FuzzyNumber {
        let mut alphas = merge_alphas(self.breakpoints(), other.breakpoints());
        if levels > 0 {
            alphas = merge_alphas(&alphas, &uniform_alphas(levels));
        }
        let cuts = alphas
            .iter()
            .map(|&a| self.cut_unchecked(a).mul(&other.cut_unchecked(a)))
            .collect();
        SampledGrid::from_parts(alphas, cuts).into()
    }

    /// Supremum over α of the larger endpoint gap.
    ///
    /// Exact for both representations: endpoint differences are piecewise
    /// linear with breakpoints on the merged grid.
    pub fn distance(&self, other: &FuzzyNumber) -> f64 {
        match (self, other) {
            (FuzzyNumber::Trapezoidal(x), FuzzyNumber::Trapezoidal(y)) => x.distance(y),
            _ => merge_alphas(self.breakpoints(), other.breakpoints())
                .iter()
                .map(|&a| self.cut_unchecked(a).endpoint_gap(&other.cut_unchecked(a)))
                .fold(0.0, f64::max),
        }
    }

    /// True when the α-cuts agree within `tol` at every breakpoint of either operand.
    pub fn cuts_agree(&self, other: &FuzzyNumber, tol: f64) -> bool {
        self.distance(other) <= tol
    }

    /// Checks normality, nestedness of the cuts, and bounded support, in that order.
    pub fn validate(&self) -> Validity {
        match self {
            FuzzyNumber::Trapezoidal(_) => Validity::Valid,
            FuzzyNumber::Sampled(g) => {
                let top = g.cuts[g.cuts.len() - 1];
                if top.lo() > top.hi() {
                    return Validity::Invalid(AxiomViolation::Normality);
                }
                for i in 1..g.alphas.len() {
                    if !g.cuts[i - 1].contains(&g.cuts[i]) {
                        return Validity::Invalid(AxiomViolation::Convexity {
                            lower: g.alphas[i - 1],
                            upper: g.alphas[i],
                        });
                    }
                }
                if !g.cuts[0].is_bounded() {
                    return Validity::Invalid(AxiomViolation::UnboundedSupport);
                }
                Validity::Valid
            }
        }
    }
}

impl fmt::Display for FuzzyNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FuzzyNumber::Trapezoidal(t) => {
                let [a, b, c, e] = t.params();
                if a == e {
                    write!(f, "crisp({a})")
                } else if b == c {
                    write!(f, "tri({a},{b},{e})")
                } else {
                    write!(f, "trap({a},{b},{c},{e})")
                }
            }
            FuzzyNumber::Sampled(g) => {
                f.write_str("grid([")?;
                for (i, (a, cut)) in g.levels().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "[{a},{},{}]", cut.lo(), cut.hi())?;
                }
                f.write_str("])")
            }
        }
    }
}
