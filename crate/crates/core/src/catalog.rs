//! The four reference sequences and their published closed-form α-cuts.
//!
//! | id               | special indices | value there           | value elsewhere |
//! |------------------|-----------------|-----------------------|-----------------|
//! | `order-gt-one`   | even `k`        | `tri(0,1,2)`          | `tri(3,4,5)`    |
//! | `thm-2.5-strict` | cubes           | `tri(k−½, k, k+½)`    | `tri(½,1,3/2)`  |
//! | `thm-2.7-strict` | squares         | `tri(−k, 0, k)`       | `tri(2,4,6)`    |
//! | `thm-2.12-strict`| cubes           | `tri(2,3,4)`          | `tri(5,8,11)`   |

use core::fmt;
use core::str::FromStr;

use crate::fuzzy::FuzzyNumber;
use crate::interval::Interval;
use crate::math;
use crate::sequence::{FuzzySequence, REPRESENTATIVE_BASE};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExampleId {
    /// Alternating sequence with two competing limits once β > 1.
    OrderGtOne,
    /// Peaks at cubes that grow with `k`.
    Thm25Strict,
    /// Supports at squares that widen with `k`.
    Thm27Strict,
    /// Bounded deviations at cubes.
    Thm212Strict,
}

impl ExampleId {
    pub const ALL: [ExampleId; 4] = [
        ExampleId::OrderGtOne,
        ExampleId::Thm25Strict,
        ExampleId::Thm27Strict,
        ExampleId::Thm212Strict,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExampleId::OrderGtOne => "order-gt-one",
            ExampleId::Thm25Strict => "thm-2.5-strict",
            ExampleId::Thm27Strict => "thm-2.7-strict",
            ExampleId::Thm212Strict => "thm-2.12-strict",
        }
    }

    pub fn sequence(self) -> CatalogSequence {
        CatalogSequence { id: self }
    }

    fn is_special(&self, k: u64) -> bool {
        match self {
            ExampleId::OrderGtOne => k.is_multiple_of(2),
            ExampleId::Thm25Strict | ExampleId::Thm212Strict => math::is_cube(k),
            ExampleId::Thm27Strict => math::is_square(k),
        }
    }

    /// The index class of the window `k..=k+m` when it is pure, i.e. when the
    /// published closed form applies to `(Δ^m X)_k`.
    pub fn pure_class(&self, m: u32, k: u64) -> Option<PureClass> {
        if k == 0 {
            return None;
        }
        match self {
            ExampleId::OrderGtOne => Some(if k.is_multiple_of(2) {
                PureClass::Even
            } else {
                PureClass::Odd
            }),
            _ => {
                let window = k..=k + u64::from(m);
                if window.into_iter().any(|j| self.is_special(j)) {
                    None
                } else if *self == ExampleId::Thm27Strict {
                    Some(PureClass::NonSquare)
                } else {
                    Some(PureClass::NonCube)
                }
            }
        }
    }

    /// Published α-cut of `(Δ^m X)_k`, or `None` where no closed form is
    /// given (mixed windows, `m = 0`, α outside `[0, 1]`).
    ///
    /// The `thm-2.7-strict` form is stored verbatim, including its right
    /// endpoint `2^m(1 − α)`; direct computation gives `2^{m+1}(1 − α)`.
    pub fn closed_form(&self, m: u32, k: u64, alpha: f64) -> Option<Interval> {
        if m == 0 || !(0.0..=1.0).contains(&alpha) {
            return None;
        }
        let class = self.pure_class(m, k)?;
        let p = libm::ldexp(1.0, m as i32);
        let q = libm::ldexp(1.0, m as i32 - 1);
        let (lo, hi) = match class {
            PureClass::Even => (p * alpha - q * 5.0, -p * alpha - q),
            PureClass::Odd => (p * alpha + q, -p * alpha + q * 5.0),
            PureClass::NonCube if *self == ExampleId::Thm25Strict => {
                (q * (alpha - 1.0), q * (1.0 - alpha))
            }
            PureClass::NonCube => (p * (3.0 * alpha - 3.0), p * (3.0 - 3.0 * alpha)),
            PureClass::NonSquare => (2.0 * p * (alpha - 1.0), p * (1.0 - alpha)),
        };
        Interval::new(lo, hi)
    }

    /// The closed form at `k` as a fuzzy number (all published forms are affine in α).
    pub fn closed_form_number(&self, m: u32, k: u64) -> Option<FuzzyNumber> {
        let zero = self.closed_form(m, k, 0.0)?;
        let one = self.closed_form(m, k, 1.0)?;
        FuzzyNumber::from_affine_cuts(zero, one).ok()
    }
}

impl fmt::Display for ExampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownExample;

impl fmt::Display for UnknownExample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown example id (expected order-gt-one, thm-2.5-strict, thm-2.7-strict or thm-2.12-strict)")
    }
}

impl core::error::Error for UnknownExample {}

impl FromStr for ExampleId {
    type Err = UnknownExample;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ExampleId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or(UnknownExample)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PureClass {
    Even,
    Odd,
    NonCube,
    NonSquare,
}

impl PureClass {
    pub fn name(&self) -> &'static str {
        match self {
            PureClass::Even => "even",
            PureClass::Odd => "odd",
            PureClass::NonCube => "non-cube",
            PureClass::NonSquare => "non-square",
        }
    }
}

/// Generator for one of the reference sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogSequence {
    id: ExampleId,
}

impl CatalogSequence {
    pub fn id(&self) -> ExampleId {
        self.id
    }
}

fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
    FuzzyNumber::triangular(a, b, c).expect("ordered catalog triangle")
}

impl FuzzySequence for CatalogSequence {
    fn term(&self, k: u64) -> FuzzyNumber {
        let special = self.id.is_special(k);
        match (self.id, special) {
            (ExampleId::OrderGtOne, true) => tri(0.0, 1.0, 2.0),
            (ExampleId::OrderGtOne, false) => tri(3.0, 4.0, 5.0),
            (ExampleId::Thm25Strict, true) => {
                let x = k as f64;
                tri(x - 0.5, x, x + 0.5)
            }
            (ExampleId::Thm25Strict, false) => tri(0.5, 1.0, 1.5),
            (ExampleId::Thm27Strict, true) => {
                let x = k as f64;
                tri(-x, 0.0, x)
            }
            (ExampleId::Thm27Strict, false) => tri(2.0, 4.0, 6.0),
            (ExampleId::Thm212Strict, true) => tri(2.0, 3.0, 4.0),
            (ExampleId::Thm212Strict, false) => tri(5.0, 8.0, 11.0),
        }
    }

    /// Even for `order-gt-one` (the `X′` class); otherwise the first even
    /// index at or past 10⁶ whose window holds no special index.
    fn representative_index(&self, m: u32) -> u64 {
        let mut k = REPRESENTATIVE_BASE;
        while self.id.pure_class(m, k).is_none() {
            k += 2;
        }
        k
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for id in ExampleId::ALL {
            assert_eq!(id.name().parse::<ExampleId>(), Ok(id));
        }
        assert_eq!("nope".parse::<ExampleId>(), Err(UnknownExample));
    }

    #[test]
    fn reference_terms() {
        let s = ExampleId::Thm212Strict.sequence();
        assert_eq!(s.term(8), tri(2.0, 3.0, 4.0));
        let c = s.term(8).alpha_cut(0.5).unwrap();
        assert_eq!((c.lo(), c.hi()), (2.5, 3.5));
        let s = ExampleId::Thm27Strict.sequence();
        assert_eq!(s.term(3), tri(2.0, 4.0, 6.0));
        let c = s.term(3).alpha_cut(0.25).unwrap();
        assert_eq!((c.lo(), c.hi()), (2.5, 5.5));
        assert_eq!(
            ExampleId::Thm25Strict.sequence().term(27),
            tri(26.5, 27.0, 27.5)
        );
        assert_eq!(ExampleId::OrderGtOne.sequence().term(4), tri(0.0, 1.0, 2.0));
        assert_eq!(ExampleId::OrderGtOne.sequence().term(5), tri(3.0, 4.0, 5.0));
    }

    #[test]
    fn closed_form_samples() {
        let even = ExampleId::OrderGtOne.closed_form(1, 2, 0.0).unwrap();
        assert_eq!((even.lo(), even.hi()), (-5.0, -1.0));
        let odd = ExampleId::OrderGtOne.closed_form(1, 3, 1.0).unwrap();
        assert_eq!((odd.lo(), odd.hi()), (3.0, 3.0));
        let pure = ExampleId::Thm212Strict.closed_form(1, 10, 0.0).unwrap();
        assert_eq!((pure.lo(), pure.hi()), (-6.0, 6.0));
        // 7 and 8 straddle a cube
        assert!(ExampleId::Thm212Strict.closed_form(1, 7, 0.0).is_none());
        assert!(ExampleId::Thm212Strict.closed_form(1, 8, 0.0).is_none());
        assert!(ExampleId::Thm212Strict.closed_form(0, 10, 0.0).is_none());
    }

    #[test]
    fn representative_indices_avoid_special_windows() {
        assert_eq!(
            ExampleId::OrderGtOne.sequence().representative_index(3),
            1_000_000
        );
        for id in [
            ExampleId::Thm25Strict,
            ExampleId::Thm27Strict,
            ExampleId::Thm212Strict,
        ] {
            let k = id.sequence().representative_index(2);
            assert!(id.pure_class(2, k).is_some());
            assert_eq!(k, 1_000_002);
        }
    }
}
