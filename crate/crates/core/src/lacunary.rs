//! Lacunary sequences θ = (k_r): `k_0 = 0`, strictly increasing, with blocks
//! `I_r = (k_{r−1}, k_r]`, lengths `h_r = k_r − k_{r−1}` and ratios
//! `q_r = k_r / k_{r−1}`.
//!
//! `h_r → ∞` cannot be checked on a finite prefix; a structure instead
//! requires `h_r` to be non-decreasing over the prefix it holds (or records
//! where it is not, under [`GrowthPolicy::Warn`]).

use alloc::vec::Vec;
use core::fmt;
use core::ops::RangeInclusive;

use crate::math;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LacunaryRule {
    /// `k_r = base^r` for `r >= 1`.
    Powers { base: u64 },
    /// `k_r = r(r + 1)/2`, so `h_r = r` and `q_r → 1`.
    Triangular,
    /// `k_r = r²`.
    Squares,
}

impl LacunaryRule {
    fn k(&self, r: u32) -> Option<u64> {
        let r64 = u64::from(r);
        match *self {
            _ if r == 0 => Some(0),
            LacunaryRule::Powers { base } => base.checked_pow(r),
            LacunaryRule::Triangular => r64.checked_mul(r64 + 1).map(|x| x / 2),
            LacunaryRule::Squares => r64.checked_mul(r64),
        }
    }
}

impl fmt::Display for LacunaryRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LacunaryRule::Powers { base } => write!(f, "powers{base}"),
            LacunaryRule::Triangular => f.write_str("triangular"),
            LacunaryRule::Squares => f.write_str("squares"),
        }
    }
}

/// What to do when `h_r < h_{r−1}` somewhere in the prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GrowthPolicy {
    #[default]
    Error,
    Warn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LacunaryError {
    /// Need `k_0` and at least one more term.
    TooShort,
    NonZeroStart,
    NotIncreasing {
        r: usize,
    },
    BlockShrinks {
        r: usize,
    },
    OutOfRange {
        r: usize,
        r_max: usize,
    },
    Overflow {
        r: usize,
    },
    BadBase(u64),
}

impl fmt::Display for LacunaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LacunaryError::TooShort => f.write_str("lacunary sequence needs k_0 and at least k_1"),
            LacunaryError::NonZeroStart => f.write_str("lacunary sequence must start with k_0 = 0"),
            LacunaryError::NotIncreasing { r } => {
                write!(f, "k_r is not strictly increasing at r={r}")
            }
            LacunaryError::BlockShrinks { r } => write!(f, "block length h_r decreases at r={r}"),
            LacunaryError::OutOfRange { r, r_max } => {
                write!(f, "block r={r} outside validated range 1..={r_max}")
            }
            LacunaryError::Overflow { r } => write!(f, "k_r overflows 64-bit integers at r={r}"),
            LacunaryError::BadBase(b) => write!(f, "power base must be at least 2, got {b}"),
        }
    }
}

impl core::error::Error for LacunaryError {}

/// A validated finite prefix `k_0, …, k_R` of a lacunary sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LacunaryStructure {
    kr: Vec<u64>,
    shrinking: Vec<usize>,
}

impl LacunaryStructure {
    pub fn explicit(kr: Vec<u64>, policy: GrowthPolicy) -> Result<Self, LacunaryError> {
        if kr.len() < 2 {
            return Err(LacunaryError::TooShort);
        }
        if kr[0] != 0 {
            return Err(LacunaryError::NonZeroStart);
        }
        let mut shrinking = Vec::new();
        for r in 1..kr.len() {
            if kr[r] <= kr[r - 1] {
                return Err(LacunaryError::NotIncreasing { r });
            }
            if r >= 2 && kr[r] - kr[r - 1] < kr[r - 1] - kr[r - 2] {
                match policy {
                    GrowthPolicy::Error => return Err(LacunaryError::BlockShrinks { r }),
                    GrowthPolicy::Warn => shrinking.push(r),
                }
            }
        }
        Ok(LacunaryStructure { kr, shrinking })
    }

    /// Prefix `k_0..=k_{r_max}` of a generator rule.
    pub fn from_rule(rule: LacunaryRule, r_max: u32) -> Result<Self, LacunaryError> {
        if let LacunaryRule::Powers { base } = rule {
            if base < 2 {
                return Err(LacunaryError::BadBase(base));
            }
        }
        let kr = (0..=r_max)
            .map(|r| rule.k(r).ok_or(LacunaryError::Overflow { r: r as usize }))
            .collect::<Result<Vec<_>, _>>()?;
        LacunaryStructure::explicit(kr, GrowthPolicy::Error)
    }

    pub fn powers_of_two(r_max: u32) -> Result<Self, LacunaryError> {
        LacunaryStructure::from_rule(LacunaryRule::Powers { base: 2 }, r_max)
    }

    /// Number of blocks held, R.
    pub fn r_max(&self) -> usize {
        self.kr.len() - 1
    }

    pub fn terms(&self) -> &[u64] {
        &self.kr
    }

    /// Blocks `r` at which `h_r < h_{r−1}` (only under [`GrowthPolicy::Warn`]).
    pub fn shrinking_blocks(&self) -> &[usize] {
        &self.shrinking
    }

    fn check(&self, r: usize) -> Result<(), LacunaryError> {
        if r == 0 || r > self.r_max() {
            Err(LacunaryError::OutOfRange {
                r,
                r_max: self.r_max(),
            })
        } else {
            Ok(())
        }
    }

    /// `k_r` for `0 <= r <= R`.
    pub fn k(&self, r: usize) -> Result<u64, LacunaryError> {
        self.kr.get(r).copied().ok_or(LacunaryError::OutOfRange {
            r,
            r_max: self.r_max(),
        })
    }

    pub fn h(&self, r: usize) -> Result<u64, LacunaryError> {
        self.check(r)?;
        Ok(self.kr[r] - self.kr[r - 1])
    }

    /// `h_r^β`; see [`math::order_power`].
    pub fn h_pow(&self, r: usize, beta: f64) -> Result<f64, LacunaryError> {
        Ok(math::order_power(self.h(r)?, beta))
    }

    /// `q_r`; `None` for `r = 1` where `k_0 = 0`.
    pub fn q(&self, r: usize) -> Result<Option<f64>, LacunaryError> {
        self.check(r)?;
        Ok((r >= 2).then(|| self.kr[r] as f64 / self.kr[r - 1] as f64))
    }

    /// `(k_{r−1}, k_r]` as the inclusive range `k_{r−1}+1 ..= k_r`.
    pub fn block_indices(&self, r: usize) -> Result<RangeInclusive<u64>, LacunaryError> {
        self.check(r)?;
        Ok(self.kr[r - 1] + 1..=self.kr[r])
    }

    /// `(inf q_r, sup q_r)` over `2 <= r <= r_max`.
    pub fn ratio_stats(&self, r_max: usize) -> Result<(f64, f64), LacunaryError> {
        self.ratio_stats_between(2, r_max)
    }

    /// `(inf q_r, sup q_r)` over `from <= r <= to`, `from >= 2`.
    pub fn ratio_stats_between(&self, from: usize, to: usize) -> Result<(f64, f64), LacunaryError> {
        let from = from.max(2);
        if to < from {
            return Err(LacunaryError::OutOfRange {
                r: to,
                r_max: self.r_max(),
            });
        }
        self.check(to)?;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for r in from..=to {
            let q = self.kr[r] as f64 / self.kr[r - 1] as f64;
            lo = lo.min(q);
            hi = hi.max(q);
        }
        Ok((lo, hi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn powers_of_two_blocks() {
        let t = LacunaryStructure::powers_of_two(40).unwrap();
        assert_eq!(t.h(1).unwrap(), 2);
        for r in 1..=40 {
            assert_eq!(t.k(r).unwrap(), 1u64 << r);
        }
        for r in 2..=40 {
            assert_eq!(t.h(r).unwrap(), 1u64 << (r - 1));
        }
        for r in 2..=40 {
            assert_eq!(t.q(r).unwrap(), Some(2.0));
        }
        assert_eq!(t.q(1).unwrap(), None);
        assert_eq!(t.ratio_stats(20).unwrap(), (2.0, 2.0));
    }

    #[test]
    fn explicit_prefix() {
        let t = LacunaryStructure::explicit(vec![0, 2, 6, 14, 30], GrowthPolicy::Error).unwrap();
        let h: Vec<u64> = (1..=4).map(|r| t.h(r).unwrap()).collect();
        assert_eq!(h, vec![2, 4, 8, 16]);
        let q: Vec<f64> = (2..=4).map(|r| t.q(r).unwrap().unwrap()).collect();
        assert_eq!(q, vec![3.0, 7.0 / 3.0, 15.0 / 7.0]);
        assert_eq!(t.block_indices(2).unwrap(), 3..=6);
    }

    #[test]
    fn rejects_non_monotone_and_bad_start() {
        assert_eq!(
            LacunaryStructure::explicit(vec![0, 3, 2], GrowthPolicy::Error),
            Err(LacunaryError::NotIncreasing { r: 2 })
        );
        assert_eq!(
            LacunaryStructure::explicit(vec![1, 3], GrowthPolicy::Error),
            Err(LacunaryError::NonZeroStart)
        );
        assert_eq!(
            LacunaryStructure::explicit(vec![0], GrowthPolicy::Error),
            Err(LacunaryError::TooShort)
        );
    }

    #[test]
    fn shrinking_blocks_error_or_warn() {
        let kr = vec![0, 4, 6, 10];
        assert_eq!(
            LacunaryStructure::explicit(kr.clone(), GrowthPolicy::Error),
            Err(LacunaryError::BlockShrinks { r: 2 })
        );
        let t = LacunaryStructure::explicit(kr, GrowthPolicy::Warn).unwrap();
        assert_eq!(t.shrinking_blocks(), &[2]);
    }

    #[test]
    fn block_ranges() {
        let t = LacunaryStructure::powers_of_two(5).unwrap();
        assert_eq!(t.block_indices(3).unwrap(), 5..=8);
        assert_eq!(t.block_indices(1).unwrap(), 1..=2);
        assert_eq!(
            t.block_indices(6),
            Err(LacunaryError::OutOfRange { r: 6, r_max: 5 })
        );
        assert!(t.block_indices(0).is_err());
    }

    #[test]
    fn triangular_ratios_approach_one() {
        let t = LacunaryStructure::from_rule(LacunaryRule::Triangular, 10).unwrap();
        let (lo, hi) = t.ratio_stats(10).unwrap();
        // q_r = (r + 1)/(r − 1) is decreasing: sup at r = 2, inf at r = 10
        assert_eq!(hi, 3.0);
        assert_eq!(lo, 55.0 / 45.0);
        assert!(lo > 1.0);
    }

    #[test]
    fn explicit_doubling_prefix() {
        let t = LacunaryStructure::explicit(vec![0, 1, 2, 4, 8], GrowthPolicy::Error).unwrap();
        assert_eq!(t.ratio_stats(4).unwrap(), (2.0, 2.0));
    }

    #[test]
    fn overflow_and_base_checks() {
        assert_eq!(
            LacunaryStructure::powers_of_two(64),
            Err(LacunaryError::Overflow { r: 64 })
        );
        assert_eq!(
            LacunaryStructure::from_rule(LacunaryRule::Powers { base: 1 }, 3),
            Err(LacunaryError::BadBase(1))
        );
    }
}
