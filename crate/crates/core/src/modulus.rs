//! Modulus functions: `f(0) = 0` only at 0, subadditive, increasing,
//! right-continuous at 0. Axioms are checked on samples, never proved.

use core::fmt;

/// Built-in gauges, plus `Square` as a deliberate non-modulus.
#[derive(Debug, Clone, Copy)]
pub enum ModulusFunction {
    Identity,
    /// `x^p`; a modulus for `0 < p <= 1`.
    Power(f64),
    /// `x / (1 + x)`, bounded by 1.
    Ratio,
    /// `ln(1 + x)`.
    Log1p,
    /// `x²`, which fails subadditivity.
    Square,
    Custom {
        name: &'static str,
        eval: fn(f64) -> f64,
        bounded: bool,
    },
}

impl PartialEq for ModulusFunction {
    /// Custom functions compare by name.
    fn eq(&self, other: &Self) -> bool {
        use ModulusFunction::*;
        match (self, other) {
            (Identity, Identity) | (Ratio, Ratio) | (Log1p, Log1p) | (Square, Square) => true,
            (Power(a), Power(b)) => a == b,
            (
                Custom {
                    name: a,
                    bounded: x,
                    ..
                },
                Custom {
                    name: b,
                    bounded: y,
                    ..
                },
            ) => a == b && x == y,
            _ => false,
        }
    }
}

impl ModulusFunction {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            ModulusFunction::Identity => x,
            ModulusFunction::Power(p) => libm::pow(x, p),
            ModulusFunction::Ratio => x / (1.0 + x),
            ModulusFunction::Log1p => libm::log1p(x),
            ModulusFunction::Square => x * x,
            ModulusFunction::Custom { eval, .. } => eval(x),
        }
    }

    /// Declared boundedness.
    pub fn is_bounded(&self) -> bool {
        match *self {
            ModulusFunction::Ratio => true,
            ModulusFunction::Custom { bounded, .. } => bounded,
            _ => false,
        }
    }

    /// Supremum of a bounded gauge.
    pub fn bound(&self) -> Option<f64> {
        match *self {
            ModulusFunction::Ratio => Some(1.0),
            _ => None,
        }
    }

    /// Parses `identity`, `sqrt`, `pow:<p>`, `xover1px`, `log1p`, `xsq`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "identity" => Some(ModulusFunction::Identity),
            "sqrt" => Some(ModulusFunction::Power(0.5)),
            "xover1px" => Some(ModulusFunction::Ratio),
            "log1p" => Some(ModulusFunction::Log1p),
            "xsq" => Some(ModulusFunction::Square),
            _ => {
                let p: f64 = name.strip_prefix("pow:")?.parse().ok()?;
                (p > 0.0 && p.is_finite()).then_some(ModulusFunction::Power(p))
            }
        }
    }
}

impl fmt::Display for ModulusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusFunction::Identity => f.write_str("identity"),
            ModulusFunction::Power(p) if *p == 0.5 => f.write_str("sqrt"),
            ModulusFunction::Power(p) => write!(f, "pow:{p}"),
            ModulusFunction::Ratio => f.write_str("xover1px"),
            ModulusFunction::Log1p => f.write_str("log1p"),
            ModulusFunction::Square => f.write_str("xsq"),
            ModulusFunction::Custom { name, .. } => f.write_str(name),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModulusViolation {
    NonZeroAtZero {
        value: f64,
    },
    /// `f(x) = 0` at some `x > 0`.
    ZeroAwayFromZero {
        x: f64,
    },
    NotMonotone {
        x: f64,
        y: f64,
    },
    NotSubadditive {
        x: f64,
        y: f64,
    },
    NotRightContinuous {
        value: f64,
    },
}

impl fmt::Display for ModulusViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusViolation::NonZeroAtZero { value } => write!(f, "f(0) = {value}, expected 0"),
            ModulusViolation::ZeroAwayFromZero { x } => write!(f, "f({x}) = 0 with x > 0"),
            ModulusViolation::NotMonotone { x, y } => write!(f, "monotonicity: f({x}) > f({y})"),
            ModulusViolation::NotSubadditive { x, y } => {
                write!(f, "subadditivity, witness pair ({x}, {y})")
            }
            ModulusViolation::NotRightContinuous { value } => {
                write!(f, "right-continuity at 0: f(1e-12) = {value}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModulusReport {
    pub function: ModulusFunction,
    pub bounded: bool,
    pub samples: usize,
    pub outcome: Result<(), ModulusViolation>,
}

impl ModulusReport {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

/// Pairs checked ahead of the low-discrepancy samples.
const ANCHORS: [(f64, f64); 5] = [
    (1.0, 1.0),
    (0.5, 0.5),
    (2.0, 3.0),
    (10.0, 10.0),
    (0.01, 0.02),
];

const SAMPLE_RANGE: f64 = 100.0;

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f *= inv;
    }
    out
}

/// Halton point `index` in bases (2, 3), scaled to `[0, 100]²`.
pub fn halton_pair(index: u64) -> (f64, f64) {
    (
        SAMPLE_RANGE * radical_inverse(index, 2),
        SAMPLE_RANGE * radical_inverse(index, 3),
    )
}

fn slack(v: f64) -> f64 {
    1e-12 * v.abs().max(1.0)
}

/// Sampled axiom check over the anchor pairs and `sample_count` Halton pairs.
pub fn check_modulus(f: &ModulusFunction, sample_count: usize) -> ModulusReport {
    check_modulus_from(f, sample_count, 1)
}

/// As [`check_modulus`], starting the Halton sequence at `first_index`.
pub fn check_modulus_from(
    f: &ModulusFunction,
    sample_count: usize,
    first_index: u64,
) -> ModulusReport {
    let report = |outcome| ModulusReport {
        function: *f,
        bounded: f.is_bounded(),
        samples: sample_count,
        outcome,
    };

    let f0 = f.eval(0.0);
    if f0 != 0.0 {
        return report(Err(ModulusViolation::NonZeroAtZero { value: f0 }));
    }

    let pairs = ANCHORS
        .iter()
        .copied()
        .chain((0..sample_count as u64).map(|i| halton_pair(first_index + i)));

    let mut xs = alloc::vec::Vec::with_capacity(2 * (sample_count + ANCHORS.len()));
    for (x, y) in pairs {
        let (fx, fy, fxy) = (f.eval(x), f.eval(y), f.eval(x + y));
        if !(fxy <= fx + fy + slack(fx + fy)) {
            return report(Err(ModulusViolation::NotSubadditive { x, y }));
        }
        xs.push(x);
        xs.push(y);
    }

    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut prev: Option<(f64, f64)> = None;
    for &x in &xs {
        let fx = f.eval(x);
        if x > 0.0 && !(fx > 0.0) {
            return report(Err(ModulusViolation::ZeroAwayFromZero { x }));
        }
        if let Some((px, pf)) = prev {
            if !(pf <= fx + slack(fx)) {
                return report(Err(ModulusViolation::NotMonotone { x: px, y: x }));
            }
        }
        prev = Some((x, fx));
    }

    // f(10^-j), j = 1..=12, must decrease and end at least an order of
    // magnitude below f(0.1) (or below 1e-6 outright).
    let tail: [f64; 12] = core::array::from_fn(|j| f.eval(libm::pow(10.0, -(j as f64 + 1.0))));
    let decreasing = tail.windows(2).all(|w| w[1] <= w[0] + slack(w[0]));
    let last = tail[11];
    if !decreasing || !(last <= 1e-6 || last <= 0.1 * tail[0]) {
        return report(Err(ModulusViolation::NotRightContinuous { value: last }));
    }

    report(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_ratio_pass() {
        let r = check_modulus(&ModulusFunction::Power(0.5), 10_000);
        assert!(r.passed(), "{:?}", r.outcome);
        assert!(!r.bounded);
        let r = check_modulus(&ModulusFunction::Ratio, 10_000);
        assert!(r.passed(), "{:?}", r.outcome);
        assert!(r.bounded);
        assert!(check_modulus(&ModulusFunction::Identity, 1000).passed());
        assert!(check_modulus(&ModulusFunction::Log1p, 1000).passed());
        assert!(check_modulus(&ModulusFunction::Power(0.1), 1000).passed());
    }

    #[test]
    fn square_fails_at_unit_pair() {
        let r = check_modulus(&ModulusFunction::Square, 10_000);
        assert_eq!(
            r.outcome,
            Err(ModulusViolation::NotSubadditive { x: 1.0, y: 1.0 })
        );
    }

    #[test]
    fn jump_at_zero_is_not_right_continuous() {
        fn step(x: f64) -> f64 {
            if x > 0.0 {
                1.0
            } else {
                0.0
            }
        }
        let f = ModulusFunction::Custom {
            name: "step",
            eval: step,
            bounded: true,
        };
        assert!(matches!(
            check_modulus(&f, 100).outcome,
            Err(ModulusViolation::NotRightContinuous { .. })
        ));
    }

    #[test]
    fn offset_at_zero_and_decreasing_are_caught() {
        fn shifted(x: f64) -> f64 {
            x + 1.0
        }
        fn neg(x: f64) -> f64 {
            -x
        }
        let f = ModulusFunction::Custom {
            name: "shifted",
            eval: shifted,
            bounded: false,
        };
        assert_eq!(
            check_modulus(&f, 10).outcome,
            Err(ModulusViolation::NonZeroAtZero { value: 1.0 })
        );
        let f = ModulusFunction::Custom {
            name: "neg",
            eval: neg,
            bounded: false,
        };
        assert!(check_modulus(&f, 10).outcome.is_err());
    }

    #[test]
    fn halton_points_stay_in_range() {
        for i in 1..1000 {
            let (x, y) = halton_pair(i);
            assert!((0.0..SAMPLE_RANGE).contains(&x) && (0.0..SAMPLE_RANGE).contains(&y));
        }
        let (x, y) = halton_pair(1);
        assert_eq!(x, 50.0);
        assert!((y - 100.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn names_round_trip() {
        for f in [
            ModulusFunction::Identity,
            ModulusFunction::Power(0.5),
            ModulusFunction::Power(0.25),
            ModulusFunction::Ratio,
            ModulusFunction::Log1p,
            ModulusFunction::Square,
        ] {
            let name = alloc::format!("{f}");
            assert_eq!(ModulusFunction::from_name(&name), Some(f));
        }
        assert_eq!(ModulusFunction::from_name("pow:-1"), None);
        assert_eq!(ModulusFunction::from_name("cosh"), None);
    }
}
