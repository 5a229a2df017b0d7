//! Seeded randomized property suites behind `fuzzyseq check`.
//!
//! Each suite stops at the first failing case and reports it as a witness.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzyseq_core::modulus::check_modulus_from;
use fuzzyseq_core::{FuzzyNumber, ModulusFunction};

use crate::random::{real_trapezoid, trapezoid};

/// Tolerance for metric identities, relative to magnitudes above 1.
pub const METRIC_TOLERANCE: f64 = 1e-12;

/// Modulus names checked when none is given.
pub const DEFAULT_MODULI: [&str; 4] = ["identity", "sqrt", "xover1px", "log1p"];

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub property: String,
    pub case: usize,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} violated at case {}: {}",
            self.property, self.case, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub suite: String,
    pub seed: u64,
    pub cases: usize,
    pub witness: Option<Witness>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= METRIC_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

fn run(
    suite: &str,
    seed: u64,
    count: usize,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Result<(), (String, String)>,
) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let witness = (0..count).find_map(|i| {
        case(&mut rng).err().map(|(property, detail)| Witness {
            property,
            case: i,
            detail,
        })
    });
    SuiteOutcome {
        suite: suite.to_string(),
        seed,
        cases: count,
        witness,
    }
}

fn fail(property: &str, detail: String) -> Result<(), (String, String)> {
    Err((property.to_string(), detail))
}

/// Symmetry, triangle inequality, translation invariance and `|c|` scaling
/// of the supremum metric on random real-valued trapezoids.
pub fn metric(seed: u64, count: usize) -> SuiteOutcome {
    run("metric", seed, count, |rng| {
        let (x, y, z) = (
            real_trapezoid(rng),
            real_trapezoid(rng),
            real_trapezoid(rng),
        );
        let c: f64 = rng.random_range(-10.0..=10.0);
        let dxy = x.distance(&y);
        let pair = || format!("x = {x}, y = {y}");
        if dxy < 0.0 || dxy != y.distance(&x) || x.distance(&x) != 0.0 {
            return fail("symmetry", pair());
        }
        let (dxz, dyz) = (x.distance(&z), y.distance(&z));
        if dxz > dxy + dyz + METRIC_TOLERANCE * (dxy + dyz).max(1.0) {
            return fail(
                "triangle",
                format!("{}, z = {z}: {dxz} > {dxy} + {dyz}", pair()),
            );
        }
        let shifted = x.add(&z).distance(&y.add(&z));
        if !close(shifted, dxy) {
            return fail(
                "translation",
                format!("{}, z = {z}: {shifted} != {dxy}", pair()),
            );
        }
        let scaled = x.scale(c).distance(&y.scale(c));
        if !close(scaled, c.abs() * dxy) {
            return fail(
                "scaling",
                format!("{}, c = {c}: {scaled} != {}", pair(), c.abs() * dxy),
            );
        }
        Ok(())
    })
}

const AXIOM_ALPHAS: usize = 16;

fn nested(x: &FuzzyNumber) -> Result<(), String> {
    let cuts: Vec<_> = (0..=AXIOM_ALPHAS)
        .map(|i| {
            x.alpha_cut(i as f64 / AXIOM_ALPHAS as f64)
                .expect("alpha in [0, 1]")
        })
        .collect();
    match cuts.windows(2).position(|w| !w[0].contains(&w[1])) {
        Some(i) => {
            let n = AXIOM_ALPHAS as f64;
            Err(format!(
                "cut({}) not inside cut({}) of {x}",
                (i + 1) as f64 / n,
                i as f64 / n
            ))
        }
        None => Ok(()),
    }
}

/// Closure of the arithmetic under the fuzzy-number axioms, plus the exact
/// algebraic identities that hold on dyadic trapezoids.
pub fn fuzzy_axioms(seed: u64, count: usize) -> SuiteOutcome {
    run("fuzzy-axioms", seed, count, |rng| {
        let (x, y) = (trapezoid(rng), trapezoid(rng));
        let c = f64::from(rng.random_range(-16..=16)) / 4.0;
        let results = [
            ("add", x.add(&y)),
            ("sub", x.sub(&y)),
            ("scale", x.scale(c)),
            ("mul", x.mul(&y)),
        ];
        for (op, z) in &results {
            let validity = z.validate();
            if !validity.is_valid() {
                return fail(op, format!("{x} {op} {y} (c = {c}): {validity}"));
            }
            if let Err(e) = nested(z) {
                return fail(op, e);
            }
        }
        if x.add(&y) != y.add(&x) {
            return fail("add-commutes", format!("x = {x}, y = {y}"));
        }
        if x.mul(&y).distance(&y.mul(&x)) != 0.0 {
            return fail("mul-commutes", format!("x = {x}, y = {y}"));
        }
        let zero = x.sub(&x);
        if !(zero.support().lo() <= 0.0
            && zero.support().hi() >= 0.0
            && zero.core().lo() <= 0.0
            && zero.core().hi() >= 0.0)
        {
            return fail("self-difference", format!("x = {x}: {zero}"));
        }
        if x.scale(c).scale(-1.0) != x.scale(-c) {
            return fail("negation", format!("x = {x}, c = {c}"));
        }
        Ok(())
    })
}

/// Sampled modulus axioms for `name`; `seed` offsets the Halton samples.
/// Unknown names yield `None`.
pub fn modulus(name: &str, seed: u64, count: usize) -> Option<SuiteOutcome> {
    let f = ModulusFunction::from_name(name)?;
    let report = check_modulus_from(&f, count, seed.max(1));
    let witness = report.outcome.err().map(|v| Witness {
        property: "modulus".to_string(),
        case: 0,
        detail: format!("{name}: {v}"),
    });
    Some(SuiteOutcome {
        suite: format!("modulus:{name}"),
        seed,
        cases: count,
        witness,
    })
}
