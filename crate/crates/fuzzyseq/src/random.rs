//! Seeded generators for property suites.
//!
//! Values are multiples of 1/4 with small magnitude, so sums, differences
//! and products by small dyadic scalars are exact in `f64`.

use rand::Rng;

use fuzzyseq_core::{FuzzyNumber, FuzzySequence, TabulatedSequence};

pub fn quarter<R: Rng>(rng: &mut R, lo: i32, hi: i32) -> f64 {
    f64::from(rng.random_range(lo..=hi)) / 4.0
}

/// A trapezoid with left end in [-16, 16] and each width in [0, 2].
pub fn trapezoid<R: Rng>(rng: &mut R) -> FuzzyNumber {
    let a = quarter(rng, -64, 64);
    let b = a + quarter(rng, 0, 8);
    let c = b + quarter(rng, 0, 8);
    let e = c + quarter(rng, 0, 8);
    FuzzyNumber::trapezoidal(a, b, c, e).expect("ordered parameters")
}

/// A trapezoid with real-valued parameters in [-100, 100].
pub fn real_trapezoid<R: Rng>(rng: &mut R) -> FuzzyNumber {
    let mut p: [f64; 4] = std::array::from_fn(|_| rng.random_range(-100.0..=100.0));
    p.sort_by(f64::total_cmp);
    FuzzyNumber::trapezoidal(p[0], p[1], p[2], p[3]).expect("sorted parameters")
}

/// `len` terms, each equal to a shared base with probability `base_share`.
pub fn tabulated<R: Rng>(rng: &mut R, len: usize, base_share: f64) -> TabulatedSequence {
    let base = trapezoid(rng);
    let terms = (0..len)
        .map(|_| {
            if rng.random_bool(base_share) {
                base.clone()
            } else {
                trapezoid(rng)
            }
        })
        .collect();
    TabulatedSequence::new(terms).expect("len > 0")
}

/// `c · X_k`.
pub struct Scaled<'a, S: ?Sized> {
    pub inner: &'a S,
    pub c: f64,
}

impl<S: FuzzySequence + ?Sized> FuzzySequence for Scaled<'_, S> {
    fn term(&self, k: u64) -> FuzzyNumber {
        self.inner.term(k).scale(self.c)
    }
}

/// `X_k + Y_k`.
pub struct Summed<'a, S: ?Sized, T: ?Sized> {
    pub x: &'a S,
    pub y: &'a T,
}

impl<S: FuzzySequence + ?Sized, T: FuzzySequence + ?Sized> FuzzySequence for Summed<'_, S, T> {
    fn term(&self, k: u64) -> FuzzyNumber {
        self.x.term(k).add(&self.y.term(k))
    }
}
