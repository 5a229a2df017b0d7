//! Estimator values on the reference sequences against a from-scratch
//! interval evaluation that shares no code with the library path.

use std::collections::HashSet;

use fuzzyseq_core::estimators::{
    cesaro_mean, dominant_limit, lacunary_density, prefix_density, strong_lacunary_mean,
};
use fuzzyseq_core::{math, ExampleId, FuzzyNumber, LacunaryStructure, OrderParams};

struct Oracle {
    id: ExampleId,
    cubes: HashSet<u64>,
    squares: HashSet<u64>,
}

impl Oracle {
    fn new(id: ExampleId, limit: u64) -> Self {
        let cubes = (1u64..)
            .map(|n| n * n * n)
            .take_while(|&c| c <= limit)
            .collect();
        let squares = (1u64..)
            .map(|n| n * n)
            .take_while(|&c| c <= limit)
            .collect();
        Oracle { id, cubes, squares }
    }

    fn triangle(&self, k: u64) -> (f64, f64, f64) {
        let x = k as f64;
        match self.id {
            ExampleId::OrderGtOne if k.is_multiple_of(2) => (0.0, 1.0, 2.0),
            ExampleId::OrderGtOne => (3.0, 4.0, 5.0),
            ExampleId::Thm25Strict if self.cubes.contains(&k) => (x - 0.5, x, x + 0.5),
            ExampleId::Thm25Strict => (0.5, 1.0, 1.5),
            ExampleId::Thm27Strict if self.squares.contains(&k) => (-x, 0.0, x),
            ExampleId::Thm27Strict => (2.0, 4.0, 6.0),
            ExampleId::Thm212Strict if self.cubes.contains(&k) => (2.0, 3.0, 4.0),
            ExampleId::Thm212Strict => (5.0, 8.0, 11.0),
        }
    }

    fn cut(&self, m: u32, k: u64, a: f64) -> (f64, f64) {
        if m == 0 {
            let (l, c, r) = self.triangle(k);
            return (l + a * (c - l), r - a * (r - c));
        }
        let (u1, v1) = self.cut(m - 1, k, a);
        let (u2, v2) = self.cut(m - 1, k + 1, a);
        (u1 - v2, v1 - u2)
    }

    fn distance(&self, m: u32, k: u64, x0: (f64, f64, f64), alphas: &[f64]) -> f64 {
        alphas
            .iter()
            .map(|&a| {
                let (u, v) = self.cut(m, k, a);
                let (p, q) = (x0.0 + a * (x0.1 - x0.0), x0.2 - a * (x0.2 - x0.1));
                f64::max((u - p).abs(), (v - q).abs())
            })
            .fold(0.0, f64::max)
    }
}

fn grid(n: u32) -> Vec<f64> {
    (0..=n).map(|i| f64::from(i) / f64::from(n)).collect()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn tri(a: f64, b: f64, c: f64) -> FuzzyNumber {
    FuzzyNumber::triangular(a, b, c).unwrap()
}

#[test]
fn alternating_density_is_one_half_per_block() {
    let oracle = Oracle::new(ExampleId::OrderGtOne, 0);
    let alphas = grid(1000);
    let x_even = (-5.0, -3.0, -1.0);
    assert!(close(oracle.distance(1, 3, x_even, &alphas), 6.0));

    let seq = ExampleId::OrderGtOne.sequence();
    let limit = ExampleId::OrderGtOne.closed_form_number(1, 2).unwrap();
    assert_eq!(limit, tri(-5.0, -3.0, -1.0));
    let theta = LacunaryStructure::powers_of_two(20).unwrap();
    let params = OrderParams::new(1.0, 1.0, 1).unwrap();
    for r in 2..=14 {
        let block = theta.block_indices(r).unwrap();
        let h = theta.h(r).unwrap();
        let count = block
            .filter(|&k| oracle.distance(1, k, x_even, &alphas) >= 1.0)
            .count();
        assert_eq!(count as u64 * 2, h);
        assert_eq!(
            lacunary_density(&seq, &limit, &params, &theta, r)
                .unwrap()
                .value,
            0.5
        );
    }
    // the count law carries to β = 1.5: value = (h_r / 2) / h_r^{1.5}
    let pathological = OrderParams::with_pathology(1.5, 1.0, 1).unwrap();
    let v = lacunary_density(&seq, &limit, &pathological, &theta, 20)
        .unwrap()
        .value;
    let want = 0.5 * 2f64.powf(-9.5);
    assert!(close(v, want));
    assert!((v - 6.9e-4).abs() < 1e-5);
}

#[test]
fn cube_example_strong_mean_small_at_full_order_large_at_low_order() {
    let id = ExampleId::Thm212Strict;
    let oracle = Oracle::new(id, 1 << 16);
    let alphas = grid(1000);
    let x0 = (-6.0, 0.0, 6.0);
    let seq = id.sequence();
    let limit = id.closed_form_number(1, 10).unwrap();
    assert_eq!(limit, tri(-6.0, 0.0, 6.0));
    let theta = LacunaryStructure::powers_of_two(15).unwrap();

    let block = theta.block_indices(15).unwrap();
    let sum: f64 = block.map(|k| oracle.distance(1, k, x0, &alphas)).sum();
    let h = theta.h(15).unwrap() as f64;

    let full = OrderParams::new(1.0, 1.0, 1).unwrap();
    let v = strong_lacunary_mean(&seq, &limit, &full, &theta, 15)
        .unwrap()
        .value;
    assert!(close(v, sum / h));
    assert!(v < 0.01);

    let low = OrderParams::new(0.3, 1.0, 1).unwrap();
    let v = strong_lacunary_mean(&seq, &limit, &low, &theta, 15)
        .unwrap()
        .value;
    assert!(close(v, sum / h.powf(0.3)));
    assert!(v > 0.5);
}

#[test]
fn square_example_cesaro_mean_grows() {
    let id = ExampleId::Thm27Strict;
    let oracle = Oracle::new(id, 1_000_001);
    let endpoints = [0.0, 1.0];
    let seq = id.sequence();
    let limit = dominant_limit(&seq, 1);
    assert_eq!(limit, tri(-4.0, 0.0, 4.0));
    let params = OrderParams::new(1.0, 1.0, 1).unwrap();
    let small = cesaro_mean(&seq, &limit, &params, 10_000).value;
    let large = cesaro_mean(&seq, &limit, &params, 1_000_000).value;
    assert!(large > small);

    let mut sum = 0.0;
    for k in 1..=10_000 {
        sum += oracle.distance(1, k, (-4.0, 0.0, 4.0), &endpoints);
    }
    assert!(close(small, sum / 10_000.0));
}

#[test]
fn alternating_cesaro_mean_is_three() {
    let seq = ExampleId::OrderGtOne.sequence();
    let limit = ExampleId::OrderGtOne.closed_form_number(1, 2).unwrap();
    let params = OrderParams::new(1.0, 1.0, 1).unwrap();
    for n in [1_000u64, 65_536, 1_000_000] {
        assert!(close(cesaro_mean(&seq, &limit, &params, n).value, 3.0));
    }
}

#[test]
fn cube_count_without_differencing() {
    let id = ExampleId::Thm25Strict;
    let oracle = Oracle::new(id, 1000);
    let alphas = grid(1000);
    let x0 = (0.5, 1.0, 1.5);
    let count = (1..=1000u64)
        .filter(|&k| oracle.distance(0, k, x0, &alphas) >= 0.5)
        .count();
    // ten cubes up to 1000, but X_1 = X_0
    assert_eq!(count, 9);
    let params = OrderParams::new(1.0, 0.5, 0).unwrap();
    let v = prefix_density(&id.sequence(), &tri(0.5, 1.0, 1.5), &params, 1000);
    assert!(close(v, 0.009));
}

#[test]
fn cubes_per_dyadic_block() {
    let enumerate = |lo: u64, hi: u64| {
        (1u64..=2048)
            .filter(|n| (lo + 1..=hi).contains(&(n * n * n)))
            .count() as u64
    };
    let (lo, hi) = (1u64 << 29, 1u64 << 30);
    assert_eq!(enumerate(lo, hi), 212);
    assert_eq!(math::icbrt(hi) - math::icbrt(lo), 212);

    let id = ExampleId::Thm25Strict;
    let oracle = Oracle::new(id, 1 << 21);
    let endpoints = [0.0, 1.0];
    let seq = id.sequence();
    let limit = dominant_limit(&seq, 1);
    assert_eq!(limit, tri(-1.0, 0.0, 1.0));
    let theta = LacunaryStructure::powers_of_two(20).unwrap();
    let params = OrderParams::new(0.5, 0.5, 1).unwrap();
    for r in [10, 16, 20] {
        let block = theta.block_indices(r).unwrap();
        let count = block
            .filter(|&k| oracle.distance(1, k, (-1.0, 0.0, 1.0), &endpoints) >= 0.5)
            .count();
        let v = lacunary_density(&seq, &limit, &params, &theta, r)
            .unwrap()
            .value;
        assert!(
            close(v, count as f64 / 2f64.powf((r as f64 - 1.0) * 0.5)),
            "r={r}"
        );
    }
}
