use fuzzyseq_core::{FuzzyNumber, Interval, SampledGrid, Validity};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

// Parameters on a 1/64 lattice and α on a 1/256 lattice keep every
// endpoint computation exact in binary floating point.
fn lattice_trapezoid() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform4(-3200i32..=3200).prop_map(|mut p| {
        p.sort_unstable();
        let [a, b, c, e] = p.map(|x| f64::from(x) / 64.0);
        FuzzyNumber::trapezoidal(a, b, c, e).unwrap()
    })
}

fn any_trapezoid() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform4(-50.0f64..50.0).prop_map(|mut p| {
        p.sort_by(f64::total_cmp);
        FuzzyNumber::trapezoidal(p[0], p[1], p[2], p[3]).unwrap()
    })
}

fn any_triangle() -> impl Strategy<Value = FuzzyNumber> {
    prop::array::uniform3(-50.0f64..50.0).prop_map(|mut p| {
        p.sort_by(f64::total_cmp);
        FuzzyNumber::triangular(p[0], p[1], p[2]).unwrap()
    })
}

fn shape() -> impl Strategy<Value = FuzzyNumber> {
    prop_oneof![any_trapezoid(), any_triangle()]
}

/// A nested sampled grid on a random set of interior levels.
fn sampled() -> impl Strategy<Value = FuzzyNumber> {
    (
        -20.0f64..20.0,
        0.0f64..5.0,
        prop::collection::vec((0.01f64..0.99, 0.0f64..2.0, 0.0f64..2.0), 0..6),
    )
        .prop_map(|(center, core_half, steps)| {
            let mut alphas: Vec<f64> = steps.iter().map(|s| s.0).collect();
            alphas.push(0.0);
            alphas.push(1.0);
            alphas.sort_by(f64::total_cmp);
            alphas.dedup();
            // walk down from α = 1, widening by the step sizes
            let mut lo = center - core_half;
            let mut hi = center + core_half;
            let mut levels = vec![(1.0, Interval::new(lo, hi).unwrap())];
            for (i, &a) in alphas.iter().rev().skip(1).enumerate() {
                let (dl, dh) = steps.get(i).map_or((0.5, 0.5), |s| (s.1, s.2));
                lo -= dl;
                hi += dh;
                levels.push((a, Interval::new(lo, hi).unwrap()));
            }
            levels.reverse();
            FuzzyNumber::from(SampledGrid::new(levels).unwrap())
        })
}

fn lattice_alphas() -> impl Iterator<Item = f64> {
    (0..=256).map(|i| f64::from(i) / 256.0)
}

fn grid_alphas() -> impl Iterator<Item = f64> {
    (0..=1000).map(|i| f64::from(i) / 1000.0)
}

fn cut(x: &FuzzyNumber, a: f64) -> Interval {
    x.alpha_cut(a).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn metric_axioms(x in shape(), y in shape(), z in shape()) {
        let dxy = x.distance(&y);
        prop_assert!(dxy >= 0.0);
        prop_assert_eq!(dxy, y.distance(&x));
        prop_assert_eq!(x.distance(&x), 0.0);
        prop_assert!(x.distance(&z) <= dxy + y.distance(&z) + TOL);
        prop_assert_eq!(dxy == 0.0, x.cuts_agree(&y, 0.0));
    }

    #[test]
    fn translation_invariance(x in shape(), y in shape(), z in shape()) {
        let d = x.distance(&y);
        prop_assert!(close(x.add(&z).distance(&y.add(&z)), d));
    }

    #[test]
    fn absolute_scaling(x in shape(), y in shape(), c in -10.0f64..10.0) {
        let d = x.distance(&y);
        prop_assert!(close(x.scale(c).distance(&y.scale(c)), c.abs() * d));
    }

    #[test]
    fn exact_endpoint_homomorphism(x in lattice_trapezoid(), y in lattice_trapezoid()) {
        let sum = x.add(&y);
        let diff = x.sub(&y);
        for a in lattice_alphas() {
            let (u, v) = (cut(&x, a), cut(&y, a));
            prop_assert_eq!(cut(&sum, a), Interval::new(u.lo() + v.lo(), u.hi() + v.hi()).unwrap());
            prop_assert_eq!(cut(&diff, a), Interval::new(u.lo() - v.hi(), u.hi() - v.lo()).unwrap());
            prop_assert_eq!(cut(&diff, a).width(), u.width() + v.width());
        }
    }

    #[test]
    fn sampled_endpoint_homomorphism(x in sampled(), y in prop_oneof![sampled(), any_trapezoid()]) {
        let sum = x.add(&y);
        let diff = x.sub(&y);
        prop_assert!(sum.as_trapezoid().is_none());
        for a in grid_alphas() {
            let (u, v) = (cut(&x, a), cut(&y, a));
            let s = cut(&sum, a);
            let d = cut(&diff, a);
            prop_assert!(close(s.lo(), u.lo() + v.lo()) && close(s.hi(), u.hi() + v.hi()));
            prop_assert!(close(d.lo(), u.lo() - v.hi()) && close(d.hi(), u.hi() - v.lo()));
        }
    }

    #[test]
    fn self_difference_is_symmetric_not_zero(x in lattice_trapezoid()) {
        let d = x.sub(&x);
        for a in lattice_alphas() {
            let w = cut(&x, a).width();
            prop_assert_eq!(cut(&d, a), Interval::new(-w, w).unwrap());
        }
    }

    #[test]
    fn trapezoid_closure(x in lattice_trapezoid(), y in lattice_trapezoid(), c in -64i32..64) {
        let c = f64::from(c) / 8.0;
        let (p, q) = (x.as_trapezoid().unwrap().params(), y.as_trapezoid().unwrap().params());
        let add = x.add(&y).as_trapezoid().unwrap().params();
        let sub = x.sub(&y).as_trapezoid().unwrap().params();
        prop_assert_eq!(add, [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]);
        prop_assert_eq!(sub, [p[0] - q[3], p[1] - q[2], p[2] - q[1], p[3] - q[0]]);
        let scaled = x.scale(c).as_trapezoid().unwrap().params();
        if c >= 0.0 {
            prop_assert_eq!(scaled, p.map(|t| c * t));
        } else {
            prop_assert_eq!(scaled, [c * p[3], c * p[2], c * p[1], c * p[0]]);
        }
    }

    #[test]
    fn results_stay_valid(x in prop_oneof![shape(), sampled()], y in prop_oneof![shape(), sampled()], c in -5.0f64..5.0) {
        for z in [x.add(&y), x.sub(&y), x.scale(c), x.mul(&y)] {
            prop_assert_eq!(z.validate(), Validity::Valid);
        }
    }

    #[test]
    fn product_matches_endpoint_products_on_its_grid(x in any_trapezoid(), y in any_trapezoid()) {
        let p = x.mul(&y);
        for &a in p.breakpoints() {
            let (u, v) = (cut(&x, a), cut(&y, a));
            let prods = [u.lo() * v.lo(), u.lo() * v.hi(), u.hi() * v.lo(), u.hi() * v.hi()];
            let lo = prods.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = prods.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let c = cut(&p, a);
            prop_assert!(close(c.lo(), lo) && close(c.hi(), hi));
        }
    }
}

#[test]
fn additive_identity() {
    let x = FuzzyNumber::trapezoidal(-1.5, 0.25, 2.0, 7.0).unwrap();
    let zero = FuzzyNumber::crisp(0.0).unwrap();
    let y = x.add(&zero);
    for a in grid_alphas() {
        assert_eq!(cut(&x, a), cut(&y, a));
    }
}

#[test]
fn negation_matches_brute_force_products() {
    let x = FuzzyNumber::triangular(0.0, 1.0, 2.0).unwrap();
    let neg = x.scale(-1.0);
    for a in grid_alphas() {
        let c = cut(&x, a);
        let prods = [-c.lo(), -c.hi()];
        let lo = prods.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = prods.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let got = cut(&neg, a);
        assert!((got.lo() - lo).abs() <= TOL && (got.hi() - hi).abs() <= TOL);
        assert!((got.lo() - (a - 2.0)).abs() <= TOL && (got.hi() + a).abs() <= TOL);
    }
}

#[test]
fn difference_of_reference_triangles() {
    let x = FuzzyNumber::triangular(0.0, 1.0, 2.0).unwrap();
    let y = FuzzyNumber::triangular(3.0, 4.0, 5.0).unwrap();
    let d = x.sub(&y);
    for a in grid_alphas() {
        let c = cut(&d, a);
        assert!((c.lo() - (2.0 * a - 5.0)).abs() <= TOL);
        assert!((c.hi() - (-2.0 * a - 1.0)).abs() <= TOL);
    }
}

#[test]
fn nesting_violation_is_reported_with_alpha_pair() {
    let g = SampledGrid::new(vec![
        (0.0, Interval::new(0.0, 10.0).unwrap()),
        (0.2, Interval::new(2.0, 8.0).unwrap()),
        (0.5, Interval::new(1.0, 9.0).unwrap()),
        (1.0, Interval::new(5.0, 5.0).unwrap()),
    ])
    .unwrap();
    let v = FuzzyNumber::from(g).validate();
    assert_eq!(v.to_string(), "fail(convexity, alpha pair (0.2, 0.5))");
}
