use fuzzyseq_core::{GrowthPolicy, LacunaryRule, LacunaryStructure};
use proptest::prelude::*;

fn structure() -> impl Strategy<Value = LacunaryStructure> {
    prop::collection::vec(1u64..50, 1..40).prop_map(|mut steps| {
        steps.sort_unstable();
        let mut kr = vec![0];
        for h in steps {
            kr.push(kr.last().unwrap() + h);
        }
        LacunaryStructure::explicit(kr, GrowthPolicy::Error).unwrap()
    })
}

proptest! {
    #[test]
    fn blocks_tile_the_prefix(t in structure()) {
        let mut next = 1;
        let mut total = 0;
        for r in 1..=t.r_max() {
            let block = t.block_indices(r).unwrap();
            prop_assert_eq!(*block.start(), next);
            prop_assert_eq!(block.clone().count() as u64, t.h(r).unwrap());
            next = block.end() + 1;
            total += t.h(r).unwrap();
        }
        prop_assert_eq!(next - 1, t.k(t.r_max()).unwrap());
        prop_assert_eq!(total, t.k(t.r_max()).unwrap());
    }

    #[test]
    fn ratio_bounds_contain_every_ratio(t in structure()) {
        prop_assume!(t.r_max() >= 2);
        let (lo, hi) = t.ratio_stats(t.r_max()).unwrap();
        for r in 2..=t.r_max() {
            let q = t.q(r).unwrap().unwrap();
            prop_assert!(lo <= q && q <= hi);
        }
    }
}

#[test]
fn dyadic_block_powers() {
    let t = LacunaryStructure::powers_of_two(40).unwrap();
    for beta in [0.3, 0.5, 1.0] {
        for r in 2..=40 {
            let want = 2f64.powf((r as f64 - 1.0) * beta);
            let got = t.h_pow(r, beta).unwrap();
            assert!((got - want).abs() <= 1e-12 * want, "beta={beta} r={r}");
        }
    }
}

#[test]
fn rule_prefixes() {
    let t = LacunaryStructure::from_rule(LacunaryRule::Squares, 30).unwrap();
    assert_eq!(t.h(5).unwrap(), 9);
    let t = LacunaryStructure::from_rule(LacunaryRule::Powers { base: 3 }, 30).unwrap();
    assert_eq!(t.ratio_stats(30).unwrap(), (3.0, 3.0));
    let t = LacunaryStructure::from_rule(LacunaryRule::Triangular, 1000).unwrap();
    let (lo, _) = t.ratio_stats(1000).unwrap();
    assert!(lo > 1.0 && lo < 1.003);
}
