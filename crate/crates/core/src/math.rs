//! Integer roots and the handful of float helpers the estimators share.

/// Largest `r` with `r³ <= n`.
pub fn icbrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = libm::cbrt(n as f64) as u64;
    while r > 0 && r.checked_pow(3).is_none_or(|c| c > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(3).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

/// Largest `r` with `r² <= n`.
pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = libm::sqrt(n as f64) as u64;
    while r > 0 && r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

pub fn is_cube(n: u64) -> bool {
    let r = icbrt(n);
    r * r * r == n
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

/// `n^β` as `pow(n, β)`. For `n < 2^53` the conversion is exact, so the
/// result is exact at `β = 1` and for powers of two at dyadic β; larger `n`
/// are rounded to the nearest `f64` first.
#[inline]
pub fn order_power(n: u64, beta: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    libm::pow(n as f64, beta)
}

#[inline]
pub fn powf(x: f64, p: f64) -> f64 {
    libm::pow(x, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roots_are_exact_near_boundaries() {
        for r in [1u64, 2, 3, 100, 1023, 1024, 2_097_151] {
            let c = r * r * r;
            assert_eq!(icbrt(c), r);
            assert_eq!(icbrt(c - 1), r - 1);
            assert_eq!(icbrt(c + 1), r);
        }
        for r in [1u64, 2, 3, 1000, 4_294_967_295] {
            let s = r * r;
            assert_eq!(isqrt(s), r);
            assert_eq!(isqrt(s - 1), r - 1);
        }
        assert_eq!(icbrt(u64::MAX), 2_642_245);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
    }

    #[test]
    fn cube_and_square_predicates() {
        assert!(is_cube(1) && is_cube(8) && is_cube(27) && !is_cube(26));
        assert!(is_square(1) && is_square(4) && !is_square(3));
    }

    #[test]
    fn order_power_of_powers_of_two() {
        for beta in [0.3, 0.5, 1.0] {
            for r in 1..40u32 {
                let h = 1u64 << (r - 1);
                let want = libm::exp2(f64::from(r - 1) * beta);
                assert!((order_power(h, beta) - want).abs() <= 1e-12 * want);
            }
        }
    }
}
