//! Overflow-safe hyperbolic helpers and the entropy kernels shared by both
//! working media.
//!
//! Everything goes through `libm` so results are identical with and without
//! `std`.

use core::f64::consts::LN_2;

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub fn exp_m1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}

#[inline]
pub fn cosh(x: f64) -> f64 {
    libm::cosh(x)
}

#[inline]
pub fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}

#[inline]
pub fn atanh(x: f64) -> f64 {
    libm::atanh(x)
}

/// `sech x`, going to zero instead of `1/inf` issues for large `|x|`.
#[inline]
pub fn sech(x: f64) -> f64 {
    1.0 / cosh(x)
}

#[inline]
pub fn coth(x: f64) -> f64 {
    1.0 / tanh(x)
}

/// `log cosh x = |x| + log1p(e^{-2|x|}) - log 2`, finite for every finite `x`.
pub fn log_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + ln_1p(exp(-2.0 * a)) - LN_2
}

/// `log sinh x` for `x > 0`, written as `x + log(1 - e^{-2x}) - log 2`.
pub fn log_sinh(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    x + ln(-exp_m1(-2.0 * x)) - LN_2
}

/// `log(e^a + e^b)` with `-inf` treated as an empty term.
pub fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + ln_1p(exp(lo - hi))
}

/// `log(1 + k sinh^2 x)` for `k >= 0` without overflowing `sinh^2`.
pub fn log1p_scaled_sinh2(k: f64, x: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    let a = x.abs();
    if a < 20.0 {
        let s = sinh(a);
        ln_1p(k * s * s)
    } else {
        let l = ln(k) + 2.0 * log_sinh(a);
        l + ln_1p(exp(-l))
    }
}

/// `p log p` with the `0 log 0 = 0` convention.
#[inline]
pub fn xlogx(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * ln(p)
    }
}

/// Shannon entropy of a two-outcome distribution `(p, 1 - p)`, in nats.
pub fn binary_entropy(p: f64) -> f64 {
    -xlogx(p) - xlogx(1.0 - p)
}

/// Bosonic entropy `g(N) = (N+1) log(N+1) - N log N`, the entropy of a
/// thermal-form oscillator state with mean occupancy `N`. `g(0) = 0`.
pub fn bosonic_entropy(n: f64) -> f64 {
    if n <= 0.0 {
        return 0.0;
    }
    // (N+1)log(N+1) - N log N = log(N+1) + N log(1 + 1/N), no cancellation
    ln_1p(n) + n * ln_1p(1.0 / n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_cosh_matches_direct_and_survives_overflow() {
        for &x in &[-3.0, -0.1, 0.0, 1e-8, 0.5, 2.5, 30.0] {
            assert!((log_cosh(x) - ln(cosh(x))).abs() < 1e-14, "x = {x}");
        }
        // cosh(800) overflows, log cosh(800) = 800 - log 2 to double precision
        assert!((log_cosh(800.0) - (800.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn log_sinh_matches_direct_and_survives_overflow() {
        for &x in &[1e-6, 0.01, 0.5, 2.5, 30.0] {
            let direct = ln(sinh(x));
            assert!(
                (log_sinh(x) - direct).abs() < 1e-13 * direct.abs().max(1.0),
                "x = {x}"
            );
        }
        assert!((log_sinh(800.0) - (800.0 - LN_2)).abs() < 1e-12);
    }

    #[test]
    fn scaled_sinh2_branches_agree() {
        for &k in &[1e-6, 0.3, 0.999] {
            let s = sinh(19.5);
            let direct = ln_1p(k * s * s);
            let l = ln(k) + 2.0 * log_sinh(19.5);
            let asym = l + ln_1p(exp(-l));
            assert!((direct - asym).abs() < 1e-12 * direct.abs());
            assert!(log1p_scaled_sinh2(k, 500.0).is_finite());
        }
        assert_eq!(log1p_scaled_sinh2(0.0, 900.0), 0.0);
    }

    #[test]
    fn bosonic_entropy_values() {
        assert_eq!(bosonic_entropy(0.0), 0.0);
        assert!((bosonic_entropy(1.0) - 2.0 * LN_2).abs() < 1e-15);
        for &n in &[1e-3, 0.7, 3.0, 1e4] {
            let direct = (n + 1.0) * ln(n + 1.0) - n * ln(n);
            assert!((bosonic_entropy(n) - direct).abs() < 1e-10 * direct.max(1.0));
        }
    }

    #[test]
    fn binary_entropy_limits() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert!((binary_entropy(0.5) - LN_2).abs() < 1e-15);
    }

    #[test]
    fn log_add_exp_handles_empty_terms() {
        assert_eq!(log_add_exp(f64::NEG_INFINITY, 1.5), 1.5);
        assert!((log_add_exp(0.0, 0.0) - LN_2).abs() < 1e-15);
    }
}
