//! Tolerances and comparison helpers shared across modules.

use num_complex::Complex64;

/// Default relative tolerance for the PSD test and rank-deficient Cholesky.
pub const DEFAULT_PSD_TOL: f64 = 1e-10;

/// Default tolerance used by reports and the CLI.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default cap on `n^m` for exhaustive sequence enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 20_000_000;

/// Largest group order the enumeration-based machinery accepts (8!).
pub const GROUP_ORDER_CAP: usize = 40_320;

/// `|a - b| / max(1, |a|, |b|)`.
///
/// Magnitudes below one are compared absolutely; the sums evaluated here
/// accumulate roundoff proportional to their O(1) terms.
pub fn rel_err(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / 1f64.max(a.norm()).max(b.norm())
}

pub fn rel_err_real(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Pairwise (tree) summation; the result depends only on the input order.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum(lo) + pairwise_sum(hi)
        }
    }
}

pub fn pairwise_sum_real(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        n if n <= 8 => values.iter().sum(),
        n => {
            let (lo, hi) = values.split_at(n / 2);
            pairwise_sum_real(lo) + pairwise_sum_real(hi)
        }
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_naive_on_integers() {
        let v: Vec<Complex64> = (0..1000).map(|k| Complex64::new(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&v), Complex64::new(499_500.0, -499_500.0));
    }

    #[test]
    fn rel_err_floors_small_magnitudes() {
        assert!(rel_err(Complex64::new(1e-13, 0.0), Complex64::new(0.0, 0.0)) < 1e-12);
        assert!((rel_err_real(200.0, 202.0) - 0.0099).abs() < 1e-4);
    }
}
