//! Generalized matrix functions `d^G_chi(A) = sum_g chi(g) prod_i A_{i g(i)}`
//! and the permanent kernels.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::CharacterFn;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::numeric::pairwise_sum;
use crate::perm::{for_each_permutation, PermGroup, Permutation};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const RYSER_MAX_N: usize = 24;
pub const NAIVE_MAX_N: usize = 9;

/// Below this size Ryser runs as one sequential chunk.
const RYSER_PARALLEL_FROM: usize = 14;
const RYSER_CHUNKS: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GmfValue {
    #[serde(with = "crate::io::complex")]
    pub value: Complex64,
    pub group_order: usize,
    pub chi_degree: f64,
    /// `value / chi(e)`.
    #[serde(with = "crate::io::complex")]
    pub normalized: Complex64,
}

/// `l_sigma(A) = prod_i A_{i sigma(i)}`.
pub fn diagonal_product(a: &ComplexMatrix, sigma: &Permutation) -> Result<Complex64> {
    let n = a.dim()?;
    if sigma.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: sigma.degree() });
    }
    Ok(images_product(a, sigma.images()))
}

#[inline]
fn images_product(a: &ComplexMatrix, images: &[usize]) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for (i, &j) in images.iter().enumerate() {
        let x = a[(i, j)];
        if x == ZERO {
            return ZERO;
        }
        p *= x;
    }
    p
}

/// `h(A)`, the product of the diagonal.
pub fn hadamard_product(a: &ComplexMatrix) -> Result<Complex64> {
    a.dim()?;
    Ok(a.diagonal_product())
}

fn check_inputs(a: &ComplexMatrix, group: &PermGroup, chi: &CharacterFn) -> Result<usize> {
    let n = a.dim()?;
    if group.degree() != n {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: n });
    }
    if !chi.same_group(group) {
        return Err(Error::GroupMismatch);
    }
    Ok(n)
}

/// Unchecked sum over all elements; `chi_values` aligned with `group.elements()`.
pub(crate) fn gmf_raw(a: &ComplexMatrix, group: &PermGroup, chi_values: &[Complex64]) -> Complex64 {
    let mut total = ZERO;
    for (g, &c) in group.elements().iter().zip(chi_values) {
        if c == ZERO {
            continue;
        }
        let p = images_product(a, g.images());
        if p != ZERO {
            total += c * p;
        }
    }
    total
}

/// `d^G_chi(A)` by exact summation over all of `G`.
pub fn gmf(a: &ComplexMatrix, group: &PermGroup, chi: &CharacterFn) -> Result<GmfValue> {
    check_inputs(a, group, chi)?;
    let value = gmf_raw(a, group, &chi.element_values());
    let degree = chi.degree();
    Ok(GmfValue { value, group_order: group.order(), chi_degree: degree.re, normalized: value / degree })
}

/// Ryser's inclusion-exclusion formula with Gray-code column updates.
///
/// Large matrices split the `2^n` subsets into a fixed number of chunks run
/// on the rayon pool; the chunk sums are reduced in a fixed order, so the
/// result does not depend on the thread count.
pub fn permanent_ryser(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.dim()?;
    if n > RYSER_MAX_N {
        return Err(Error::TooLarge { n, limit: RYSER_MAX_N });
    }
    let steps = 1u64 << n;
    let total = if n < RYSER_PARALLEL_FROM {
        ryser_range(a, 1, steps)
    } else {
        let width = steps.div_ceil(RYSER_CHUNKS);
        let parts: Vec<Complex64> = (0..RYSER_CHUNKS)
            .into_par_iter()
            .map(|c| {
                let start = (c * width).max(1);
                let end = ((c + 1) * width).min(steps);
                if start >= end {
                    ZERO
                } else {
                    ryser_range(a, start, end)
                }
            })
            .collect();
        pairwise_sum(&parts)
    };
    Ok(if n % 2 == 0 { total } else { -total })
}

/// `sum_{k in [start, end)} (-1)^{|S_k|} prod_i sum_{j in S_k} a_ij` with
/// `S_k` the Gray code `k ^ (k >> 1)`.
fn ryser_range(a: &ComplexMatrix, start: u64, end: u64) -> Complex64 {
    let n = a.rows();
    let gray = |k: u64| k ^ (k >> 1);
    let first = gray(start);
    let mut sums = vec![ZERO; n];
    for j in (0..n).filter(|&j| first & (1 << j) != 0) {
        for (i, s) in sums.iter_mut().enumerate() {
            *s += a[(i, j)];
        }
    }
    let term = |sums: &[Complex64], subset: u64| {
        let p: Complex64 = sums.iter().product();
        if subset.count_ones().is_multiple_of(2) {
            p
        } else {
            -p
        }
    };
    let mut total = term(&sums, first);
    for k in start + 1..end {
        let j = k.trailing_zeros() as usize;
        let subset = gray(k);
        if subset & (1 << j) != 0 {
            for (i, s) in sums.iter_mut().enumerate() {
                *s += a[(i, j)];
            }
        } else {
            for (i, s) in sums.iter_mut().enumerate() {
                *s -= a[(i, j)];
            }
        }
        total += term(&sums, subset);
    }
    total
}

/// Sum of `l_sigma(A)` over all `n!` permutations.
pub fn permanent_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.dim()?;
    if n > NAIVE_MAX_N {
        return Err(Error::TooLarge { n, limit: NAIVE_MAX_N });
    }
    let mut total = ZERO;
    for_each_permutation(n, |p, _| total += images_product(a, p));
    Ok(total)
}

/// Signed permutation sum, the textbook determinant (test oracle scale).
pub fn determinant_naive(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.dim()?;
    if n > NAIVE_MAX_N {
        return Err(Error::TooLarge { n, limit: NAIVE_MAX_N });
    }
    let mut total = ZERO;
    for_each_permutation(n, |p, s| total += images_product(a, p) * s as f64);
    Ok(total)
}

/// Whether every `l_sigma(A)` is a non-negative real, with absolute
/// tolerance `1e-12 (1 + ||A||_max^n)`.
pub fn all_diagonal_products_nonneg(a: &ComplexMatrix) -> Result<bool> {
    let n = a.dim()?;
    if n > NAIVE_MAX_N {
        return Err(Error::TooLarge { n, limit: NAIVE_MAX_N });
    }
    let tol = 1e-12 * (1.0 + a.max_abs().powi(n as i32));
    let mut ok = true;
    for_each_permutation(n, |p, _| {
        if ok {
            let v = images_product(a, p);
            ok = v.re >= -tol && v.im.abs() <= tol;
        }
    });
    Ok(ok)
}
