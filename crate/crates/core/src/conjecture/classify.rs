//! Structural tests behind the easy classes: support matching, numerical
//! rank one, and rank one plus diagonal.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;

use crate::matrix::ComplexMatrix;

/// Second singular value at most this times the first counts as rank one.
pub const RANK_ONE_TOL: f64 = 1e-8;

/// An `r x s` block of zeros with `r + s = n + 1` (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroBlock {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// Maximum matching of rows to columns over entries with `|a_ij| > abs_tol`.
/// `matched[j]` is the row assigned to column `j`.
pub fn support_matching(a: &ComplexMatrix, abs_tol: f64) -> Vec<Option<usize>> {
    let n = a.rows();
    let adj: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| a[(i, j)].norm() > abs_tol).collect()).collect();
    let mut matched: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let mut seen = vec![false; n];
        augment(i, &adj, &mut matched, &mut seen);
    }
    matched
}

fn augment(i: usize, adj: &[Vec<usize>], matched: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &j in &adj[i] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if matched[j].is_none_or(|k| augment(k, adj, matched, seen)) {
            matched[j] = Some(i);
            return true;
        }
    }
    false
}

/// A zero block certifying that every diagonal product vanishes, or `None`
/// when the support admits a perfect matching.
///
/// Built from a minimum vertex cover (König): rows and columns outside the
/// cover span only zeros and number at least `n + 1`.
pub fn frobenius_konig(a: &ComplexMatrix, abs_tol: f64) -> Option<ZeroBlock> {
    let n = a.rows();
    let matched = support_matching(a, abs_tol);
    let size = matched.iter().flatten().count();
    if size == n {
        return None;
    }
    let mut row_match = vec![None; n];
    for (j, m) in matched.iter().enumerate() {
        if let Some(i) = *m {
            row_match[i] = Some(j);
        }
    }
    // alternating search from unmatched rows
    let mut row_seen = vec![false; n];
    let mut col_seen = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&i| row_match[i].is_none()).collect();
    for &i in &stack {
        row_seen[i] = true;
    }
    while let Some(i) = stack.pop() {
        for j in (0..n).filter(|&j| a[(i, j)].norm() > abs_tol) {
            if !col_seen[j] {
                col_seen[j] = true;
                if let Some(k) = matched[j] {
                    if !row_seen[k] {
                        row_seen[k] = true;
                        stack.push(k);
                    }
                }
            }
        }
    }
    // cover = unseen rows + seen columns; the block is its complement
    let mut rows: Vec<usize> = (0..n).filter(|&i| row_seen[i]).collect();
    let mut cols: Vec<usize> = (0..n).filter(|&j| !col_seen[j]).collect();
    while rows.len() + cols.len() > n + 1 {
        if rows.len() > cols.len() {
            rows.pop();
        } else {
            cols.pop();
        }
    }
    debug_assert!(rows.iter().all(|&i| cols.iter().all(|&j| a[(i, j)].norm() <= abs_tol)));
    Some(ZeroBlock { rows: rows.into_iter().map(|i| i + 1).collect(), cols: cols.into_iter().map(|j| j + 1).collect() })
}

/// Singular values of a Hermitian matrix, descending.
pub fn hermitian_singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.rows();
    let m = DMatrix::<Complex64>::from_fn(n, n, |i, j| a[(i, j)]);
    let mut s: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().map(|x| x.abs()).collect();
    s.sort_by(|x, y| y.total_cmp(x));
    s
}

pub fn is_rank_one(a: &ComplexMatrix) -> bool {
    let s = hermitian_singular_values(a);
    match s.as_slice() {
        [] => false,
        [s1] => *s1 > 0.0,
        [s1, s2, ..] => *s1 > 0.0 && *s2 <= RANK_ONE_TOL * s1,
    }
}

/// `A = v v* + diag(d)` with `d >= 0`.
#[derive(Debug, Clone, Serialize)]
pub struct RankOneDiagonalFit {
    #[serde(serialize_with = "crate::io::complex::vec::serialize")]
    pub v: Vec<Complex64>,
    pub d: Vec<f64>,
    /// `max_{i != j} |A_ij - v_i conj(v_j)|`.
    pub residual: f64,
}

/// Fits the off-diagonal part of a Hermitian `a` by `v v*` and accepts when
/// the fit is within `tol * ||A||_max` and the implied `d_i` are
/// non-negative within the same bound.
pub fn rank_one_plus_diagonal(a: &ComplexMatrix, tol: f64) -> Option<RankOneDiagonalFit> {
    let n = a.rows();
    let scale = a.max_abs();
    if n < 2 || scale == 0.0 {
        return None;
    }
    let thr = tol * scale;
    // |v_i|^2 from A_ij A_ki / A_kj with the best conditioned (j, k)
    let mut w = vec![0.0; n];
    if n == 2 {
        let (p, q, b) = (a[(0, 0)].re, a[(1, 1)].re, a[(0, 1)].norm());
        if p <= 0.0 || q <= 0.0 {
            return None;
        }
        w = vec![b * (p / q).sqrt(), b * (q / p).sqrt()];
    } else {
        for (i, wi) in w.iter_mut().enumerate() {
            let mut best: Option<(f64, usize, usize)> = None;
            for j in (0..n).filter(|&j| j != i) {
                for k in (0..n).filter(|&k| k != i && k != j) {
                    let den = a[(k, j)].norm();
                    if den > thr && best.is_none_or(|(d, _, _)| den > d) {
                        best = Some((den, j, k));
                    }
                }
            }
            *wi = match best {
                Some((_, j, k)) => (a[(i, j)] * a[(k, i)] / a[(k, j)]).re.max(0.0),
                None => 0.0,
            };
        }
    }
    let r = (0..n).max_by(|&x, &y| w[x].total_cmp(&w[y]))?;
    if w[r] <= 0.0 {
        return None;
    }
    let vr = w[r].sqrt();
    let v: Vec<Complex64> =
        (0..n).map(|i| if i == r { Complex64::new(vr, 0.0) } else { a[(i, r)] / vr }).collect();
    let mut residual: f64 = 0.0;
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            residual = residual.max((a[(i, j)] - v[i] * v[j].conj()).norm());
        }
    }
    let d: Vec<f64> = (0..n).map(|i| a[(i, i)].re - v[i].norm_sqr()).collect();
    (residual <= thr && d.iter().all(|&x| x >= -thr)).then_some(RankOneDiagonalFit { v, d, residual })
}
