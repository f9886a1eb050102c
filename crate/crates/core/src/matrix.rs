//! Dense complex matrices, the PSD gate, rank-tolerant Cholesky, LU
//! determinants, submatrix selection and permutation matrices.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perm::{Permutation, SequenceGamma};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix. Entries are always finite.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidMatrix("dimensions must be positive".into()));
        }
        if data.len() != rows * cols {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidMatrix(format!(
                "non-finite entry at ({}, {})",
                pos / cols + 1,
                pos % cols + 1
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "dimensions must be positive");
        Self { rows, cols, data: vec![ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self::new(rows, cols, data).expect("from_fn produced an invalid matrix")
    }

    /// Builds a matrix from nested rows of complex entries.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        Self::new(r, c, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// `v v*` for a column vector `v`.
    pub fn outer(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn dim(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// `max |A - B|` over entries; panics on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Product of the main diagonal, `h(A)`.
    pub fn diagonal_product(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).product()
    }

    /// `max |A - A*|` for a square matrix.
    pub fn hermitian_asymmetry(&self) -> Result<f64> {
        let n = self.dim()?;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..=i {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        Ok(worst)
    }

    /// `(A + A*) / 2`.
    pub fn hermitian_part(&self) -> Result<Self> {
        let n = self.dim()?;
        Ok(Self::from_fn(n, n, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5))
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == ZERO))
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|z| format!("{:.6}{:+.6}i", z.re, z.im)).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Outcome of the PSD gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdVerdict {
    pub is_psd: bool,
    /// Most negative pivot (or 2x2 pivot-block eigenvalue) met during factorization.
    pub min_eigen_estimate: f64,
    pub tolerance_used: f64,
}

/// Lower-triangular `L` with `L L* = A`.
#[derive(Debug, Clone, PartialEq)]
pub struct CholeskyFactor {
    pub l: ComplexMatrix,
    pub rank_estimate: usize,
    /// `max |L L* - A|`.
    pub reconstruction_residual: f64,
}

struct Factorization {
    l: ComplexMatrix,
    rank: usize,
    min_estimate: f64,
    threshold: f64,
    failed: bool,
}

fn validate_hermitian(a: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    a.dim()?;
    let asym = a.hermitian_asymmetry()?;
    if asym > tol * (1.0 + a.max_abs()) {
        return Err(Error::NotHermitian { max_asymmetry: asym });
    }
    a.hermitian_part()
}

/// Outer-product Cholesky of the Hermitian part of `a`.
///
/// A pivot inside `[-thr, thr]` (with `thr = tol * ||A||_max`) is treated as
/// zero and the rest of its column is dropped, provided every 2x2 block
/// `[[p, c], [c*, d]]` it forms with the remaining diagonal has smallest
/// eigenvalue `>= -thr`. Stops at the first violation.
fn factorize(h: &ComplexMatrix, tol: f64) -> Factorization {
    let n = h.rows;
    let threshold = tol * h.max_abs();
    let mut s = h.clone();
    let mut l = ComplexMatrix::zeros(n, n);
    let mut rank = 0;
    let mut min_estimate = f64::INFINITY;

    for k in 0..n {
        let p = s[(k, k)].re;
        min_estimate = min_estimate.min(p);
        if p < -threshold {
            return Factorization { l, rank, min_estimate, threshold, failed: true };
        }
        if p <= threshold {
            for i in k + 1..n {
                let c = s[(i, k)].norm();
                if c == 0.0 {
                    continue;
                }
                let d = s[(i, i)].re;
                let block_min = 0.5 * ((p + d) - ((p - d).powi(2) + 4.0 * c * c).sqrt());
                min_estimate = min_estimate.min(block_min);
            }
            if min_estimate < -threshold {
                return Factorization { l, rank, min_estimate, threshold, failed: true };
            }
            continue;
        }
        rank += 1;
        let pivot = p.sqrt();
        l[(k, k)] = Complex64::new(pivot, 0.0);
        for i in k + 1..n {
            l[(i, k)] = s[(i, k)] / pivot;
        }
        for i in k + 1..n {
            let lik = l[(i, k)];
            if lik == ZERO {
                continue;
            }
            for j in k + 1..=i {
                let update = lik * l[(j, k)].conj();
                s[(i, j)] -= update;
                if i != j {
                    s[(j, i)] = s[(i, j)].conj();
                }
            }
        }
    }
    Factorization { l, rank, min_estimate, threshold, failed: false }
}

/// PSD test by tolerant Cholesky. `a` must be Hermitian within
/// `tol * (1 + ||A||_max)`.
pub fn check_psd(a: &ComplexMatrix, tol: f64) -> Result<PsdVerdict> {
    let h = validate_hermitian(a, tol)?;
    let f = factorize(&h, tol);
    Ok(PsdVerdict {
        is_psd: !f.failed && f.min_estimate >= -f.threshold,
        min_eigen_estimate: f.min_estimate,
        tolerance_used: tol,
    })
}

/// Lower-triangular factor `L` with `A = L L*`, zeroing columns at
/// (numerically) zero pivots so rank-deficient PSD input is accepted.
pub fn cholesky(a: &ComplexMatrix, tol: f64) -> Result<CholeskyFactor> {
    let h = validate_hermitian(a, tol)?;
    let f = factorize(&h, tol);
    if f.failed {
        return Err(Error::NotPsd { min_eigen_estimate: f.min_estimate, threshold: f.threshold });
    }
    let reconstruction_residual = f.l.matmul(&f.l.conj_transpose()).max_abs_diff(a);
    Ok(CholeskyFactor { l: f.l, rank_estimate: f.rank, reconstruction_residual })
}

/// Determinant by LU with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    let n = a.dim()?;
    let mut m = a.clone();
    let mut det = ONE;
    for k in 0..n {
        let (piv, best) = (k..n)
            .map(|i| (i, m[(i, k)].norm()))
            .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0.0 {
            return Ok(ZERO);
        }
        if piv != k {
            for j in 0..n {
                m.data.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = m[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let factor = m[(i, k)] / pivot;
            if factor == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = m[(k, j)];
                m[(i, j)] -= factor * u;
            }
        }
    }
    Ok(det)
}

/// `A[alpha|beta]`: rows picked by `alpha`, columns by `beta`, repetition allowed.
pub fn submatrix(a: &ComplexMatrix, alpha: &SequenceGamma, beta: &SequenceGamma) -> Result<ComplexMatrix> {
    for &i in alpha.as_slice() {
        if i >= a.rows {
            return Err(Error::IndexOutOfRange { index: i + 1, bound: a.rows });
        }
    }
    for &j in beta.as_slice() {
        if j >= a.cols {
            return Err(Error::IndexOutOfRange { index: j + 1, bound: a.cols });
        }
    }
    let (r, c) = (alpha.len(), beta.len());
    if r == 0 || c == 0 {
        return Err(Error::InvalidMatrix("empty index sequence".into()));
    }
    Ok(ComplexMatrix::from_fn(r, c, |i, j| a[(alpha[i], beta[j])]))
}

/// `L[(1..n)|gamma]`: all rows, columns `gamma_1, ..., gamma_m`.
pub fn column_selection(a: &ComplexMatrix, gamma: &SequenceGamma) -> Result<ComplexMatrix> {
    submatrix(a, &SequenceGamma::identity(a.rows), gamma)
}

/// `P_g` with `(P_g)_{ij} = 1` iff `i = g(j)`.
pub fn permutation_matrix(g: &Permutation, n: usize) -> Result<ComplexMatrix> {
    if g.degree() != n {
        return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
    }
    let mut p = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        p[(g.apply(j), j)] = ONE;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(rows: &[&[f64]]) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn constructor_rejects_non_finite_and_bad_shapes() {
        assert!(ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]).is_err());
        assert!(ComplexMatrix::new(2, 2, vec![ONE; 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn psd_examples() {
        assert!(check_psd(&ComplexMatrix::identity(3), 1e-10).unwrap().is_psd);
        let v = check_psd(&real(&[&[1.0, 0.0], &[0.0, -1.0]]), 1e-10).unwrap();
        assert!(!v.is_psd);
        assert_eq!(v.min_eigen_estimate, -1.0);
        let vv = ComplexMatrix::outer(&[c(1.0, 0.0), c(0.0, 1.0)]);
        assert!(check_psd(&vv, 1e-10).unwrap().is_psd);
    }

    #[test]
    fn psd_catches_zero_pivot_with_off_diagonal_mass() {
        let v = check_psd(&real(&[&[0.0, 1.0], &[1.0, 0.0]]), 1e-10).unwrap();
        assert!(!v.is_psd);
        assert!((v.min_eigen_estimate + 1.0).abs() < 1e-15);
    }

    #[test]
    fn psd_rejects_non_hermitian_and_non_square() {
        assert!(matches!(
            check_psd(&real(&[&[1.0, 2.0], &[0.0, 1.0]]), 1e-10),
            Err(Error::NotHermitian { .. })
        ));
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(check_psd(&rect, 1e-10), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn cholesky_examples() {
        let f = cholesky(&real(&[&[1.0, 1.0], &[1.0, 2.0]]), 1e-10).unwrap();
        assert_eq!(f.l, real(&[&[1.0, 0.0], &[1.0, 1.0]]));
        assert_eq!(f.rank_estimate, 2);

        let f = cholesky(&ComplexMatrix::identity(4), 1e-10).unwrap();
        assert_eq!(f.l, ComplexMatrix::identity(4));

        let ones = real(&[&[1.0; 3], &[1.0; 3], &[1.0; 3]]);
        let f = cholesky(&ones, 1e-10).unwrap();
        assert_eq!(f.l, real(&[&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]]));
        assert_eq!(f.rank_estimate, 1);
        assert_eq!(f.reconstruction_residual, 0.0);
    }

    #[test]
    fn cholesky_diagonal_is_real_nonnegative_and_lower() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(4.0, 0.0), c(1.0, 2.0), c(0.0, -1.0)],
            vec![c(1.0, -2.0), c(6.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 1.0), c(1.0, -1.0), c(3.0, 0.0)],
        ])
        .unwrap();
        let f = cholesky(&a, 1e-10).unwrap();
        assert!(f.l.is_lower_triangular());
        for i in 0..3 {
            assert_eq!(f.l[(i, i)].im, 0.0);
            assert!(f.l[(i, i)].re >= 0.0);
        }
        assert!(f.reconstruction_residual < 1e-12);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        assert!(matches!(
            cholesky(&real(&[&[1.0, 2.0], &[2.0, 1.0]]), 1e-10),
            Err(Error::NotPsd { .. })
        ));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(determinant(&ComplexMatrix::identity(5)).unwrap(), ONE);
        assert!((determinant(&real(&[&[1.0, 1.0], &[1.0, 2.0]])).unwrap() - ONE).norm() < 1e-15);
        let ones = real(&[&[1.0; 3], &[1.0; 3], &[1.0; 3]]);
        assert!(determinant(&ones).unwrap().norm() < 1e-15);
        assert!(matches!(determinant(&ComplexMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn submatrix_examples() {
        let i2 = ComplexMatrix::identity(2);
        let s = submatrix(&i2, &SequenceGamma::from_one_based(&[1, 2]).unwrap(), &SequenceGamma::from_one_based(&[1, 1]).unwrap()).unwrap();
        assert_eq!(s, real(&[&[1.0, 1.0], &[0.0, 0.0]]));

        let a = real(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]]);
        let id = SequenceGamma::identity(3);
        assert_eq!(submatrix(&a, &id, &id).unwrap(), a);

        let bad = SequenceGamma::from_zero_based(vec![3]);
        assert_eq!(submatrix(&a, &bad, &id), Err(Error::IndexOutOfRange { index: 4, bound: 3 }));
    }

    #[test]
    fn lower_triangular_columns_keep_their_zeros() {
        let l = real(&[&[1.0, 0.0, 0.0], &[2.0, 3.0, 0.0], &[4.0, 5.0, 6.0]]);
        let s = column_selection(&l, &SequenceGamma::from_one_based(&[3, 3, 1]).unwrap()).unwrap();
        assert_eq!(s.column(0), vec![ZERO, ZERO, c(6.0, 0.0)]);
    }

    #[test]
    fn permutation_matrix_examples() {
        assert_eq!(permutation_matrix(&Permutation::identity(3), 3).unwrap(), ComplexMatrix::identity(3));
        let swap = Permutation::parse_cycles("(1 2)", 2).unwrap();
        assert_eq!(permutation_matrix(&swap, 2).unwrap(), real(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert!(permutation_matrix(&swap, 3).is_err());
    }
}
