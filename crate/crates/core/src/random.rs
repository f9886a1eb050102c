//! Seeded fixture generators. All randomness is ChaCha8 from an explicit seed.

use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::matrix::ComplexMatrix;

/// Families of PSD matrices matching the easy classes of the conjecture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PsdMode {
    /// `M M*` with complex standard normal `M`.
    Generic,
    /// `v v*`.
    Rank1,
    /// `v v* + diag(d)`, `d_i` in `[0.1, 1)`.
    Rank1diag,
    /// `M M^T` with `M` entrywise non-negative real.
    Nonneg,
    /// Generic with one row and column zeroed.
    Zerocol,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

pub fn random_complex_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n).map(|_| complex_normal(rng)).collect()
}

pub fn random_complex_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |_, _| complex_normal(rng))
}

/// A PSD matrix of the requested family. Exactly Hermitian.
pub fn random_psd<R: Rng + ?Sized>(n: usize, mode: PsdMode, rng: &mut R) -> ComplexMatrix {
    let a = match mode {
        PsdMode::Generic => {
            let m = random_complex_matrix(n, rng);
            m.matmul(&m.conj_transpose())
        }
        PsdMode::Rank1 => ComplexMatrix::outer(&random_complex_vector(n, rng)),
        PsdMode::Rank1diag => {
            let v = random_complex_vector(n, rng);
            let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random_range(0.1..1.0), 0.0)).collect();
            ComplexMatrix::outer(&v).add(&ComplexMatrix::diagonal(&d))
        }
        PsdMode::Nonneg => {
            let m = ComplexMatrix::from_fn(n, n, |_, _| {
                let x: f64 = rng.sample(StandardNormal);
                Complex64::new(x.abs(), 0.0)
            });
            m.matmul(&m.conj_transpose())
        }
        PsdMode::Zerocol => {
            let m = random_complex_matrix(n, rng);
            let k = rng.random_range(0..n.max(1));
            let mut a = m.matmul(&m.conj_transpose());
            for t in 0..n {
                a[(k, t)] = Complex64::new(0.0, 0.0);
                a[(t, k)] = Complex64::new(0.0, 0.0);
            }
            a
        }
    };
    a.hermitian_part().expect("square by construction")
}

pub fn random_psd_seeded(n: usize, mode: PsdMode, seed: u64) -> ComplexMatrix {
    random_psd(n, mode, &mut rng(seed))
}

/// Non-zero complex scalars for diagonal congruence, moduli in `[0.5, 2)`.
pub fn random_scalars<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            let r: f64 = rng.random_range(0.5..2.0);
            let t: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::check_psd;
    use crate::numeric::DEFAULT_PSD_TOL;

    #[test]
    fn every_mode_is_psd_and_deterministic() {
        for mode in [PsdMode::Generic, PsdMode::Rank1, PsdMode::Rank1diag, PsdMode::Nonneg, PsdMode::Zerocol] {
            for n in 1..=6 {
                let a = random_psd_seeded(n, mode, 42);
                assert_eq!(a, random_psd_seeded(n, mode, 42));
                assert!(check_psd(&a, DEFAULT_PSD_TOL).unwrap().is_psd, "{mode:?} n={n}");
            }
        }
    }

    #[test]
    fn zerocol_has_a_zero_column() {
        let a = random_psd_seeded(5, PsdMode::Zerocol, 9);
        assert!((0..5).any(|j| a.column(j).iter().all(|z| *z == Complex64::new(0.0, 0.0))));
    }

    #[test]
    fn nonneg_is_entrywise_nonneg_real() {
        let a = random_psd_seeded(5, PsdMode::Nonneg, 1);
        assert!(a.data().iter().all(|z| z.re >= 0.0 && z.im == 0.0));
    }
}
