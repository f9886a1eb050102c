//! Cauchy-Binet machinery for `d^G_chi` and the Cholesky decomposition
//!
//! `dbar(A) = det(A) + delta_{chi,1} |G| prod |L_i1|^2
//!            + sum_{gamma in Delta*} (1/|G|) sum_{g in S_gamma} |d(L^gamma P_g)|^2`.
//!
//! `L^gamma` is `L[(1..n)|gamma]`, columns `gamma_1, ..., gamma_n` of `L`.
//! Since `L^gamma P_g = L^{g . gamma}`, the inner sum over coset
//! representatives runs over the members of the orbit of `gamma`.

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{is_linear, restricted_inner_on_indices, CharacterFn};
use crate::error::{Error, Result};
use crate::gmf::gmf_raw;
use crate::matrix::{cholesky, column_selection, determinant, permutation_matrix, submatrix, ComplexMatrix};
use crate::numeric::{pairwise_sum, pairwise_sum_real, rel_err, DEFAULT_ENUMERATION_CAP, DEFAULT_PSD_TOL};
use crate::perm::{act, orbits, OrbitData, PermGroup, Permutation, SequenceGamma};

/// `|(chi, 1)_{G_gamma}|` above this puts `gamma` in `Omega`.
pub const OMEGA_TOL: f64 = 1e-9;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `Omega = {gamma : (chi, 1)_{G_gamma} != 0}` and its lexicographic section.
#[derive(Debug, Clone, Serialize)]
pub struct OmegaSet {
    pub group: String,
    pub character: String,
    pub n_values: usize,
    pub total_sequences: u128,
    pub members: Vec<SequenceGamma>,
    /// `Delta_G ∩ Omega`: the smallest member of each orbit inside `Omega`.
    pub representatives: Vec<SequenceGamma>,
}

impl OmegaSet {
    pub fn contains(&self, gamma: &SequenceGamma) -> bool {
        self.members.binary_search(gamma).is_ok()
    }
}

/// Orbits of a group on `Gamma_{m,n}`, enumerated once and reused across
/// many matrices and characters.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    group_id: u64,
    n_values: usize,
    pub orbits: Vec<OrbitData>,
}

impl OrbitTable {
    /// Orbits on `Gamma_{n,n}`.
    pub fn new(group: &PermGroup, cap: u128) -> Result<Self> {
        Self::with_values(group, group.degree(), cap)
    }

    pub fn with_values(group: &PermGroup, n_values: usize, cap: u128) -> Result<Self> {
        Ok(Self { group_id: group.id(), n_values, orbits: orbits(group, n_values, cap)?.collect() })
    }

    fn check(&self, group: &PermGroup, n_values: usize) -> Result<()> {
        if self.group_id != group.id() || self.n_values != n_values {
            return Err(Error::GroupMismatch);
        }
        Ok(())
    }
}

fn in_omega(chi: &CharacterFn, orbit: &OrbitData) -> bool {
    restricted_inner_on_indices(chi, &orbit.stabilizer).norm() > OMEGA_TOL
}

/// Streams orbits from a table if given, else enumerates them.
fn visit_orbits(
    group: &PermGroup,
    n_values: usize,
    cap: u128,
    table: Option<&OrbitTable>,
    mut f: impl FnMut(&OrbitData) -> Result<()>,
) -> Result<()> {
    match table {
        Some(t) => {
            t.check(group, n_values)?;
            t.orbits.iter().try_for_each(f)
        }
        None => {
            for orbit in orbits(group, n_values, cap)? {
                f(&orbit)?;
            }
            Ok(())
        }
    }
}

fn check_pair(group: &PermGroup, chi: &CharacterFn) -> Result<()> {
    if !chi.same_group(group) {
        return Err(Error::GroupMismatch);
    }
    Ok(())
}

pub fn compute_omega(group: &PermGroup, chi: &CharacterFn, n_values: usize) -> Result<OmegaSet> {
    compute_omega_capped(group, chi, n_values, DEFAULT_ENUMERATION_CAP)
}

pub fn compute_omega_capped(group: &PermGroup, chi: &CharacterFn, n_values: usize, cap: u128) -> Result<OmegaSet> {
    check_pair(group, chi)?;
    let mut members = Vec::new();
    let mut representatives = Vec::new();
    visit_orbits(group, n_values, cap, None, |orbit| {
        if in_omega(chi, orbit) {
            representatives.push(orbit.representative.clone());
            members.extend(orbit.orbit.iter().cloned());
        }
        Ok(())
    })?;
    members.sort();
    Ok(OmegaSet {
        group: group.label(),
        character: chi.label().to_string(),
        n_values,
        total_sequences: (n_values as u128).pow(group.degree() as u32),
        members,
        representatives,
    })
}

/// `d^G_chi(L^gamma) = sum_h chi(h) prod_i L[i, gamma[h(i)]]`, without
/// materializing `L^gamma`.
fn gmf_of_columns(l: &ComplexMatrix, cols: &[usize], group: &PermGroup, chi_values: &[Complex64]) -> Complex64 {
    let mut total = ZERO;
    'outer: for (h, &c) in group.elements().iter().zip(chi_values) {
        if c == ZERO {
            continue;
        }
        let mut p = Complex64::new(1.0, 0.0);
        for (i, &hi) in h.images().iter().enumerate() {
            let x = l[(i, cols[hi])];
            if x == ZERO {
                continue 'outer;
            }
            p *= x;
        }
        total += c * p;
    }
    total
}

/// Relative residual of
/// `d((AB)[alpha|beta]) = (chi(e)/|G|) sum_{gamma in Omega} d(A[alpha|gamma]) d(B[gamma|beta])`.
pub fn cauchy_binet_check(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    group: &PermGroup,
    chi: &CharacterFn,
    alpha: &SequenceGamma,
    beta: &SequenceGamma,
) -> Result<f64> {
    let n = a.dim()?;
    if b.dim()? != n {
        return Err(Error::DegreeMismatch { expected: n, found: b.rows() });
    }
    if group.degree() != n || alpha.len() != n || beta.len() != n {
        return Err(Error::DegreeMismatch { expected: n, found: group.degree() });
    }
    check_pair(group, chi)?;
    alpha.check_bounds(n)?;
    beta.check_bounds(n)?;
    let stab_inner = |gamma: &SequenceGamma| -> Result<bool> {
        let stab = crate::perm::stabilizer_indices(group, gamma)?;
        Ok(restricted_inner_on_indices(chi, &stab).norm() > OMEGA_TOL)
    };
    if !stab_inner(alpha)? || !stab_inner(beta)? {
        return Err(Error::AlphaBetaNotInOmega);
    }
    let values = chi.element_values();
    let lhs = gmf_raw(&submatrix(&a.matmul(b), alpha, beta)?, group, &values);
    let mut terms = Vec::new();
    visit_orbits(group, n, DEFAULT_ENUMERATION_CAP, None, |orbit| {
        if in_omega(chi, orbit) {
            for gamma in &orbit.orbit {
                let x = gmf_raw(&submatrix(a, alpha, gamma)?, group, &values);
                let y = gmf_raw(&submatrix(b, gamma, beta)?, group, &values);
                terms.push(x * y);
            }
        }
        Ok(())
    })?;
    let rhs = pairwise_sum(&terms) * chi.degree() / group.order() as f64;
    Ok(rel_err(lhs, rhs))
}

fn factor(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(cholesky(a, DEFAULT_PSD_TOL)?.l)
}

/// `(1/|G|) sum_{gamma in Omega} |d(L^gamma)|^2` with `A = L L*`.
pub fn gmf_via_omega(a_psd: &ComplexMatrix, group: &PermGroup, chi: &CharacterFn) -> Result<Complex64> {
    gmf_via_omega_with(a_psd, group, chi, DEFAULT_ENUMERATION_CAP, None)
}

pub fn gmf_via_omega_with(
    a_psd: &ComplexMatrix,
    group: &PermGroup,
    chi: &CharacterFn,
    cap: u128,
    table: Option<&OrbitTable>,
) -> Result<Complex64> {
    let n = a_psd.dim()?;
    if group.degree() != n {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: n });
    }
    check_pair(group, chi)?;
    let l = factor(a_psd)?;
    let values = chi.element_values();
    let mut terms = Vec::new();
    visit_orbits(group, n, cap, table, |orbit| {
        if in_omega(chi, orbit) {
            for gamma in &orbit.orbit {
                terms.push(gmf_of_columns(&l, gamma.as_slice(), group, &values).norm_sqr());
            }
        }
        Ok(())
    })?;
    Ok(Complex64::new(pairwise_sum_real(&terms) / group.order() as f64, 0.0))
}

/// How the coset representatives `S_gamma` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CosetChoice {
    /// Smallest element of each coset; terms use `L^{g . gamma}` directly.
    #[default]
    Lexicographic,
    /// `s g` with `s` drawn from the stabilizer; terms use the explicit
    /// product `L^gamma P_g`.
    Randomized { seed: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct DecomposeOptions {
    pub cap: u128,
    pub coset_choice: CosetChoice,
    /// Record every orbit of `Delta*` in the report.
    pub keep_terms: bool,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        Self { cap: DEFAULT_ENUMERATION_CAP, coset_choice: CosetChoice::Lexicographic, keep_terms: true }
    }
}

/// Which per-orbit formula produced the terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TermFormula {
    /// `(1/|G|) sum_{g in S_gamma} |d(L^gamma P_g)|^2`.
    Coset,
    /// `(1/|G_gamma|) |d(L^gamma)|^2`, valid for linear characters.
    Linear,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitTerm {
    pub representative: SequenceGamma,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub term: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub group: String,
    pub character: String,
    pub n: usize,
    pub group_order: usize,
    pub formula: TermFormula,
    #[serde(with = "crate::io::complex")]
    pub lhs_normalized_gmf: Complex64,
    /// `det(A)` by LU.
    #[serde(with = "crate::io::complex")]
    pub det_term: Complex64,
    /// `delta_{chi,1} |G| prod |L_i1|^2`.
    pub delta_term: f64,
    /// Sum over `Delta*`.
    pub residual_sum: f64,
    #[serde(with = "crate::io::complex")]
    pub reconstructed: Complex64,
    /// `|lhs - reconstructed|`.
    pub identity_residual: f64,
    /// `identity_residual / (1 + |lhs|)`.
    pub relative_residual: f64,
    /// Explicit term of the orbit of `(1, ..., n)`; equals `det(A)` for irreducible `chi`.
    pub gamma_circ_term: f64,
    pub det_check_residual: f64,
    /// Explicit terms of constant sequences in `Omega`.
    pub constant_terms: Vec<OrbitTerm>,
    /// `|sum of constant_terms - delta_term|`.
    pub delta_check_residual: f64,
    /// Explicit terms of the orbits of `sigma . (1, ..., n)`, `sigma` outside `G`.
    pub vanishing_terms: Vec<OrbitTerm>,
    pub max_vanishing_term: f64,
    pub orbits_total: usize,
    pub orbits_in_omega: usize,
    /// Orbits of `Delta*` (empty unless requested).
    pub per_orbit_terms: Vec<OrbitTerm>,
}

/// `gamma_i = gamma_{g(i)}` index list for `g . gamma`.
fn act_indices(g: &Permutation, gamma: &[usize]) -> Vec<usize> {
    g.images().iter().map(|&i| gamma[i]).collect()
}

/// Decomposition with the general coset formula. Requires irreducible `chi`.
pub fn decompose(a_psd: &ComplexMatrix, group: &PermGroup, chi: &CharacterFn) -> Result<DecompositionReport> {
    decompose_with(a_psd, group, chi, &DecomposeOptions::default(), None)
}

pub fn decompose_with(
    a_psd: &ComplexMatrix,
    group: &PermGroup,
    chi: &CharacterFn,
    opts: &DecomposeOptions,
    table: Option<&OrbitTable>,
) -> Result<DecompositionReport> {
    run(a_psd, group, chi, opts, table, TermFormula::Coset)
}

/// Decomposition with the cheaper per-orbit formula for linear `chi`.
pub fn decompose_linear(a_psd: &ComplexMatrix, group: &PermGroup, chi: &CharacterFn) -> Result<DecompositionReport> {
    decompose_linear_with(a_psd, group, chi, &DecomposeOptions::default(), None)
}

pub fn decompose_linear_with(
    a_psd: &ComplexMatrix,
    group: &PermGroup,
    chi: &CharacterFn,
    opts: &DecomposeOptions,
    table: Option<&OrbitTable>,
) -> Result<DecompositionReport> {
    check_pair(group, chi)?;
    if !is_linear(chi) {
        return Err(Error::ChiNotLinear { degree: chi.degree().re });
    }
    run(a_psd, group, chi, opts, table, TermFormula::Linear)
}

fn run(
    a: &ComplexMatrix,
    group: &PermGroup,
    chi: &CharacterFn,
    opts: &DecomposeOptions,
    table: Option<&OrbitTable>,
    formula: TermFormula,
) -> Result<DecompositionReport> {
    let n = a.dim()?;
    if n < 2 {
        return Err(Error::InvalidMatrix("the decomposition needs n >= 2".into()));
    }
    if group.degree() != n {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: n });
    }
    check_pair(group, chi)?;
    if !chi.is_irreducible() {
        return Err(Error::ChiNotIrreducible { norm: chi.norm_squared() });
    }
    let l = factor(a)?;
    let values = chi.element_values();
    let order = group.order() as f64;
    let mut rng = match opts.coset_choice {
        CosetChoice::Randomized { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
        CosetChoice::Lexicographic => None,
    };

    let mut orbit_term = |orbit: &OrbitData| -> Result<f64> {
        let rep = orbit.representative.as_slice();
        if formula == TermFormula::Linear {
            let d = gmf_of_columns(&l, rep, group, &values);
            return Ok(d.norm_sqr() / orbit.stabilizer.len() as f64);
        }
        let mut parts = Vec::with_capacity(orbit.len());
        for &g0 in &orbit.coset_reps {
            let g0 = group.element(g0);
            let d = match rng.as_mut() {
                None => gmf_of_columns(&l, &act_indices(g0, rep), group, &values),
                Some(rng) => {
                    let s = group.element(orbit.stabilizer[rng.random_range(0..orbit.stabilizer.len())]);
                    let g = s.compose(g0);
                    debug_assert_eq!(act(&g, &orbit.representative)?, act(g0, &orbit.representative)?);
                    let lp = column_selection(&l, &orbit.representative)?.matmul(&permutation_matrix(&g, n)?);
                    gmf_raw(&lp, group, &values)
                }
            };
            parts.push(d.norm_sqr());
        }
        Ok(pairwise_sum_real(&parts) / order)
    };

    let identity_seq = SequenceGamma::identity(n);
    let mut gamma_circ_term = None;
    let mut constant_terms = Vec::new();
    let mut vanishing_terms = Vec::new();
    let mut star_terms = Vec::new();
    let mut per_orbit_terms = Vec::new();
    let mut orbits_total = 0;
    let mut orbits_in_omega = 0;

    visit_orbits(group, n, opts.cap, table, |orbit| {
        orbits_total += 1;
        if !in_omega(chi, orbit) {
            return Ok(());
        }
        orbits_in_omega += 1;
        let term = orbit_term(orbit)?;
        let record = || OrbitTerm {
            representative: orbit.representative.clone(),
            orbit_size: orbit.len(),
            stabilizer_order: orbit.stabilizer.len(),
            term,
        };
        if orbit.representative == identity_seq {
            gamma_circ_term = Some(term);
        } else if orbit.representative.all_distinct() {
            vanishing_terms.push(record());
        } else if orbit.representative.constant_value().is_some() {
            constant_terms.push(record());
        } else {
            star_terms.push(term);
            if opts.keep_terms {
                per_orbit_terms.push(record());
            }
        }
        Ok(())
    })?;

    let gamma_circ_term =
        gamma_circ_term.ok_or_else(|| Error::InvariantViolated("orbit of (1, ..., n) not in Omega".into()))?;
    let lhs = gmf_raw(a, group, &values) / chi.degree();
    let det_term = determinant(a)?;
    let alpha_sq: f64 = (0..n).map(|i| l[(i, 0)].norm_sqr()).product();
    let delta_term = if chi.is_principal() { order * alpha_sq } else { 0.0 };
    let residual_sum = pairwise_sum_real(&star_terms);
    let reconstructed = det_term + delta_term + residual_sum;
    let identity_residual = (lhs - reconstructed).norm();
    let constant_sum: f64 = constant_terms.iter().map(|t| t.term).sum();
    let max_vanishing_term = vanishing_terms.iter().map(|t| t.term).fold(0.0, f64::max);

    Ok(DecompositionReport {
        group: group.label(),
        character: chi.label().to_string(),
        n,
        group_order: group.order(),
        formula,
        lhs_normalized_gmf: lhs,
        det_term,
        delta_term,
        residual_sum,
        reconstructed,
        identity_residual,
        relative_residual: identity_residual / (1.0 + lhs.norm()),
        gamma_circ_term,
        det_check_residual: (gamma_circ_term - det_term).norm() / (1.0 + det_term.norm()),
        constant_terms,
        delta_check_residual: (constant_sum - delta_term).abs(),
        vanishing_terms,
        max_vanishing_term,
        orbits_total,
        orbits_in_omega,
        per_orbit_terms,
    })
}

/// The permanent expansion
/// `per(A) = det(A) + n! prod |L_i1|^2 + (n-1)! prod_{i<n} |L_i1|^2 |L_nn|^2 + sum_{Delta**}`.
#[derive(Debug, Clone, Serialize)]
pub struct PermanentExpansion {
    #[serde(with = "crate::io::complex")]
    pub permanent: Complex64,
    #[serde(with = "crate::io::complex")]
    pub det_term: Complex64,
    pub first_column_term: f64,
    pub last_column_term: f64,
    /// Sum over `Delta*` without the orbit of `(1, ..., 1, n)`.
    pub remaining_sum: f64,
    #[serde(with = "crate::io::complex")]
    pub reconstructed: Complex64,
    pub relative_residual: f64,
}

pub fn permanent_expansion(a_psd: &ComplexMatrix) -> Result<PermanentExpansion> {
    let n = a_psd.dim()?;
    let group = std::sync::Arc::new(PermGroup::symmetric(n)?);
    let principal = CharacterFn::principal(&group);
    let report = decompose_linear(a_psd, &group, &principal)?;
    let l = factor(a_psd)?;
    let mut last = vec![0; n];
    last[n - 1] = n - 1;
    let last = SequenceGamma::from_zero_based(last);
    let fact_n1 = (1..n).product::<usize>() as f64;
    let last_column_term =
        fact_n1 * (0..n - 1).map(|i| l[(i, 0)].norm_sqr()).product::<f64>() * l[(n - 1, n - 1)].norm_sqr();
    let remaining_sum = pairwise_sum_real(
        &report.per_orbit_terms.iter().filter(|t| t.representative != last).map(|t| t.term).collect::<Vec<_>>(),
    );
    let reconstructed = report.det_term + report.delta_term + last_column_term + remaining_sum;
    Ok(PermanentExpansion {
        permanent: report.lhs_normalized_gmf,
        det_term: report.det_term,
        first_column_term: report.delta_term,
        last_column_term,
        remaining_sum,
        reconstructed,
        relative_residual: (report.lhs_normalized_gmf - reconstructed).norm() / (1.0 + report.lhs_normalized_gmf.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::character_table;
    use crate::gmf::{gmf, permanent_ryser};
    use crate::numeric::rel_err_real;
    use crate::perm::{right_coset_reps_in_sn, stabilizer};
    use crate::random::{random_complex_matrix, random_psd, rng, PsdMode};
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn seq(v: &[usize]) -> SequenceGamma {
        SequenceGamma::from_one_based(v).unwrap()
    }

    fn small() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap()
    }

    fn group(name: &str) -> Arc<PermGroup> {
        Arc::new(PermGroup::named(name).unwrap())
    }

    #[test]
    fn omega_examples() {
        let s3 = group("S_3");
        let om = compute_omega(&s3, &CharacterFn::principal(&s3), 3).unwrap();
        assert_eq!(om.members.len(), 27);
        let s2 = group("S_2");
        let om = compute_omega(&s2, &CharacterFn::sign(&s2), 2).unwrap();
        assert_eq!(om.members, vec![seq(&[1, 2]), seq(&[2, 1])]);
        assert_eq!(om.representatives, vec![seq(&[1, 2])]);
    }

    #[test]
    fn omega_matches_per_sequence_filter() {
        for name in ["S_3", "A_4", "D_4", "C_4"] {
            let g = group(name);
            let n = g.degree();
            for chi in character_table(&g).unwrap().characters {
                let om = compute_omega(&g, &chi, n).unwrap();
                let mut count = 0;
                for code in 0..n.pow(n as u32) {
                    let gamma = SequenceGamma::from_zero_based((0..n).map(|i| code / n.pow(i as u32) % n).collect());
                    let stab = stabilizer(&g, &gamma).unwrap();
                    let inner = crate::characters::restricted_inner_with_trivial(&chi, &stab).unwrap();
                    let expected = inner.norm() > OMEGA_TOL;
                    assert_eq!(om.contains(&gamma), expected, "{name} {gamma:?}");
                    if gamma.all_distinct() {
                        assert!(expected);
                    }
                    count += usize::from(expected);
                }
                assert_eq!(count, om.members.len());
            }
        }
    }

    #[test]
    fn cauchy_binet_examples() {
        let s3 = group("S_3");
        let id = SequenceGamma::identity(3);
        let i3 = ComplexMatrix::identity(3);
        for chi in character_table(&s3).unwrap().characters {
            assert!(cauchy_binet_check(&i3, &i3, &s3, &chi, &id, &id).unwrap() <= 1e-10);
        }
        let mut r = rng(5);
        let a = random_complex_matrix(3, &mut r);
        let b = random_complex_matrix(3, &mut r);
        let sign = CharacterFn::sign(&s3);
        assert!(cauchy_binet_check(&a, &b, &s3, &sign, &id, &id).unwrap() <= 1e-9);
        let det_ab = determinant(&a.matmul(&b)).unwrap();
        assert!(rel_err(det_ab, determinant(&a).unwrap() * determinant(&b).unwrap()) <= 1e-9);

        let p = random_psd(3, PsdMode::Generic, &mut r);
        let l = cholesky(&p, DEFAULT_PSD_TOL).unwrap().l;
        for chi in character_table(&s3).unwrap().characters {
            assert!(cauchy_binet_check(&l, &l.conj_transpose(), &s3, &chi, &id, &id).unwrap() <= 1e-9);
            let alpha = seq(&[1, 3, 2]);
            assert!(cauchy_binet_check(&a, &b, &s3, &chi, &alpha, &id).unwrap() <= 1e-9);
        }
        assert_eq!(
            cauchy_binet_check(&a, &b, &s3, &sign, &seq(&[1, 1, 2]), &id).unwrap_err(),
            Error::AlphaBetaNotInOmega
        );
    }

    #[test]
    fn via_omega_examples() {
        let s2 = group("S_2");
        let per = gmf_via_omega(&small(), &s2, &CharacterFn::principal(&s2)).unwrap();
        assert!((per - c(3.0)).norm() < 1e-12);
        let det = gmf_via_omega(&small(), &s2, &CharacterFn::sign(&s2)).unwrap();
        assert!((det - c(1.0)).norm() < 1e-12);
        let s4 = group("S_4");
        let one = gmf_via_omega(&ComplexMatrix::identity(4), &s4, &CharacterFn::principal(&s4)).unwrap();
        assert!((one - c(1.0)).norm() < 1e-12);
        let bad = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(gmf_via_omega(&bad, &s2, &CharacterFn::principal(&s2)), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn n2_hand_example() {
        let s2 = group("S_2");
        let r = decompose(&small(), &s2, &CharacterFn::principal(&s2)).unwrap();
        assert!((r.det_term - c(1.0)).norm() < 1e-12);
        assert!((r.delta_term - 2.0).abs() < 1e-12);
        assert!(r.residual_sum.abs() < 1e-12);
        assert!((r.lhs_normalized_gmf - c(3.0)).norm() < 1e-12);
        assert!(r.identity_residual < 1e-12);
    }

    #[test]
    fn structural_zeros_and_sign() {
        let mut r = rng(17);
        for name in ["S_4", "A_4", "D_4", "Klein", "Young:[2,2]"] {
            let g = group(name);
            let diag = ComplexMatrix::diagonal(&[c(2.0), c(0.5), c(3.0), c(1.0)]);
            for chi in character_table(&g).unwrap().characters {
                let rep = decompose(&diag, &g, &chi).unwrap();
                assert_eq!(rep.delta_term, 0.0);
                assert!(rep.relative_residual < 1e-12, "{name}");
            }
        }
        let s4 = group("S_4");
        for _ in 0..5 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            let rep = decompose(&a, &s4, &CharacterFn::sign(&s4)).unwrap();
            assert_eq!(rep.delta_term, 0.0);
            assert!(rep.residual_sum.abs() <= 1e-9 * (1.0 + rep.det_term.norm()));
            assert!(rep.relative_residual < 1e-10);
        }
    }

    #[test]
    fn identity_and_special_terms_on_random_psd() {
        let mut r = rng(23);
        for name in ["S_3", "C_3", "S_4", "A_4", "D_4", "C_4", "Young:[3,1]"] {
            let g = group(name);
            let n = g.degree();
            let table = OrbitTable::new(&g, DEFAULT_ENUMERATION_CAP).unwrap();
            let coset_count = right_coset_reps_in_sn(&g).unwrap().len();
            for _ in 0..3 {
                let a = random_psd(n, PsdMode::Generic, &mut r);
                for chi in character_table(&g).unwrap().characters {
                    let rep = decompose_with(&a, &g, &chi, &DecomposeOptions::default(), Some(&table)).unwrap();
                    assert!(rep.relative_residual < 1e-9, "{name} {}", chi.label());
                    assert!(rep.det_check_residual < 1e-9);
                    assert!(rep.delta_check_residual < 1e-9 * (1.0 + rep.delta_term));
                    assert!(rep.max_vanishing_term <= 1e-12);
                    assert_eq!(rep.vanishing_terms.len(), coset_count - 1);
                    let lhs = gmf(&a, &g, &chi).unwrap().normalized;
                    let via = gmf_via_omega_with(&a, &g, &chi, DEFAULT_ENUMERATION_CAP, Some(&table)).unwrap();
                    assert!(rel_err(lhs, via) < 1e-9);
                    assert!(lhs.re >= rep.det_term.re - 1e-9 * (1.0 + rep.det_term.norm()));
                    if chi.is_principal() {
                        for t in &rep.constant_terms {
                            if t.representative.constant_value() != Some(0) {
                                assert!(t.term <= 1e-12);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn vanishing_orbits_are_the_right_cosets() {
        let g = group("D_4");
        let reps: Vec<SequenceGamma> = right_coset_reps_in_sn(&g)
            .unwrap()
            .iter()
            .filter(|s| !s.is_identity())
            .map(|s| act(s, &SequenceGamma::identity(4)).unwrap())
            .collect();
        let a = random_psd(4, PsdMode::Generic, &mut rng(2));
        let rep = decompose(&a, &g, &CharacterFn::principal(&g)).unwrap();
        let found: Vec<SequenceGamma> = rep.vanishing_terms.iter().map(|t| t.representative.clone()).collect();
        assert_eq!(found, reps);
    }

    #[test]
    fn coset_choice_does_not_matter() {
        let mut r = rng(31);
        for name in ["S_4", "D_4", "A_4"] {
            let g = group(name);
            let a = random_psd(4, PsdMode::Generic, &mut r);
            for chi in character_table(&g).unwrap().characters {
                let lex = decompose(&a, &g, &chi).unwrap();
                let opts = DecomposeOptions { coset_choice: CosetChoice::Randomized { seed: 99 }, ..Default::default() };
                let rnd = decompose_with(&a, &g, &chi, &opts, None).unwrap();
                assert!((lex.residual_sum - rnd.residual_sum).abs() <= 1e-10);
                assert!((lex.gamma_circ_term - rnd.gamma_circ_term).abs() <= 1e-10);
                for (x, y) in lex.per_orbit_terms.iter().zip(&rnd.per_orbit_terms) {
                    assert_eq!(x.representative, y.representative);
                    assert!((x.term - y.term).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn linear_formula_agrees() {
        let mut r = rng(41);
        let s4 = group("S_4");
        let pairs: Vec<(Arc<PermGroup>, CharacterFn)> = [group("C_4"), group("Klein")]
            .into_iter()
            .flat_map(|g| character_table(&g).unwrap().characters.into_iter().map(move |chi| (chi.group().clone(), chi)))
            .chain(std::iter::once((s4.clone(), CharacterFn::sign(&s4))))
            .collect();
        for _ in 0..50 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            for (g, chi) in &pairs {
                let full = decompose(&a, g, chi).unwrap();
                let lin = decompose_linear(&a, g, chi).unwrap();
                assert!(rel_err(full.reconstructed, lin.reconstructed) < 1e-9);
                assert!(rel_err_real(full.residual_sum, lin.residual_sum) < 1e-9);
            }
        }
        let s3 = group("S_3");
        let standard = character_table(&s3).unwrap().characters.pop().unwrap();
        assert!(matches!(decompose_linear(&ComplexMatrix::identity(3), &s3, &standard), Err(Error::ChiNotLinear { .. })));
    }

    #[test]
    fn reducible_character_is_rejected() {
        let s3 = group("S_3");
        let reg = CharacterFn::regular(&s3);
        assert!(matches!(decompose(&ComplexMatrix::identity(3), &s3, &reg), Err(Error::ChiNotIrreducible { .. })));
    }

    #[test]
    fn permanent_expansion_holds() {
        let exp = permanent_expansion(&ComplexMatrix::identity(4)).unwrap();
        assert!((exp.reconstructed - c(1.0)).norm() < 1e-12);
        assert_eq!(exp.first_column_term, 0.0);
        assert_eq!(exp.last_column_term, 0.0);
        let mut r = rng(53);
        for _ in 0..10 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            let exp = permanent_expansion(&a).unwrap();
            assert!(exp.relative_residual < 1e-9);
            assert!(rel_err(exp.permanent, permanent_ryser(&a).unwrap()) < 1e-9);
        }
    }
}
