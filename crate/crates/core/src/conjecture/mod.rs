//! The permanent dominant conjecture `dbar^G_chi(A) <= per(A)`: the
//! entry-size criterion from the Cholesky factor, the classes it generates,
//! the structural classes, and numerical spot checks.

pub mod classify;

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::characters::{character_table, CharacterTable};
use crate::decomposition::gmf_via_omega;
use crate::error::{Error, Result};
use crate::gmf::{gmf_raw, permanent_naive, permanent_ryser};
use crate::matrix::{check_psd, cholesky, determinant, CholeskyFactor, ComplexMatrix};
use crate::numeric::{factorial, DEFAULT_PSD_TOL};
use crate::perm::PermGroup;

pub use classify::{frobenius_konig, is_rank_one, rank_one_plus_diagonal, RankOneDiagonalFit, ZeroBlock};

/// Relative slack on `|L_kj| <= eps_n`, absorbing roundoff in a recomputed factor.
pub const CRITERION_SLACK: f64 = 1e-9;
/// Margins above `-MARGIN_TOL * (1 + |per A|)` count as non-negative.
pub const MARGIN_TOL: f64 = 1e-9;
/// Largest `n` for numerical verification.
pub const VERIFY_MAX_N: usize = 7;

/// `M_n`, the bound on the number of contributing orbits (`n > 3`).
pub fn m_n(n: usize) -> Result<BigInt> {
    if n <= 3 {
        return Err(Error::NTooSmall(n));
    }
    let big = |x: usize| BigInt::from(x);
    let pow = |b: usize, e: usize| big(b).pow(e as u32);
    let fact: BigInt = (1..=n).map(big).product();
    let c = if n.is_multiple_of(2) {
        pow(n, (n - 4) / 2) * pow((n - 2) / 2, (n + 2) / 2) * big((n + 4) / 2)
    } else {
        pow(n, (n - 5) / 2) * pow((n - 1) / 2, (n + 1) / 2) * big((n + 3) / 2)
    };
    Ok(pow(n, n) - pow(n - 1, n) - fact - c - 1)
}

fn bigint_as_string<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EpsilonData {
    pub n: usize,
    pub group_order: usize,
    /// `prod_i |L_i1|`.
    pub alpha: f64,
    /// `max_i |L_i1|`.
    pub alpha0: f64,
    #[serde(serialize_with = "bigint_as_string")]
    pub m_n: BigInt,
    /// `(alpha/|G|) sqrt(2 n! / (3 M_n))`.
    pub eps_ng: f64,
    /// `min(eps_ng / alpha0^(n-1), 1)`.
    pub eps_bar_ng: f64,
    /// `min((alpha / alpha0^(n-1)) sqrt(2 / (3 n! M_n)), 1)`.
    pub eps_n: f64,
}

/// Thresholds from the first column of `L`. With `alpha0 = 0` the ratios
/// are taken as `+inf`, so both clamped values are 1.
pub fn epsilon_data(l: &CholeskyFactor, group: &PermGroup) -> Result<EpsilonData> {
    let n = l.l.dim()?;
    if group.degree() != n {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: n });
    }
    epsilon_for_order(l, group.order())
}

fn epsilon_for_order(l: &CholeskyFactor, group_order: usize) -> Result<EpsilonData> {
    let n = l.l.dim()?;
    let m = m_n(n)?;
    let m_f = m.to_f64().unwrap_or(f64::INFINITY);
    let fact = factorial(n) as f64;
    let col: Vec<f64> = (0..n).map(|i| l.l[(i, 0)].norm()).collect();
    let alpha: f64 = col.iter().product();
    let alpha0 = col.iter().copied().fold(0.0, f64::max);
    let eps_ng = alpha / group_order as f64 * (2.0 * fact / (3.0 * m_f)).sqrt();
    let (eps_bar_ng, eps_n) = if alpha0 == 0.0 {
        (1.0, 1.0)
    } else {
        let lead = alpha0.powi(n as i32 - 1);
        ((eps_ng / lead).min(1.0), (alpha / lead * (2.0 / (3.0 * fact * m_f)).sqrt()).min(1.0))
    };
    Ok(EpsilonData { n, group_order, alpha, alpha0, m_n: m, eps_ng, eps_bar_ng, eps_n })
}

/// `det(A) + (delta_{chi,1} |G| + (2/3) n!) prod |L_i1|^2`.
pub fn theorem_bound(det: f64, alpha: f64, n: usize, group_order: usize, principal: bool) -> f64 {
    let delta = if principal { group_order as f64 } else { 0.0 };
    det + (delta + 2.0 / 3.0 * factorial(n) as f64) * alpha * alpha
}

/// Which structural class certified a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Proposition {
    #[serde(rename = "non-negative-real")]
    NonNegativeReal,
    /// A zero row, equivalently a zero column for Hermitian input.
    #[serde(rename = "zero-column")]
    ZeroColumn,
    #[serde(rename = "frobenius-konig")]
    FrobeniusKonig,
    #[serde(rename = "rank-1")]
    RankOne,
    #[serde(rename = "rank1-plus-diagonal")]
    RankOnePlusDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    AffirmedByCriterion,
    AffirmedByProposition(Proposition),
    VerifiedNumerically,
    Inconclusive,
    /// A margin stayed negative after re-evaluation.
    PotentialCounterexample,
}

impl Verdict {
    pub fn is_affirmative(&self) -> bool {
        matches!(self, Verdict::AffirmedByCriterion | Verdict::AffirmedByProposition(_) | Verdict::VerifiedNumerically)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Inconclusive => 2,
            Verdict::PotentialCounterexample => 3,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionDetails {
    pub epsilon: EpsilonData,
    /// `max_{j != 1} |L_kj|`.
    pub max_off_first_column: f64,
    pub satisfied: bool,
    /// `|L_kj|` for every entry.
    pub entry_table: Vec<Vec<f64>>,
    #[serde(with = "crate::io::complex")]
    pub det: Complex64,
    /// Bound for non-principal characters of any `G`.
    pub bound_nonprincipal: f64,
    /// Bound for the principal character of `S_n`.
    pub bound_principal_sn: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct QuickAffirmDetails {
    pub proposition: Option<Proposition>,
    /// Classifiers run, in order, with their outcome.
    pub checks: Vec<(Proposition, bool)>,
    pub zero_block: Option<ZeroBlock>,
    pub singular_values: Vec<f64>,
    pub rank_one_diagonal: Option<RankOneDiagonalFit>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginRow {
    pub group: String,
    pub character: String,
    pub chi_degree: f64,
    #[serde(with = "crate::io::complex")]
    pub normalized_gmf: Complex64,
    /// `Re per(A) - Re dbar(A)`.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumericDetails {
    #[serde(with = "crate::io::complex")]
    pub permanent: Complex64,
    pub scale: f64,
    pub min_margin: f64,
    pub margins: Vec<MarginRow>,
    /// Pairs re-evaluated with the naive permanent and the Omega sum.
    pub rechecked: Vec<MarginRow>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReportDetails {
    pub criterion: Option<CriterionDetails>,
    pub quick_affirm: Option<QuickAffirmDetails>,
    pub numeric: Option<NumericDetails>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub matrix_id: String,
    pub n: usize,
    pub verdict: Verdict,
    pub details: ReportDetails,
}

/// Stable fingerprint of the entries.
pub fn matrix_id(a: &ComplexMatrix) -> String {
    let mut h = DefaultHasher::new();
    a.rows().hash(&mut h);
    for z in a.data() {
        z.re.to_bits().hash(&mut h);
        z.im.to_bits().hash(&mut h);
    }
    format!("m-{:016x}", h.finish())
}

fn require_psd(a: &ComplexMatrix) -> Result<()> {
    let v = check_psd(a, DEFAULT_PSD_TOL)?;
    if !v.is_psd {
        return Err(Error::NotPsd { min_eigen_estimate: v.min_eigen_estimate, threshold: DEFAULT_PSD_TOL });
    }
    Ok(())
}

/// Entry-size criterion: `|L_kj| <= eps_n` for all `j != 1`. Falls back to
/// [`quick_affirm`] when the criterion does not apply.
pub fn criterion_check(a: &ComplexMatrix) -> Result<ConjectureReport> {
    let n = a.dim()?;
    let factor = cholesky(a, DEFAULT_PSD_TOL)?;
    let mut details = ReportDetails::default();
    if n <= 3 {
        details.notes.push("the conjecture is known for every PSD matrix with n <= 3".into());
        return Ok(ConjectureReport { matrix_id: matrix_id(a), n, verdict: Verdict::AffirmedByCriterion, details });
    }
    let crit = criterion_details(a, &factor)?;
    let satisfied = crit.satisfied;
    details.criterion = Some(crit);
    if satisfied {
        return Ok(ConjectureReport { matrix_id: matrix_id(a), n, verdict: Verdict::AffirmedByCriterion, details });
    }
    details.notes.push("criterion not met; trying the structural classes".into());
    let quick = quick_affirm(a)?;
    details.quick_affirm = quick.details.quick_affirm;
    Ok(ConjectureReport { matrix_id: matrix_id(a), n, verdict: quick.verdict, details })
}

fn criterion_details(a: &ComplexMatrix, factor: &CholeskyFactor) -> Result<CriterionDetails> {
    let n = a.rows();
    let epsilon = epsilon_for_order(factor, factorial(n) as usize)?;
    let l = &factor.l;
    let entry_table: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| l[(i, j)].norm()).collect()).collect();
    let max_off_first_column = entry_table.iter().flat_map(|r| r[1..].iter().copied()).fold(0.0, f64::max);
    let satisfied = max_off_first_column <= epsilon.eps_n * (1.0 + CRITERION_SLACK);
    let det = determinant(a)?;
    Ok(CriterionDetails {
        bound_nonprincipal: theorem_bound(det.re, epsilon.alpha, n, 1, false),
        bound_principal_sn: theorem_bound(det.re, epsilon.alpha, n, factorial(n) as usize, true),
        epsilon,
        max_off_first_column,
        satisfied,
        entry_table,
        det,
    })
}

/// Runs the structural classifiers in order; the first hit wins.
pub fn quick_affirm(a: &ComplexMatrix) -> Result<ConjectureReport> {
    let n = a.dim()?;
    require_psd(a)?;
    let h = a.hermitian_part()?;
    let abs_tol = 1e-12 * h.max_abs();
    let mut checks = Vec::new();
    let mut hit = None;
    let mut zero_block = None;
    let mut rank_one_diagonal = None;

    let nonneg = h.data().iter().all(|z| z.re >= -abs_tol && z.im.abs() <= abs_tol);
    checks.push((Proposition::NonNegativeReal, nonneg));
    if nonneg {
        hit = Some(Proposition::NonNegativeReal);
    }
    if hit.is_none() {
        let zero_row = (0..n).any(|i| h.row(i).iter().all(|z| z.norm() <= abs_tol));
        checks.push((Proposition::ZeroColumn, zero_row));
        if zero_row {
            hit = Some(Proposition::ZeroColumn);
        }
    }
    if hit.is_none() {
        zero_block = frobenius_konig(&h, abs_tol);
        checks.push((Proposition::FrobeniusKonig, zero_block.is_some()));
        if zero_block.is_some() {
            hit = Some(Proposition::FrobeniusKonig);
        }
    }
    let singular_values = classify::hermitian_singular_values(&h);
    if hit.is_none() {
        let r1 = is_rank_one(&h);
        checks.push((Proposition::RankOne, r1));
        if r1 {
            hit = Some(Proposition::RankOne);
        }
    }
    if hit.is_none() {
        rank_one_diagonal = rank_one_plus_diagonal(&h, classify::RANK_ONE_TOL);
        checks.push((Proposition::RankOnePlusDiagonal, rank_one_diagonal.is_some()));
        if rank_one_diagonal.is_some() {
            hit = Some(Proposition::RankOnePlusDiagonal);
        }
    }
    let verdict = hit.map_or(Verdict::Inconclusive, Verdict::AffirmedByProposition);
    let details = ReportDetails {
        quick_affirm: Some(QuickAffirmDetails { proposition: hit, checks, zero_block, singular_values, rank_one_diagonal }),
        ..Default::default()
    };
    Ok(ConjectureReport { matrix_id: matrix_id(a), n, verdict, details })
}

/// The admissible range `0 < lambda <= a` for the class of `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassBound {
    pub eps_n: f64,
    /// `max_{2 <= i, j <= n} |L_ij|`.
    pub m: f64,
    /// `eps_n / m`, or `None` when `m = 0`.
    pub a: Option<f64>,
    /// Largest admissible `lambda`: `a`, or 1 when `m = 0`.
    pub lambda_max: f64,
}

fn first_column_nonzero(a: &ComplexMatrix) -> Result<()> {
    let thr = 1e-14 * a.max_abs();
    match (0..a.rows()).find(|&i| a[(i, 0)].norm() <= thr) {
        Some(i) => Err(Error::ZeroInFirstColumn(i + 1)),
        None => Ok(()),
    }
}

pub fn class_bound(a: &ComplexMatrix) -> Result<ClassBound> {
    let n = a.dim()?;
    first_column_nonzero(a)?;
    let factor = cholesky(a, DEFAULT_PSD_TOL)?;
    let crit = criterion_details(a, &factor)?;
    let l = &factor.l;
    let m = (1..n).flat_map(|i| (1..n).map(move |j| (i, j))).map(|(i, j)| l[(i, j)].norm()).fold(0.0, f64::max);
    let eps_n = crit.epsilon.eps_n;
    let (a_val, lambda_max) = if m == 0.0 { (None, 1.0) } else { (Some(eps_n / m), eps_n / m) };
    Ok(ClassBound { eps_n, m, a: a_val, lambda_max })
}

/// `L diag(1, lambda_2^2, ..., lambda_n^2) L*` for `0 < lambda_i <= a`.
/// The result is checked against [`criterion_check`].
pub fn generate_class(a: &ComplexMatrix, lambdas: &[f64]) -> Result<ComplexMatrix> {
    let n = a.dim()?;
    let bound = class_bound(a)?;
    if lambdas.len() != n - 1 {
        return Err(Error::DegreeMismatch { expected: n - 1, found: lambdas.len() });
    }
    for (k, &lam) in lambdas.iter().enumerate() {
        if !(lam > 0.0 && lam <= bound.lambda_max) {
            return Err(Error::LambdaOutOfRange { index: k + 2, value: lam, bound: bound.lambda_max });
        }
    }
    let l = cholesky(a, DEFAULT_PSD_TOL)?.l;
    let scaled = ComplexMatrix::from_fn(n, n, |i, j| if j == 0 { l[(i, j)] } else { l[(i, j)] * lambdas[j - 1] });
    let member = scaled.matmul(&scaled.conj_transpose()).hermitian_part()?;
    let check = criterion_check(&member)?;
    let by_criterion = check.details.criterion.as_ref().is_some_and(|c| c.satisfied) || n <= 3;
    if !by_criterion {
        return Err(Error::InvariantViolated(format!(
            "generated member fails the criterion: max |L_kj| = {:e}, eps_n = {:e}",
            check.details.criterion.as_ref().map_or(f64::NAN, |c| c.max_off_first_column),
            check.details.criterion.as_ref().map_or(f64::NAN, |c| c.epsilon.eps_n),
        )));
    }
    Ok(member)
}

/// `D A D*` with `D = diag(c)`.
pub fn congruence_scale(a: &ComplexMatrix, c: &[Complex64]) -> Result<ComplexMatrix> {
    let n = a.dim()?;
    if c.len() != n {
        return Err(Error::DegreeMismatch { expected: n, found: c.len() });
    }
    Ok(ComplexMatrix::from_fn(n, n, |i, j| c[i] * a[(i, j)] * c[j].conj()))
}

/// Whether a conjecture-satisfying `A` transfers to `D A D*` (all `c_i != 0`).
pub fn congruence_transfers(c: &[Complex64]) -> bool {
    c.iter().all(|z| z.norm() > 0.0)
}

/// Spot check of `dbar^G_chi(A) <= per(A)` for every irreducible `chi` of
/// every listed group. Evidence, not proof.
pub fn verify_conjecture_numeric(a: &ComplexMatrix, groups: &[Arc<PermGroup>]) -> Result<ConjectureReport> {
    let tables = groups.iter().map(character_table).collect::<Result<Vec<_>>>()?;
    verify_with_tables(a, &tables)
}

/// [`verify_conjecture_numeric`] with precomputed character tables.
pub fn verify_with_tables(a: &ComplexMatrix, tables: &[CharacterTable]) -> Result<ConjectureReport> {
    let n = a.dim()?;
    if n > VERIFY_MAX_N {
        return Err(Error::TooLarge { n, limit: VERIFY_MAX_N });
    }
    require_psd(a)?;
    for t in tables {
        if t.group.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: t.group.degree() });
        }
    }
    let permanent = permanent_ryser(a)?;
    let scale = 1.0 + permanent.norm();
    let pairs: Vec<_> = tables.iter().flat_map(|t| t.characters.iter().map(move |chi| (t, chi))).collect();
    let margins: Vec<MarginRow> = pairs
        .par_iter()
        .map(|(t, chi)| {
            let value = gmf_raw(a, &t.group, &chi.element_values()) / chi.degree();
            MarginRow {
                group: t.group.label(),
                character: chi.label().to_string(),
                chi_degree: chi.degree().re,
                normalized_gmf: value,
                margin: permanent.re - value.re,
            }
        })
        .collect();

    let mut rechecked = Vec::new();
    let mut counterexample = false;
    for (row, (t, chi)) in margins.iter().zip(&pairs) {
        if row.margin >= -MARGIN_TOL * scale {
            continue;
        }
        let per = permanent_naive(a)?;
        let via = gmf_via_omega(a, &t.group, chi)?;
        let margin = per.re - via.re;
        if margin < -MARGIN_TOL * scale && row.margin < -MARGIN_TOL * scale {
            counterexample = true;
        }
        rechecked.push(MarginRow { normalized_gmf: via, margin, ..row.clone() });
    }
    let min_margin = margins.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min);
    let verdict = if counterexample { Verdict::PotentialCounterexample } else { Verdict::VerifiedNumerically };
    let mut notes = vec!["numerical evidence at finite precision, not a proof".to_string()];
    if counterexample {
        notes.push("POTENTIAL COUNTEREXAMPLE: a margin stayed negative after re-evaluation".into());
    }
    Ok(ConjectureReport {
        matrix_id: matrix_id(a),
        n,
        verdict,
        details: ReportDetails {
            numeric: Some(NumericDetails { permanent, scale, min_margin, margins, rechecked }),
            notes,
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{decompose_character, CharacterFn};
    use crate::gmf::gmf;
    use crate::numeric::rel_err;
    use crate::perm::all_subgroups;
    use crate::random::{random_psd, random_scalars, rng, PsdMode};
    use rand::RngExt;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn m_n_values() {
        assert_eq!(m_n(4).unwrap(), BigInt::from(146));
        assert_eq!(m_n(5).unwrap(), BigInt::from(1948));
        assert_eq!(m_n(6).unwrap(), BigInt::from(29830));
        assert_eq!(m_n(3).unwrap_err(), Error::NTooSmall(3));
        assert!(m_n(30).unwrap() > BigInt::from(u128::MAX));
    }

    #[test]
    fn epsilon_examples() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let l = ComplexMatrix::from_fn(4, 4, |i, j| if j == 0 || i == j { c(1.0) } else { c(0.0) });
        let f = CholeskyFactor { l, rank_estimate: 4, reconstruction_residual: 0.0 };
        let e = epsilon_data(&f, &s4).unwrap();
        assert_eq!((e.alpha, e.alpha0), (1.0, 1.0));
        assert!((e.eps_n - (2.0f64 / 10512.0).sqrt()).abs() < 1e-15);
        assert!((e.eps_n - 0.0137934).abs() < 1e-7);

        let id = cholesky(&ComplexMatrix::identity(4), DEFAULT_PSD_TOL).unwrap();
        let e = epsilon_data(&id, &s4).unwrap();
        assert_eq!(e.alpha, 0.0);
        assert_eq!(e.eps_n, 0.0);

        let zero_first = CholeskyFactor { l: ComplexMatrix::zeros(4, 4), rank_estimate: 0, reconstruction_residual: 0.0 };
        assert_eq!(epsilon_data(&zero_first, &s4).unwrap().eps_n, 1.0);
    }

    #[test]
    fn eps_n_is_smallest_over_subgroups() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let a = random_psd(4, PsdMode::Generic, &mut rng(4));
        let f = cholesky(&a, DEFAULT_PSD_TOL).unwrap();
        let eps_n = epsilon_data(&f, &s4).unwrap().eps_n;
        for g in all_subgroups(&s4).unwrap() {
            assert!(eps_n <= epsilon_data(&f, &g).unwrap().eps_bar_ng * (1.0 + 1e-12));
        }
    }

    #[test]
    fn criterion_examples() {
        let r = criterion_check(&ComplexMatrix::identity(4)).unwrap();
        assert!(!r.details.criterion.as_ref().unwrap().satisfied);
        assert_eq!(r.verdict, Verdict::AffirmedByProposition(Proposition::NonNegativeReal));

        let small = criterion_check(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(small.verdict, Verdict::AffirmedByCriterion);

        let a = random_psd(5, PsdMode::Generic, &mut rng(12));
        assert_eq!(criterion_check(&a).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn quick_affirm_examples() {
        let ones = ComplexMatrix::from_fn(4, 4, |_, _| c(1.0));
        assert_eq!(quick_affirm(&ones).unwrap().verdict, Verdict::AffirmedByProposition(Proposition::NonNegativeReal));
        let mut r = rng(6);
        let v = crate::random::random_complex_vector(5, &mut r);
        let r1diag = ComplexMatrix::outer(&v).add(&ComplexMatrix::diagonal(&[c(0.5); 5]));
        assert_eq!(quick_affirm(&r1diag).unwrap().verdict, Verdict::AffirmedByProposition(Proposition::RankOnePlusDiagonal));
        let r1 = ComplexMatrix::outer(&v);
        assert_eq!(quick_affirm(&r1).unwrap().verdict, Verdict::AffirmedByProposition(Proposition::RankOne));
        let zc = random_psd(5, PsdMode::Zerocol, &mut r);
        assert_eq!(quick_affirm(&zc).unwrap().verdict, Verdict::AffirmedByProposition(Proposition::ZeroColumn));
        let bad = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(quick_affirm(&bad), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn generated_members_pass() {
        let mut r = rng(21);
        for _ in 0..5 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            let b = class_bound(&a).unwrap();
            let at_bound = generate_class(&a, &[b.lambda_max; 3]).unwrap();
            assert_eq!(criterion_check(&at_bound).unwrap().verdict, Verdict::AffirmedByCriterion);
            let fa = cholesky(&a, DEFAULT_PSD_TOL).unwrap().l;
            let fm = cholesky(&at_bound, DEFAULT_PSD_TOL).unwrap().l;
            for i in 0..4 {
                assert!((fa[(i, 0)] - fm[(i, 0)]).norm() < 1e-10);
            }
            let tiny = generate_class(&a, &[1e-9; 3]).unwrap();
            let col = ComplexMatrix::outer(&fa.column(0));
            assert!(tiny.max_abs_diff(&col) < 1e-8 * (1.0 + a.max_abs()));
            assert!(matches!(
                generate_class(&a, &[b.lambda_max * 1.01, 0.0, 0.0]),
                Err(Error::LambdaOutOfRange { index: 2, .. })
            ));
            assert!(matches!(generate_class(&a, &[0.0; 3]), Err(Error::LambdaOutOfRange { .. })));
        }
        let mut z = random_psd(4, PsdMode::Generic, &mut r);
        z[(2, 0)] = c(0.0);
        z[(0, 2)] = c(0.0);
        assert_eq!(class_bound(&z).unwrap_err(), Error::ZeroInFirstColumn(3));
    }

    #[test]
    fn congruence_covariance() {
        let mut r = rng(13);
        let s3 = Arc::new(PermGroup::symmetric(3).unwrap());
        let standard = character_table(&s3).unwrap().characters.pop().unwrap();
        assert_eq!(standard.degree(), c(2.0));
        let a = random_psd(3, PsdMode::Generic, &mut r);
        assert_eq!(congruence_scale(&a, &[c(1.0); 3]).unwrap(), a);
        for _ in 0..20 {
            let a = random_psd(3, PsdMode::Generic, &mut r);
            let cs = random_scalars(3, &mut r);
            let k: f64 = cs.iter().map(|z| z.norm_sqr()).product();
            let b = congruence_scale(&a, &cs).unwrap();
            assert!(rel_err(permanent_ryser(&b).unwrap(), permanent_ryser(&a).unwrap() * k) < 1e-9);
            let lhs = gmf(&b, &s3, &standard).unwrap().normalized;
            let rhs = gmf(&a, &s3, &standard).unwrap().normalized * k;
            assert!(rel_err(lhs, rhs) < 1e-9);
        }
        assert!(!congruence_transfers(&[c(1.0), c(0.0)]));
    }

    #[test]
    fn verify_identity_over_s4_subgroups() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let groups = all_subgroups(&s4).unwrap();
        let rep = verify_conjecture_numeric(&ComplexMatrix::identity(4), &groups).unwrap();
        assert_eq!(rep.verdict, Verdict::VerifiedNumerically);
        let num = rep.details.numeric.unwrap();
        assert!(num.min_margin.abs() < 1e-12);
        assert!(num.margins.iter().all(|m| m.margin.abs() < 1e-12));
    }

    #[test]
    fn verify_random_and_theorem_bound() {
        let mut r = rng(88);
        let s4 = PermGroup::symmetric(4).unwrap();
        let groups = all_subgroups(&s4).unwrap();
        let tables: Vec<CharacterTable> = groups.iter().map(|g| character_table(g).unwrap()).collect();
        for _ in 0..10 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            assert_eq!(verify_with_tables(&a, &tables).unwrap().verdict, Verdict::VerifiedNumerically);
        }
        // theorem bound on members that satisfy |L_kj| <= eps_bar(n, G)
        for _ in 0..5 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            let member = generate_class(&a, &[class_bound(&a).unwrap().lambda_max; 3]).unwrap();
            let f = cholesky(&member, DEFAULT_PSD_TOL).unwrap();
            let det = determinant(&member).unwrap().re;
            for t in &tables {
                let e = epsilon_data(&f, &t.group).unwrap();
                for chi in &t.characters {
                    let v = gmf(&member, &t.group, chi).unwrap().normalized.re;
                    let bound = theorem_bound(det, e.alpha, 4, t.group.order(), chi.is_principal());
                    assert!(v <= bound + 1e-9 * (1.0 + bound.abs()));
                }
            }
        }
    }

    #[test]
    fn alternating_principal_and_reducible_transfer() {
        let mut r = rng(99);
        let a4 = Arc::new(PermGroup::alternating(4).unwrap());
        let table = character_table(&a4).unwrap();
        for _ in 0..20 {
            let a = random_psd(4, PsdMode::Generic, &mut r);
            let per = permanent_ryser(&a).unwrap().re;
            let d = gmf(&a, &a4, &CharacterFn::principal(&a4)).unwrap().value.re;
            assert!(d <= per + 1e-9 * (1.0 + per));
            let mut lambda = table.characters[0].scale(0.0);
            for chi in &table.characters {
                lambda = lambda.add(&chi.scale(r.random_range(0..3) as f64)).unwrap();
            }
            if lambda.degree().re == 0.0 {
                continue;
            }
            assert!(decompose_character(&lambda, &table).unwrap().is_character);
            let v = gmf(&a, &a4, &lambda).unwrap().normalized.re;
            assert!(v <= per + 1e-9 * (1.0 + per));
        }
    }

    #[test]
    fn odd_permutation_mass_is_nonnegative() {
        let mut r = rng(5);
        for n in 2..=6 {
            let a = random_psd(n, PsdMode::Generic, &mut r);
            let mut odd = Complex64::new(0.0, 0.0);
            crate::perm::for_each_permutation(n, |p, s| {
                if s < 0 {
                    odd += p.iter().enumerate().map(|(i, &j)| a[(i, j)]).product::<Complex64>();
                }
            });
            assert!(odd.re >= -1e-9 * (1.0 + a.max_abs().powi(n as i32)));
        }
    }
}
