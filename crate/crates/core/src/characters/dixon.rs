//! Character tables of small permutation groups (Burnside's method with
//! Dixon-style simultaneous diagonalisation in floating point).
//!
//! The class-sum structure constants `c_{ijl}` satisfy
//! `w_i w_j = sum_l c_{ijl} w_l` for the central character
//! `w_l = |C_l| chi(g_l) / chi(e)` of every irreducible `chi`, so each `w`
//! is a common eigenvector of the matrices `(M_i)_{jl} = c_{ijl}`. A random
//! combination of the `M_i` separates them.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numeric::GROUP_ORDER_CAP;
use crate::perm::PermGroup;

use super::{inner_product, CharacterFn};

const MAX_CLASSES: usize = 64;
const SNAP_WINDOW: f64 = 1e-6;
const ORTHOGONALITY_TOL: f64 = 1e-8;
const ATTEMPTS: u64 = 8;

/// A validated table of irreducible characters.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: Arc<PermGroup>,
    /// Principal character first, then by degree.
    pub characters: Vec<CharacterFn>,
    /// Values before snapping, aligned with `characters`.
    pub raw_values: Vec<Vec<Complex64>>,
    /// Largest change made by snapping.
    pub max_snap_shift: f64,
    /// `max |(chi_i, chi_j) - delta_ij|`.
    pub orthogonality_residual: f64,
    /// `max |(|C_g|/|G|) sum_i chi_i(g) conj(chi_i(h)) - delta_gh|` over class pairs.
    pub column_residual: f64,
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree().re.round() as u64).collect()
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn principal(&self) -> &CharacterFn {
        &self.characters[0]
    }
}

/// Complete list of irreducible characters of `group`.
pub fn character_table(group: &Arc<PermGroup>) -> Result<CharacterTable> {
    if group.order() > GROUP_ORDER_CAP {
        return Err(Error::GroupTooLarge { cap: GROUP_ORDER_CAP });
    }
    let k = group.num_classes();
    if k > MAX_CLASSES {
        return Err(Error::GroupTooLarge { cap: GROUP_ORDER_CAP });
    }
    let constants = structure_constants(group);
    let mut last_err = None;
    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(group.order() as u64 * 7919 + attempt);
        match attempt_table(group, &constants, &mut rng) {
            Ok(t) => return Ok(t),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::ValidationFailed("no attempt made".into())))
}

/// `c[i][j][l] = #{(x, y) in C_i x C_j : x y = g_l}`, flattened.
fn structure_constants(group: &PermGroup) -> Vec<f64> {
    let k = group.num_classes();
    let inverses: Vec<usize> = group
        .elements()
        .iter()
        .map(|g| group.index_of(&g.inverse()).expect("closed under inverses"))
        .collect();
    let mut c = vec![0.0; k * k * k];
    for l in 0..k {
        let z = group.classes()[l].representative;
        for x in 0..group.order() {
            let y = group.multiply(inverses[x], z);
            let (i, j) = (group.class_of(x), group.class_of(y));
            c[(i * k + j) * k + l] += 1.0;
        }
    }
    c
}

fn attempt_table(group: &Arc<PermGroup>, c: &[f64], rng: &mut ChaCha8Rng) -> Result<CharacterTable> {
    let k = group.num_classes();
    let order = group.order() as f64;
    let sizes: Vec<f64> = group.classes().iter().map(|cl| cl.size() as f64).collect();

    let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.5..1.5)).collect();
    let m = DMatrix::<Complex64>::from_fn(k, k, |j, l| {
        let s: f64 = (0..k).map(|i| weights[i] * c[(i * k + j) * k + l]).sum();
        Complex64::new(s, 0.0)
    });
    let eigenvalues = Schur::new(m.clone())
        .eigenvalues()
        .ok_or_else(|| Error::ValidationFailed("Schur form not triangular".into()))?;
    let scale = 1.0 + eigenvalues.iter().fold(0.0f64, |a, z| a.max(z.norm()));
    for a in 0..k {
        for b in a + 1..k {
            if (eigenvalues[a] - eigenvalues[b]).norm() < 1e-7 * scale {
                return Err(Error::ValidationFailed("eigenvalues not separated".into()));
            }
        }
    }

    let mut raw_values = Vec::with_capacity(k);
    for &lambda in eigenvalues.iter() {
        let w = eigenvector(&m, lambda, rng)?;
        let norm: f64 = (0..k).map(|l| w[l].norm_sqr() / sizes[l]).sum();
        let degree = (order / norm).sqrt();
        raw_values.push((0..k).map(|l| degree * w[l] / sizes[l]).collect::<Vec<Complex64>>());
    }

    let mut max_snap_shift: f64 = 0.0;
    let mut rows: Vec<(Vec<Complex64>, Vec<Complex64>)> = Vec::with_capacity(k);
    for raw in raw_values {
        let degree = raw[0].re;
        if (degree - degree.round()).abs() > SNAP_WINDOW || degree.round() < 1.0 {
            return Err(Error::ValidationFailed(format!("non-integral degree {degree}")));
        }
        let snapped: Vec<Complex64> = raw.iter().map(|z| Complex64::new(snap(z.re), snap(z.im))).collect();
        for (a, b) in raw.iter().zip(&snapped) {
            max_snap_shift = max_snap_shift.max((a - b).norm());
        }
        rows.push((snapped, raw));
    }
    rows.sort_by_key(|(v, _)| sort_key(v));

    let (characters, raw_values): (Vec<CharacterFn>, Vec<Vec<Complex64>>) = rows
        .into_iter()
        .enumerate()
        .map(|(i, (v, raw))| {
            let chi = CharacterFn::new(group.clone(), v, format!("chi_{}", i + 1)).expect("length k");
            (chi, raw)
        })
        .unzip();

    validate(group, characters, raw_values, max_snap_shift)
}

/// Snaps to the nearest half-integer when within the window; irrational
/// values are left untouched.
fn snap(x: f64) -> f64 {
    // + 0.0 turns -0.0 into 0.0
    let h = (2.0 * x).round() / 2.0 + 0.0;
    if (x - h).abs() <= SNAP_WINDOW {
        h
    } else {
        x
    }
}

fn sort_key(values: &[Complex64]) -> (i64, Vec<(i64, i64)>) {
    let q = |x: f64| (x * 1e6).round() as i64;
    (q(values[0].re), values.iter().map(|z| (-q(z.re), -q(z.im))).collect())
}

fn eigenvector(m: &DMatrix<Complex64>, lambda: Complex64, rng: &mut ChaCha8Rng) -> Result<DVector<Complex64>> {
    let k = m.nrows();
    let shift = lambda + Complex64::new(1e-10, 1e-10) * (1.0 + lambda.norm());
    let shifted = m - DMatrix::<Complex64>::identity(k, k) * shift;
    let lu = shifted.lu();
    let mut x = DVector::<Complex64>::from_fn(k, |_, _| Complex64::new(rng.random_range(0.5..1.5), 0.0));
    for _ in 0..3 {
        x = lu
            .solve(&x)
            .ok_or_else(|| Error::ValidationFailed("singular shifted matrix".into()))?;
        let n = x.norm();
        x /= Complex64::new(n, 0.0);
    }
    let lead = x[0];
    if lead.norm() < 1e-12 {
        return Err(Error::ValidationFailed("eigenvector vanishes at the identity class".into()));
    }
    Ok(x / lead)
}

fn validate(
    group: &Arc<PermGroup>,
    characters: Vec<CharacterFn>,
    raw_values: Vec<Vec<Complex64>>,
    max_snap_shift: f64,
) -> Result<CharacterTable> {
    let k = group.num_classes();
    let order = group.order();
    let degree_sq: u128 = characters.iter().map(|c| (c.degree().re.round() as u128).pow(2)).sum();
    if degree_sq != order as u128 {
        return Err(Error::ValidationFailed(format!("sum of squared degrees {degree_sq} != |G| = {order}")));
    }
    if !characters[0].is_principal() {
        return Err(Error::ValidationFailed("principal character missing".into()));
    }
    let mut orthogonality_residual: f64 = 0.0;
    for (a, x) in characters.iter().enumerate() {
        for (b, y) in characters.iter().enumerate() {
            let expected = if a == b { 1.0 } else { 0.0 };
            orthogonality_residual = orthogonality_residual.max((inner_product(x, y)? - expected).norm());
        }
    }
    let mut column_residual: f64 = 0.0;
    for g in 0..k {
        let weight = group.classes()[g].size() as f64 / order as f64;
        for h in 0..k {
            let s: Complex64 = characters
                .iter()
                .map(|chi| chi.class_values()[g] * chi.class_values()[h].conj())
                .sum();
            let expected = if g == h { 1.0 } else { 0.0 };
            column_residual = column_residual.max((s * weight - expected).norm());
        }
    }
    if orthogonality_residual > ORTHOGONALITY_TOL || column_residual > ORTHOGONALITY_TOL {
        return Err(Error::ValidationFailed(format!(
            "orthogonality residuals {orthogonality_residual:e} / {column_residual:e}"
        )));
    }
    if let Some(bad) = characters.iter().find(|c| !c.satisfies_degree_bound()) {
        return Err(Error::ValidationFailed(format!("{} violates |chi(g)| <= chi(e)", bad.label())));
    }
    Ok(CharacterTable {
        group: group.clone(),
        characters,
        raw_values,
        max_snap_shift,
        orthogonality_residual,
        column_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{sn_irreducible_on, Partition};

    fn table(name: &str) -> CharacterTable {
        character_table(&Arc::new(PermGroup::named(name).unwrap())).unwrap()
    }

    #[test]
    fn cyclic_four_has_fourth_roots_of_unity() {
        let t = table("C_4");
        assert_eq!(t.degrees(), vec![1, 1, 1, 1]);
        let g = t.group.clone();
        let gen = g.index_of(&crate::perm::Permutation::parse_cycles("(1 2 3 4)", 4).unwrap()).unwrap();
        let mut images: Vec<Complex64> = t.characters.iter().map(|c| c.value_at(gen)).collect();
        images.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
        let expected = [Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), Complex64::new(1.0, 0.0)];
        for (a, b) in images.iter().zip(&expected) {
            assert_eq!(a, b);
        }
        // chi(g^j) = chi(g)^j
        for chi in &t.characters {
            let mut x = 0;
            let mut power = Complex64::new(1.0, 0.0);
            for _ in 0..4 {
                assert!((chi.value_at(x) - power).norm() < 1e-12);
                x = g.multiply(x, gen);
                power *= chi.value_at(gen);
            }
        }
    }

    #[test]
    fn s3_and_klein() {
        assert_eq!(table("S_3").degrees(), vec![1, 1, 2]);
        let v = table("Klein");
        assert_eq!(v.degrees(), vec![1, 1, 1, 1]);
        for chi in &v.characters {
            assert!(chi.class_values().iter().all(|z| z.im == 0.0 && z.re.abs() == 1.0));
        }
    }

    #[test]
    fn a4_has_degrees_1_1_1_3() {
        let t = table("A_4");
        assert_eq!(t.degrees(), vec![1, 1, 1, 3]);
    }

    #[test]
    fn s4_matches_murnaghan_nakayama() {
        let t = table("S_4");
        assert!(t.max_snap_shift <= 1e-6);
        let mn: Vec<CharacterFn> = Partition::all(4).iter().map(|l| sn_irreducible_on(&t.group, l).unwrap()).collect();
        for chi in &mn {
            assert!(t.characters.iter().any(|d| d.class_values() == chi.class_values()));
        }
    }

    #[test]
    fn larger_tables_validate() {
        for name in ["S_5", "A_5", "C_7", "D_6", "Young:[2,2]", "Young:[3,2]"] {
            let t = table(name);
            assert_eq!(t.len(), t.group.num_classes(), "{name}");
            assert!(t.orthogonality_residual <= 1e-8, "{name}");
            assert!(t.column_residual <= 1e-8, "{name}");
        }
    }

    #[test]
    fn a5_golden_ratio_values_survive_snapping() {
        let t = table("A_5");
        assert_eq!(t.degrees(), vec![1, 3, 3, 4, 5]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let has_phi = t
            .characters
            .iter()
            .any(|c| c.class_values().iter().any(|v| (v.re - phi).abs() < 1e-12));
        assert!(has_phi);
    }
}
