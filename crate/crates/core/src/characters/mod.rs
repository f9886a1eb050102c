//! Class functions on permutation groups: inner products, linearity,
//! decomposition into irreducibles, `S_n` irreducibles and general
//! character tables.

mod dixon;
mod symmetric;

pub use dixon::{character_table, CharacterTable};
pub use symmetric::{murnaghan_nakayama, sn_irreducible, sn_irreducible_on, Partition};

use std::sync::Arc;

use num_complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// Tolerance for `(chi, chi) = 1`.
pub const IRREDUCIBLE_TOL: f64 = 1e-8;

/// A class function `chi: G -> C`, stored per conjugacy class of `group`
/// (class order as in [`PermGroup::classes`]).
#[derive(Debug, Clone)]
pub struct CharacterFn {
    group: Arc<PermGroup>,
    values: Vec<Complex64>,
    label: String,
}

impl CharacterFn {
    pub fn new(group: Arc<PermGroup>, class_values: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        if class_values.len() != group.num_classes() {
            return Err(Error::InvalidMatrix(format!(
                "character needs {} class values, got {}",
                group.num_classes(),
                class_values.len()
            )));
        }
        Ok(Self { group, values: class_values, label: label.into() })
    }

    /// Evaluates `f` on class representatives; `f` must be a class function.
    pub fn from_class_fn(group: &Arc<PermGroup>, label: impl Into<String>, f: impl Fn(&Permutation) -> Complex64) -> Self {
        let values = (0..group.num_classes()).map(|c| f(group.class_representative(c))).collect();
        Self { group: group.clone(), values, label: label.into() }
    }

    pub fn principal(group: &Arc<PermGroup>) -> Self {
        Self::from_class_fn(group, "principal", |_| Complex64::new(1.0, 0.0))
    }

    /// The sign of `S_n` restricted to `group`.
    pub fn sign(group: &Arc<PermGroup>) -> Self {
        Self::from_class_fn(group, "sign", |g| Complex64::new(g.sign() as f64, 0.0))
    }

    /// `|G|` at the identity, zero elsewhere.
    pub fn regular(group: &Arc<PermGroup>) -> Self {
        let order = group.order() as f64;
        Self::from_class_fn(group, "regular", |g| {
            Complex64::new(if g.is_identity() { order } else { 0.0 }, 0.0)
        })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn class_values(&self) -> &[Complex64] {
        &self.values
    }

    /// `chi(e)`.
    pub fn degree(&self) -> Complex64 {
        self.values[0]
    }

    /// Value at the element with index `k` in `group.elements()`.
    pub fn value_at(&self, k: usize) -> Complex64 {
        self.values[self.group.class_of(k)]
    }

    pub fn value_of(&self, g: &Permutation) -> Result<Complex64> {
        self.group
            .index_of(g)
            .map(|k| self.value_at(k))
            .ok_or_else(|| Error::ElementNotInGroup(g.to_string()))
    }

    /// One value per group element, aligned with `group.elements()`.
    pub fn element_values(&self) -> Vec<Complex64> {
        (0..self.group.order()).map(|k| self.value_at(k)).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() <= 1e-9)
    }

    pub fn same_group(&self, group: &PermGroup) -> bool {
        std::ptr::eq(self.group.as_ref(), group) || self.group.same_group(group)
    }

    /// `(chi, chi)_G`.
    pub fn norm_squared(&self) -> f64 {
        inner_product(self, self).expect("same group").re
    }

    pub fn is_irreducible(&self) -> bool {
        (self.norm_squared() - 1.0).abs() <= IRREDUCIBLE_TOL
    }

    /// `max_g |chi(g)| <= chi(e)` within `1e-9`.
    pub fn satisfies_degree_bound(&self) -> bool {
        let d = self.degree().norm();
        self.values.iter().all(|v| v.norm() <= d + 1e-9)
    }

    /// Restriction to a subgroup (same degree, contained in `self.group()`).
    pub fn restrict(&self, subgroup: &Arc<PermGroup>) -> Result<Self> {
        if !subgroup.is_subgroup_of(&self.group) {
            return Err(Error::GroupMismatch);
        }
        let values = (0..subgroup.num_classes())
            .map(|c| self.value_of(subgroup.class_representative(c)))
            .collect::<Result<_>>()?;
        Ok(Self { group: subgroup.clone(), values, label: format!("{}|{}", self.label, subgroup.label()) })
    }

    /// Pointwise sum of two class functions on the same group.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_group(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), values, label: format!("{} + {}", self.label, other.label) })
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * k).collect(),
            label: format!("{k}*{}", self.label),
        }
    }

    fn check_same_group(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.group, &other.group) || self.group.same_group(&other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }
}

/// `(chi, psi)_G = (1/|G|) sum_g conj(chi(g)) psi(g)`, summed by class.
pub fn inner_product(chi: &CharacterFn, psi: &CharacterFn) -> Result<Complex64> {
    chi.check_same_group(psi)?;
    let g = &chi.group;
    let total: Complex64 = g
        .classes()
        .iter()
        .enumerate()
        .map(|(c, class)| chi.values[c].conj() * psi.values[c] * class.size() as f64)
        .sum();
    Ok(total / g.order() as f64)
}

/// `(chi, 1)_H = (1/|H|) sum_{h in H} chi(h)` for `H` given by element
/// indices into `chi.group()`.
pub fn restricted_inner_on_indices(chi: &CharacterFn, subgroup: &[usize]) -> Complex64 {
    let total: Complex64 = subgroup.iter().map(|&k| chi.value_at(k)).sum();
    total / subgroup.len() as f64
}

/// `(chi, 1)_H` for a subgroup `H` given by its elements.
pub fn restricted_inner_with_trivial(chi: &CharacterFn, subgroup_elements: &[Permutation]) -> Result<Complex64> {
    if subgroup_elements.is_empty() {
        return Err(Error::ElementNotInGroup("empty subgroup".into()));
    }
    let indices = subgroup_elements
        .iter()
        .map(|h| chi.group.index_of(h).ok_or_else(|| Error::ElementNotInGroup(h.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(restricted_inner_on_indices(chi, &indices))
}

/// Multiplicities of the irreducibles of `table` in a class function.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterDecomposition {
    /// `(lambda, chi_i)` for each row `i` of the table.
    pub multiplicities: Vec<Complex64>,
    /// `(i, m_i)` for rows whose rounded multiplicity is positive.
    pub coefficients: Vec<(usize, u64)>,
    /// Every multiplicity is a non-negative integer within `1e-8`.
    pub is_character: bool,
}

pub fn decompose_character(lambda: &CharacterFn, table: &CharacterTable) -> Result<CharacterDecomposition> {
    let mut multiplicities = Vec::with_capacity(table.characters.len());
    for chi in &table.characters {
        multiplicities.push(inner_product(chi, lambda)?);
    }
    let is_character = multiplicities
        .iter()
        .all(|m| m.im.abs() <= 1e-8 && m.re >= -1e-8 && (m.re - m.re.round()).abs() <= 1e-8);
    let coefficients = multiplicities
        .iter()
        .enumerate()
        .filter_map(|(i, m)| {
            let r = m.re.round();
            (r >= 1.0).then_some((i, r as u64))
        })
        .collect();
    Ok(CharacterDecomposition { multiplicities, coefficients, is_character })
}

/// Degree one, with multiplicativity spot-checked on ten seeded pairs.
pub fn is_linear(chi: &CharacterFn) -> bool {
    if (chi.degree() - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return false;
    }
    let g = &chi.group;
    let mut rng = ChaCha8Rng::seed_from_u64(0x6c69_6e65_6172);
    (0..10).all(|_| {
        let a = rng.random_range(0..g.order());
        let b = rng.random_range(0..g.order());
        (chi.value_at(g.multiply(a, b)) - chi.value_at(a) * chi.value_at(b)).norm() <= 1e-8
    })
}
