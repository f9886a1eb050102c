//! Action of `G <= S_m` on `Gamma_{m,n}` by position permutation:
//! `(g . gamma)_i = gamma_{g(i)}`.
//!
//! With `(gh)(i) = g(h(i))` this is a right action,
//! `g . (h . gamma) = (hg) . gamma`, and it satisfies
//! `L[(n)|g . gamma] = L[(n)|gamma] P_g`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::numeric::factorial;

use super::{for_each_permutation, Permutation, PermGroup, SequenceGamma};

pub fn act(g: &Permutation, gamma: &SequenceGamma) -> Result<SequenceGamma> {
    if g.degree() != gamma.len() {
        return Err(Error::DegreeMismatch { expected: g.degree(), found: gamma.len() });
    }
    Ok(SequenceGamma::from_zero_based(g.images().iter().map(|&i| gamma[i]).collect()))
}

/// Indices of `G_gamma = {g : g . gamma = gamma}`.
pub fn stabilizer_indices(group: &PermGroup, gamma: &SequenceGamma) -> Result<Vec<usize>> {
    if group.degree() != gamma.len() {
        return Err(Error::DegreeMismatch { expected: group.degree(), found: gamma.len() });
    }
    let s = gamma.as_slice();
    Ok((0..group.order())
        .filter(|&k| group.element(k).images().iter().enumerate().all(|(i, &gi)| s[gi] == s[i]))
        .collect())
}

pub fn stabilizer(group: &PermGroup, gamma: &SequenceGamma) -> Result<Vec<Permutation>> {
    Ok(stabilizer_indices(group, gamma)?.into_iter().map(|k| group.element(k).clone()).collect())
}

/// One orbit of `G` on `Gamma_{m,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitData {
    /// Lexicographically smallest member.
    pub representative: SequenceGamma,
    /// Members; `orbit[k] = coset_reps[k] . representative`, `orbit[0]` is the representative.
    pub orbit: Vec<SequenceGamma>,
    /// Element indices of the stabilizer of the representative.
    pub stabilizer: Vec<usize>,
    /// Element indices; `coset_reps[k]` is the smallest `g` with `g . rep = orbit[k]`.
    ///
    /// The set `{g : g . rep = orbit[k]}` is the coset `G_rep * coset_reps[k]`.
    pub coset_reps: Vec<usize>,
}

impl OrbitData {
    pub fn len(&self) -> usize {
        self.orbit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbit.is_empty()
    }

    pub fn stabilizer_perms<'g>(&self, group: &'g PermGroup) -> Vec<&'g Permutation> {
        self.stabilizer.iter().map(|&k| group.element(k)).collect()
    }

    pub fn coset_rep_perms<'g>(&self, group: &'g PermGroup) -> Vec<&'g Permutation> {
        self.coset_reps.iter().map(|&k| group.element(k)).collect()
    }
}

fn enumeration_size(n_values: usize, m: usize) -> u128 {
    (n_values as u128).checked_pow(m as u32).unwrap_or(u128::MAX)
}

/// Streams the orbits of `group` on `Gamma_{m,n}` (`m` = group degree,
/// `n = n_values`) in increasing order of their representatives.
pub struct OrbitIter<'g> {
    group: &'g PermGroup,
    n_values: usize,
    m: usize,
    total: u64,
    next_code: u64,
    visited: Vec<u64>,
    powers: Vec<u64>,
}

pub fn orbits(group: &PermGroup, n_values: usize, cap: u128) -> Result<OrbitIter<'_>> {
    let m = group.degree();
    let size = enumeration_size(n_values, m);
    if size > cap || size > u64::MAX as u128 {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let total = size as u64;
    let powers: Vec<u64> = (0..m).map(|i| (n_values as u64).pow((m - 1 - i) as u32)).collect();
    Ok(OrbitIter {
        group,
        n_values,
        m,
        total,
        next_code: 0,
        visited: vec![0; (total as usize).div_ceil(64)],
        powers,
    })
}

impl OrbitIter<'_> {
    fn is_visited(&self, code: u64) -> bool {
        self.visited[(code / 64) as usize] & (1 << (code % 64)) != 0
    }

    fn decode(&self, mut code: u64) -> Vec<usize> {
        let n = self.n_values as u64;
        let mut out = vec![0; self.m];
        for i in (0..self.m).rev() {
            out[i] = (code % n) as usize;
            code /= n;
        }
        out
    }
}

impl Iterator for OrbitIter<'_> {
    type Item = OrbitData;

    fn next(&mut self) -> Option<OrbitData> {
        while self.next_code < self.total && self.is_visited(self.next_code) {
            self.next_code += 1;
        }
        if self.next_code >= self.total {
            return None;
        }
        let rep_code = self.next_code;
        let rep = self.decode(rep_code);
        let mut orbit = Vec::new();
        let mut stabilizer = Vec::new();
        let mut coset_reps = Vec::new();
        for (k, g) in self.group.elements().iter().enumerate() {
            let code: u64 = g.images().iter().zip(&self.powers).map(|(&gi, &p)| rep[gi] as u64 * p).sum();
            if code == rep_code {
                stabilizer.push(k);
            }
            if !self.is_visited(code) {
                self.visited[(code / 64) as usize] |= 1 << (code % 64);
                orbit.push(SequenceGamma::from_zero_based(self.decode(code)));
                coset_reps.push(k);
            }
        }
        Some(OrbitData { representative: SequenceGamma::from_zero_based(rep), orbit, stabilizer, coset_reps })
    }
}

/// All orbits of `group` on `Gamma_{m,n}`, `m` = group degree.
///
/// The action permutes positions, so the sequence length is fixed by the
/// group; `n_values` is the alphabet size.
pub fn orbit_decomposition(group: &PermGroup, n_values: usize, cap: u128) -> Result<Vec<OrbitData>> {
    Ok(orbits(group, n_values, cap)?.collect())
}

/// One representative `sigma` per coset `sigma G` of `G` in `S_n`, each the
/// lexicographically smallest member; `e` represents `G` itself.
///
/// These are exactly the cosets whose sequences `sigma . (1, ..., n)` lie in
/// distinct `G`-orbits, since `g . (sigma . gamma) = (sigma g) . gamma`.
pub fn right_coset_reps_in_sn(group: &PermGroup) -> Result<Vec<Permutation>> {
    let n = group.degree();
    if n > 8 {
        return Err(Error::EnumerationTooLarge { size: factorial(n), cap: factorial(8) });
    }
    let mut all: Vec<Permutation> = Vec::with_capacity(factorial(n) as usize);
    for_each_permutation(n, |p, _| all.push(Permutation { images: p.to_vec() }));
    all.sort();
    let mut covered: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for sigma in all {
        if covered.contains(&sigma) {
            continue;
        }
        for g in group.elements() {
            covered.insert(sigma.compose(g));
        }
        reps.push(sigma);
    }
    Ok(reps)
}
