//! Permutations of `[n]`, index sequences in `Gamma_{m,n}`, concrete
//! permutation groups and their action on sequences.
//!
//! Everything is 0-based internally. Cycle notation and sequences are
//! 1-based at the parse/print boundary only.
//!
//! Composition convention: `(g * h)(i) = g(h(i))`.

mod action;
mod group;

pub use action::{
    act, orbit_decomposition, orbits, right_coset_reps_in_sn, stabilizer, stabilizer_indices, OrbitData,
    OrbitIter,
};
pub use group::{all_subgroups, ConjugacyClass, PermGroup};

use std::fmt;
use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection of `{0, ..., n-1}` stored as its image array.
///
/// The derived ordering is lexicographic on the image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::BadPermutation(format!("{images:?} is not a bijection of 0..{n}")));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::BadPermutation("1-based images must be positive".into()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` for a permutation of
    /// `[n]`. `"()"` and `"e"` denote the identity; fixed points may be
    /// omitted and commas may separate entries.
    pub fn parse_cycles(s: &str, n: usize) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "()" {
            return Ok(Self::identity(n));
        }
        let mut images: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        let mut rest = t;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in cycle string {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {s:?}")))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let cycle: Vec<usize> = body
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
                .map(|w| {
                    let v: usize = w.parse().map_err(|_| Error::Parse(format!("bad point {w:?} in {s:?}")))?;
                    if v == 0 || v > n {
                        return Err(Error::BadPermutation(format!("point {v} outside 1..={n}")));
                    }
                    Ok(v - 1)
                })
                .collect::<Result<_>>()?;
            for &p in &cycle {
                if used[p] {
                    return Err(Error::BadPermutation(format!("point {} repeated in {s:?}", p + 1)));
                }
                used[p] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree(), other.degree());
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in weakly decreasing order (a partition of `n`).
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

/// An element of `Gamma_{m,n}`: a length-`m` sequence of column indices,
/// repetition allowed. Stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct SequenceGamma {
    entries: Vec<usize>,
}

impl SequenceGamma {
    pub fn from_zero_based(entries: Vec<usize>) -> Self {
        Self { entries }
    }

    pub fn from_one_based(entries: &[usize]) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&x| x == 0) {
            return Err(Error::IndexOutOfRange { index: bad, bound: usize::MAX });
        }
        Ok(Self { entries: entries.iter().map(|&x| x - 1).collect() })
    }

    /// `(1, 2, ..., n)`.
    pub fn identity(n: usize) -> Self {
        Self { entries: (0..n).collect() }
    }

    /// `(k, k, ..., k)` of length `m` (0-based `k`).
    pub fn constant(k: usize, m: usize) -> Self {
        Self { entries: vec![k; m] }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.entries
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.entries.iter().map(|x| x + 1).collect()
    }

    pub fn check_bounds(&self, n: usize) -> Result<()> {
        match self.entries.iter().find(|&&x| x >= n) {
            Some(&x) => Err(Error::IndexOutOfRange { index: x + 1, bound: n }),
            None => Ok(()),
        }
    }

    pub fn all_distinct(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.entries.iter().all(|x| seen.insert(*x))
    }

    pub fn constant_value(&self) -> Option<usize> {
        let first = *self.entries.first()?;
        self.entries.iter().all(|&x| x == first).then_some(first)
    }

    /// Composition of index maps: `(self ∘ inner)_i = self[inner_i]`.
    pub fn compose(&self, inner: &SequenceGamma) -> Result<SequenceGamma> {
        inner.check_bounds(self.len())?;
        Ok(Self { entries: inner.entries.iter().map(|&i| self.entries[i]).collect() })
    }
}

impl Index<usize> for SequenceGamma {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.entries[i]
    }
}

impl From<SequenceGamma> for Vec<usize> {
    fn from(s: SequenceGamma) -> Self {
        s.to_one_based()
    }
}

impl TryFrom<Vec<usize>> for SequenceGamma {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::from_one_based(&v)
    }
}

impl fmt::Display for SequenceGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.to_one_based().iter().map(ToString::to_string).collect();
        write!(f, "({})", pts.join(","))
    }
}

impl fmt::Debug for SequenceGamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses `"1,2,3"` (optionally parenthesised) as a 1-based sequence.
impl std::str::FromStr for SequenceGamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v: Vec<usize> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| w.parse().map_err(|_| Error::Parse(format!("bad sequence entry {w:?}"))))
            .collect::<Result<_>>()?;
        Self::from_one_based(&v)
    }
}

/// Visits every permutation of `[n]` (Heap's algorithm) with its sign.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize], i32)) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1;
    f(&p, sign);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            sign = -sign;
            f(&p, sign);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cycle_parsing_and_display() {
        let g = Permutation::parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(g.images(), &[1, 2, 0, 4, 3]);
        assert_eq!(g.to_string(), "(1 2 3)(4 5)");
        assert_eq!(Permutation::parse_cycles("e", 3).unwrap(), Permutation::identity(3));
        assert_eq!(Permutation::parse_cycles("()", 3).unwrap().to_string(), "()");
        assert_eq!(Permutation::parse_cycles("(1,3)", 3).unwrap().images(), &[2, 1, 0]);
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 4)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
    }

    #[test]
    fn composition_convention() {
        let g = Permutation::parse_cycles("(1 2)", 3).unwrap();
        let h = Permutation::parse_cycles("(2 3)", 3).unwrap();
        // (gh)(1) = g(h(1)) = g(1) = 2
        assert_eq!(g.compose(&h).apply(0), 1);
        assert_eq!(g.compose(&h).to_string(), "(1 2 3)");
    }

    #[test]
    fn sign_and_cycle_type() {
        let g = Permutation::parse_cycles("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(g.sign(), -1);
        assert_eq!(g.cycle_type(), vec![3, 2, 1]);
    }

    #[test]
    fn heap_enumeration_visits_all_with_correct_signs() {
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(5, |p, s| {
            assert_eq!(Permutation::from_images(p.to_vec()).unwrap().sign(), s);
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }

    #[test]
    fn sequence_parsing() {
        let s: SequenceGamma = "(1,1,2)".parse().unwrap();
        assert_eq!(s.as_slice(), &[0, 0, 1]);
        assert_eq!(s.to_string(), "(1,1,2)");
        assert!("0,1".parse::<SequenceGamma>().is_err());
    }

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_composes_to_identity(g in perm_strategy(7)) {
            prop_assert!(g.compose(&g.inverse()).is_identity());
            prop_assert!(g.inverse().compose(&g).is_identity());
        }

        #[test]
        fn cycle_notation_round_trips(g in perm_strategy(8)) {
            prop_assert_eq!(Permutation::parse_cycles(&g.to_string(), 8).unwrap(), g);
        }
    }
}
