//! Irreducible characters of `S_n` by the Murnaghan-Nakayama rule.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::factorial;
use crate::perm::PermGroup;

use super::CharacterFn;

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::BadPartition("empty partition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::BadPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Self {
        let cols = self.0[0];
        Self((0..cols).map(|j| self.0.iter().filter(|&&r| r > j).count()).collect())
    }

    /// All partitions of `n` in reverse lexicographic order, `(n)` first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if remaining == 0 {
                out.push(Partition(prefix.clone()));
                return;
            }
            for part in (1..=max.min(remaining)).rev() {
                prefix.push(part);
                rec(remaining - part, part, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }

    /// `n! / prod(hook lengths)`.
    pub fn hook_length_degree(&self) -> u128 {
        let conj = self.conjugate();
        let mut hooks: u128 = 1;
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.0[j] - i - 1;
                hooks *= (arm + leg + 1) as u128;
            }
        }
        factorial(self.size()) / hooks
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let parts: Vec<usize> = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|w| !w.is_empty())
            .map(|w| w.parse().map_err(|_| Error::BadPartition(format!("bad part {w:?}"))))
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

/// Keyed by (shape, remaining cycle lengths).
type Memo = HashMap<(Vec<usize>, Vec<usize>), i64>;

/// `chi^lambda` on the class of cycle type `mu` (any order of parts).
pub fn murnaghan_nakayama(lambda: &Partition, mu: &[usize]) -> i64 {
    let mut memo = Memo::new();
    mn(&lambda.0, mu, 0, &mut memo)
}

fn mn(lambda: &[usize], mu: &[usize], pos: usize, memo: &mut Memo) -> i64 {
    if pos == mu.len() {
        return i64::from(lambda.is_empty());
    }
    let key = (lambda.to_vec(), mu[pos..].to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[pos];
    let k = lambda.len();
    // beta numbers, strictly decreasing
    let beta: Vec<usize> = (0..k).map(|i| lambda[i] + k - 1 - i).collect();
    let mut total = 0;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (k - 1 - i))
            .take_while(|&part| part > 0)
            .collect();
        total += sign * mn(&shape, mu, pos + 1, memo);
    }
    memo.insert(key, total);
    total
}

/// `chi^lambda` as a class function on a freshly built `S_n`.
pub fn sn_irreducible(lambda: &Partition) -> Result<CharacterFn> {
    let n = lambda.size();
    if n > 8 {
        return Err(Error::BadPartition(format!("{lambda} has size {n} > 8")));
    }
    let group = Arc::new(PermGroup::symmetric(n)?);
    sn_irreducible_on(&group, lambda)
}

/// `chi^lambda` on a given copy of `S_n` (the group must be all of `S_n`).
pub fn sn_irreducible_on(group: &Arc<PermGroup>, lambda: &Partition) -> Result<CharacterFn> {
    let n = lambda.size();
    if group.degree() != n || group.order() as u128 != factorial(n) {
        return Err(Error::BadPartition(format!("{lambda} needs the full symmetric group S_{n}")));
    }
    let mut memo = Memo::new();
    let values: Vec<Complex64> = (0..group.num_classes())
        .map(|c| {
            let mu = group.class_representative(c).cycle_type();
            Complex64::new(mn(&lambda.0, &mu, 0, &mut memo) as f64, 0.0)
        })
        .collect();
    let hook = lambda.hook_length_degree();
    if values[0].re as u128 != hook {
        return Err(Error::ValidationFailed(format!(
            "degree {} of {lambda} disagrees with hook length formula {hook}",
            values[0].re
        )));
    }
    CharacterFn::new(group.clone(), values, lambda.to_string())
}
