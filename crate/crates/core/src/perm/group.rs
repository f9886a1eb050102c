use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{factorial, GROUP_ORDER_CAP};

use super::Permutation;

/// A conjugacy class, listed by element indices into [`PermGroup::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Index of the lexicographically smallest member.
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// A concrete subgroup of `S_n`, fully enumerated.
///
/// Elements are sorted lexicographically by image array, so index 0 is the
/// identity. Classes are ordered by their representatives; class 0 is `{e}`.
#[derive(Clone)]
pub struct PermGroup {
    n: usize,
    elements: Vec<Permutation>,
    generators: Vec<Permutation>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    index: HashMap<Permutation, usize>,
    name: Option<String>,
    id: u64,
}

impl PermGroup {
    /// Closure of `gens` inside `S_n`, capped at 8! elements.
    pub fn generate(n: usize, gens: &[Permutation]) -> Result<Self> {
        Self::generate_with_cap(n, gens, GROUP_ORDER_CAP)
    }

    pub fn generate_with_cap(n: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != n {
                return Err(Error::DegreeMismatch { expected: n, found: g.degree() });
            }
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let e = Permutation::identity(n);
        let mut seen: HashSet<Permutation> = HashSet::from([e.clone()]);
        let mut queue = VecDeque::from([e]);
        while let Some(x) = queue.pop_front() {
            for s in &gens {
                let y = x.compose(s);
                if seen.insert(y.clone()) {
                    if seen.len() > cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted_elements(n, elements, gens))
    }

    fn from_sorted_elements(n: usize, elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        if n <= 33 {
            assert_eq!(factorial(n) % elements.len() as u128, 0, "group order must divide n!");
        }
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let inverses: Vec<usize> = elements.iter().map(|g| index[&g.inverse()]).collect();

        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for x in 0..elements.len() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut members = Vec::new();
            for (g, ginv) in elements.iter().zip(&inverses) {
                let y = index[&g.compose(&elements[x]).compose(&elements[*ginv])];
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(ConjugacyClass { representative: x, members });
        }

        let mut hasher = DefaultHasher::new();
        n.hash(&mut hasher);
        elements.hash(&mut hasher);
        let id = hasher.finish();

        Self { n, elements, generators, classes, class_of, index, name: None, id }
    }

    /// Builds a group from a set already known to be closed.
    fn from_closed_set(n: usize, mut elements: Vec<Permutation>, generators: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        Self::from_sorted_elements(n, elements, generators)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn trivial(n: usize) -> Self {
        Self::generate(n, &[]).expect("trivial group").with_name(format!("E_{n}"))
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(transposition(n, 0, 1));
        }
        if n >= 3 {
            gens.push(Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?);
        }
        Ok(Self::generate(n, &gens)?.with_name(format!("S_{n}")))
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Permutation> = (2..n)
            .map(|k| {
                let mut images: Vec<usize> = (0..n).collect();
                images[0] = 1;
                images[1] = k;
                images[k] = 0;
                Permutation::from_images(images)
            })
            .collect::<Result<_>>()?;
        Ok(Self::generate(n, &gens)?.with_name(format!("A_{n}")))
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
        Ok(Self::generate(n, &[rot])?.with_name(format!("C_{n}")))
    }

    /// Symmetries of the regular `n`-gon on its vertices (order `2n` for `n >= 3`).
    pub fn dihedral(n: usize) -> Result<Self> {
        let rot = Permutation::from_images((0..n).map(|i| (i + 1) % n).collect())?;
        let refl = Permutation::from_images((0..n).map(|i| n - 1 - i).collect())?;
        Ok(Self::generate(n, &[rot, refl])?.with_name(format!("D_{n}")))
    }

    /// `{e, (1 2)(3 4), (1 3)(2 4), (1 4)(2 3)}` in `S_4`.
    pub fn klein_four() -> Self {
        let a = Permutation::parse_cycles("(1 2)(3 4)", 4).expect("valid");
        let b = Permutation::parse_cycles("(1 3)(2 4)", 4).expect("valid");
        Self::generate(4, &[a, b]).expect("Klein four").with_name("Klein")
    }

    /// `S_{m1} x S_{m2} x ...` acting on consecutive blocks of `[m1 + m2 + ...]`.
    pub fn young(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::Parse(format!("bad Young block sizes {parts:?}")));
        }
        let n: usize = parts.iter().sum();
        let mut gens = Vec::new();
        let mut start = 0;
        for &m in parts {
            for k in start..start + m - 1 {
                gens.push(transposition(n, k, k + 1));
            }
            start += m;
        }
        let label: Vec<String> = parts.iter().map(ToString::to_string).collect();
        Ok(Self::generate(n, &gens)?.with_name(format!("Young:[{}]", label.join(","))))
    }

    /// Parses a named group: `S_n`, `A_n`, `C_n`, `D_n`, `E_n` (trivial),
    /// `Klein`/`V_4`, or `Young:[m,k,...]`.
    pub fn named(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.eq_ignore_ascii_case("klein") || s == "V_4" || s == "V4" {
            return Ok(Self::klein_four());
        }
        if let Some(rest) = s.strip_prefix("Young:") {
            let inner = rest.trim().trim_start_matches('[').trim_end_matches(']');
            let parts: Vec<usize> = inner
                .split(',')
                .map(|w| w.trim().parse().map_err(|_| Error::Parse(format!("bad Young spec {spec:?}"))))
                .collect::<Result<_>>()?;
            return Self::young(&parts);
        }
        let (kind, num) = s
            .split_once('_')
            .ok_or_else(|| Error::Parse(format!("unknown group name {spec:?}")))?;
        let n: usize = num.parse().map_err(|_| Error::Parse(format!("bad degree in {spec:?}")))?;
        if n == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        match kind {
            "S" => Self::symmetric(n),
            "A" => Self::alternating(n),
            "C" => Self::cyclic(n),
            "D" => Self::dihedral(n),
            "E" => Ok(Self::trivial(n)),
            _ => Err(Error::Parse(format!("unknown group name {spec:?}"))),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, element_index: usize) -> usize {
        self.class_of[element_index]
    }

    pub fn class_representative(&self, class: usize) -> &Permutation {
        &self.elements[self.classes[class].representative]
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index.contains_key(g)
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G(n={}, |G|={})", self.n, self.order()))
    }

    /// Fingerprint of the element set; equal groups share it.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.id == other.id && self.n == other.n && self.elements == other.elements
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.n == other.n && self.elements.iter().all(|g| other.contains(g))
    }

    /// Product of two elements by index.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.n)
            .field("order", &self.order())
            .field("classes", &self.num_classes())
            .finish()
    }
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<usize> = (0..n).collect();
    images.swap(a, b);
    Permutation { images }
}

/// Every subgroup of `group`, sorted by order then element set.
///
/// Built by repeatedly joining known subgroups with single elements, which
/// reaches every subgroup. Intended for small groups (order <= 720).
pub fn all_subgroups(group: &PermGroup) -> Result<Vec<Arc<PermGroup>>> {
    const CAP: usize = 720;
    let order = group.order();
    if order > CAP {
        return Err(Error::GroupTooLarge { cap: CAP });
    }
    let words = order.div_ceil(64);
    let table: Vec<usize> = (0..order)
        .flat_map(|a| (0..order).map(move |b| (a, b)))
        .map(|(a, b)| group.multiply(a, b))
        .collect();

    let close = |gens: &[usize]| -> Vec<u64> {
        let mut bits = vec![0u64; words];
        bits[0] |= 1;
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &s in gens {
                let y = table[x * order + s];
                if bits[y / 64] & (1 << (y % 64)) == 0 {
                    bits[y / 64] |= 1 << (y % 64);
                    members.push(y);
                }
            }
            k += 1;
        }
        bits
    };

    let mut found: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let trivial = close(&[]);
    found.insert(trivial.clone(), Vec::new());
    let mut queue = VecDeque::from([(trivial, Vec::<usize>::new())]);
    while let Some((bits, gens)) = queue.pop_front() {
        for g in 0..order {
            if bits[g / 64] & (1 << (g % 64)) != 0 {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            let next = close(&next_gens);
            if !found.contains_key(&next) {
                found.insert(next.clone(), next_gens.clone());
                queue.push_back((next, next_gens));
            }
        }
    }

    let mut subgroups: Vec<(Vec<usize>, Vec<usize>)> = found
        .into_iter()
        .map(|(bits, gens)| {
            let members: Vec<usize> = (0..order).filter(|&i| bits[i / 64] & (1 << (i % 64)) != 0).collect();
            (members, gens)
        })
        .collect();
    subgroups.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(subgroups
        .into_iter()
        .enumerate()
        .map(|(k, (members, gens))| {
            let elements = members.iter().map(|&i| group.element(i).clone()).collect();
            let gens = gens.iter().map(|&i| group.element(i).clone()).collect();
            let name = format!("{}#{}(order {})", group.label(), k, members.len());
            Arc::new(PermGroup::from_closed_set(group.degree(), elements, gens).with_name(name))
        })
        .collect())
}
