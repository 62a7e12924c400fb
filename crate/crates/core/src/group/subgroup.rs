use std::cmp::Ordering;
use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup, stored as its sorted member list.
///
/// Subgroups are ordered by size, then lexicographically by member list.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    bits: FixedBitSet,
}

impl Subgroup {
    fn from_bits(bits: FixedBitSet) -> Self {
        let members = bits.ones().collect();
        Subgroup { members, bits }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g, vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g, (0..g.order()).collect())
    }

    pub(crate) fn from_sorted_unchecked(g: &FiniteGroup, members: Vec<usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for &m in &members {
            bits.insert(m);
        }
        Subgroup { members, bits }
    }

    /// Checks closure and returns the subgroup with the given members.
    pub fn from_members(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for &m in members {
            if m >= g.order() {
                return Err(Error::InvalidInput(format!("element {m} not in {}", g.name())));
            }
            bits.insert(m);
        }
        let s = Self::from_bits(bits);
        if !s.is_closed(g) {
            return Err(Error::InvalidInput(format!("{:?} is not a subgroup of {}", s.members, g.name())));
        }
        Ok(s)
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert(0);
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if !bits.put(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_bits(bits)
    }

    pub fn is_closed(&self, g: &FiniteGroup) -> bool {
        self.bits.contains(0)
            && self
                .members
                .iter()
                .all(|&a| self.bits.contains(g.inv(a)) && self.members.iter().all(|&b| self.bits.contains(g.mul(a, b))))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.bits.contains(a)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// `x S x^-1`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for &m in &self.members {
            bits.insert(g.conjugate(m, x));
        }
        Self::from_bits(bits)
    }

    pub fn is_normal_in(&self, g: &FiniteGroup, ambient: &Subgroup) -> bool {
        ambient
            .members
            .iter()
            .all(|&x| self.members.iter().all(|&m| self.bits.contains(g.conjugate(m, x))))
    }

    pub fn is_cyclic(&self, g: &FiniteGroup) -> bool {
        self.members.iter().any(|&a| g.element_order(a) == self.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All subgroups of a group together with their conjugacy classes.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    class_of: Vec<usize>,
    /// Index (into `subgroups`) of each class representative.
    class_reps: Vec<usize>,
    class_sizes: Vec<usize>,
    index: HashMap<FixedBitSet, usize>,
}

impl SubgroupLattice {
    pub fn new(g: &FiniteGroup) -> Self {
        let subgroups = all_subgroups(g);
        let index: HashMap<FixedBitSet, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits.clone(), i))
            .collect();
        let abelian = g.is_abelian();
        let mut class_of = vec![usize::MAX; subgroups.len()];
        let mut class_reps = Vec::new();
        let mut class_sizes = Vec::new();
        // Subgroups are sorted, so the first unseen member of a class is its
        // minimal representative.
        for i in 0..subgroups.len() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = class_reps.len();
            class_reps.push(i);
            let mut size = 0;
            if abelian {
                class_of[i] = c;
                size = 1;
            } else {
                for x in 0..g.order() {
                    let j = index[subgroups[i].conjugate(g, x).bits()];
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        size += 1;
                    }
                }
            }
            class_sizes.push(size);
        }
        SubgroupLattice { subgroups, class_of, class_reps, class_sizes, index }
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn num_classes(&self) -> usize {
        self.class_reps.len()
    }

    pub fn representative(&self, class: usize) -> &Subgroup {
        &self.subgroups[self.class_reps[class]]
    }

    pub fn representatives(&self) -> Vec<Subgroup> {
        self.class_reps.iter().map(|&i| self.subgroups[i].clone()).collect()
    }

    /// Number of conjugates in the class.
    pub fn class_size(&self, class: usize) -> usize {
        self.class_sizes[class]
    }

    pub fn class_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.bits()).map(|&i| self.class_of[i])
    }

    pub fn class_of_bits(&self, bits: &FixedBitSet) -> Option<usize> {
        self.index.get(bits).map(|&i| self.class_of[i])
    }
}

/// Every subgroup of `g`, sorted. Subgroups are built as joins of cyclic
/// subgroups.
fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut found: Vec<(Subgroup, Vec<usize>)> = Vec::new();
    let mut cyclic_gens = Vec::new();
    for a in 0..n {
        let s = Subgroup::generated(g, &[a]);
        if !index.contains_key(s.bits()) {
            index.insert(s.bits().clone(), found.len());
            cyclic_gens.push(a);
            found.push((s, if a == 0 { vec![] } else { vec![a] }));
        }
    }
    let mut next = 0;
    while next < found.len() {
        let (base, gens) = found[next].clone();
        next += 1;
        for &z in &cyclic_gens {
            if base.contains(z) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(z);
            let joined = Subgroup::generated(g, &new_gens);
            if !index.contains_key(joined.bits()) {
                index.insert(joined.bits().clone(), found.len());
                found.push((joined, new_gens));
            }
        }
    }
    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
    subgroups.sort();
    subgroups
}

/// One representative per conjugacy class of subgroups, ordered by size and
/// then by member list.
pub fn subgroups_up_to_conjugacy(g: &FiniteGroup) -> Vec<Subgroup> {
    SubgroupLattice::new(g).representatives()
}

/// Representatives of the conjugacy classes of cyclic subgroups.
pub fn cyclic_subgroups_up_to_conjugacy(g: &FiniteGroup) -> Vec<Subgroup> {
    subgroups_up_to_conjugacy(g)
        .into_iter()
        .filter(|s| s.is_cyclic(g))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
}

/// Double cosets `A x B`, each represented by its minimal element.
pub fn double_cosets(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Vec<DoubleCoset> {
    let n = g.order();
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out = Vec::new();
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        let mut size = 0;
        for &u in a.members() {
            let ux = g.mul(u, x);
            for &v in b.members() {
                if !seen.put(g.mul(ux, v)) {
                    size += 1;
                }
            }
        }
        out.push(DoubleCoset { representative: x, size });
    }
    out
}
