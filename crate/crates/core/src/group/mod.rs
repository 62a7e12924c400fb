//! Finite groups given by Cayley tables.
//!
//! Element `0` is always the identity. Class and subgroup representatives are
//! the minimal element index (respectively the minimal member list), which
//! keeps every enumeration in this crate deterministic.

mod iso;
mod product;
mod subgroup;

use std::collections::{HashMap, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

pub use iso::{
    are_isomorphic, is_subquotient, quotient_group, subgroup_as_group, ISOMORPHISM_ORDER_CAP,
};
pub use product::{direct_product, projections_kernels, star_product, twisted_diagonal, ProductGroup};
pub use subgroup::{
    cyclic_subgroups_up_to_conjugacy, double_cosets, subgroups_up_to_conjugacy, DoubleCoset,
    Subgroup, SubgroupLattice,
};

pub const DEFAULT_ORDER_CAP: usize = 64;

/// Tables above this order are trusted to be associative.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table whose row and column 0 belong to the identity.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<usize>], cap: usize) -> Result<Self> {
        let name = name.into();
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup(format!("{name}: empty table")));
        }
        if n > cap {
            return Err(Error::OrderCapExceeded { order: n, cap });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("{name}: row {i} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("{name}: entry {bad} out of range")));
            }
            table.extend_from_slice(row);
        }
        let g = Self::from_flat_table(name, n, table)?;
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            g.check_associative()?;
        }
        Ok(g)
    }

    fn from_flat_table(name: String, n: usize, table: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            if table[i] != i || table[i * n] != i {
                return Err(Error::NotAGroup(format!("{name}: index 0 is not the identity")));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for i in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for j in 0..n {
                let r = table[i * n + j];
                let c = table[j * n + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::NotAGroup(format!("{name}: table is not a Latin square")));
                }
                seen_row[r] = true;
                seen_col[c] = true;
                if r == 0 {
                    inverse[i] = j;
                }
            }
        }
        for i in 0..n {
            if table[inverse[i] * n + i] != 0 {
                return Err(Error::NotAGroup(format!("{name}: left and right inverses of {i} differ")));
            }
        }
        Ok(FiniteGroup { name, n, table, inverse })
    }

    /// Builds a table that is a group by construction (products, quotients).
    pub(crate) fn from_trusted_table(name: String, n: usize, table: Vec<usize>) -> Self {
        Self::from_flat_table(name, n, table).expect("constructed table is a group")
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "{}: ({a}*{b})*{c} != {a}*({b}*{c})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Closes a set of permutations of `0..degree` into a group. Elements are
    /// numbered in breadth-first order from the identity; the product `a*b`
    /// applies `b` first.
    pub fn from_permutations(
        name: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        let name = name.into();
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::NotAGroup(format!("{name}: {g:?} is not a permutation of 0..{degree}")));
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&i| a[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p = compose(&elements[i], g);
                if !index.contains_key(&p) {
                    if elements.len() == cap {
                        return Err(Error::OrderCapExceeded { order: cap + 1, cap });
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        Self::from_flat_table(name, n, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `x a x^-1`.
    #[inline]
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(x, a), self.inverse[x])
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.n).any(|a| self.element_order(a) == self.n)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Same multiplication table (names are ignored).
    pub fn same_table(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

/// Conjugacy classes ordered by their minimal element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClassSet {
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    inverse_class: Vec<usize>,
}

impl ConjugacyClassSet {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| g.conjugate(a, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        let inverse_class = classes.iter().map(|c| class_of[g.inv(c[0])]).collect();
        ConjugacyClassSet { classes, class_of, inverse_class }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.classes[c]
    }

    pub fn representative(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    pub fn size(&self, c: usize) -> usize {
        self.classes[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    /// Class of `g^-1` for `g` in class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClassSet {
    ConjugacyClassSet::new(g)
}
