//! Named groups: the built-in list of all groups of order at most 12 plus
//! optional user entries loaded from JSON.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::group::{are_isomorphic, direct_product, FiniteGroup, DEFAULT_ORDER_CAP, ISOMORPHISM_ORDER_CAP};

/// Number of isomorphism classes of groups of order `n`, for `n <= 16`.
const GROUP_COUNTS: [usize; 17] = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

/// A catalog file entry, either a Cayley table or permutation generators.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum GroupDescriptor {
    Table {
        name: String,
        order: usize,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupDescriptor {
    pub fn name(&self) -> &str {
        match self {
            GroupDescriptor::Table { name, .. } | GroupDescriptor::Permutations { name, .. } => name,
        }
    }

    pub fn load(&self, cap: usize) -> Result<FiniteGroup> {
        match self {
            GroupDescriptor::Table { name, order, table } => {
                if table.len() != *order {
                    return Err(Error::NotAGroup(format!(
                        "{name}: declared order {order} but table has {} rows",
                        table.len()
                    )));
                }
                FiniteGroup::from_table(name.clone(), table, cap)
            }
            GroupDescriptor::Permutations { name, degree, generators } => {
                FiniteGroup::from_permutations(name.clone(), *degree, generators, cap)
            }
        }
    }
}

/// Parses a catalog file: a single entry or an array of entries.
pub fn parse_descriptors(text: &str) -> Result<Vec<GroupDescriptor>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("catalog is not valid JSON: {e}")))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    items
        .into_iter()
        .map(|v| {
            serde_json::from_value(v.clone())
                .map_err(|_| Error::InvalidInput(format!("not a catalog entry: {v}")))
        })
        .collect()
}

pub fn read_descriptors(path: &Path) -> Result<Vec<GroupDescriptor>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_descriptors(&text)
}

/// Normalizes a group name: `×` and `X` separators become `x`.
pub fn normalize_name(name: &str) -> String {
    name.trim().replace('×', "x").replace(" x ", "x").replace(' ', "")
}

#[derive(Clone, Debug)]
pub struct Catalog {
    groups: Vec<Arc<FiniteGroup>>,
    cap: usize,
}

fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect::<Vec<Vec<usize>>>();
    FiniteGroup::from_table(format!("C{n}"), &table, n).expect("cyclic table")
}

fn dihedral(n: usize) -> FiniteGroup {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_permutations(format!("D{}", 2 * n), n, &[rot, refl], 2 * n).expect("dihedral")
}

/// `<a, x | a^(2n), x^2 = a^n, x a x^-1 = a^-1>`, elements `a^i x^e`
/// numbered `i + 2n e`.
fn dicyclic(n: usize, name: &str) -> FiniteGroup {
    let m = 2 * n;
    let idx = |i: usize, e: usize| i % m + m * e;
    let mut table = vec![vec![0; 2 * m]; 2 * m];
    for i in 0..m {
        for e in 0..2 {
            for j in 0..m {
                for f in 0..2 {
                    let prod = match (e, f) {
                        (0, _) => idx(i + j, f),
                        (_, 0) => idx(i + m - j, 1),
                        _ => idx(i + m - j + n, 0),
                    };
                    table[idx(i, e)][idx(j, f)] = prod;
                }
            }
        }
    }
    FiniteGroup::from_table(name, &table, 2 * m).expect("dicyclic")
}

fn product_of(name: &str, parts: &[usize]) -> FiniteGroup {
    let factors = parts.iter().map(|&n| Arc::new(cyclic(n))).collect();
    direct_product(factors, DEFAULT_ORDER_CAP).expect("small product").group().clone().renamed(name)
}

fn builtin_groups() -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = Vec::new();
    for n in 1..=12 {
        out.push(cyclic(n));
        match n {
            4 => out.push(product_of("C2xC2", &[2, 2])),
            6 => out.push(dihedral(3).renamed("S3")),
            8 => {
                out.push(product_of("C2xC4", &[2, 4]));
                out.push(product_of("C2xC2xC2", &[2, 2, 2]));
                out.push(dihedral(4));
                out.push(dicyclic(2, "Q8"));
            }
            9 => out.push(product_of("C3xC3", &[3, 3])),
            10 => out.push(dihedral(5)),
            12 => {
                out.push(product_of("C2xC6", &[2, 6]));
                out.push(
                    FiniteGroup::from_permutations("A4", 4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], 12)
                        .expect("A4"),
                );
                out.push(dihedral(6));
                out.push(dicyclic(3, "Dic12"));
            }
            _ => {}
        }
    }
    out
}

const ALIASES: [(&str, &str); 5] = [("V4", "C2xC2"), ("K4", "C2xC2"), ("Q12", "Dic12"), ("D6", "S3"), ("C2xC3", "C6")];

impl Catalog {
    pub fn builtin() -> Self {
        Catalog {
            groups: builtin_groups().into_iter().map(Arc::new).collect(),
            cap: DEFAULT_ORDER_CAP,
        }
    }

    /// A catalog holding no groups.
    pub fn empty(cap: usize) -> Self {
        Catalog { groups: Vec::new(), cap }
    }

    /// Built-in groups followed by the entries of `descriptors`.
    pub fn with_entries(descriptors: &[GroupDescriptor], cap: usize) -> Result<Self> {
        let mut cat = Self::builtin();
        cat.cap = cap;
        for d in descriptors {
            cat.add(d.load(cap)?)?;
        }
        Ok(cat)
    }

    /// Adds a group. A name already in use must refer to an isomorphic
    /// group, in which case the existing table is kept.
    pub fn add(&mut self, g: FiniteGroup) -> Result<()> {
        let key = normalize_name(g.name());
        if let Some(existing) = self.groups.iter().find(|h| normalize_name(h.name()) == key) {
            if existing.same_table(&g) || are_isomorphic(existing, &g)? {
                return Ok(());
            }
            return Err(Error::InvalidInput(format!("catalog already has a different group named {}", g.name())));
        }
        self.groups.push(Arc::new(g));
        Ok(())
    }

    pub fn groups(&self) -> &[Arc<FiniteGroup>] {
        &self.groups
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Looks up a catalog name or alias; `AxB` for catalog names `A`, `B`
    /// resolves to their direct product.
    pub fn get(&self, name: &str) -> Result<Arc<FiniteGroup>> {
        let key = normalize_name(name);
        let key = ALIASES.iter().find(|(a, _)| *a == key).map_or(key.clone(), |(_, b)| b.to_string());
        if let Some(g) = self.groups.iter().find(|g| normalize_name(g.name()) == key) {
            return Ok(g.clone());
        }
        let parts: Vec<&str> = key.split('x').collect();
        if parts.len() > 1 && parts.iter().all(|p| !p.is_empty()) {
            let factors = parts
                .iter()
                .map(|p| self.get(p))
                .collect::<Result<Vec<_>>>()
                .map_err(|_| Error::UnknownGroup(name.to_string()))?;
            let pg = direct_product(factors, self.cap)?;
            return Ok(Arc::new(pg.group().clone().renamed(key)));
        }
        Err(Error::UnknownGroup(name.to_string()))
    }

    /// SHA-256 over the names and tables of all entries, in order.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for g in &self.groups {
            h.update(g.name().as_bytes());
            h.update([0u8]);
            h.update((g.order() as u64).to_le_bytes());
            for row in g.rows() {
                for x in row {
                    h.update((x as u64).to_le_bytes());
                }
            }
        }
        hex::encode(h.finalize())
    }

    /// One group per isomorphism class among the entries of order `< bound`,
    /// in catalog order. Fails if some order below `bound` is missing an
    /// isomorphism class.
    pub fn representatives_below(&self, bound: usize) -> Result<Vec<Arc<FiniteGroup>>> {
        let mut out: Vec<Arc<FiniteGroup>> = Vec::new();
        for m in 1..bound {
            if m >= GROUP_COUNTS.len() || m > ISOMORPHISM_ORDER_CAP {
                return Err(Error::IncompleteCatalog(format!(
                    "cannot certify that all groups of order {m} are present"
                )));
            }
            let mut classes: Vec<Arc<FiniteGroup>> = Vec::new();
            for g in self.groups.iter().filter(|g| g.order() == m) {
                let mut new = true;
                for c in &classes {
                    if are_isomorphic(c, g)? {
                        new = false;
                        break;
                    }
                }
                if new {
                    classes.push(g.clone());
                }
            }
            if classes.len() < GROUP_COUNTS[m] {
                return Err(Error::IncompleteCatalog(format!(
                    "order {m}: {} of {} isomorphism classes present",
                    classes.len(),
                    GROUP_COUNTS[m]
                )));
            }
            out.extend(classes);
        }
        Ok(out)
    }

    pub fn to_descriptors(&self) -> Vec<GroupDescriptor> {
        self.groups
            .iter()
            .map(|g| GroupDescriptor::Table { name: g.name().to_string(), order: g.order(), table: g.rows() })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ConjugacyClassSet;

    #[test]
    fn builtin_catalog_is_complete_through_twelve() {
        let cat = Catalog::builtin();
        assert_eq!(cat.groups().len(), 24);
        let reps = cat.representatives_below(13).unwrap();
        assert_eq!(reps.len(), 24);
        assert!(matches!(cat.representatives_below(14), Err(Error::IncompleteCatalog(_))));
    }

    #[test]
    fn named_groups() {
        let cat = Catalog::builtin();
        let s3 = cat.get("S3").unwrap();
        assert_eq!(ConjugacyClassSet::new(&s3).len(), 3);
        assert!(!s3.is_abelian());
        let q8 = cat.get("Q8").unwrap();
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
        let d8 = cat.get("D8").unwrap();
        assert_eq!((0..8).filter(|&x| d8.element_order(x) == 2).count(), 5);
        let dic = cat.get("Q12").unwrap();
        assert_eq!((0..12).filter(|&x| dic.element_order(x) == 2).count(), 1);
        assert_eq!(ConjugacyClassSet::new(&cat.get("A4").unwrap()).len(), 4);
        assert_eq!(cat.get("C2×C2").unwrap().name(), "C2xC2");
        let p = cat.get("S3xC3").unwrap();
        assert_eq!(p.order(), 18);
        assert!(matches!(cat.get("nope"), Err(Error::UnknownGroup(_))));
    }

    #[test]
    fn descriptors_roundtrip() {
        let text = r#"[{"name": "Z3", "order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]]},
                      {"name": "Sym3", "degree": 3, "generators": [[1,0,2],[1,2,0]]}]"#;
        let ds = parse_descriptors(text).unwrap();
        let cat = Catalog::with_entries(&ds, 64).unwrap();
        assert_eq!(cat.get("Sym3").unwrap().order(), 6);
        assert_ne!(cat.hash(), Catalog::builtin().hash());
        assert_eq!(Catalog::builtin().hash(), Catalog::builtin().hash());
        let bad = r#"{"name": "bad", "order": 2, "table": [[0,1],[1,1]]}"#;
        let ds = parse_descriptors(bad).unwrap();
        assert!(matches!(Catalog::with_entries(&ds, 64), Err(Error::NotAGroup(_))));
    }
}
