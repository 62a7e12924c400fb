//! Character tables, class functions and the Galois-orbit basis of `R_Q`.

mod dixon;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::cyclotomic::units_mod;
use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClassSet, FiniteGroup, Subgroup};

/// Irreducible characters of a group, indexed by conjugacy classes.
///
/// For a base group the classes are those of [`ConjugacyClassSet`] and rows
/// are sorted by degree, trivial character first. A tensor table of factors
/// `G_1, ..., G_r` indexes classes and rows by tuples in lexicographic order.
#[derive(Debug)]
pub struct CharacterTable {
    order: usize,
    class_sizes: Vec<usize>,
    inverse_class: Vec<usize>,
    exponent: usize,
    /// `power_map[c][j]`: class of `x^j` for `x` in class `c`, `0 <= j < exponent`.
    power_map: Vec<Vec<usize>>,
    rows: Vec<Vec<Cyclotomic>>,
    /// `galois[j]`: row permutation induced by `zeta -> zeta^j` (units `j` only).
    galois: HashMap<usize, Vec<usize>>,
}

fn table_cache() -> &'static Mutex<HashMap<Vec<usize>, Arc<CharacterTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, Arc<CharacterTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Character table of `g`, computed once per multiplication table.
pub fn character_table(g: &FiniteGroup) -> Result<Arc<CharacterTable>> {
    if let Some(t) = table_cache().lock().expect("table cache").get(g.flat_table()) {
        return Ok(t.clone());
    }
    let t = Arc::new(CharacterTable::compute(g)?);
    table_cache()
        .lock()
        .expect("table cache")
        .insert(g.flat_table().to_vec(), t.clone());
    Ok(t)
}

impl CharacterTable {
    fn compute(g: &FiniteGroup) -> Result<Self> {
        let classes = ConjugacyClassSet::new(g);
        let raw = dixon::compute(g, &classes)?;
        let e = raw.exponent;
        let power_map = (0..classes.len())
            .map(|c| {
                let x = classes.representative(c);
                (0..e).map(|j| classes.class_of(g.pow(x, j as i64))).collect()
            })
            .collect();
        let mut t = CharacterTable {
            order: g.order(),
            class_sizes: classes.sizes(),
            inverse_class: (0..classes.len()).map(|c| classes.inverse_class(c)).collect(),
            exponent: e,
            power_map,
            rows: raw.rows,
            galois: HashMap::new(),
        };
        t.sort_rows();
        t.verify().map_err(|reason| Error::TableComputationFailure { group: g.name().to_string(), reason })?;
        t.galois = t.match_galois_permutations()?;
        Ok(t)
    }

    fn sort_rows(&mut self) {
        let is_trivial = |r: &[Cyclotomic]| r.iter().all(|x| *x == Cyclotomic::one());
        self.rows.sort_by(|a, b| {
            a[0].cmp_canonical(&b[0])
                .then_with(|| is_trivial(b).cmp(&is_trivial(a)))
                .then_with(|| {
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| x.cmp_canonical(y))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
        });
    }

    /// Row orthogonality and the degree equation.
    fn verify(&self) -> std::result::Result<(), String> {
        let k = self.num_classes();
        if self.rows.len() != k {
            return Err(format!("{} rows for {k} classes", self.rows.len()));
        }
        let mut sum_sq = 0usize;
        for r in &self.rows {
            let d = r[0]
                .to_rational()
                .ok()
                .filter(|d| d.is_integer() && *d > Rational::zero())
                .ok_or_else(|| format!("degree {} is not a positive integer", r[0]))?;
            let d: usize = d.to_integer().try_into().map_err(|_| "degree overflow".to_string())?;
            sum_sq += d * d;
        }
        if sum_sq != self.order {
            return Err(format!("sum of squared degrees is {sum_sq}, not {}", self.order));
        }
        for i in 0..k {
            for j in 0..=i {
                let ip = self.inner_product(&self.rows[i], &self.rows[j]);
                let want = if i == j { Cyclotomic::one() } else { Cyclotomic::zero() };
                if ip != want {
                    return Err(format!("rows {i} and {j} have inner product {ip}"));
                }
            }
        }
        Ok(())
    }

    fn match_galois_permutations(&self) -> Result<HashMap<usize, Vec<usize>>> {
        let mut out = HashMap::new();
        for j in units_mod(self.exponent as u64) {
            let j = j as usize;
            let mut perm = Vec::with_capacity(self.rows.len());
            for r in &self.rows {
                let image: Vec<&Cyclotomic> = (0..self.num_classes()).map(|c| &r[self.power_map[c][j]]).collect();
                let target = self
                    .rows
                    .iter()
                    .position(|s| s.iter().zip(&image).all(|(x, y)| x == *y))
                    .ok_or_else(|| Error::Internal("Galois image of a row is not a row".into()))?;
                perm.push(target);
            }
            out.insert(j, perm);
        }
        Ok(out)
    }

    /// Outer tensor product of factor tables.
    pub fn tensor(factors: &[Arc<CharacterTable>]) -> Arc<CharacterTable> {
        let mut t = CharacterTable {
            order: 1,
            class_sizes: vec![1],
            inverse_class: vec![0],
            exponent: 1,
            power_map: vec![vec![0]],
            rows: vec![vec![Cyclotomic::one()]],
            galois: HashMap::from([(0, vec![0])]),
        };
        for f in factors {
            t = t.tensor_pair(f);
        }
        Arc::new(t)
    }

    fn tensor_pair(&self, f: &CharacterTable) -> CharacterTable {
        let (ka, kb) = (self.num_classes(), f.num_classes());
        let e = self.exponent.lcm(&f.exponent);
        let mut class_sizes = Vec::with_capacity(ka * kb);
        let mut inverse_class = Vec::with_capacity(ka * kb);
        let mut power_map = Vec::with_capacity(ka * kb);
        for a in 0..ka {
            for b in 0..kb {
                class_sizes.push(self.class_sizes[a] * f.class_sizes[b]);
                inverse_class.push(self.inverse_class[a] * kb + f.inverse_class[b]);
                power_map.push(
                    (0..e)
                        .map(|j| self.power_map[a][j % self.exponent] * kb + f.power_map[b][j % f.exponent])
                        .collect(),
                );
            }
        }
        let mut rows = Vec::with_capacity(self.rows.len() * f.rows.len());
        for ra in &self.rows {
            for rb in &f.rows {
                let mut row = Vec::with_capacity(ka * kb);
                for x in ra {
                    for y in rb {
                        row.push(x * y);
                    }
                }
                rows.push(row);
            }
        }
        let nb = f.rows.len();
        let galois = units_mod(e as u64)
            .into_iter()
            .map(|j| {
                let j = j as usize;
                let pa = &self.galois[&(j % self.exponent)];
                let pb = &f.galois[&(j % f.exponent)];
                let perm = (0..rows.len()).map(|r| pa[r / nb] * nb + pb[r % nb]).collect();
                (j, perm)
            })
            .collect();
        CharacterTable {
            order: self.order * f.order,
            class_sizes,
            inverse_class,
            exponent: e,
            power_map,
            rows,
            galois,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// Class of `x^j` for `x` in class `c`.
    pub fn power_class(&self, c: usize, j: i64) -> usize {
        self.power_map[c][j.rem_euclid(self.exponent as i64) as usize]
    }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Cyclotomic] {
        &self.rows[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        let d = self.rows[i][0].to_rational().expect("degree is rational");
        d.to_integer().try_into().expect("degree fits")
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.rows.len()).map(|i| self.degree(i)).collect()
    }

    /// Row permutation of `chi -> chi^(sigma_j)`, `chi^(sigma_j)(x) = chi(x^j)`.
    pub fn galois_permutation(&self, j: i64) -> Result<&[usize]> {
        let e = self.exponent as i64;
        let jj = j.rem_euclid(e) as usize;
        if j.gcd(&e) != 1 && e > 1 {
            return Err(Error::NotAUnit { r: j, m: e as u64 });
        }
        Ok(&self.galois[&jj])
    }

    /// `(1/|G|) sum_g chi(g) conj(psi(g))`.
    pub fn inner_product(&self, chi: &[Cyclotomic], psi: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for c in 0..self.num_classes() {
            if chi[c].is_zero() || psi[c].is_zero() {
                continue;
            }
            let t = &chi[c] * &psi[c].conjugate();
            acc += &t.scale(&Rational::from_integer(self.class_sizes[c].into()));
        }
        acc.scale(&Rational::new(One::one(), self.order.into()))
    }

    /// `g -> chi(g^-1)`.
    pub fn contragredient(&self, chi: &[Cyclotomic]) -> Vec<Cyclotomic> {
        (0..self.num_classes()).map(|c| chi[self.inverse_class[c]].clone()).collect()
    }

    /// Coordinates of a class function in the irreducible basis.
    pub fn decompose(&self, chi: &[Cyclotomic]) -> Vec<Cyclotomic> {
        self.rows.iter().map(|r| self.inner_product(chi, r)).collect()
    }

    /// Galois orbits on the rows, each sorted, ordered by minimal member.
    pub fn galois_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.rows.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut units: Vec<&usize> = self.galois.keys().collect();
        units.sort_unstable();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = units.iter().map(|j| self.galois[j][i]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                seen[o] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn rational_basis(&self) -> RationalBasis {
        let orbits = self.galois_orbits();
        let rows = orbits
            .iter()
            .map(|o| {
                (0..self.num_classes())
                    .map(|c| o.iter().map(|&i| self.rows[i][c].clone()).sum())
                    .collect()
            })
            .collect();
        RationalBasis { orbits, rows }
    }

    pub fn to_json(&self, name: &str) -> serde_json::Value {
        serde_json::json!({
            "group": name,
            "classes": self.class_sizes,
            "rows": self.rows.iter().map(|r| r.iter().map(Cyclotomic::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Galois-orbit sums of irreducible characters; spans `Q (x) R_Q(G)`.
#[derive(Clone, Debug)]
pub struct RationalBasis {
    pub orbits: Vec<Vec<usize>>,
    pub rows: Vec<Vec<Cyclotomic>>,
}

impl RationalBasis {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

/// Number of fixed points of each class on `G/S`:
/// `chi(x) = |C_G(x)| |x^G cap S| / |S|`.
pub fn permutation_character(g: &FiniteGroup, classes: &ConjugacyClassSet, s: &Subgroup) -> Vec<Cyclotomic> {
    let mut hits = vec![0usize; classes.len()];
    for &x in s.members() {
        hits[classes.class_of(x)] += 1;
    }
    (0..classes.len())
        .map(|c| {
            let v = Rational::new((g.order() * hits[c]).into(), (classes.size(c) * s.order()).into());
            Cyclotomic::from_rational(v)
        })
        .collect()
}
