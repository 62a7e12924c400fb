//! Transitive bisets as conjugacy classes of subgroups of `G x H x T`,
//! composed by the double-coset formula and star products, and the
//! linearization into the representation category.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::json;

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{
    double_cosets, star_product, twisted_diagonal, ProductGroup, Subgroup, SubgroupLattice,
    DEFAULT_ORDER_CAP,
};
use crate::repcat::{CharGroup, FieldMode, HomSpace, RepMorphism};

type SpaceKey = Vec<(String, Vec<usize>)>;

fn space_cache() -> &'static Mutex<HashMap<SpaceKey, Arc<BisetSpace>>> {
    static CACHE: OnceLock<Mutex<HashMap<SpaceKey, Arc<BisetSpace>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `kB(G x H x T)`, the morphisms `H -> G` of the shifted Burnside functor.
#[derive(Debug)]
pub struct BisetSpace {
    left: Arc<CharGroup>,
    right: Arc<CharGroup>,
    shift: Arc<CharGroup>,
    product: ProductGroup,
    lattice: SubgroupLattice,
    /// `H x T`, where the double cosets of a composition live.
    right_shift: ProductGroup,
}

impl BisetSpace {
    pub fn new(left: &Arc<CharGroup>, right: &Arc<CharGroup>, shift: &Arc<CharGroup>) -> Result<Arc<Self>> {
        Self::with_cap(left, right, shift, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(
        left: &Arc<CharGroup>,
        right: &Arc<CharGroup>,
        shift: &Arc<CharGroup>,
        cap: usize,
    ) -> Result<Arc<Self>> {
        let key: SpaceKey = [left, right, shift]
            .iter()
            .map(|g| (g.name().to_string(), g.group().flat_table().to_vec()))
            .collect();
        if let Some(s) = space_cache().lock().expect("biset cache").get(&key) {
            return Ok(s.clone());
        }
        let factors = vec![left.group().clone(), right.group().clone(), shift.group().clone()];
        let product = ProductGroup::new(factors, cap)?;
        let lattice = SubgroupLattice::new(product.group());
        let right_shift = ProductGroup::new(vec![right.group().clone(), shift.group().clone()], cap)?;
        let space = Arc::new(BisetSpace {
            left: left.clone(),
            right: right.clone(),
            shift: shift.clone(),
            product,
            lattice,
            right_shift,
        });
        space_cache().lock().expect("biset cache").insert(key, space.clone());
        Ok(space)
    }

    pub fn left(&self) -> &Arc<CharGroup> {
        &self.left
    }

    pub fn right(&self) -> &Arc<CharGroup> {
        &self.right
    }

    pub fn shift(&self) -> &Arc<CharGroup> {
        &self.shift
    }

    pub fn product(&self) -> &ProductGroup {
        &self.product
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    /// Number of transitive biset classes.
    pub fn dim(&self) -> usize {
        self.lattice.num_classes()
    }

    pub fn class_representative(&self, class: usize) -> &Subgroup {
        self.lattice.representative(class)
    }

    pub fn class_of(&self, s: &Subgroup) -> Result<usize> {
        self.lattice
            .class_of(s)
            .ok_or_else(|| Error::Internal(format!("subgroup {:?} not found in {}", s.members(), self.describe())))
    }

    pub fn describe(&self) -> String {
        format!("{} x {} x {}", self.left.name(), self.right.name(), self.shift.name())
    }

    pub fn basis(self: &Arc<Self>) -> Vec<BurnsideMorphism> {
        (0..self.dim()).map(|c| BurnsideMorphism::transitive(self, c)).collect()
    }

    fn same_as(&self, other: &BisetSpace) -> bool {
        self.left.group().same_table(other.left.group())
            && self.right.group().same_table(other.right.group())
            && self.shift.group().same_table(other.shift.group())
    }

    pub fn class_to_json(&self, class: usize) -> serde_json::Value {
        json!({
            "groups": [self.left.name(), self.right.name(), self.shift.name()],
            "subgroup": self.class_representative(class).members(),
        })
    }
}

/// An integer combination of transitive bisets `(G x H x T)/E`.
#[derive(Clone, Debug)]
pub struct BurnsideMorphism {
    space: Arc<BisetSpace>,
    coeffs: BTreeMap<usize, i64>,
}

impl PartialEq for BurnsideMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.coeffs == other.coeffs
    }
}

impl BurnsideMorphism {
    pub fn transitive(space: &Arc<BisetSpace>, class: usize) -> Self {
        BurnsideMorphism { space: space.clone(), coeffs: BTreeMap::from([(class, 1)]) }
    }

    /// The class of `s` with coefficient one.
    pub fn of_subgroup(space: &Arc<BisetSpace>, s: &Subgroup) -> Result<Self> {
        Ok(Self::transitive(space, space.class_of(s)?))
    }

    pub fn space(&self) -> &Arc<BisetSpace> {
        &self.space
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, i64> {
        &self.coeffs
    }

    fn add_term(&mut self, class: usize, c: i64) {
        let e = self.coeffs.entry(class).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&class);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.space.same_as(&other.space) {
            return Err(Error::ObjectMismatch(format!("{} vs {}", self.space.describe(), other.space.describe())));
        }
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            out.add_term(k, c);
        }
        Ok(out)
    }

    pub fn scale(&self, s: i64) -> Self {
        let mut out = BurnsideMorphism { space: self.space.clone(), coeffs: BTreeMap::new() };
        for (&k, &c) in &self.coeffs {
            out.add_term(k, c * s);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .map(|(&k, &c)| json!({"coefficient": c, "class": self.space.class_to_json(k)}))
            .collect();
        json!(terms)
    }
}

/// `beta o alpha` for `alpha: K -> H` (a class of `H x K x T`) and
/// `beta: H -> G` (a class of `G x H x T`):
/// `(G x H x T)/E o (H x K x T)/D = sum_(h, t) (G x K x T)/(E * (h,1,t)D)`
/// over representatives of `p_23(E) \ (H x T) / p_13(D)`.
pub fn compose_bisets(beta: &BurnsideMorphism, alpha: &BurnsideMorphism) -> Result<BurnsideMorphism> {
    let (sb, sa) = (&beta.space, &alpha.space);
    if !sb.shift.group().same_table(sa.shift.group()) {
        return Err(Error::FactorMismatch(format!("shift groups {} and {}", sb.shift.name(), sa.shift.name())));
    }
    if !sb.right.group().same_table(sa.left.group()) {
        return Err(Error::FactorMismatch(format!(
            "middle groups {} and {} differ",
            sb.right.name(),
            sa.left.name()
        )));
    }
    let out_space = BisetSpace::new(&sb.left, &sa.right, &sb.shift)?;
    let mut out = BurnsideMorphism { space: out_space.clone(), coeffs: BTreeMap::new() };
    for (&eb, &cb) in &beta.coeffs {
        for (&ea, &ca) in &alpha.coeffs {
            for (class, mult) in compose_transitive(sb, eb, sa, ea, &out_space)? {
                out.add_term(class, cb * ca * mult);
            }
        }
    }
    Ok(out)
}

/// Terms of the composite of two transitive bisets, as (class, multiplicity).
fn compose_transitive(
    sb: &BisetSpace,
    eb: usize,
    sa: &BisetSpace,
    ea: usize,
    out: &BisetSpace,
) -> Result<Vec<(usize, i64)>> {
    let e = sb.class_representative(eb);
    let d = sa.class_representative(ea);
    let ht = &sb.right_shift;
    let p23 = sb.product.project(e, &[1, 2], ht)?;
    let p13 = sa.product.project(d, &[0, 2], ht)?;
    let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
    for dc in double_cosets(ht.group(), &p23, &p13) {
        let h = ht.coord(dc.representative, 0);
        let t = ht.coord(dc.representative, 1);
        let x = sa.product.encode(&[h, 0, t]);
        let conj = d.conjugate(sa.product.group(), x);
        let s = star_product(&sb.product, e, &sa.product, &conj, &out.product)?;
        *terms.entry(out.class_of(&s)?).or_insert(0) += 1;
    }
    Ok(terms.into_iter().collect())
}

/// The class of `Delta(G) x T`.
pub fn identity_biset(g: &Arc<CharGroup>, t: &Arc<CharGroup>) -> Result<BurnsideMorphism> {
    let space = BisetSpace::new(g, g, t)?;
    let p = &space.product;
    let mut members: Vec<usize> = (0..g.order())
        .flat_map(|x| (0..t.order()).map(move |s| (x, s)))
        .map(|(x, s)| p.encode(&[x, x, s]))
        .collect();
    members.sort_unstable();
    let s = Subgroup::from_members(p.group(), &members)?;
    BurnsideMorphism::of_subgroup(&space, &s)
}

/// The class of `Delta_r(D) x T` with `Delta_r(D) = {(d, d^r)}`.
pub fn beta_r(d: &Arc<CharGroup>, r: i64, t: &Arc<CharGroup>) -> Result<BurnsideMorphism> {
    let dd = ProductGroup::new(vec![d.group().clone(), d.group().clone()], DEFAULT_ORDER_CAP)?;
    let diag = twisted_diagonal(&dd, r)?;
    let space = BisetSpace::new(d, d, t)?;
    let p = &space.product;
    let mut members: Vec<usize> = diag
        .members()
        .iter()
        .flat_map(|&x| (0..t.order()).map(move |s| (x, s)))
        .map(|(x, s)| p.encode(&[dd.coord(x, 0), dd.coord(x, 1), s]))
        .collect();
    members.sort_unstable();
    let s = Subgroup::from_members(p.group(), &members)?;
    BurnsideMorphism::of_subgroup(&space, &s)
}

/// Permutation character of `(G x H x T)/E` on the class grid:
/// the cell of `(a, b, c)` gets `|X| #{e in E in the cell} / (|cell| |E|)`.
pub fn linearize_class(space: &BisetSpace, class: usize) -> Vec<Cyclotomic> {
    let e = space.class_representative(class);
    let p = &space.product;
    let (cg, ch, ct) = (space.left.classes(), space.right.classes(), space.shift.classes());
    let (nh, nt) = (ch.len(), ct.len());
    let mut hits = vec![0usize; cg.len() * nh * nt];
    for &x in e.members() {
        let cell = (cg.class_of(p.coord(x, 0)) * nh + ch.class_of(p.coord(x, 1))) * nt + ct.class_of(p.coord(x, 2));
        hits[cell] += 1;
    }
    let order = p.group().order();
    let mut values = Vec::with_capacity(hits.len());
    for a in 0..cg.len() {
        for b in 0..nh {
            for c in 0..nt {
                let cell = (a * nh + b) * nt + c;
                let size = cg.size(a) * ch.size(b) * ct.size(c);
                let v = Rational::new((order * hits[cell]).into(), (size * e.order()).into());
                values.push(Cyclotomic::from_rational(v));
            }
        }
    }
    values
}

/// The linearization morphism into the representation category over `Q`.
pub fn linearize(x: &BurnsideMorphism) -> Result<RepMorphism> {
    let s = &x.space;
    let target = HomSpace::new(&s.left, &s.right, &s.shift, FieldMode::Rational);
    let mut values = vec![Cyclotomic::zero(); target.num_cells()];
    for (&class, &c) in &x.coeffs {
        let scale = Cyclotomic::from_int(c);
        for (v, w) in values.iter_mut().zip(linearize_class(s, class)) {
            if !w.is_zero() {
                *v += &(&w * &scale);
            }
        }
    }
    RepMorphism::from_values(target, values)
}

#[cfg(test)]
mod tests;
