//! The category whose morphisms `K -> H` are virtual characters of
//! `H x K x T` (the shifted representation functor), with composition by
//! character convolution over the middle group.
//!
//! A morphism is stored by its values on the class grid of `H x K x T`:
//! the cell `(c_h, c_k, c_t)` has index `(c_h * n_k + c_k) * n_t + c_t`.

mod forms;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{Cyclotomic, Rational};
use crate::character::{character_table, CharacterTable};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClassSet, FiniteGroup};

pub use forms::{
    build_gram, check_pairing_nondegenerate, gram_matrix, GramReport, NondegeneracyReport,
};

/// Which representation ring the morphism spaces model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldMode {
    /// Complex irreducible characters (any splitting field).
    Split,
    /// Galois-orbit sums of irreducible characters (the field `Q`).
    Rational,
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldMode::Split => "split",
            FieldMode::Rational => "rational",
        })
    }
}

impl std::str::FromStr for FieldMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "split" => Ok(FieldMode::Split),
            "rational" => Ok(FieldMode::Rational),
            _ => Err(Error::InvalidInput(format!("unknown field mode {s:?} (expected split or rational)"))),
        }
    }
}

/// A group together with its conjugacy classes and character table.
#[derive(Debug)]
pub struct CharGroup {
    group: Arc<FiniteGroup>,
    classes: ConjugacyClassSet,
    table: Arc<CharacterTable>,
}

impl CharGroup {
    pub fn new(group: Arc<FiniteGroup>) -> Result<Arc<Self>> {
        let classes = ConjugacyClassSet::new(&group);
        let table = character_table(&group)?;
        Ok(Arc::new(CharGroup { group, classes, table }))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn name(&self) -> &str {
        self.group.name()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        &self.classes
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    fn same(&self, other: &CharGroup) -> bool {
        self.group.same_table(&other.group)
    }
}

type SpaceKey = (Vec<(String, Vec<usize>)>, FieldMode);

fn space_cache() -> &'static Mutex<HashMap<SpaceKey, Arc<HomSpace>>> {
    static CACHE: OnceLock<Mutex<HashMap<SpaceKey, Arc<HomSpace>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The morphism space `Hom(K, H) = F (x) R(H x K x T)` with its basis.
#[derive(Debug)]
pub struct HomSpace {
    target: Arc<CharGroup>,
    source: Arc<CharGroup>,
    shift: Arc<CharGroup>,
    mode: FieldMode,
    table: Arc<CharacterTable>,
    /// Irreducible rows of the product summed into each basis element.
    basis_rows: Vec<Vec<usize>>,
    basis_values: Vec<Vec<Cyclotomic>>,
    /// Per factor: `w[a][c] = |C_c| conj(chi_a(c)) / |G|`.
    weights: [Vec<Vec<Cyclotomic>>; 3],
}

impl HomSpace {
    pub fn new(
        target: &Arc<CharGroup>,
        source: &Arc<CharGroup>,
        shift: &Arc<CharGroup>,
        mode: FieldMode,
    ) -> Arc<HomSpace> {
        let key: SpaceKey = (
            [target, source, shift]
                .iter()
                .map(|g| (g.name().to_string(), g.group().flat_table().to_vec()))
                .collect(),
            mode,
        );
        if let Some(s) = space_cache().lock().expect("space cache").get(&key) {
            return s.clone();
        }
        let table = CharacterTable::tensor(&[target.table().clone(), source.table().clone(), shift.table().clone()]);
        let basis_rows = match mode {
            FieldMode::Split => (0..table.rows().len()).map(|i| vec![i]).collect(),
            FieldMode::Rational => table.galois_orbits(),
        };
        let basis_values = basis_rows
            .iter()
            .map(|o| (0..table.num_classes()).map(|c| o.iter().map(|&i| table.row(i)[c].clone()).sum()).collect())
            .collect();
        let weight = |g: &CharGroup| -> Vec<Vec<Cyclotomic>> {
            let t = g.table();
            let inv_order = Rational::new(One::one(), g.order().into());
            t.rows()
                .iter()
                .map(|r| {
                    (0..t.num_classes())
                        .map(|c| r[c].conjugate().scale(&(&inv_order * Rational::from_integer(t.class_sizes()[c].into()))))
                        .collect()
                })
                .collect()
        };
        let weights = [weight(target), weight(source), weight(shift)];
        let space = Arc::new(HomSpace {
            target: target.clone(),
            source: source.clone(),
            shift: shift.clone(),
            mode,
            table,
            basis_rows,
            basis_values,
            weights,
        });
        space_cache().lock().expect("space cache").insert(key, space.clone());
        space
    }

    pub fn target(&self) -> &Arc<CharGroup> {
        &self.target
    }

    pub fn source(&self) -> &Arc<CharGroup> {
        &self.source
    }

    pub fn shift(&self) -> &Arc<CharGroup> {
        &self.shift
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }

    pub fn dim(&self) -> usize {
        self.basis_rows.len()
    }

    pub fn num_cells(&self) -> usize {
        self.table.num_classes()
    }

    /// Order of `H x K x T`.
    pub fn product_order(&self) -> usize {
        self.table.order()
    }

    #[inline]
    pub fn cell(&self, h: usize, k: usize, t: usize) -> usize {
        (h * self.source.num_classes() + k) * self.shift.num_classes() + t
    }

    pub fn basis(self: &Arc<Self>) -> Vec<RepMorphism> {
        (0..self.dim()).map(|i| self.basis_element(i)).collect()
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> RepMorphism {
        let m = RepMorphism::from_values_unchecked(self.clone(), self.basis_values[i].clone());
        let mut c = vec![Cyclotomic::zero(); self.dim()];
        c[i] = Cyclotomic::one();
        let _ = m.coeffs.set(Ok(c));
        m
    }

    pub fn zero(self: &Arc<Self>) -> RepMorphism {
        RepMorphism::from_values_unchecked(self.clone(), vec![Cyclotomic::zero(); self.num_cells()])
    }

    /// Whether both spaces have the same groups (by table) and mode.
    pub fn same_as(&self, other: &HomSpace) -> bool {
        self.mode == other.mode
            && self.target.same(&other.target)
            && self.source.same(&other.source)
            && self.shift.same(&other.shift)
    }

    pub fn describe(&self) -> String {
        format!("{} x {} x {}", self.target.name(), self.source.name(), self.shift.name())
    }

    /// Coordinates in the complex irreducible basis of the product, by
    /// contracting one factor at a time.
    fn split_coefficients(&self, values: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let dims = [self.target.num_classes(), self.source.num_classes(), self.shift.num_classes()];
        let mut cur = values.to_vec();
        for axis in 0..3 {
            let w = &self.weights[axis];
            let n = dims[axis];
            let inner: usize = dims[axis + 1..].iter().product();
            let outer: usize = dims[..axis].iter().product();
            let mut next = vec![Cyclotomic::zero(); cur.len()];
            for o in 0..outer {
                for a in 0..n {
                    for i in 0..inner {
                        let mut acc = Cyclotomic::zero();
                        for c in 0..n {
                            let x = &cur[(o * n + c) * inner + i];
                            if !x.is_zero() && !w[a][c].is_zero() {
                                acc += &(&w[a][c] * x);
                            }
                        }
                        next[(o * n + a) * inner + i] = acc;
                    }
                }
            }
            cur = next;
        }
        cur
    }

    fn coefficients(&self, values: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
        let split = self.split_coefficients(values);
        match self.mode {
            FieldMode::Split => Ok(split),
            FieldMode::Rational => self
                .basis_rows
                .iter()
                .map(|orbit| {
                    let c = &split[orbit[0]];
                    if orbit.iter().any(|&i| split[i] != *c) {
                        Err(Error::NotRational(format!(
                            "class function on {} is not Galois stable",
                            self.describe()
                        )))
                    } else {
                        Ok(c.clone())
                    }
                })
                .collect(),
        }
    }
}

/// A morphism `K -> H`: a class function on `H x K x T`.
#[derive(Debug)]
pub struct RepMorphism {
    space: Arc<HomSpace>,
    values: Vec<Cyclotomic>,
    coeffs: OnceLock<Result<Vec<Cyclotomic>>>,
}

impl Clone for RepMorphism {
    fn clone(&self) -> Self {
        let coeffs = OnceLock::new();
        if let Some(c) = self.coeffs.get() {
            let _ = coeffs.set(c.clone());
        }
        RepMorphism { space: self.space.clone(), values: self.values.clone(), coeffs }
    }
}

impl PartialEq for RepMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.space.same_as(&other.space) && self.values == other.values
    }
}

impl RepMorphism {
    fn from_values_unchecked(space: Arc<HomSpace>, values: Vec<Cyclotomic>) -> Self {
        RepMorphism { space, values, coeffs: OnceLock::new() }
    }

    /// A morphism given by its values; the values must lie in the span of
    /// the basis of `space`.
    pub fn from_values(space: Arc<HomSpace>, values: Vec<Cyclotomic>) -> Result<Self> {
        if values.len() != space.num_cells() {
            return Err(Error::InvalidInput(format!(
                "{} values for {} classes of {}",
                values.len(),
                space.num_cells(),
                space.describe()
            )));
        }
        let m = Self::from_values_unchecked(space, values);
        m.coefficients()?;
        Ok(m)
    }

    /// `sum_i c_i b_i` over the basis of `space`.
    pub fn from_coefficients(space: Arc<HomSpace>, coeffs: &[Cyclotomic]) -> Result<Self> {
        if coeffs.len() != space.dim() {
            return Err(Error::InvalidInput(format!("{} coefficients for dimension {}", coeffs.len(), space.dim())));
        }
        let mut values = vec![Cyclotomic::zero(); space.num_cells()];
        for (c, b) in coeffs.iter().zip(&space.basis_values) {
            if c.is_zero() {
                continue;
            }
            for (v, x) in values.iter_mut().zip(b) {
                if !x.is_zero() {
                    *v += &(c * x);
                }
            }
        }
        let m = Self::from_values_unchecked(space, values);
        let _ = m.coeffs.set(Ok(coeffs.to_vec()));
        Ok(m)
    }

    pub fn space(&self) -> &Arc<HomSpace> {
        &self.space
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn value(&self, h: usize, k: usize, t: usize) -> &Cyclotomic {
        &self.values[self.space.cell(h, k, t)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    /// Coordinates in the basis of the space (cached).
    pub fn coefficients(&self) -> Result<&[Cyclotomic]> {
        self.coeffs
            .get_or_init(|| self.space.coefficients(&self.values))
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Coordinates as rationals; fails if some coordinate is irrational.
    pub fn rational_coefficients(&self) -> Result<Vec<Rational>> {
        self.coefficients()?.iter().map(Cyclotomic::to_rational).collect()
    }

    fn has_integral_coefficients(&self) -> bool {
        self.coefficients()
            .map(|c| c.iter().all(|x| x.to_rational().is_ok_and(|q| q.is_integer())))
            .unwrap_or(false)
    }

    pub fn add(&self, other: &RepMorphism) -> Result<RepMorphism> {
        if !self.space.same_as(&other.space) {
            return Err(Error::ObjectMismatch(format!("{} vs {}", self.space.describe(), other.space.describe())));
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self::from_values_unchecked(self.space.clone(), values))
    }

    pub fn scale(&self, s: &Cyclotomic) -> RepMorphism {
        let values = self.values.iter().map(|v| v * s).collect();
        Self::from_values_unchecked(self.space.clone(), values)
    }
}

fn check_shift_and_mode(a: &HomSpace, b: &HomSpace) -> Result<()> {
    if !a.shift.same(&b.shift) {
        return Err(Error::ShiftMismatch(a.shift.name().into(), b.shift.name().into()));
    }
    if a.mode != b.mode {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `beta o alpha` for `alpha: K -> G` and `beta: G -> H`:
/// `chi(h, k, t) = (1/|G|) sum_g chi_beta(h, g, t) chi_alpha(g, k, t)`.
///
/// When both inputs have integral coordinates, so must the result; a
/// violation is reported as an internal error.
pub fn compose(beta: &RepMorphism, alpha: &RepMorphism) -> Result<RepMorphism> {
    let out = compose_values(beta, alpha)?;
    if beta.has_integral_coefficients() && alpha.has_integral_coefficients() && !out.has_integral_coefficients() {
        return Err(Error::NotIntegral(format!(
            "composite on {} has non-integral coordinates",
            out.space.describe()
        )));
    }
    Ok(out)
}

/// Composition without the integrality check.
pub fn compose_values(beta: &RepMorphism, alpha: &RepMorphism) -> Result<RepMorphism> {
    let (sb, sa) = (&beta.space, &alpha.space);
    check_shift_and_mode(sb, sa)?;
    if !sb.source.same(&sa.target) {
        return Err(Error::ObjectMismatch(format!(
            "cannot compose {} after {}: middle groups {} and {} differ",
            sb.describe(),
            sa.describe(),
            sb.source.name(),
            sa.target.name()
        )));
    }
    let g = &sb.source;
    let out_space = HomSpace::new(&sb.target, &sa.source, &sb.shift, sb.mode);
    let (nh, nk, nt, ng) = (
        sb.target.num_classes(),
        sa.source.num_classes(),
        sb.shift.num_classes(),
        g.num_classes(),
    );
    let sizes: Vec<Rational> = g
        .classes()
        .sizes()
        .iter()
        .map(|&s| Rational::new(s.into(), g.order().into()))
        .collect();
    // weighted beta: (|c|/|G|) beta(h, c, t)
    let wb: Vec<Cyclotomic> = (0..nh * ng * nt)
        .map(|i| {
            let c = (i / nt) % ng;
            beta.values[i].scale(&sizes[c])
        })
        .collect();
    let mut values = vec![Cyclotomic::zero(); nh * nk * nt];
    for h in 0..nh {
        for c in 0..ng {
            for t in 0..nt {
                let b = &wb[sb.cell(h, c, t)];
                if b.is_zero() {
                    continue;
                }
                for k in 0..nk {
                    let a = &alpha.values[sa.cell(c, k, t)];
                    if !a.is_zero() {
                        values[out_space.cell(h, k, t)] += &(b * a);
                    }
                }
            }
        }
    }
    Ok(RepMorphism::from_values_unchecked(out_space, values))
}

/// The identity of `G`: `chi(g, g', t) = |C_G(g)|` if `g ~ g'`, else `0`.
pub fn identity(g: &Arc<CharGroup>, t: &Arc<CharGroup>, mode: FieldMode) -> RepMorphism {
    let space = HomSpace::new(g, g, t, mode);
    let mut values = vec![Cyclotomic::zero(); space.num_cells()];
    for c in 0..g.num_classes() {
        let centralizer = Cyclotomic::from_int((g.order() / g.classes().size(c)) as i64);
        for d in 0..t.num_classes() {
            values[space.cell(c, c, d)] = centralizer.clone();
        }
    }
    RepMorphism::from_values_unchecked(space, values)
}

/// `chi^op(k, h, t) = chi(h, k, t)`.
pub fn op_swap(alpha: &RepMorphism) -> RepMorphism {
    let s = &alpha.space;
    let out = HomSpace::new(&s.source, &s.target, &s.shift, s.mode);
    let mut values = vec![Cyclotomic::zero(); out.num_cells()];
    for h in 0..s.target.num_classes() {
        for k in 0..s.source.num_classes() {
            for t in 0..s.shift.num_classes() {
                values[out.cell(k, h, t)] = alpha.values[s.cell(h, k, t)].clone();
            }
        }
    }
    RepMorphism::from_values_unchecked(out, values)
}

/// `chi^#(l, h, t) = chi(h^-1, l^-1, t^-1)`.
pub fn sharp(u: &RepMorphism) -> RepMorphism {
    let s = &u.space;
    let out = HomSpace::new(&s.source, &s.target, &s.shift, s.mode);
    let (ch, cl, ct) = (s.target.classes(), s.source.classes(), s.shift.classes());
    let mut values = vec![Cyclotomic::zero(); out.num_cells()];
    for h in 0..ch.len() {
        for l in 0..cl.len() {
            for t in 0..ct.len() {
                values[out.cell(l, h, t)] =
                    u.values[s.cell(ch.inverse_class(h), cl.inverse_class(l), ct.inverse_class(t))].clone();
            }
        }
    }
    RepMorphism::from_values_unchecked(out, values)
}

/// `tau(chi) = (1/(|L||T|)) sum_{l, t} chi(l, l, t)`, for an endomorphism of `L`.
pub fn tau(chi: &RepMorphism) -> Result<i64> {
    let s = &chi.space;
    if !s.target.same(&s.source) {
        return Err(Error::ObjectMismatch(format!("tau needs an endomorphism, got {}", s.describe())));
    }
    let (cl, ct) = (s.target.classes(), s.shift.classes());
    let mut acc = Cyclotomic::zero();
    for l in 0..cl.len() {
        for t in 0..ct.len() {
            let v = &chi.values[s.cell(l, l, t)];
            if !v.is_zero() {
                acc += &v.scale(&Rational::from_integer((cl.size(l) * ct.size(t)).into()));
            }
        }
    }
    let q = acc.to_rational()? / Rational::from_integer((s.target.order() * s.shift.order()).into());
    crate::arith::rational::to_i64(&q)
}

/// `<U, V> = tau(V^# o U)`, checked against the direct triple sum
/// `(1/|H x L x T|) sum chi_V(h^-1, l^-1, t^-1) chi_U(h, l, t)`.
pub fn pairing(u: &RepMorphism, v: &RepMorphism) -> Result<i64> {
    if !u.space.same_as(&v.space) {
        return Err(Error::ObjectMismatch(format!("{} vs {}", u.space.describe(), v.space.describe())));
    }
    let via_tau = tau(&compose_values(&sharp(v), u)?)?;
    let direct = pairing_direct(u, v)?;
    if via_tau != direct {
        return Err(Error::Internal(format!(
            "pairing on {}: tau route gives {via_tau}, direct sum gives {direct}",
            u.space.describe()
        )));
    }
    Ok(direct)
}

/// The triple-sum formula for the pairing alone.
pub fn pairing_direct(u: &RepMorphism, v: &RepMorphism) -> Result<i64> {
    let s = &u.space;
    let t = &s.table;
    let mut acc = Cyclotomic::zero();
    for c in 0..t.num_classes() {
        let a = &u.values[c];
        let b = &v.values[t.inverse_class(c)];
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b).scale(&Rational::from_integer(t.class_sizes()[c].into()));
        }
    }
    let q = acc.to_rational()? / Rational::from_integer(t.order().into());
    crate::arith::rational::to_i64(&q)
}

#[cfg(test)]
mod tests;
