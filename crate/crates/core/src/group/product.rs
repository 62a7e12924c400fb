use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Direct product with mixed-radix element numbering: the tuple
/// `(x_0, ..., x_{r-1})` has index `((x_0 * n_1 + x_1) * n_2 + ...)`.
///
/// With this numbering the conjugacy classes of the product, ordered by
/// minimal element, are exactly the tuples of factor classes in
/// lexicographic order.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    factors: Vec<Arc<FiniteGroup>>,
    strides: Vec<usize>,
    underlying: FiniteGroup,
}

impl ProductGroup {
    pub fn new(factors: Vec<Arc<FiniteGroup>>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("empty product".into()));
        }
        let order = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.order()))
            .unwrap_or(usize::MAX);
        if order > cap {
            return Err(Error::OrderCapExceeded { order, cap });
        }
        let mut strides = vec![1; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let name = factors.iter().map(|g| g.name()).collect::<Vec<_>>().join(" × ");
        let mut table = vec![0; order * order];
        let mut xs = vec![0; factors.len()];
        let mut ys = vec![0; factors.len()];
        for a in 0..order {
            decode_into(&factors, &strides, a, &mut xs);
            for b in 0..order {
                decode_into(&factors, &strides, b, &mut ys);
                let mut idx = 0;
                for (i, f) in factors.iter().enumerate() {
                    idx += f.mul(xs[i], ys[i]) * strides[i];
                }
                table[a * order + b] = idx;
            }
        }
        let underlying = FiniteGroup::from_trusted_table(name, order, table);
        Ok(ProductGroup { factors, strides, underlying })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.underlying
    }

    pub fn factors(&self) -> &[Arc<FiniteGroup>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &FiniteGroup {
        &self.factors[i]
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        coords.iter().zip(&self.strides).map(|(c, s)| c * s).sum()
    }

    pub fn decode(&self, x: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        decode_into(&self.factors, &self.strides, x, &mut out);
        out
    }

    #[inline]
    pub fn coord(&self, x: usize, axis: usize) -> usize {
        (x / self.strides[axis]) % self.factors[axis].order()
    }

    /// Embeds an element of one factor (other coordinates trivial).
    pub fn embed(&self, axis: usize, a: usize) -> usize {
        a * self.strides[axis]
    }

    fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.factors.len() {
            return Err(Error::BadAxis { axis, factors: self.factors.len() });
        }
        Ok(())
    }

    /// Image of `e` under the projection onto the factors listed in `axes`;
    /// `target` must be the product of exactly those factors.
    pub fn project(&self, e: &Subgroup, axes: &[usize], target: &ProductGroup) -> Result<Subgroup> {
        for &a in axes {
            self.check_axis(a)?;
        }
        if target.num_factors() != axes.len()
            || axes.iter().enumerate().any(|(i, &a)| !target.factor(i).same_table(self.factor(a)))
        {
            return Err(Error::FactorMismatch("projection target does not match the chosen axes".into()));
        }
        let mut bits = FixedBitSet::with_capacity(target.group().order());
        for &x in e.members() {
            let idx: usize = axes
                .iter()
                .enumerate()
                .map(|(i, &a)| self.coord(x, a) * target.strides[i])
                .sum();
            bits.insert(idx);
        }
        Ok(Subgroup::from_sorted_unchecked(target.group(), bits.ones().collect()))
    }
}

fn decode_into(factors: &[Arc<FiniteGroup>], strides: &[usize], x: usize, out: &mut [usize]) {
    for i in 0..factors.len() {
        out[i] = (x / strides[i]) % factors[i].order();
    }
}

pub fn direct_product(gs: Vec<Arc<FiniteGroup>>, cap: usize) -> Result<ProductGroup> {
    ProductGroup::new(gs, cap)
}

/// `(p_i(E), k_i(E))`: the projection of `e` onto factor `axis`, and the
/// elements `x` of that factor with `(1, .., x, .., 1)` in `e`.
pub fn projections_kernels(pg: &ProductGroup, e: &Subgroup, axis: usize) -> Result<(Subgroup, Subgroup)> {
    pg.check_axis(axis)?;
    let f = pg.factor(axis);
    let mut p = FixedBitSet::with_capacity(f.order());
    let mut k = FixedBitSet::with_capacity(f.order());
    for &x in e.members() {
        let c = pg.coord(x, axis);
        p.insert(c);
        if x == pg.embed(axis, c) {
            k.insert(c);
        }
    }
    Ok((
        Subgroup::from_sorted_unchecked(f, p.ones().collect()),
        Subgroup::from_sorted_unchecked(f, k.ones().collect()),
    ))
}

/// `E * D = {(g, k, t) | exists h: (g, h, t) in E and (h, k, t) in D}`.
///
/// `E` lives in `G x H [x T]`, `D` in `H x K [x T]` and the result in
/// `out = G x K [x T]`. Two-factor products are treated as having trivial
/// shift.
pub fn star_product(
    pe: &ProductGroup,
    e: &Subgroup,
    pd: &ProductGroup,
    d: &Subgroup,
    out: &ProductGroup,
) -> Result<Subgroup> {
    let r = pe.num_factors();
    if !(r == 2 || r == 3) || pd.num_factors() != r || out.num_factors() != r {
        return Err(Error::FactorMismatch("star product needs two or three factors on every side".into()));
    }
    if !pe.factor(1).same_table(pd.factor(0)) {
        return Err(Error::FactorMismatch(format!(
            "middle factors differ: {} vs {}",
            pe.factor(1).name(),
            pd.factor(0).name()
        )));
    }
    if r == 3 && !pe.factor(2).same_table(pd.factor(2)) {
        return Err(Error::FactorMismatch(format!(
            "shift factors differ: {} vs {}",
            pe.factor(2).name(),
            pd.factor(2).name()
        )));
    }
    if !out.factor(0).same_table(pe.factor(0))
        || !out.factor(1).same_table(pd.factor(1))
        || (r == 3 && !out.factor(2).same_table(pe.factor(2)))
    {
        return Err(Error::FactorMismatch("output product does not match the operands".into()));
    }
    let t_order = if r == 3 { pe.factor(2).order() } else { 1 };
    let h_order = pe.factor(1).order();
    let coord_t = |pg: &ProductGroup, x: usize| if r == 3 { pg.coord(x, 2) } else { 0 };
    // (h, t) -> list of k with (h, k, t) in D
    let mut by_middle: Vec<Vec<usize>> = vec![Vec::new(); h_order * t_order];
    for &x in d.members() {
        by_middle[pd.coord(x, 0) * t_order + coord_t(pd, x)].push(pd.coord(x, 1));
    }
    let mut bits = FixedBitSet::with_capacity(out.group().order());
    let mut coords = vec![0; r];
    for &x in e.members() {
        let t = coord_t(pe, x);
        coords[0] = pe.coord(x, 0);
        if r == 3 {
            coords[2] = t;
        }
        for &k in &by_middle[pe.coord(x, 1) * t_order + t] {
            coords[1] = k;
            bits.insert(out.encode(&coords));
        }
    }
    let s = Subgroup::from_sorted_unchecked(out.group(), bits.ones().collect());
    if !s.is_closed(out.group()) {
        return Err(Error::Internal("star product is not closed".into()));
    }
    Ok(s)
}

/// `{(d, d^r) | d in D}` inside `dd = D x D`.
pub fn twisted_diagonal(dd: &ProductGroup, r: i64) -> Result<Subgroup> {
    if dd.num_factors() != 2 || !dd.factor(0).same_table(dd.factor(1)) {
        return Err(Error::FactorMismatch("twisted diagonal needs a product D x D".into()));
    }
    let d = dd.factor(0);
    if !d.is_cyclic() {
        return Err(Error::NotCyclic(d.name().to_string()));
    }
    let m = d.order() as i64;
    if r.gcd(&m) != 1 {
        return Err(Error::NotAUnit { r, m: m as u64 });
    }
    let mut members: Vec<usize> = (0..d.order()).map(|x| dd.encode(&[x, d.pow(x, r)])).collect();
    members.sort_unstable();
    Ok(Subgroup::from_sorted_unchecked(dd.group(), members))
}
