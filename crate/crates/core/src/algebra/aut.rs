use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::cyclotomic::units_mod;
use crate::arith::rational::to_pair;
use crate::arith::{Cyclotomic, Rational};
use crate::burnside::{beta_r, linearize};
use crate::character::character_table;
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::linalg::{self, Matrix};
use crate::repcat::{compose, CharGroup, FieldMode, HomSpace};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AutIsotypic {
    /// Units `r` on which the characters of this rational irreducible are 1.
    pub kernel: Vec<u64>,
    /// Dimension of the rational irreducible (the Galois orbit size).
    pub degree: usize,
    pub isotypic_dim: usize,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AutMultiplicities {
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "T")]
    pub t: String,
    pub units: Vec<u64>,
    pub dim_m: usize,
    /// Matrix of `r` acting on `M(C)`, one per unit.
    pub action: Vec<Vec<Vec<[serde_json::Value; 2]>>>,
    pub components: Vec<AutIsotypic>,
    pub relations_hold: bool,
    pub commuting: bool,
    pub projectors_idempotent: bool,
    pub projectors_orthogonal: bool,
    pub projectors_sum_to_identity: bool,
    pub projectors_equivariant: bool,
}

impl AutMultiplicities {
    pub fn checks_pass(&self) -> bool {
        self.relations_hold
            && self.commuting
            && self.projectors_idempotent
            && self.projectors_orthogonal
            && self.projectors_sum_to_identity
            && self.projectors_equivariant
            && self.components.iter().map(|c| c.isotypic_dim).sum::<usize>() == self.dim_m
    }
}

fn units_group(m: u64, units: &[u64]) -> Result<FiniteGroup> {
    let index = |x: u64| units.iter().position(|&u| u == x).expect("product of units is a unit");
    let rows: Vec<Vec<usize>> = units
        .iter()
        .map(|&a| units.iter().map(|&b| index((a * b) % m)).collect())
        .collect();
    FiniteGroup::from_table(format!("(Z/{m})^x"), &rows, DEFAULT_ORDER_CAP)
}

/// Decomposes `M(C) = A(C x L x T)` under `Aut(C) = (Z/m)^x`, acting by
/// composition with the linearized `beta_r`.
pub fn aut_multiplicities(l: &Arc<CharGroup>, t: &Arc<CharGroup>, c: &Arc<CharGroup>) -> Result<AutMultiplicities> {
    for g in [c, l] {
        let gcd = t.order().gcd(&g.order());
        if gcd != 1 {
            return Err(Error::CoprimalityViolated { shift: t.name().into(), group: g.name().into(), gcd });
        }
    }
    if !c.group().is_cyclic() {
        return Err(Error::NotCyclic(c.name().into()));
    }
    let m = c.order() as u64;
    let units = units_mod(m);
    let space = HomSpace::new(c, l, t, FieldMode::Rational);
    let basis = space.basis();
    let n = basis.len();

    let mut action: Vec<Matrix> = Vec::with_capacity(units.len());
    for &r in &units {
        let beta = linearize(&beta_r(c, r as i64, t)?)?;
        let cols = basis
            .iter()
            .map(|x| compose(&beta, x)?.rational_coefficients())
            .collect::<Result<Vec<_>>>()?;
        action.push((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect());
    }
    let index = |x: u64| units.iter().position(|&u| u == x % m.max(1)).unwrap_or(0);
    let mut relations_hold = action[0] == linalg::identity_matrix(n);
    let mut commuting = true;
    for (a, &r) in units.iter().enumerate() {
        for (b, &s) in units.iter().enumerate() {
            let rs = linalg::mat_mul(&action[a], &action[b]);
            relations_hold &= rs == action[index(r * s)];
            commuting &= rs == linalg::mat_mul(&action[b], &action[a]);
        }
    }

    let u = units_group(m.max(1), &units)?;
    let classes = conjugacy_classes(&u);
    let table = character_table(&u)?;
    let inv_order = Rational::new(One::one(), units.len().into());
    let mut projectors: Vec<Matrix> = Vec::new();
    let mut components = Vec::new();
    for orbit in table.galois_orbits() {
        let mut p = vec![vec![Rational::zero(); n]; n];
        for (x, mat) in action.iter().enumerate() {
            let w: Cyclotomic = orbit.iter().map(|&i| table.row(i)[classes.class_of(x)].conjugate()).sum();
            let w = w.to_rational()? * &inv_order;
            if w.is_zero() {
                continue;
            }
            for (prow, mrow) in p.iter_mut().zip(mat) {
                for (y, z) in prow.iter_mut().zip(mrow) {
                    *y += &w * z;
                }
            }
        }
        let trace = linalg::trace(&p);
        let isotypic_dim = linalg::rank(&p);
        if trace != Rational::from_integer(isotypic_dim.into()) {
            return Err(Error::Internal(format!("projector trace {trace} differs from its rank {isotypic_dim}")));
        }
        let degree = orbit.len();
        if isotypic_dim % degree != 0 {
            return Err(Error::Internal(format!("isotypic dimension {isotypic_dim} is not a multiple of {degree}")));
        }
        let one = Cyclotomic::from_int(table.degree(orbit[0]) as i64);
        let kernel = (0..units.len())
            .filter(|&x| table.row(orbit[0])[classes.class_of(x)] == one)
            .map(|x| units[x])
            .collect();
        components.push(AutIsotypic { kernel, degree, isotypic_dim, multiplicity: isotypic_dim / degree });
        projectors.push(p);
    }
    let zero = vec![vec![Rational::zero(); n]; n];
    let projectors_idempotent = projectors.iter().all(|p| linalg::mat_mul(p, p) == *p);
    let projectors_orthogonal = projectors.iter().enumerate().all(|(i, p)| {
        projectors
            .iter()
            .enumerate()
            .all(|(j, q)| i == j || linalg::mat_mul(p, q) == zero)
    });
    let mut total = zero.clone();
    for p in &projectors {
        for (trow, prow) in total.iter_mut().zip(p) {
            for (x, y) in trow.iter_mut().zip(prow) {
                *x += y;
            }
        }
    }
    let projectors_sum_to_identity = total == linalg::identity_matrix(n);
    let projectors_equivariant = projectors
        .iter()
        .all(|p| action.iter().all(|a| linalg::mat_mul(p, a) == linalg::mat_mul(a, p)));
    Ok(AutMultiplicities {
        c: c.name().into(),
        l: l.name().into(),
        t: t.name().into(),
        units,
        dim_m: n,
        action: action
            .iter()
            .map(|a| a.iter().map(|r| r.iter().map(to_pair).collect()).collect())
            .collect(),
        components,
        relations_hold,
        commuting,
        projectors_idempotent,
        projectors_orthogonal,
        projectors_sum_to_identity,
        projectors_equivariant,
    })
}
