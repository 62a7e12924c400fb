use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use super::{build_endo_algebra, FiniteDimAlgebra};
use crate::arith::rational::{from_pair, to_pair};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::repcat::{compose, CharGroup, FieldMode, HomSpace};

/// A finite-dimensional left module over an algebra, given by the matrix of
/// each basis element (keyed by basis label).
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleData {
    pub dim: usize,
    pub action: BTreeMap<String, Matrix>,
}

impl ModuleData {
    /// Parses `{"dim": d, "action": {label: [[entry, ...], ...]}}`; entries
    /// are integers, decimal strings or `[num, den]` pairs.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let dim = v["dim"]
            .as_u64()
            .ok_or_else(|| Error::InvalidInput("module data needs an integer \"dim\"".into()))? as usize;
        let action = v["action"]
            .as_object()
            .ok_or_else(|| Error::InvalidInput("module data needs an \"action\" object".into()))?;
        let mut out = BTreeMap::new();
        for (label, m) in action {
            let rows = m
                .as_array()
                .ok_or_else(|| Error::InvalidInput(format!("action of {label} is not a matrix")))?;
            let matrix = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::InvalidInput(format!("action of {label} has a non-array row")))?
                        .iter()
                        .map(from_pair)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Matrix>>()?;
            if matrix.len() != dim || matrix.iter().any(|r| r.len() != dim) {
                return Err(Error::InvalidInput(format!("action of {label} is not {dim} x {dim}")));
            }
            out.insert(label.clone(), matrix);
        }
        Ok(ModuleData { dim, action: out })
    }

    /// Matrices in basis order; fails on missing labels or broken
    /// structure constants.
    fn matrices_for(&self, alg: &FiniteDimAlgebra) -> Result<Vec<Matrix>> {
        let mats = alg
            .labels()
            .iter()
            .map(|l| {
                self.action
                    .get(l)
                    .cloned()
                    .ok_or_else(|| Error::NotAModule(format!("no action given for basis element {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if let Some(extra) = self.action.keys().find(|k| !alg.labels().contains(k)) {
            return Err(Error::NotAModule(format!("action given for unknown basis element {extra}")));
        }
        let combine = |coeffs: &[Rational]| -> Matrix {
            let mut m = vec![vec![Rational::zero(); self.dim]; self.dim];
            for (c, r) in coeffs.iter().zip(&mats) {
                if c.is_zero() {
                    continue;
                }
                for (row, rrow) in m.iter_mut().zip(r) {
                    for (x, y) in row.iter_mut().zip(rrow) {
                        *x += c * y;
                    }
                }
            }
            m
        };
        if combine(alg.unit()) != linalg::identity_matrix(self.dim) {
            return Err(Error::NotAModule("the unit does not act as the identity".into()));
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if linalg::mat_mul(&mats[i], &mats[j]) != combine(alg.product_of_basis(i, j)) {
                    return Err(Error::NotAModule(format!(
                        "action of {} {} disagrees with the structure constants",
                        alg.labels()[i],
                        alg.labels()[j]
                    )));
                }
            }
        }
        Ok(mats)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ModuleEvaluation {
    #[serde(rename = "C")]
    pub c: String,
    #[serde(rename = "G")]
    pub g: String,
    pub dim_m: usize,
    pub dim_v: usize,
    pub dim_l: usize,
    pub dim_j: usize,
    pub dim_s: usize,
    /// Right action of each basis element of `A(C x C)` on `A(G x C)`.
    pub action: Vec<Vec<Vec<[serde_json::Value; 2]>>>,
    /// Basis of the relations `a r (x) v - a (x) r v` in `A(G x C) (x) V`.
    pub relations: Vec<Vec<[serde_json::Value; 2]>>,
    /// Basis of the kernel of `a (x) v -> ((b o a) v)_b`; `J` is this
    /// kernel modulo the relations.
    pub kernel: Vec<Vec<[serde_json::Value; 2]>>,
}

/// `L = A(G x C) (x)_{A(C x C)} V`, its subspace `J` and `S = L / J`.
pub fn eval_simple_quotient(
    c: &Arc<CharGroup>,
    v: &ModuleData,
    g: &Arc<CharGroup>,
    t: &Arc<CharGroup>,
    mode: FieldMode,
) -> Result<ModuleEvaluation> {
    let alg = build_endo_algebra(c, t, mode)?;
    let r = v.matrices_for(&alg)?;
    let d = v.dim;
    let end_c = HomSpace::new(c, c, t, mode).basis();
    let m_basis = HomSpace::new(g, c, t, mode).basis();
    let b_basis = HomSpace::new(c, g, t, mode).basis();
    let m = m_basis.len();
    let width = m * d;

    // right[j][i] = coefficients of a_i o r_j in A(G x C)
    let right = end_c
        .iter()
        .map(|rj| {
            m_basis
                .iter()
                .map(|ai| compose(ai, rj)?.rational_coefficients())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut relations = Vec::new();
    for (j, rj) in right.iter().enumerate() {
        for (i, a_r) in rj.iter().enumerate() {
            for l in 0..d {
                let mut row = vec![Rational::zero(); width];
                for (i2, x) in a_r.iter().enumerate() {
                    row[i2 * d + l] += x;
                }
                for (l2, row_m) in r[j].iter().enumerate() {
                    row[i * d + l2] -= &row_m[l];
                }
                relations.push(row);
            }
        }
    }
    let rel_rank = linalg::rank(&relations);

    // phi(e_i (x) e_l) = ((b o a_i) e_l)_b
    let mut phi: Matrix = Vec::new();
    for b in &b_basis {
        let acts = m_basis
            .iter()
            .map(|ai| {
                let s = compose(b, ai)?.rational_coefficients()?;
                let mut mat = vec![vec![Rational::zero(); d]; d];
                for (sk, rk) in s.iter().zip(&r) {
                    if sk.is_zero() {
                        continue;
                    }
                    for (row, rrow) in mat.iter_mut().zip(rk) {
                        for (x, y) in row.iter_mut().zip(rrow) {
                            *x += sk * y;
                        }
                    }
                }
                Ok(mat)
            })
            .collect::<Result<Vec<_>>>()?;
        for out in 0..d {
            let mut row = vec![Rational::zero(); width];
            for (i, act) in acts.iter().enumerate() {
                for l in 0..d {
                    row[i * d + l] = act[out][l].clone();
                }
            }
            phi.push(row);
        }
    }
    let kernel = linalg::nullspace(&phi, width);
    let phi_rank = width - kernel.len();
    for rel in &relations {
        if linalg::mat_vec(&phi, rel).iter().any(|x| !x.is_zero()) {
            return Err(Error::Internal("a tensor relation is not killed by the pairing map".into()));
        }
    }
    let dim_l = width - rel_rank;
    let dim_j = kernel.len() - rel_rank;
    if dim_l - dim_j != phi_rank {
        return Err(Error::Internal(format!("dim L - dim J = {} but the pairing has rank {phi_rank}", dim_l - dim_j)));
    }
    let pairs = |rows: &[Vec<Rational>]| -> Vec<Vec<[serde_json::Value; 2]>> {
        rows.iter().map(|row| row.iter().map(to_pair).collect()).collect()
    };
    let action = right
        .iter()
        .map(|rj| {
            // column i is a_i o r_j
            let mat: Matrix = (0..m).map(|k| (0..m).map(|i| rj[i][k].clone()).collect()).collect();
            pairs(&mat)
        })
        .collect();
    let mut rel_basis = linalg::EchelonBasis::new(width);
    for rel in &relations {
        rel_basis.insert(rel);
    }
    Ok(ModuleEvaluation {
        c: c.name().to_string(),
        g: g.name().to_string(),
        dim_m: m,
        dim_v: d,
        dim_l,
        dim_j,
        dim_s: phi_rank,
        action,
        relations: pairs(&rel_basis.basis()),
        kernel: pairs(&kernel),
    })
}
