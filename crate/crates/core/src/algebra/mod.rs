//! Finite-dimensional algebras over `Q`: endomorphism algebras of the
//! representation category, the trace-form radical, semisimplicity
//! certificates, essential algebras, module evaluations and the
//! `Aut(C)`-multiplicities of a shifted functor.

mod aut;
mod essential;
mod module;

use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::arith::{rational::to_pair, Rational};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::repcat::{
    build_gram, check_pairing_nondegenerate, compose, identity, CharGroup, FieldMode, GramReport, HomSpace,
    NondegeneracyReport,
};

pub use aut::{aut_multiplicities, AutIsotypic, AutMultiplicities};
pub use essential::{essential_algebra, EssentialReport};
pub use module::{eval_simple_quotient, ModuleData, ModuleEvaluation};

/// An algebra given by structure constants `b_i b_j = sum_k c[i][j][k] b_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteDimAlgebra {
    labels: Vec<String>,
    constants: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
}

impl FiniteDimAlgebra {
    /// Checks shapes, associativity on basis triples and the unit laws.
    pub fn new(labels: Vec<String>, constants: Vec<Vec<Vec<Rational>>>, unit: Vec<Rational>) -> Result<Self> {
        let n = labels.len();
        let shaped = constants.len() == n
            && constants.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == n))
            && unit.len() == n;
        if !shaped {
            return Err(Error::InvalidInput(format!("structure constants do not match {n} basis labels")));
        }
        let alg = FiniteDimAlgebra { labels, constants, unit };
        alg.check_associative()?;
        alg.check_unit()?;
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    /// `b_i b_j` as a coefficient vector.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Rational] {
        &self.constants[i][j]
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, c) in out.iter_mut().zip(&self.constants[i][j]) {
                    if !c.is_zero() {
                        *o += &xy * c;
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    /// Matrix of `x -> b_i x` in the basis (columns are images).
    pub fn left_multiplication(&self, i: usize) -> Matrix {
        let n = self.dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 0..n {
            for k in 0..n {
                m[k][j] = self.constants[i][j][k].clone();
            }
        }
        m
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.mul(&self.constants[i][j], &self.basis_vector(k));
                    let rhs = self.mul(&self.basis_vector(i), &self.constants[j][k]);
                    if lhs != rhs {
                        return Err(Error::InvalidInput(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim() {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::InvalidInput(format!("unit law fails on {}", self.labels[i])));
            }
        }
        Ok(())
    }

    /// `A x B` with componentwise multiplication.
    pub fn direct_product(&self, other: &FiniteDimAlgebra) -> FiniteDimAlgebra {
        let (n, m) = (self.dim(), other.dim());
        let zero = || vec![Rational::zero(); n + m];
        let mut constants = vec![vec![zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                constants[i][j][..n].clone_from_slice(&self.constants[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                constants[n + i][n + j][n..].clone_from_slice(&other.constants[i][j]);
            }
        }
        let labels = self
            .labels
            .iter()
            .map(|l| format!("L.{l}"))
            .chain(other.labels.iter().map(|l| format!("R.{l}")))
            .collect();
        let unit = self.unit.iter().chain(&other.unit).cloned().collect();
        FiniteDimAlgebra { labels, constants, unit }
    }

    /// `Q`, one-dimensional.
    pub fn rationals() -> FiniteDimAlgebra {
        FiniteDimAlgebra {
            labels: vec!["1".into()],
            constants: vec![vec![vec![Rational::one()]]],
            unit: vec![Rational::one()],
        }
    }

    /// `Q[x]/(x^2)` on the basis `1, x`.
    pub fn nilpotent2() -> FiniteDimAlgebra {
        let (o, z) = (Rational::one(), Rational::zero());
        FiniteDimAlgebra {
            labels: vec!["1".into(), "x".into()],
            constants: vec![
                vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
                vec![vec![z.clone(), o.clone()], vec![z.clone(), z]],
            ],
            unit: vec![o, Rational::zero()],
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let c: Vec<Vec<Vec<_>>> = self
            .constants
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(to_pair).collect()).collect())
            .collect();
        json!({
            "labels": self.labels,
            "unit": self.unit.iter().map(to_pair).collect::<Vec<_>>(),
            "constants": c,
        })
    }
}

/// Named algebras used as controls.
pub fn fixture(name: &str) -> Result<FiniteDimAlgebra> {
    match name {
        "rationals" => Ok(FiniteDimAlgebra::rationals()),
        "nilpotent2" => Ok(FiniteDimAlgebra::nilpotent2()),
        // a semisimple algebra with one nilpotent direction attached
        "injected" => Ok(FiniteDimAlgebra::rationals().direct_product(&FiniteDimAlgebra::nilpotent2())),
        _ => Err(Error::InvalidInput(format!(
            "unknown fixture {name:?} (expected rationals, nilpotent2 or injected)"
        ))),
    }
}

/// `End(L) = A(L x L)` with the basis of `HomSpace(L, L, T)`.
pub fn build_endo_algebra(l: &Arc<CharGroup>, t: &Arc<CharGroup>, mode: FieldMode) -> Result<FiniteDimAlgebra> {
    let space = HomSpace::new(l, l, t, mode);
    let basis = space.basis();
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let products = pairs
        .par_iter()
        .map(|&(i, j)| compose(&basis[i], &basis[j])?.rational_coefficients())
        .collect::<Result<Vec<_>>>()?;
    let constants: Vec<Vec<Vec<Rational>>> = products.chunks(n.max(1)).take(n).map(<[_]>::to_vec).collect();
    let unit = identity(l, t, mode).rational_coefficients()?;
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    FiniteDimAlgebra::new(labels, constants, unit)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RadicalReport {
    pub dim: usize,
    pub radical_dim: usize,
    /// Basis of the radical, as `[num, den]` coefficient vectors.
    pub basis: Vec<Vec<[serde_json::Value; 2]>>,
    /// Whether the trace-form Gram matrix has nonzero determinant.
    pub nonsingular: bool,
}

/// Radical as the kernel of `(a, b) -> tr(L_ab)`, valid in characteristic 0.
pub fn radical_via_trace_form(alg: &FiniteDimAlgebra) -> Result<RadicalReport> {
    let n = alg.dim();
    let traces: Vec<Rational> = (0..n)
        .map(|k| (0..n).map(|i| alg.constants[k][i][i].clone()).sum())
        .collect();
    let gram: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| alg.constants[i][j].iter().zip(&traces).map(|(c, t)| c * t).sum())
                .collect()
        })
        .collect();
    let kernel = linalg::nullspace(&gram, n);
    let nonsingular = !linalg::determinant(&gram).is_zero();
    if nonsingular != kernel.is_empty() {
        return Err(Error::Internal(format!(
            "trace form: kernel dimension {} but determinant {}",
            kernel.len(),
            if nonsingular { "nonzero" } else { "zero" }
        )));
    }
    Ok(RadicalReport {
        dim: n,
        radical_dim: kernel.len(),
        basis: kernel.iter().map(|v| v.iter().map(to_pair).collect()).collect(),
        nonsingular,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ProbeResult {
    pub probe: String,
    pub gram: GramReport,
    pub nondegeneracy: NondegeneracyReport,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SemisimplicityCertificate {
    #[serde(rename = "L")]
    pub l: String,
    #[serde(rename = "T")]
    pub t: String,
    pub field: FieldMode,
    pub probes: Vec<ProbeResult>,
    pub algebra_dim: usize,
    pub radical_dim: usize,
    pub pass: bool,
}

/// Gram positivity and pairing nondegeneracy at every probe `H`, plus the
/// radical of `A(L x L)`.
pub fn certify_semisimple(
    l: &Arc<CharGroup>,
    t: &Arc<CharGroup>,
    mode: FieldMode,
    probes: &[Arc<CharGroup>],
) -> Result<SemisimplicityCertificate> {
    let results = probes
        .par_iter()
        .map(|h| {
            Ok(ProbeResult {
                probe: h.name().to_string(),
                gram: build_gram(h, l, t, mode)?,
                nondegeneracy: check_pairing_nondegenerate(h, l, t, mode)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let alg = build_endo_algebra(l, t, mode)?;
    let radical = radical_via_trace_form(&alg)?;
    let pass = radical.radical_dim == 0 && results.iter().all(|p| p.gram.pd && p.nondegeneracy.pass);
    Ok(SemisimplicityCertificate {
        l: l.name().to_string(),
        t: t.name().to_string(),
        field: mode,
        probes: results,
        algebra_dim: alg.dim(),
        radical_dim: radical.radical_dim,
        pass,
    })
}

#[cfg(test)]
mod tests;
