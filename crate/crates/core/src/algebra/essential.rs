use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rational::to_pair, Cyclotomic, Rational};
use crate::catalog::Catalog;
use crate::error::Result;
use crate::linalg::EchelonBasis;
use crate::repcat::{compose, CharGroup, FieldMode, HomSpace, RepMorphism};

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EssentialReport {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "T")]
    pub t: String,
    pub field: FieldMode,
    /// Groups `K` the ideal factors through.
    pub through: Vec<String>,
    pub algebra_dim: usize,
    pub ideal_dim: usize,
    pub quotient_dim: usize,
    pub ideal_basis: Vec<Vec<[serde_json::Value; 2]>>,
}

/// Quotient of `A(G x G)` by the ideal spanned by the composites `a o b`
/// through every catalog group `K` with `|K| < |G|`.
pub fn essential_algebra(
    g: &Arc<CharGroup>,
    t: &Arc<CharGroup>,
    mode: FieldMode,
    catalog: &Catalog,
) -> Result<EssentialReport> {
    let smaller = catalog.representatives_below(g.order())?;
    let algebra = HomSpace::new(g, g, t, mode);
    let n = algebra.dim();
    let mut ideal = EchelonBasis::new(n);
    let mut through = Vec::new();
    for k in smaller {
        let k = CharGroup::new(k)?;
        through.push(k.name().to_string());
        let into_g = HomSpace::new(g, &k, t, mode).basis();
        let from_g = HomSpace::new(&k, g, t, mode).basis();
        let products = into_g
            .par_iter()
            .map(|a| {
                from_g
                    .iter()
                    .map(|b| compose(a, b)?.rational_coefficients())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for v in products.iter().flatten() {
            ideal.insert(v);
            if ideal.rank() == n {
                break;
            }
        }
    }
    close_two_sided(&algebra, &mut ideal)?;
    let ideal_dim = ideal.rank();
    Ok(EssentialReport {
        g: g.name().to_string(),
        t: t.name().to_string(),
        field: mode,
        through,
        algebra_dim: n,
        ideal_dim,
        quotient_dim: n - ideal_dim,
        ideal_basis: ideal.basis().iter().map(|v| v.iter().map(to_pair).collect()).collect(),
    })
}

/// Grows `ideal` until it is stable under multiplication by the basis on
/// both sides.
fn close_two_sided(algebra: &Arc<HomSpace>, ideal: &mut EchelonBasis) -> Result<()> {
    let basis = algebra.basis();
    let mut pending: Vec<Vec<Rational>> = ideal.basis();
    while let Some(v) = pending.pop() {
        let x = RepMorphism::from_coefficients(algebra.clone(), &to_cyclotomic(&v))?;
        for b in &basis {
            for p in [compose(b, &x)?, compose(&x, b)?] {
                let c = p.rational_coefficients()?;
                if ideal.insert(&c) {
                    pending.push(c);
                }
            }
        }
    }
    Ok(())
}

fn to_cyclotomic(v: &[Rational]) -> Vec<Cyclotomic> {
    v.iter().cloned().map(Cyclotomic::from_rational).collect()
}
