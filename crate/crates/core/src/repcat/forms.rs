//! The integer bilinear form on `R(H x L x T)` and the nondegeneracy of
//! `(alpha, beta) -> beta^op o alpha`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{compose, op_swap, pairing, CharGroup, FieldMode, HomSpace};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GramReport {
    pub dim: usize,
    pub matrix: Vec<Vec<i64>>,
    pub symmetric: bool,
    /// Leading principal minors, as decimal strings.
    pub minors: Vec<String>,
    pub pd: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NondegeneracyReport {
    pub rank: usize,
    pub dim: usize,
    pub pass: bool,
}

/// Pairings of all basis pairs of `Hom(L, H)` in the given mode.
pub fn gram_matrix(h: &Arc<CharGroup>, l: &Arc<CharGroup>, t: &Arc<CharGroup>, mode: FieldMode) -> Result<Vec<Vec<i64>>> {
    let space = HomSpace::new(h, l, t, mode);
    let basis = space.basis();
    let d = basis.len();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| pairing(&basis[i], &basis[j]))
        .collect::<Result<Vec<i64>>>()?;
    Ok(entries.chunks(d.max(1)).take(d).map(<[i64]>::to_vec).collect())
}

pub fn build_gram(h: &Arc<CharGroup>, l: &Arc<CharGroup>, t: &Arc<CharGroup>, mode: FieldMode) -> Result<GramReport> {
    let matrix = gram_matrix(h, l, t, mode)?;
    let q: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
        .collect();
    let symmetric = linalg::is_symmetric(&q);
    let minors = linalg::leading_principal_minors(&q);
    let pd = symmetric && minors.iter().all(|m| *m > Rational::from_integer(0.into()));
    Ok(GramReport {
        dim: matrix.len(),
        matrix,
        symmetric,
        minors: minors.iter().map(|m| m.to_string()).collect(),
        pd,
    })
}

/// Rank of `alpha -> (beta_j^op o alpha)_j` over the basis `beta_j` of
/// `Hom(L, H)`; the form is nondegenerate iff the rank is the dimension.
pub fn check_pairing_nondegenerate(
    h: &Arc<CharGroup>,
    l: &Arc<CharGroup>,
    t: &Arc<CharGroup>,
    mode: FieldMode,
) -> Result<NondegeneracyReport> {
    let space = HomSpace::new(h, l, t, mode);
    let basis = space.basis();
    let ops: Vec<_> = basis.iter().map(op_swap).collect();
    let rows = basis
        .par_iter()
        .map(|alpha| {
            let mut row = Vec::new();
            for b in &ops {
                let c = compose(b, alpha)?;
                for x in c.coefficients()? {
                    row.push(x.to_rational().map_err(|_| {
                        Error::NotRational(format!("coordinate {x} of a composite on {}", c.space().describe()))
                    })?);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<Vec<Rational>>>>()?;
    let rank = linalg::rank(&rows);
    Ok(NondegeneracyReport { rank, dim: basis.len(), pass: rank == basis.len() })
}
