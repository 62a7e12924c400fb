//! Brute-force computations on group elements that avoid character tables,
//! used to cross-check the library.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use bisetlab::arith::Rational;
use bisetlab::group::FiniteGroup;
use bisetlab::linalg::EchelonBasis;

/// Elements of `A x B x C` as coordinate triples, `a` most significant.
pub struct Triple<'a> {
    pub f: [&'a FiniteGroup; 3],
}

impl<'a> Triple<'a> {
    pub fn order(&self) -> usize {
        self.f.iter().map(|g| g.order()).product()
    }

    pub fn decode(&self, x: usize) -> [usize; 3] {
        let (nb, nc) = (self.f[1].order(), self.f[2].order());
        [x / (nb * nc), (x / nc) % nb, x % nc]
    }

    pub fn encode(&self, c: [usize; 3]) -> usize {
        (c[0] * self.f[1].order() + c[1]) * self.f[2].order() + c[2]
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        self.encode([0, 1, 2].map(|i| self.f[i].mul(a[i], b[i])))
    }

    pub fn inv(&self, x: usize) -> usize {
        let a = self.decode(x);
        self.encode([0, 1, 2].map(|i| self.f[i].inv(a[i])))
    }

    /// All cyclic subgroups, as sorted member lists.
    pub fn cyclic_subgroups(&self) -> Vec<Vec<usize>> {
        let mut out = BTreeSet::new();
        for x in 0..self.order() {
            let mut members = vec![0];
            let mut y = x;
            while y != 0 {
                members.push(y);
                y = self.mul(y, x);
            }
            members.sort_unstable();
            out.insert(members);
        }
        out.into_iter().collect()
    }

    /// Permutation character of the action on cosets of `c`, element-wise:
    /// `pi(x) = #{y | y^-1 x y in c} / |c|`.
    pub fn permutation_character(&self, c: &[usize]) -> Vec<i64> {
        let n = self.order();
        let inside: Vec<bool> = {
            let mut v = vec![false; n];
            for &m in c {
                v[m] = true;
            }
            v
        };
        (0..n)
            .map(|x| {
                let fixed = (0..n).filter(|&y| inside[self.mul(self.mul(self.inv(y), x), y)]).count();
                (fixed / c.len()) as i64
            })
            .collect()
    }

    /// Spanning set of `Q (x) R_Q(A x B x C)` as element-wise functions
    /// (permutation characters on cyclic subgroups).
    pub fn rational_characters(&self) -> Vec<Vec<i64>> {
        self.cyclic_subgroups().iter().map(|c| self.permutation_character(c)).collect()
    }
}

/// `|K| (beta o alpha)` element-wise, for `beta` on `G x K x T` and `alpha`
/// on `K x H x T`: `sum_k beta(g, k, t) alpha(k, h, t)`.
pub fn convolve(gkt: &Triple, beta: &[i64], kht: &Triple, alpha: &[i64]) -> Vec<i64> {
    let (ng, nk, nh, nt) = (gkt.f[0].order(), gkt.f[1].order(), kht.f[1].order(), gkt.f[2].order());
    let mut out = vec![0; ng * nh * nt];
    for g in 0..ng {
        for h in 0..nh {
            for t in 0..nt {
                let mut s = 0;
                for k in 0..nk {
                    s += beta[gkt.encode([g, k, t])] * alpha[kht.encode([k, h, t])];
                }
                out[(g * nh + h) * nt + t] = s;
            }
        }
    }
    out
}

fn rank_of(rows: &[Vec<i64>]) -> usize {
    let dim = rows.first().map_or(0, Vec::len);
    let mut basis = EchelonBasis::new(dim);
    for r in rows {
        let q: Vec<Rational> = r.iter().map(|&x| Rational::from_integer(x.into())).collect();
        basis.insert(&q);
        if basis.rank() == dim {
            break;
        }
    }
    basis.rank()
}

/// `(dim A(G x G), dim of the ideal through smaller groups)` for the shifted
/// rational representation functor, by brute force over elements.
pub fn essential_dims(g: &FiniteGroup, t: &FiniteGroup, smaller: &[Arc<FiniteGroup>]) -> (usize, usize) {
    let ggt = Triple { f: [g, g, t] };
    let algebra = rank_of(&ggt.rational_characters());
    let mut products = Vec::new();
    for k in smaller {
        let gkt = Triple { f: [g, k, t] };
        let kgt = Triple { f: [k, g, t] };
        let into_g = gkt.rational_characters();
        let from_g = kgt.rational_characters();
        for b in &into_g {
            for a in &from_g {
                products.push(convolve(&gkt, b, &kgt, a));
            }
        }
    }
    (algebra, rank_of(&products))
}
