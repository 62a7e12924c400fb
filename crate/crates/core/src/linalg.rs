//! Exact linear algebra over Q.
//!
//! Everything is reduced to integer matrices and eliminated fraction-free
//! (Bareiss), so intermediate entries stay bounded by minors of the input.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::{common_denominator, primitive_integer_row};
use crate::arith::Rational;

pub type Matrix = Vec<Vec<Rational>>;

fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| primitive_integer_row(r)).collect()
}

/// Integer matrix with every entry multiplied by the common denominator `d`.
fn scaled_integer_matrix(m: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let d = common_denominator(m.iter().flatten());
    let rows = m
        .iter()
        .map(|r| r.iter().map(|x| x.numer() * (&d / x.denom())).collect())
        .collect();
    (rows, d)
}

/// Fraction-free row echelon form in place. Returns the pivot columns and
/// the sign of the row permutation used.
fn bareiss_echelon(m: &mut [Vec<BigInt>]) -> (Vec<usize>, i32) {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, sign)
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = integer_rows(rows);
    bareiss_echelon(&mut m).0.len()
}

pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    let mut m = rows.to_vec();
    bareiss_echelon(&mut m).0.len()
}

pub fn determinant(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return Rational::one();
    }
    let (mut a, d) = scaled_integer_matrix(m);
    let (pivots, sign) = bareiss_echelon(&mut a);
    if pivots.len() < n {
        return Rational::zero();
    }
    // The last Bareiss pivot is the determinant of the scaled matrix.
    let det = &a[n - 1][n - 1] * BigInt::from(sign);
    Rational::new(det, d.pow(n as u32))
}

/// Leading principal minors `det(M[..k, ..k])` for `k = 1..=n`, computed by
/// Bareiss elimination without row exchanges. Elimination stops at the first
/// vanishing minor, which is reported as zero together with the rest.
pub fn leading_principal_minors(m: &[Vec<Rational>]) -> Vec<Rational> {
    let n = m.len();
    let (mut a, d) = scaled_integer_matrix(m);
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = a[k][k].clone();
        out.push(Rational::new(pivot.clone(), d.pow(k as u32 + 1)));
        if pivot.is_zero() {
            // Later minors need pivoting; compute them directly.
            for j in k + 1..n {
                let sub: Matrix = m[..=j].iter().map(|r| r[..=j].to_vec()).collect();
                out.push(determinant(&sub));
            }
            return out;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    out
}

/// Sylvester's criterion for a symmetric matrix.
pub fn is_positive_definite(m: &[Vec<Rational>]) -> bool {
    is_symmetric(m) && leading_principal_minors(m).iter().all(Signed::is_positive)
}

pub fn is_symmetric(m: &[Vec<Rational>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Basis of `{x | M x = 0}`.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a = integer_rows(m);
    for r in &a {
        assert_eq!(r.len(), cols);
    }
    let (pivots, _) = bareiss_echelon(&mut a);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut x = vec![Rational::zero(); cols];
        x[f] = Rational::one();
        for (r, &p) in pivots.iter().enumerate().rev() {
            let mut s = Rational::zero();
            for j in p + 1..cols {
                if !x[j].is_zero() && !a[r][j].is_zero() {
                    s += &x[j] * Rational::from_integer(a[r][j].clone());
                }
            }
            x[p] = -s / Rational::from_integer(a[r][p].clone());
        }
        out.push(x);
    }
    out
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let mut s = Rational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            s += &row[k] * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn trace(a: &[Vec<Rational>]) -> Rational {
    (0..a.len()).fold(Rational::zero(), |acc, i| acc + &a[i][i])
}

/// An incrementally built subspace of `Q^n` kept in fraction-free echelon
/// form (primitive integer rows with distinct leading columns).
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_integer(&self, mut v: Vec<BigInt>) -> Vec<BigInt> {
        for (p, r) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let a = r[*p].clone();
            let b = v[*p].clone();
            for j in 0..self.dim {
                v[j] = &a * &v[j] - &b * &r[j];
            }
            make_primitive(&mut v);
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        let w = self.reduce_integer(primitive_integer_row(v));
        match w.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(p) => {
                let pos = self.rows.partition_point(|(q, _)| *q < p);
                self.rows.insert(pos, (p, w));
                true
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.dim);
        self.reduce_integer(primitive_integer_row(v)).iter().all(Zero::is_zero)
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows
            .iter()
            .map(|(_, r)| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect()
    }
}

fn make_primitive(v: &mut [BigInt]) {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(determinant(&m(&[&[2, 1], &[1, 2]])), int(3));
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        let h = vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 3), rat(1, 4)]];
        assert_eq!(determinant(&h), rat(1, 72));
    }

    #[test]
    fn positive_definiteness() {
        assert!(is_positive_definite(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])));
        assert!(!is_positive_definite(&m(&[&[1, 2], &[2, 1]])));
        assert!(!is_positive_definite(&m(&[&[0, 0], &[0, 1]])));
        assert!(!is_positive_definite(&m(&[&[1, 2], &[0, 5]])));
        let minors = leading_principal_minors(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(minors, vec![int(0), int(-1)]);
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn echelon_basis() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&[int(1), int(1), int(0)]));
        assert!(e.insert(&[int(0), int(1), int(1)]));
        assert!(!e.insert(&[int(1), int(2), int(1)]));
        assert!(e.contains(&[int(2), int(0), int(-2)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
        assert_eq!(e.rank(), 2);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-4i64..5, n), n)
    }

    /// Independent oracle: Laplace expansion.
    fn laplace(a: &[Vec<i64>]) -> i64 {
        if a.len() == 1 {
            return a[0][0];
        }
        (0..a.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * laplace(&minor)
            })
            .sum()
    }

    proptest! {
        #[test]
        fn determinant_matches_laplace(a in small_matrix(4)) {
            let q: Matrix = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            prop_assert_eq!(determinant(&q), int(laplace(&a)));
            let lead = leading_principal_minors(&q);
            for k in 1..=4 {
                let sub: Vec<Vec<i64>> = a[..k].iter().map(|r| r[..k].to_vec()).collect();
                prop_assert_eq!(&lead[k - 1], &int(laplace(&sub)));
            }
        }

        #[test]
        fn nullspace_is_kernel(a in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 3)) {
            let q: Matrix = a.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
            let ns = nullspace(&q, 5);
            prop_assert_eq!(ns.len() + rank(&q), 5);
            for x in &ns {
                prop_assert!(mat_vec(&q, x).iter().all(Zero::is_zero));
            }
        }
    }
}
