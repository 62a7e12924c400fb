//! Dixon's method: irreducible characters from the class multiplication
//! coefficients, computed over a prime field and lifted to cyclotomics.

use num_traits::Zero;

use crate::arith::{Cyclotomic, Rational};
use crate::error::{Error, Result};
use crate::group::{ConjugacyClassSet, FiniteGroup};

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Smallest prime `p = 1 (mod e)` with `p > 2n`.
fn choose_prime(e: u64, n: u64) -> u64 {
    let mut p = e + 1;
    while p <= 2 * n || !is_prime(p) {
        p += e;
    }
    p
}

/// An element of multiplicative order exactly `e` in `F_p`.
fn root_of_unity_mod(e: u64, p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    let generator = (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("F_p^* is cyclic");
    pow_mod(generator, (p - 1) / e, p)
}

/// Kernel of a `rows x cols` matrix over `F_p` (Gauss-Jordan).
fn kernel_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(i) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(i, r);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for f in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[f] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[row][f]) % p;
        }
        out.push(v);
    }
    out
}

pub(crate) struct RawTable {
    pub exponent: usize,
    pub rows: Vec<Vec<Cyclotomic>>,
}

pub(crate) fn compute(g: &FiniteGroup, classes: &ConjugacyClassSet) -> Result<RawTable> {
    let fail = |reason: String| Error::TableComputationFailure { group: g.name().to_string(), reason };
    let n = g.order();
    let k = classes.len();
    let e = g.exponent();
    let p = choose_prime(e as u64, n as u64);
    let sizes = classes.sizes();

    // a[j][i][l] = #{x in C_j : x^-1 z_l in C_i}, so C_j C_i = sum_l a[j][i][l] C_l.
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for l in 0..k {
        let z = classes.representative(l);
        for (j, cls) in classes.classes().iter().enumerate() {
            for &x in cls {
                a[j][classes.class_of(g.mul(g.inv(x), z))][l] += 1;
            }
        }
    }

    // Split F_p^k into common eigenspaces of the matrices M_j = (a[j][i][l])_{i,l}.
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|l| u64::from(i == l)).collect()).collect();
    let mut spaces = vec![identity];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // images of the basis vectors under M_j
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..k).map(|i| (0..k).map(|l| a[j][i][l] * b[l] % p).sum::<u64>() % p).collect())
                .collect();
            let mut found = 0;
            for lambda in 0..p {
                if found == basis.len() {
                    break;
                }
                // columns: (M_j - lambda) b_t
                let m: Vec<Vec<u64>> = (0..k)
                    .map(|i| {
                        (0..basis.len())
                            .map(|t| (images[t][i] + p - lambda * basis[t][i] % p) % p)
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(m, basis.len(), p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|c| {
                        (0..k)
                            .map(|i| (0..basis.len()).map(|t| c[t] * basis[t][i] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != basis.len() {
                return Err(fail(format!("class matrix {j} is not diagonalizable mod {p}")));
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(fail(format!("found {} common eigenvectors, expected {k}", spaces.len())));
    }

    let z = root_of_unity_mod(e as u64, p);
    let e_inv = inv_mod(e as u64 % p, p);
    let power_class: Vec<Vec<usize>> = (0..k)
        .map(|c| {
            let x = classes.representative(c);
            (0..e).map(|l| classes.class_of(g.pow(x, l as i64))).collect()
        })
        .collect();

    let mut rows = Vec::with_capacity(k);
    for space in spaces {
        let w = &space[0];
        if w[0] == 0 {
            return Err(fail("eigenvector vanishes at the identity class".into()));
        }
        let s = inv_mod(w[0], p);
        let omega: Vec<u64> = w.iter().map(|x| x * s % p).collect();
        // |G| / chi(1)^2 = sum_l omega_l omega_{l*} / |C_l|
        let mut norm = 0;
        for l in 0..k {
            let t = omega[l] * omega[classes.inverse_class(l)] % p * inv_mod(sizes[l] as u64, p) % p;
            norm = (norm + t) % p;
        }
        if norm == 0 {
            return Err(fail("zero norm for a central character".into()));
        }
        let d2 = n as u64 % p * inv_mod(norm, p) % p;
        let d = (1..=n as u64)
            .find(|d| d * d == d2)
            .ok_or_else(|| fail(format!("{d2} is not the square of a degree")))?;
        let values: Vec<u64> = (0..k)
            .map(|l| d % p * omega[l] % p * inv_mod(sizes[l] as u64, p) % p)
            .collect();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            // chi(x) = sum_s m_s zeta^s with m_s = (1/e) sum_t chi(x^t) z^(-s t)
            let mut coeffs = vec![Rational::zero(); e];
            for (sidx, c) in coeffs.iter_mut().enumerate() {
                let mut m = 0;
                for t in 0..e {
                    let zt = pow_mod(z, ((e - sidx) * t % e) as u64, p);
                    m = (m + values[power_class[l][t]] * zt) % p;
                }
                let m = m * e_inv % p;
                if m > d {
                    return Err(fail(format!("multiplicity {m} exceeds degree {d}")));
                }
                *c = Rational::from_integer((m as i64).into());
            }
            row.push(Cyclotomic::new(e as u32, coeffs)?);
        }
        rows.push(row);
    }
    Ok(RawTable { exponent: e, rows })
}
