//! Exact elements of cyclotomic fields.
//!
//! An element of `Q(zeta_n)` is stored as its coordinate vector in the power
//! basis `1, zeta_n, ..., zeta_n^(phi(n)-1)`, padded with zeros to length `n`.
//! Every arithmetic result is reduced modulo the `n`-th cyclotomic polynomial,
//! so two values of the same order are equal iff their vectors are equal.
//! Values lying in `Q` are always stored at order 1.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Orders are merged by lcm and may not exceed this bound.
pub const MAX_ORDER: u32 = 1 << 16;

thread_local! {
    static CYCLOTOMIC_POLYS: RefCell<HashMap<u32, Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Rc<Vec<i64>> {
    assert!(n >= 1);
    if let Some(p) = CYCLOTOMIC_POLYS.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_polynomial(d);
            num = divide_monic(&num, &div);
        }
    }
    let p = Rc::new(num);
    CYCLOTOMIC_POLYS.with(|c| c.borrow_mut().insert(n, p.clone()));
    p
}

fn divide_monic(num: &[i64], div: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = div.len() - 1;
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        if c != 0 {
            for (k, &dk) in div.iter().enumerate() {
                rem[i + k] -= c * dk;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut n0 = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n0 > 1 {
        result -= result / n0;
    }
    result
}

/// Units modulo `n` in increasing order (`[0]` for `n = 1`).
pub fn units_mod(n: u64) -> Vec<u64> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&j| j.gcd(&n) == 1).collect()
}

#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

/// Reduces a length-`n` vector modulo `Phi_n` in place.
fn reduce(n: u32, v: &mut [Rational]) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut v[i]);
        for (k, &pk) in phi[..deg].iter().enumerate() {
            if pk != 0 {
                v[i - deg + k] -= &c * BigInt::from(pk);
            }
        }
    }
}

impl Cyclotomic {
    fn canonical(order: u32, mut coeffs: Vec<Rational>) -> Self {
        debug_assert_eq!(coeffs.len(), order as usize);
        if order > 1 {
            reduce(order, &mut coeffs);
            if coeffs[1..].iter().all(Zero::is_zero) {
                let c0 = std::mem::take(&mut coeffs[0]);
                return Self::from_rational(c0);
            }
        }
        Cyclotomic { order, coeffs }
    }

    /// Builds `sum_i coeffs[i] * zeta_order^i`.
    pub fn new(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        if order == 0 || order > MAX_ORDER {
            return Err(Error::InvalidInput(format!("cyclotomic order {order} out of range")));
        }
        if coeffs.len() != order as usize {
            return Err(Error::InvalidInput(format!(
                "expected {order} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Self::canonical(order, coeffs))
    }

    pub fn from_rational(x: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![x] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1 && n <= MAX_ORDER);
        let mut v = vec![Rational::zero(); n as usize];
        v[k.rem_euclid(n as i64) as usize] = Rational::one();
        Self::canonical(n, v)
    }

    /// The order `n` of the field `Q(zeta_n)` the value is stored in.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn to_rational(&self) -> Result<Rational> {
        if self.order == 1 {
            Ok(self.coeffs[0].clone())
        } else {
            Err(Error::NotRational(self.to_string()))
        }
    }

    /// Coordinates of the value at order `n`, which must be a multiple of the
    /// stored order.
    pub fn coeffs_at(&self, n: u32) -> Vec<Rational> {
        assert!(n % self.order == 0, "order {n} is not a multiple of {}", self.order);
        if n == self.order {
            return self.coeffs.clone();
        }
        let step = (n / self.order) as usize;
        let mut v = vec![Rational::zero(); n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[i * step] = c.clone();
            }
        }
        if n > 1 {
            reduce(n, &mut v);
        }
        v
    }

    fn merged_order(&self, other: &Self) -> u32 {
        let n = self.order.lcm(&other.order);
        assert!(n <= MAX_ORDER, "cyclotomic order {n} exceeds {MAX_ORDER}");
        n
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Field automorphism `zeta_n -> zeta_n^j` of `Q(zeta_n)`, applied to a
    /// value whose stored order divides `n`.
    pub fn galois_apply(&self, j: i64, n: u32) -> Result<Self> {
        if n == 0 || n % self.order != 0 {
            return Err(Error::InvalidInput(format!(
                "value of order {} does not lie in Q(zeta_{n})",
                self.order
            )));
        }
        if j.gcd(&(n as i64)) != 1 {
            return Err(Error::NotAUnit { r: j, m: n as u64 });
        }
        Ok(self.galois_unchecked(j.rem_euclid(self.order as i64) as usize))
    }

    fn galois_unchecked(&self, j: usize) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as usize;
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[(i * j) % n] += c;
            }
        }
        Self::canonical(self.order, v)
    }

    /// Complex conjugation, `zeta_n -> zeta_n^(n-1)`.
    pub fn conjugate(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        self.galois_unchecked(self.order as usize - 1)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Total order used for deterministic sorting: compares coordinate
    /// vectors at the common order lexicographically.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        let n = self.merged_order(other);
        self.coeffs_at(n).cmp(&other.coeffs_at(n))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(|c| rational::to_pair(c).to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let order = v
            .get("order")
            .and_then(|o| o.as_u64())
            .ok_or_else(|| Error::InvalidInput("cyclotomic: missing order".into()))?;
        let coeffs = v
            .get("coeffs")
            .and_then(|c| c.as_array())
            .ok_or_else(|| Error::InvalidInput("cyclotomic: missing coeffs".into()))?
            .iter()
            .map(rational::from_pair)
            .collect::<Result<Vec<_>>>()?;
        Self::new(order as u32, coeffs)
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.order == other.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            return Self::canonical(self.order, coeffs);
        }
        let n = self.merged_order(other);
        let mut a = self.coeffs_at(n);
        let b = other.coeffs_at(n);
        for (x, y) in a.iter_mut().zip(&b) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
        Self::canonical(n, a)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.order == 1 {
            return other.scale(&self.coeffs[0]);
        }
        if other.order == 1 {
            return self.scale(&other.coeffs[0]);
        }
        let n = self.merged_order(other);
        let a = self.coeffs_at(n);
        let b = other.coeffs_at(n);
        let nu = n as usize;
        let mut v = vec![Rational::zero(); nu];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[(i + j) % nu] += x * y;
                }
            }
        }
        Self::canonical(n, v)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let n = self.merged_order(other);
        self.coeffs_at(n) == other.coeffs_at(n)
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for Cyclotomic {
    fn from(x: Rational) -> Self {
        Self::from_rational(x)
    }
}

impl From<i64> for Cyclotomic {
    fn from(x: i64) -> Self {
        Self::from_int(x)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
            if self.order > 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
                let c0 = std::mem::take(&mut self.coeffs[0]);
                *self = Self::from_rational(c0);
            }
        } else {
            *self = self.add_impl(rhs, false);
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        *self = self.add_impl(rhs, true);
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = Cyclotomic::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "z{}^{i}", self.order)?,
                _ => write!(f, "({c})*z{}^{i}", self.order)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
