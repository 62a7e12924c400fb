//! Arbitrary precision rationals and their JSON encoding.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns the value as `i64` if it is an integer in range.
pub fn to_i64(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::NotIntegral(x.to_string()));
    }
    x.to_integer()
        .to_i64()
        .ok_or_else(|| Error::NotIntegral(format!("{x} does not fit in 64 bits")))
}

/// `[num, den]` pair used by every JSON surface.
pub fn to_pair(x: &Rational) -> [serde_json::Value; 2] {
    [number(x.numer()), number(x.denom())]
}

fn number(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::String(n.to_string()),
    }
}

pub fn from_pair(v: &serde_json::Value) -> Result<Rational> {
    let parse = |x: &serde_json::Value| -> Result<BigInt> {
        match x {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::InvalidInput(format!("non-integer component {n}"))),
            serde_json::Value::String(s) => s
                .parse::<BigInt>()
                .map_err(|e| Error::InvalidInput(format!("bad integer {s:?}: {e}"))),
            other => Err(Error::InvalidInput(format!("expected integer, got {other}"))),
        }
    };
    match v {
        serde_json::Value::Array(items) if items.len() == 2 => {
            let num = parse(&items[0])?;
            let den = parse(&items[1])?;
            if den.is_zero() {
                return Err(Error::InvalidInput("zero denominator".into()));
            }
            Ok(Rational::new(num, den))
        }
        serde_json::Value::Number(_) | serde_json::Value::String(_) => {
            Ok(Rational::from_integer(parse(v)?))
        }
        other => Err(Error::InvalidInput(format!("expected [num, den], got {other}"))),
    }
}

/// Least common multiple of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector to a primitive integer vector with the same span.
pub fn primitive_integer_row(xs: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(xs);
    let mut row: Vec<BigInt> = xs
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut row {
            *x /= &g;
        }
    }
    row
}

pub fn is_positive(x: &Rational) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_roundtrip() {
        let x = rat(-6, 4);
        let v = serde_json::Value::Array(to_pair(&x).to_vec());
        assert_eq!(v, serde_json::json!([-3, 2]));
        assert_eq!(from_pair(&v).unwrap(), x);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(from_pair(&serde_json::json!([1, 0])).is_err());
    }

    #[test]
    fn primitive_row_clears_denominators() {
        let row = primitive_integer_row(&[rat(1, 2), rat(-1, 3), int(0)]);
        assert_eq!(row, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }
}
