//! Exact rationals and their string form `p/q`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = num_rational::BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Converts an integral rational to `i64`, `None` if it is not an integer or overflows.
pub fn to_i64(x: &Q) -> Option<i64> {
    if !x.is_integer() {
        return None;
    }
    i64::try_from(x.to_integer()).ok()
}

/// Always renders as `p/q` with `q >= 1`, integers included (`3/1`).
pub fn format(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse(s: &str) -> Result<Q> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn pow(x: &Q, e: u32) -> Q {
    num_traits::pow(x.clone(), e as usize)
}

pub fn factorial(n: u32) -> Q {
    Q::from_integer((1..=n as u64).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn format_keeps_denominator() {
        assert_eq!(format(&q(3)), "3/1");
        assert_eq!(format(&frac(-2, 4)), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert_eq!(parse(" 7 ").unwrap(), q(7));
    }

    proptest! {
        #[test]
        fn string_form_round_trips(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = frac(n, d);
            prop_assert_eq!(parse(&format(&x)).unwrap(), x);
        }
    }
}
