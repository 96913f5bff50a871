//! Exact rational scalars and their wire representation.
//!
//! Every quantity in this crate is a [`Scalar`]: an arbitrary-precision
//! rational kept in canonical reduced form (gcd 1, positive denominator),
//! which `num_rational::BigRational` maintains by construction. Rationals
//! cross the wire as `"p/q"` strings (plain `"p"` when the denominator
//! is one); floats are never serialized.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// Integer-valued scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `n/d`. Panics if `d == 0`; callers pass literal constants.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p/q" or "p". Rejects zero denominators and malformed input.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad rational numerator {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("bad rational denominator {s:?}")))?;
    if d.is_zero() {
        return Err(Error::InvalidArgument(format!(
            "zero denominator in rational {s:?}"
        )));
    }
    Ok(BigRational::new(n, d))
}

/// Canonical wire form: "p" when the denominator is one, "p/q" otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn scalar_to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Fall back through a quotient of f64s; only reached for huge values.
        let n = x
            .numer()
            .to_f64()
            .unwrap_or(f64::MAX * x.numer().signum().to_f64().unwrap_or(1.0));
        let d = x.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}
