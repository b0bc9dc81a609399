//! Exact rational scalars.
//!
//! Every coefficient in this crate is a `BigRational`: arbitrary-precision,
//! always in reduced form with positive denominator (the `num-rational`
//! invariant). No floating point appears anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Scalar = BigRational;

/// Integer as a scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction `n/d` as a scalar.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn half() -> Scalar {
    frac(1, 2)
}

pub fn is_integer(x: &Scalar) -> bool {
    x.denom().is_one()
}

/// True iff `x` lies in `Z + 1/2`.
pub fn is_half_odd_integer(x: &Scalar) -> bool {
    *x.denom() == BigInt::from(2)
}

/// Parses `num` or `num/den` (e.g. `-3/2`).
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n
        .parse()
        .map_err(|_| format!("invalid numerator in `{s}`"))?;
    let d: BigInt = d
        .parse()
        .map_err(|_| format!("invalid denominator in `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(BigRational::new(n, d))
}

/// Renders as `num` or `num/den` (lossless round trip with [`parse_scalar`]).
pub fn format_scalar(x: &Scalar) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parity of `x - 1/2` for `x` in `Z + 1/2`; `None` otherwise.
pub fn half_integer_parity(x: &Scalar) -> Option<bool> {
    if !is_half_odd_integer(x) {
        return None;
    }
    let m = x - half();
    debug_assert!(is_integer(&m));
    let even = (m.numer() % BigInt::from(2)).is_zero();
    Some(even)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-7", "1/2", "-3/2", "22/7"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(format_scalar(&x), s);
        }
        assert_eq!(parse_scalar("4/2").unwrap(), int(2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("a/b").is_err());
    }

    #[test]
    fn half_integer_predicates() {
        assert!(is_half_odd_integer(&frac(3, 2)));
        assert!(is_half_odd_integer(&frac(-1, 2)));
        assert!(!is_half_odd_integer(&int(1)));
        assert!(!is_half_odd_integer(&frac(1, 4)));
        assert_eq!(half_integer_parity(&frac(1, 2)), Some(true));
        assert_eq!(half_integer_parity(&frac(3, 2)), Some(false));
        assert_eq!(half_integer_parity(&frac(5, 2)), Some(true));
        assert_eq!(half_integer_parity(&int(1)), None);
    }
}
