//! Exact rational helpers shared by the geometry and linear-algebra code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number used for every coordinate and matrix entry.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` with integer `p`, `q` (optional sign on either).
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let trimmed = text.trim();
    let malformed = || RationalParseError::Malformed(text.to_string());
    let parse_int = |s: &str| -> Result<BigInt, RationalParseError> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        s.parse::<BigInt>().map_err(|_| malformed())
    };
    match trimmed.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(trimmed)?)),
        Some((p, q)) => {
            let numer = parse_int(p)?;
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(RationalParseError::ZeroDenominator(text.to_string()));
            }
            Ok(Rational::new(numer, denom))
        }
    }
}

/// Formats a rational as a reduced `"p"` or `"p/q"` literal with `q > 0`.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Scales a rational vector to coprime integers, keeping the direction.
/// The all-zero vector maps to itself.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let gcd = scaled.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return scaled;
    }
    scaled.into_iter().map(|v| v / &gcd).collect()
}

/// Flips signs so that the first nonzero entry is positive.
pub fn sign_normalize(values: &mut [BigInt]) {
    if let Some(first) = values.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            values.iter_mut().for_each(|v| *v = -&*v);
        }
    }
}

/// Integer square root (floor) of a nonnegative big integer.
pub(crate) fn isqrt(value: &BigInt) -> BigInt {
    value.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("1/-2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 4/8 ").unwrap(), frac(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "1.5", "a/b", "1/", "/2", "1/2/3", "--1", "1e3"] {
            assert!(
                matches!(parse_rational(bad), Err(RationalParseError::Malformed(_))),
                "{bad:?} accepted"
            );
        }
        assert!(matches!(
            parse_rational("1/0"),
            Err(RationalParseError::ZeroDenominator(_))
        ));
    }

    #[test]
    fn formats_reduced() {
        assert_eq!(format_rational(&frac(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(-7)), "-7");
        assert_eq!(format_rational(&frac(0, 5)), "0");
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[frac(1, 2), frac(-3, 4), int(0)]);
        assert_eq!(v, vec![BigInt::from(2), BigInt::from(-3), BigInt::from(0)]);
        let mut w = vec![BigInt::from(0), BigInt::from(-2), BigInt::from(5)];
        sign_normalize(&mut w);
        assert_eq!(w, vec![BigInt::from(0), BigInt::from(2), BigInt::from(-5)]);
    }
}
