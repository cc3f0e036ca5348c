//! Arbitrary-precision rationals and their string form.
//!
//! The canonical string form is `"p/q"` with `gcd(|p|, q) = 1` and `q > 0`,
//! shortened to `"p"` when `q = 1`. This is the wire format used by every
//! JSON schema in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational number. Always stored reduced with a positive denominator;
/// the canonical zero is `0/1`.
pub type Rational = num_rational::BigRational;

/// Builds a rational from machine integers. Panics on `denom == 0`.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Builds a rational integer.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses the canonical `"p/q"` (or `"p"`) form. Whitespace is not accepted.
pub fn rat_from_str(text: &str) -> Result<Rational, RationalParseError> {
    let mk_err = || RationalParseError {
        input: text.to_string(),
    };
    let (num_str, den_str) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| mk_err())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| mk_err())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(mk_err());
    }
    Ok(Rational::new(numer, denom))
}

/// Renders the canonical `"p/q"` form (`"p"` when the denominator is 1).
pub fn rat_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` significant digits, for report output.
pub fn rat_to_decimal(r: &Rational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    // Scale so that the integer part carries `digits` significant digits.
    let mut exp10: i64 = 0;
    let ten = Rational::from_integer(BigInt::from(10));
    let one = Rational::one();
    let mut x = a;
    while x >= ten {
        x /= ten.clone();
        exp10 += 1;
    }
    while x < one {
        x *= ten.clone();
        exp10 -= 1;
    }
    // Now 1 <= x < 10 and value = x * 10^exp10.
    let scaled = x * ten.pow(digits as i32 - 1);
    let rounded = scaled.round().to_integer();
    let mut ds: Vec<u8> = rounded.to_string().into_bytes();
    // Rounding 9.99... can add a digit.
    if ds.len() > digits {
        ds.truncate(digits);
        exp10 += 1;
    }
    let mantissa: String = {
        let (head, tail) = ds.split_at(1);
        let mut s = String::from_utf8_lossy(head).into_owned();
        if !tail.is_empty() {
            s.push('.');
            s.push_str(&String::from_utf8_lossy(tail));
        }
        s
    };
    let sign = if neg { "-" } else { "" };
    if exp10 == 0 {
        format!("{sign}{mantissa}")
    } else {
        format!("{sign}{mantissa}e{exp10}")
    }
}

/// Converts to `f64`, for tolerance comparisons in reports.
pub fn rat_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Rising factorial `(v)_n = v (v+1) ... (v+n-1)` over the rationals.
pub fn rising_factorial(v: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..n {
        acc *= v + Rational::from_integer(BigInt::from(i));
    }
    acc
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// Binomial coefficient `C(n, k)` as a rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    Rational::new(num, den)
}

/// Error for malformed rational strings.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{input}` (expected `p` or `p/q` with q != 0)")]
pub struct RationalParseError {
    pub input: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_reduced_with_positive_denominator() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat_to_string(&r), "-3/2");
        assert_eq!(rat_to_string(&rat(0, 7)), "0");
        assert_eq!(rat_to_string(&rat(5, 1)), "5");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0", "-3/2", "5", "22/7", "-1"] {
            let r = rat_from_str(text).unwrap();
            assert_eq!(rat_to_string(&r), text);
        }
        assert!(rat_from_str("1/0").is_err());
        assert!(rat_from_str("a/b").is_err());
        assert!(rat_from_str("1 /2").is_err());
        // Non-canonical input still parses, to its canonical value.
        assert_eq!(rat_to_string(&rat_from_str("4/6").unwrap()), "2/3");
    }

    #[test]
    fn rising_factorial_matches_direct_product() {
        assert_eq!(rising_factorial(&rat(-2, 1), 2), rat(2, 1));
        assert_eq!(rising_factorial(&rat(-2, 1), 3), rat(0, 1));
        assert_eq!(rising_factorial(&rat(1, 2), 0), rat(1, 1));
        assert_eq!(rising_factorial(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rat_to_decimal(&rat(1, 2), 5), "5.0000e-1");
        assert_eq!(rat_to_decimal(&rat(-1, 8), 3), "-1.25e-1");
        assert_eq!(rat_to_decimal(&rat(3, 1), 4), "3.000");
        assert_eq!(rat_to_decimal(&rat(0, 1), 4), "0");
    }
}
