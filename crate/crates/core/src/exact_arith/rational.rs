use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for `num / den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"3"`, `"-2/3"`, `"0.25"` or `"1e-3"` into an exact rational.
///
/// Decimal strings are read exactly (`"0.1"` is `1/10`, not the nearest
/// double).
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }

    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (&t[..], 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().map_err(|_| bad())?);
    let shift = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let power = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if neg { -value } else { value })
}

/// Returns the exact square root of `q` when it is a perfect square.
pub fn exact_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

/// True when `q` has a terminating decimal expansion.
pub(crate) fn is_decimal(q: &Rational) -> bool {
    let mut d = q.denom().clone();
    for p in [2u32, 5] {
        let p = BigInt::from(p);
        while (&d % &p).is_zero() {
            d /= &p;
        }
    }
    d.is_one()
}

/// Formats a terminating-decimal rational exactly, e.g. `-3/8` as `-0.375`.
pub(crate) fn to_decimal_string(q: &Rational) -> Option<String> {
    if !is_decimal(q) {
        return None;
    }
    if q.is_integer() {
        return Some(q.numer().to_string());
    }
    let mut scale = 0usize;
    let ten = BigInt::from(10);
    let mut scaled = q.abs();
    while !scaled.is_integer() {
        scaled *= Rational::from_integer(ten.clone());
        scale += 1;
    }
    let digits = scaled.numer().to_string();
    let digits = format!("{digits:0>width$}", width = scale + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - scale);
    let sign = if q.is_negative() { "-" } else { "" };
    Some(format!("{sign}{int_part}.{frac_part}"))
}
