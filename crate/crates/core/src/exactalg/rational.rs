use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{AlgebraError, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses an integer, a `p/q` fraction or a decimal literal (`-0.007`,
/// `1.5e-3`) into an exact rational. Decimal literals are read as exact
/// decimal fractions, so `0.007` becomes `7/1000`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = |msg: &str| AlgebraError::Parse {
        pos: 0,
        msg: format!("{msg}: `{s}`"),
    };
    if s.is_empty() {
        return Err(err("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = parse_rational(num)?;
        let d = parse_rational(den)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        return Ok(n / d);
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(idx) => {
            let e: i64 = s[idx + 1..].parse().map_err(|_| err("bad exponent"))?;
            (&s[..idx], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err("no digits"));
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err("invalid digit"));
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(all_digits.parse::<BigInt>().unwrap_or_default());
    let shift = exponent - frac_part.len() as i64;
    let ten = Rational::from_integer(BigInt::from(10));
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= scale;
    } else {
        value /= scale;
    }
    Ok(if negative { -value } else { value })
}

/// Nearest-double conversion; falls back to a ratio of rounded parts when the
/// numerator or denominator overflows `f64` individually.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    let n = r.numer().bits() as i64;
    let d = r.denom().bits() as i64;
    let shift = (n - d).max(0) as u64;
    let scaled = r / Rational::from_integer(BigInt::from(1) << shift);
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}
