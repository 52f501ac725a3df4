//! Exact rational arithmetic helpers.
//!
//! All exact quantities in this crate are arbitrary-precision rationals.
//! [`Rational`] is an alias for [`num::BigRational`], which keeps values in
//! lowest terms with a positive denominator by construction.  This module
//! adds the small conveniences the rest of the crate needs: literal
//! constructors, string parsing (fractions, integers, and exact decimals),
//! and conversions.

use num::bigint::BigInt;
use num::rational::Ratio;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rational = num::BigRational;

/// Rational from an integer numerator and denominator.
///
/// # Panics
///
/// Panics if `den == 0`; use only with literal denominators.
pub fn rat(num: i64, den: i64) -> Rational {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Ratio::from_integer(BigInt::from(n))
}

/// `true` iff `q` has denominator 1.
pub fn is_integer(q: &Rational) -> bool {
    q.is_integer()
}

/// Nearest `f64` to `q` (used only for Monte Carlo summaries).
pub fn to_f64(q: &Rational) -> f64 {
    // `BigInt::to_f64` never returns `None` (it saturates to ±inf), so the
    // ratio conversion is total as well.
    q.to_f64().unwrap_or_else(|| {
        let num = q.numer().to_f64().unwrap_or(f64::NAN);
        let den = q.denom().to_f64().unwrap_or(f64::NAN);
        num / den
    })
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// `n!` as a rational, for use in scalar formulas.
pub fn factorial_rat(n: u64) -> Rational {
    Ratio::from_integer(factorial(n))
}

/// Parses a rational literal.
///
/// Accepted forms, each with an optional leading sign:
///
/// * fractions `"p/q"` with integer `p`, `q` and `q != 0` (e.g. `"-7/2"`),
/// * integers (e.g. `"42"`),
/// * exact decimals (e.g. `"0.125"` parses to `1/8`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let raw = s.trim();
    let err = || Error::InvalidRational(raw.to_string());
    if raw.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = raw.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| err())?;
        let den: BigInt = den.trim().parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((whole, frac)) = raw.split_once('.') {
        let negative = whole.starts_with('-');
        let whole = whole.strip_prefix(['-', '+']).unwrap_or(whole);
        if !whole.chars().all(|c| c.is_ascii_digit())
            || !frac.chars().all(|c| c.is_ascii_digit())
            || (whole.is_empty() && frac.is_empty())
        {
            return Err(err());
        }
        let whole_value: BigInt = if whole.is_empty() {
            BigInt::zero()
        } else {
            whole.parse().map_err(|_| err())?
        };
        let mut value = Ratio::from_integer(whole_value);
        if !frac.is_empty() {
            let frac_value: BigInt = frac.parse().map_err(|_| err())?;
            let scale = BigInt::from(10u32).pow(frac.len() as u32);
            value += Ratio::new(frac_value, scale);
        }
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    let n: BigInt = raw.parse().map_err(|_| err())?;
    Ok(Ratio::from_integer(n))
}

/// Canonical string form: `"p/q"` in lowest terms, or just `"p"` for
/// integers.  Round-trips through [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// `|q|`.
pub fn abs(q: &Rational) -> Rational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_constructors_reduce() {
        assert_eq!(rat(2, 4), rat(1, 2));
        assert_eq!(rat(-2, -4), rat(1, 2));
        assert_eq!(rat(2, -4), rat(-1, 2));
        assert_eq!(int(7), rat(7, 1));
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational(" -7/2 ").unwrap(), rat(-7, 2));
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("42").unwrap(), int(42));
        assert_eq!(parse_rational("-13").unwrap(), int(-13));
        assert_eq!(parse_rational("0.125").unwrap(), rat(1, 8));
        assert_eq!(parse_rational("0.3").unwrap(), rat(3, 10));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2.").unwrap(), int(2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for s in ["", "abc", "1/0", "1//2", "1.2.3", "--3", "1e3", "."] {
            assert!(parse_rational(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn formatting_round_trips() {
        for q in [rat(1, 2), int(-3), rat(-22, 7), int(0), rat(355, 113)] {
            let s = format_rational(&q);
            assert_eq!(parse_rational(&s).unwrap(), q);
        }
        assert_eq!(format_rational(&rat(1, 2)), "1/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(format_rational(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(1), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(10), BigInt::from(3_628_800u64));
        assert_eq!(factorial_rat(4), int(24));
    }

    #[test]
    fn f64_conversion_is_close() {
        assert_eq!(to_f64(&rat(1, 2)), 0.5);
        assert_eq!(to_f64(&int(-3)), -3.0);
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
