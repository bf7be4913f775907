//! Fixed-precision real helpers on top of exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Q = BigRational;

fn scale(digits: u32) -> BigInt {
    BigInt::from(10).pow(digits)
}

/// `floor(sqrt(x) * 10^digits) / 10^digits`; `None` for negative `x`.
pub fn sqrt(x: &Q, digits: u32) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let s = scale(digits);
    let n = x.numer() * &s * &s / x.denom();
    Some(Q::new(n.sqrt(), s))
}

/// `atan(1/k)` scaled by `s`, by its alternating series.
fn atan_inv(k: u64, s: &BigInt) -> BigInt {
    let k = BigInt::from(k);
    let k2 = &k * &k;
    let mut power = s / &k;
    let mut sum = power.clone();
    let mut n = 1u64;
    while !power.is_zero() {
        power /= &k2;
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// π to `digits` decimals (Machin's formula, 10 guard digits).
pub fn pi(digits: u32) -> Q {
    let s = scale(digits + 10);
    let v = atan_inv(5, &s) * 16 - atan_inv(239, &s) * 4;
    let v = v / BigInt::from(10).pow(10);
    Q::new(v, scale(digits))
}

/// Rounds half away from zero to `digits` decimals and prints all of them.
pub fn to_decimal(x: &Q, digits: usize) -> String {
    let s = scale(digits as u32);
    let scaled = x.abs() * Q::from_integer(s.clone());
    let rounded = (scaled + Q::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let int = &rounded / &s;
    let frac = &rounded % &s;
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
    }
}

/// Best `f64` for a rational; finite for anything in range.
pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Rational approximation of a finite `f64` (exact binary value).
pub fn from_f64(x: f64) -> Q {
    Q::from_float(x).expect("finite float")
}

/// Truncates to `digits` decimals; keeps later powers small.
pub fn round_to(x: &Q, digits: u32) -> Q {
    let s = Q::from_integer(scale(digits));
    (x * &s).round() / s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        assert_eq!(to_decimal(&pi(40), 30), "3.141592653589793238462643383280");
    }

    #[test]
    fn sqrt_two() {
        let r = sqrt(&Q::from_integer(2.into()), 30).unwrap();
        assert_eq!(to_decimal(&r, 20), "1.41421356237309504880");
        assert!(sqrt(&Q::from_integer((-1).into()), 10).is_none());
    }

    #[test]
    fn decimal_rounding() {
        let x = Q::new(2.into(), 3.into());
        assert_eq!(to_decimal(&x, 4), "0.6667");
        assert_eq!(to_decimal(&-x, 2), "-0.67");
        assert_eq!(to_decimal(&Q::new(27.into(), 4.into()), 3), "6.750");
    }
}
