//! Exact rational scalars.
//!
//! [`Rat`] is `num_rational::BigRational`, which already keeps the reduced,
//! positive-denominator form. This module adds the handful of helpers the
//! rest of the crate needs on top of it.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rat = num_rational::BigRational;
pub type Int = BigInt;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_rat(n: &BigInt) -> Rat {
    Rat::from_integer(n.clone())
}

/// Exact `g`-th root of a rational, if one exists. For even `g` the
/// non-negative root is returned.
pub fn rational_root(x: &Rat, g: u32) -> Option<Rat> {
    if g == 0 {
        return None;
    }
    if g == 1 || x.is_zero() {
        return Some(x.clone());
    }
    if x.is_negative() && g % 2 == 0 {
        return None;
    }
    let num = exact_int_root(&x.numer().abs(), g)?;
    let den = exact_int_root(x.denom(), g)?;
    let root = Rat::new(num, den);
    Some(if x.is_negative() { -root } else { root })
}

fn exact_int_root(x: &BigInt, g: u32) -> Option<BigInt> {
    let r = x.nth_root(g);
    if num_traits::pow(r.clone(), g as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// `x^e` for a possibly negative exponent.
pub fn rat_pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// gcd of two rationals: the largest rational `g` with `x/g`, `y/g` integers.
pub fn rat_gcd(x: &Rat, y: &Rat) -> Rat {
    if x.is_zero() {
        return y.abs();
    }
    if y.is_zero() {
        return x.abs();
    }
    Rat::new(x.numer().gcd(y.numer()), x.denom().lcm(y.denom()))
}

pub fn rat_lcm(x: &Rat, y: &Rat) -> Rat {
    if x.is_zero() || y.is_zero() {
        return Rat::zero();
    }
    Rat::new(x.numer().lcm(y.numer()), x.denom().gcd(y.denom()))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Floor of a rational as a big integer.
pub fn floor(x: &Rat) -> BigInt {
    x.numer().div_floor(x.denom())
}

/// Conversion to `i64` for values known to be small.
pub fn to_i64(x: &BigInt) -> Option<i64> {
    use num_traits::ToPrimitive;
    x.to_i64()
}

pub fn sign(x: &Rat) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots() {
        assert_eq!(rational_root(&ratio(8, 27), 3), Some(ratio(2, 3)));
        assert_eq!(rational_root(&ratio(-8, 27), 3), Some(ratio(-2, 3)));
        assert_eq!(rational_root(&ratio(4, 9), 2), Some(ratio(2, 3)));
        assert_eq!(rational_root(&ratio(-4, 9), 2), None);
        assert_eq!(rational_root(&ratio(2, 1), 2), None);
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(rat_gcd(&ratio(1, 2), &ratio(1, 3)), ratio(1, 6));
        assert_eq!(rat_lcm(&ratio(1, 2), &rat(2)), rat(2));
        assert_eq!(rat_lcm(&rat(1), &rat(2)), rat(2));
        assert_eq!(floor(&ratio(-1, 2)), BigInt::from(-1));
    }
}
