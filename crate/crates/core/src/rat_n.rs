//! Rational functions in one variable over Q.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly_n::PolyN;
use crate::scalar::Rat;

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatN {
    num: PolyN,
    den: PolyN,
}

impl RatN {
    /// Builds and normalizes `num/den`. Panics if `den` is zero.
    pub fn new(num: PolyN, den: PolyN) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lc = den.lc();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatN { num, den }
    }

    pub fn zero() -> Self {
        RatN {
            num: PolyN::zero(),
            den: PolyN::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(PolyN::one())
    }

    pub fn from_poly(p: PolyN) -> Self {
        RatN {
            num: p,
            den: PolyN::one(),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(PolyN::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rat::from_integer(c.into()))
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::from_poly(PolyN::x())
    }

    pub fn num(&self) -> &PolyN {
        &self.num
    }

    pub fn den(&self) -> &PolyN {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The value if this is a constant.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        RatN::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatN {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let e = e.unsigned_abs() as usize;
        RatN {
            num: base.num.pow(e),
            den: base.den.pow(e),
        }
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Substitutes `x -> a*x + b`.
    pub fn compose_linear(&self, a: &Rat, b: &Rat) -> Self {
        RatN::new(self.num.compose_linear(a, b), self.den.compose_linear(a, b))
    }

    /// Splits into polynomial part and proper part.
    pub fn poly_and_proper(&self) -> (PolyN, RatN) {
        let (q, r) = self.num.divrem(&self.den);
        (q, RatN::new(r, self.den.clone()))
    }

    pub fn canonical_cmp(&self, other: &RatN) -> Ordering {
        self.den
            .canonical_cmp(&other.den)
            .then_with(|| self.num.canonical_cmp(&other.num))
    }

    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        DisplayR { r: self, var }
    }
}

impl Default for RatN {
    fn default() -> Self {
        Self::zero()
    }
}

struct DisplayR<'a> {
    r: &'a RatN,
    var: &'a str,
}

impl fmt::Display for DisplayR<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r.den.is_one() {
            return write!(f, "{}", self.r.num.display_var(self.var));
        }
        write!(
            f,
            "({})/({})",
            self.r.num.display_var(self.var),
            self.r.den.display_var(self.var)
        )
    }
}

impl fmt::Display for RatN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_var("n"))
    }
}

impl Add for &RatN {
    type Output = RatN;
    fn add(self, rhs: &RatN) -> RatN {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatN::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            // coprime denominators: only the numerator can share factors with them
            return RatN::new(
                &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                &self.den * &rhs.den,
            );
        }
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        RatN::new(&(&self.num * &b) + &(&rhs.num * &a), &(&a * &b) * &g)
    }
}

impl Sub for &RatN {
    type Output = RatN;
    fn sub(self, rhs: &RatN) -> RatN {
        self + &(-rhs)
    }
}

impl Mul for &RatN {
    type Output = RatN;
    fn mul(self, rhs: &RatN) -> RatN {
        if self.is_zero() || rhs.is_zero() {
            return RatN::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatN::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.lc().recip();
        RatN {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Div for &RatN {
    type Output = RatN;
    fn div(self, rhs: &RatN) -> RatN {
        self * &rhs.recip()
    }
}

impl Neg for &RatN {
    type Output = RatN;
    fn neg(self) -> RatN {
        RatN {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_binops!(RatN);
forward_div!(RatN);

impl Zero for RatN {
    fn zero() -> Self {
        RatN::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatN {
    fn one() -> Self {
        RatN::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn lin(a: i64, b: i64) -> PolyN {
        PolyN::from_ints(&[b, a])
    }

    #[test]
    fn normalizes() {
        let r = RatN::new(PolyN::from_ints(&[-1, 0, 1]), lin(2, 2));
        assert_eq!(r.num(), &PolyN::new(vec![crate::scalar::ratio(-1, 2), crate::scalar::ratio(1, 2)]));
        assert_eq!(r.den(), &PolyN::one());
    }

    #[test]
    fn arithmetic() {
        let a = RatN::new(PolyN::one(), lin(1, 1));
        let b = RatN::new(PolyN::one(), lin(1, 2));
        let diff = &a - &b;
        assert_eq!(diff, RatN::new(PolyN::one(), &lin(1, 1) * &lin(1, 2)));
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(a.eval(&rat(1)), Some(crate::scalar::ratio(1, 2)));
        assert_eq!(a.eval(&rat(-1)), None);
    }
}
