//! Bivariate rational functions `F(n, k)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bivar::BiPoly;
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::Rat;

/// `num/den` over `Z[n, k]`: coprime, no common integer factor, `den`
/// with positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatNK {
    num: BiPoly,
    den: BiPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pole at n = {n}, k = {k}")]
pub struct PoleAt {
    pub n: Rat,
    pub k: Rat,
}

impl RatNK {
    /// Normalizing constructor. Panics if `den` is zero.
    pub fn new(num: BiPoly, den: BiPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        Self::from_coprime(num, den)
    }

    /// Fixes up scaling for an already coprime pair.
    fn from_coprime(num: BiPoly, den: BiPoly) -> Self {
        let (fd, den) = den.int_normalize();
        let num = num.scale(&fd.recip());
        // clear denominators of num jointly, then drop any common integer
        let mut l = BigInt::one();
        let mut g = BigInt::zero();
        for c in num.coeffs() {
            for x in c.coeffs() {
                l = l.lcm(x.denom());
            }
        }
        let lr = Rat::from_integer(l);
        let num = num.scale(&lr);
        let den = den.scale(&lr);
        for p in [&num, &den] {
            for c in p.coeffs() {
                for x in c.coeffs() {
                    g = g.gcd(x.numer());
                }
            }
        }
        let gr = Rat::from_integer(g).recip();
        RatNK {
            num: num.scale(&gr),
            den: den.scale(&gr),
        }
    }

    pub fn zero() -> Self {
        RatNK {
            num: BiPoly::zero(),
            den: BiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_bipoly(BiPoly::one())
    }

    pub fn from_bipoly(p: BiPoly) -> Self {
        Self::from_coprime(p, BiPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bipoly(BiPoly::constant(Rat::from_integer(c.into())))
    }

    pub fn from_rat(c: Rat) -> Self {
        Self::from_bipoly(BiPoly::constant(c))
    }

    pub fn n() -> Self {
        Self::from_bipoly(BiPoly::n())
    }

    pub fn k() -> Self {
        Self::from_bipoly(BiPoly::k())
    }

    /// From a polynomial in `k` over `Q(n)`.
    pub fn from_polyk(p: &PolyK) -> Self {
        let (b, den) = p.to_bipoly_with_den();
        RatNK::new(b, BiPoly::from_n(den))
    }

    /// `num / den` for two polynomials in `k` over `Q(n)`.
    pub fn from_polyk_ratio(num: &PolyK, den: &PolyK) -> Self {
        let (a, da) = num.to_bipoly_with_den();
        let (b, db) = den.to_bipoly_with_den();
        RatNK::new(a.scale_n(&db), b.scale_n(&da))
    }

    pub fn from_ratn(r: &RatN) -> Self {
        RatNK::new(BiPoly::from_n(r.num().clone()), BiPoly::from_n(r.den().clone()))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether the value is free of `k`.
    pub fn as_ratn(&self) -> Option<RatN> {
        if self.num.deg_k() <= 0 && self.den.deg_k() == 0 {
            Some(RatN::new(self.num.coeff(0), self.den.coeff(0)))
        } else {
            None
        }
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// Integer power; `None` for a negative power of zero.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs() as usize;
        Some(Self::from_coprime(base.num.pow(e), base.den.pow(e)))
    }

    /// Exact value at `(n0, k0)`.
    pub fn eval_point(&self, n0: &Rat, k0: &Rat) -> Result<Rat, PoleAt> {
        let d = self.den.eval(n0, k0);
        if d.is_zero() {
            return Err(PoleAt {
                n: n0.clone(),
                k: k0.clone(),
            });
        }
        Ok(self.num.eval(n0, k0) / d)
    }

    /// Numerator and denominator as polynomials in `k` over `Q(n)`.
    pub fn to_polyk_pair(&self) -> (PolyK, PolyK) {
        (
            PolyK::from_bipoly(&self.num),
            PolyK::from_bipoly(&self.den),
        )
    }
}

impl Default for RatNK {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatNK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl Add for &RatNK {
    type Output = RatNK;
    fn add(self, rhs: &RatNK) -> RatNK {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatNK::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RatNK::zero();
            }
            return RatNK::from_coprime(num, &self.den * &rhs.den);
        }
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        RatNK::new(&(&self.num * &b) + &(&rhs.num * &a), &(&a * &b) * &g)
    }
}

impl Sub for &RatNK {
    type Output = RatNK;
    fn sub(self, rhs: &RatNK) -> RatNK {
        self + &(-rhs)
    }
}

impl Mul for &RatNK {
    type Output = RatNK;
    fn mul(self, rhs: &RatNK) -> RatNK {
        if self.is_zero() || rhs.is_zero() {
            return RatNK::zero();
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        RatNK::from_coprime(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &RatNK {
    type Output = RatNK;
    /// Panics on division by zero; use [`RatNK::recip`] to check first.
    fn div(self, rhs: &RatNK) -> RatNK {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatNK {
    type Output = RatNK;
    fn neg(self) -> RatNK {
        RatNK {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

forward_binops!(RatNK);
forward_div!(RatNK);

/// `1/B(n, k)` for a polynomial given as integer rows; used in tests.
pub fn recip_of(b: &BiPoly) -> RatNK {
    RatNK::new(BiPoly::one(), b.clone())
}

/// Turns a polynomial in `n` into a `RatNK`.
pub fn from_polyn(p: &PolyN) -> RatNK {
    RatNK::from_bipoly(BiPoly::from_n(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    fn b_cubic() -> BiPoly {
        BiPoly::from_ints(&[&[1], &[0, 1], &[], &[1]])
    }

    #[test]
    fn eval_points() {
        let f = recip_of(&BiPoly::from_ints(&[&[1], &[1]]));
        assert_eq!(f.eval_point(&rat(5), &rat(1)), Ok(ratio(1, 2)));
        assert!(f.eval_point(&rat(5), &rat(-1)).is_err());

        // 1/B(n,k) - 1/B(n,n-k) at n = 4, k = 1
        let b = b_cubic();
        let reflected = PolyK::from_bipoly(&b)
            .apply_affine(&rat(-1), &rat(1), &rat(0))
            .to_bipoly();
        let f = &recip_of(&b) - &recip_of(&reflected);
        assert_eq!(f.eval_point(&rat(4), &rat(1)), Ok(ratio(17, 120)));
    }

    #[test]
    fn canonical_forms() {
        // (2k + 2)/(4k + 4) = 1/2
        let f = RatNK::new(
            BiPoly::from_ints(&[&[2], &[2]]),
            BiPoly::from_ints(&[&[4], &[4]]),
        );
        assert_eq!(f, RatNK::from_rat(ratio(1, 2)));
        assert_eq!(f.den(), &BiPoly::from_ints(&[&[2]]));
        // sign goes to the numerator
        let g = RatNK::new(BiPoly::one(), BiPoly::from_ints(&[&[0, 1], &[-1]]));
        assert_eq!(g.num(), &BiPoly::from_ints(&[&[-1]]));
        let z = &g - &g;
        assert!(z.is_zero());
        assert_eq!(z, RatNK::zero());
    }

    #[test]
    fn field_ops() {
        let a = recip_of(&BiPoly::from_ints(&[&[1], &[1]]));
        let b = recip_of(&BiPoly::from_ints(&[&[2], &[1]]));
        let s = &a - &b;
        let expect = RatNK::new(
            BiPoly::one(),
            &BiPoly::from_ints(&[&[1], &[1]]) * &BiPoly::from_ints(&[&[2], &[1]]),
        );
        assert_eq!(s, expect);
        assert_eq!(&(&s / &a) * &a, s);
        assert_eq!(a.pow(-2).unwrap(), RatNK::from_bipoly(BiPoly::from_ints(&[&[1], &[1]]).pow(2)));
    }
}
