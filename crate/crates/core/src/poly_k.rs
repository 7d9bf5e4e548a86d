//! Polynomials in `k` whose coefficients are rational functions of `n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::bivar::BiPoly;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::Rat;

/// `coeffs[j]` is the coefficient of `k^j`; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PolyK {
    coeffs: Vec<RatN>,
}

impl PolyK {
    pub fn new(mut coeffs: Vec<RatN>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyK { coeffs }
    }

    pub fn zero() -> Self {
        PolyK { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatN::one())
    }

    pub fn constant(c: RatN) -> Self {
        Self::new(vec![c])
    }

    pub fn k() -> Self {
        Self::new(vec![RatN::zero(), RatN::one()])
    }

    /// `a*k + b`.
    pub fn linear(a: RatN, b: RatN) -> Self {
        Self::new(vec![b, a])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn coeffs(&self) -> &[RatN] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> RatN {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> RatN {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &RatN) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyK {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.lc().recip())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PolyK::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Rat::from_integer(BigInt::from(j))))
                .collect(),
        )
    }

    /// Substitutes `k` by a polynomial in `k`.
    pub fn compose(&self, inner: &PolyK) -> Self {
        let mut acc = PolyK::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &PolyK::constant(c.clone());
        }
        acc
    }

    /// `B(n, a*k + b*n + c)`.
    pub fn apply_affine(&self, a: &Rat, b: &Rat, c: &Rat) -> Self {
        let inner = PolyK::linear(
            RatN::constant(a.clone()),
            RatN::from_poly(PolyN::linear(b.clone(), c.clone())),
        );
        self.compose(&inner)
    }

    /// Substitutes `n -> a*n + b` in every coefficient.
    pub fn compose_n(&self, a: &Rat, b: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.compose_linear(a, b)).collect())
    }

    /// Value at `k = x`, where `x` is a rational function of `n`.
    pub fn eval_k(&self, x: &RatN) -> RatN {
        let mut acc = RatN::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Value at a point; `None` if a coefficient has a pole at `n0`.
    pub fn eval_point(&self, n0: &Rat, k0: &Rat) -> Option<Rat> {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * k0 + c.eval(n0)?;
        }
        Some(acc)
    }

    /// Euclidean division over `Q(n)`. Panics on a zero divisor.
    pub fn divrem(&self, d: &PolyK) -> (PolyK, PolyK) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() {
            return (PolyK::zero(), self.clone());
        }
        let dd = d.degree() as usize;
        let inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![RatN::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = &rem[i + j] - &(&c * dc);
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (PolyK::new(quot), PolyK::new(rem))
    }

    pub fn rem(&self, d: &PolyK) -> PolyK {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &PolyK) -> Option<PolyK> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd over `Q(n)`. Computed on primitive bivariate
    /// representatives to keep coefficient growth down.
    pub fn gcd(&self, other: &PolyK) -> PolyK {
        if self.is_zero() && other.is_zero() {
            return PolyK::zero();
        }
        let g = self.to_bipoly().gcd(&other.to_bipoly()).pp_k();
        PolyK::from_bipoly(&g).monic()
    }

    /// Extended gcd over `Q(n)`: `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &PolyK) -> (PolyK, PolyK, PolyK) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyK::one(), PolyK::zero());
        let (mut t0, mut t1) = (PolyK::zero(), PolyK::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, when they are coprime.
    pub fn inverse_mod(&self, m: &PolyK) -> Option<PolyK> {
        let r = self.rem(m);
        if r.is_zero() {
            return None;
        }
        // the content in n only inflates the remainder sequence
        let (unit, r) = r.canonical_associate();
        let (mut r0, mut r1) = (m.canonical_associate().1, r);
        let (mut s0, mut s1) = (PolyK::zero(), PolyK::one());
        while r1.degree() > 0 {
            let (q, rem) = r0.divrem(&r1);
            if rem.is_zero() {
                return None;
            }
            let (c, rem) = rem.canonical_associate();
            let s2 = (&s0 - &(&q * &s1)).scale(&c.recip());
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // now r1 = s1 * self / unit (mod m) is a unit of Q(n)
        let c = &r1.lc() * &unit;
        Some(s1.scale(&c.recip()).rem(m))
    }

    /// Yun's square-free decomposition: parts with multiplicities, monic,
    /// pairwise coprime; their product is `self` up to a unit of `Q(n)`.
    pub fn squarefree_decomp(&self) -> Vec<(PolyK, usize)> {
        assert!(!self.is_zero(), "square-free decomposition of zero");
        let mut out = Vec::new();
        if self.degree() < 1 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0).unwrap();
        let mut c = df.exact_div(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree() >= 1 {
            let a = b.gcd(&d);
            if a.degree() >= 1 {
                out.push((a.clone(), i));
            }
            b = b.exact_div(&a).unwrap();
            c = d.exact_div(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Clears denominators: `self = to_bipoly() / den` for the returned
    /// monic `den` (the lcm of coefficient denominators).
    pub fn to_bipoly_with_den(&self) -> (BiPoly, PolyN) {
        let mut den = PolyN::one();
        for c in &self.coeffs {
            if !c.den().is_one() {
                let g = den.gcd(c.den());
                den = &den * &c.den().exact_div(&g).unwrap();
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let m = den.exact_div(c.den()).unwrap();
                c.num() * &m
            })
            .collect();
        (BiPoly::new(coeffs), den)
    }

    /// A `Q[n][k]` multiple of `self` by a unit of `Q(n)`.
    pub fn to_bipoly(&self) -> BiPoly {
        self.to_bipoly_with_den().0
    }

    pub fn from_bipoly(b: &BiPoly) -> PolyK {
        PolyK::new(b.coeffs().iter().cloned().map(RatN::from_poly).collect())
    }

    /// The canonical associate: integer-primitive in `Z[n][k]` with positive
    /// leading coefficient. Returns `(unit, canonical)` with
    /// `self = unit * canonical`.
    pub fn canonical_associate(&self) -> (RatN, PolyK) {
        let (b, den) = self.to_bipoly_with_den();
        let content = b.content_n();
        let pp = b.pp_k();
        let (f, canon) = pp.int_normalize();
        let unit = RatN::new(content.scale(&f), den);
        (unit, PolyK::from_bipoly(&canon))
    }

    /// Whether every coefficient is a polynomial in `n`.
    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_poly())
    }

    /// lcm of the coefficient denominators as integers (for polynomial
    /// coefficients only).
    pub fn int_denominator(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.num().denom_lcm()))
    }

    pub fn canonical_cmp(&self, other: &PolyK) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    pub fn display_vars<'a>(&'a self, nvar: &'a str, kvar: &'a str) -> impl fmt::Display + 'a {
        DisplayK {
            p: self,
            nvar,
            kvar,
        }
    }
}

struct DisplayK<'a> {
    p: &'a PolyK,
    nvar: &'a str,
    kvar: &'a str,
}

impl fmt::Display for DisplayK<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.display_var(self.nvar).to_string();
            match j {
                0 => write!(f, "({cs})")?,
                1 if c.is_one() => write!(f, "{}", self.kvar)?,
                1 => write!(f, "({cs})*{}", self.kvar)?,
                _ if c.is_one() => write!(f, "{}^{j}", self.kvar)?,
                _ => write!(f, "({cs})*{}^{j}", self.kvar)?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for PolyK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_vars("n", "k"))
    }
}

impl Add for &PolyK {
    type Output = PolyK;
    fn add(self, rhs: &PolyK) -> PolyK {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyK::new((0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &PolyK {
    type Output = PolyK;
    fn sub(self, rhs: &PolyK) -> PolyK {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        PolyK::new((0..len).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl Mul for &PolyK {
    type Output = PolyK;
    fn mul(self, rhs: &PolyK) -> PolyK {
        if self.is_zero() || rhs.is_zero() {
            return PolyK::zero();
        }
        let mut out = vec![RatN::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        PolyK::new(out)
    }
}

impl Neg for &PolyK {
    type Output = PolyK;
    fn neg(self) -> PolyK {
        PolyK {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

forward_binops!(PolyK);

/// Shorthand used in tests and examples: builds a `PolyK` from a
/// `BiPoly` given by integer rows.
pub fn polyk_from_ints(rows: &[&[i64]]) -> PolyK {
    PolyK::from_bipoly(&BiPoly::from_ints(rows))
}
