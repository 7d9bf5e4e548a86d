//! Bivariate polynomials in `Q[n][k]`, dense in `k`.
//!
//! This is the storage type behind [`crate::RatNK`] and the workhorse of
//! factorization. Coefficients are [`PolyN`]s in `n`, indexed by the power
//! of `k`. The term order used for canonical forms is `k`-major, then `n`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly_n::PolyN;
use crate::scalar::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BiPoly {
    coeffs: Vec<PolyN>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<PolyN>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly { coeffs }
    }

    pub fn zero() -> Self {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_n(PolyN::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_n(PolyN::constant(c))
    }

    pub fn from_n(p: PolyN) -> Self {
        Self::new(vec![p])
    }

    pub fn k() -> Self {
        Self::new(vec![PolyN::zero(), PolyN::one()])
    }

    pub fn n() -> Self {
        Self::from_n(PolyN::x())
    }

    /// Builds from integer coefficients `c[j][i]` of `n^i k^j`.
    pub fn from_ints(c: &[&[i64]]) -> Self {
        Self::new(c.iter().map(|row| PolyN::from_ints(row)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[PolyN] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> PolyN {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    /// Degree in `k`; `-1` for zero.
    pub fn deg_k(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Degree in `n`; `-1` for zero.
    pub fn deg_n(&self) -> isize {
        self.coeffs.iter().map(|c| c.degree()).max().unwrap_or(-1)
    }

    pub fn lc_k(&self) -> PolyN {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Leading rational coefficient under the term order.
    pub fn leading_rat(&self) -> Rat {
        self.lc_k().lc()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_n(&self, p: &PolyN) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * p).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BiPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, n0: &Rat, k0: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * k0 + c.eval(n0);
        }
        acc
    }

    /// Specializes `n = n0`, giving a polynomial in `k`.
    pub fn eval_n(&self, n0: &Rat) -> PolyN {
        PolyN::new(self.coeffs.iter().map(|c| c.eval(n0)).collect())
    }

    /// Swaps the roles of `n` and `k`.
    pub fn transpose(&self) -> BiPoly {
        let dn = self.deg_n().max(0) as usize;
        let mut rows = vec![vec![Rat::zero(); self.coeffs.len()]; dn + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            for (i, x) in c.coeffs().iter().enumerate() {
                rows[i][j] = x.clone();
            }
        }
        BiPoly::new(rows.into_iter().map(PolyN::new).collect())
    }

    pub fn derivative_k(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c.scale(&Rat::from_integer(BigInt::from(j))))
                .collect(),
        )
    }

    /// Substitutes `n -> n + s`.
    pub fn shift_n(&self, s: &Rat) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| c.compose_linear(&Rat::one(), s))
                .collect(),
        )
    }

    /// Monic gcd in `Q[n]` of the `k`-coefficients.
    pub fn content_n(&self) -> PolyN {
        let mut g = PolyN::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the `n`-content.
    pub fn pp_k(&self) -> Self {
        let c = self.content_n();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_n(&c)
    }

    fn div_n(&self, c: &PolyN) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|x| x.exact_div(c).expect("content divides"))
                .collect(),
        )
    }

    /// Returns `(f, p)` with `self = f * p`, where `p` has integer
    /// coefficients with gcd 1 and positive leading coefficient.
    pub fn int_normalize(&self) -> (Rat, BiPoly) {
        if self.is_zero() {
            return (Rat::one(), BiPoly::zero());
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in &self.coeffs {
            for x in c.coeffs() {
                den = den.lcm(x.denom());
                num = num.gcd(x.numer());
            }
        }
        let mut f = Rat::new(num, den);
        if self.leading_rat().is_negative() {
            f = -f;
        }
        (f.clone(), self.scale(&f.recip()))
    }

    /// Integer-primitive form with positive leading coefficient.
    pub fn canonical(&self) -> BiPoly {
        self.int_normalize().1
    }

    /// Pseudo-remainder with respect to `k`.
    pub fn prem(&self, d: &BiPoly) -> BiPoly {
        assert!(!d.is_zero());
        let dd = d.deg_k();
        let ld = d.lc_k();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_k() >= dd {
            let shift = (r.deg_k() - dd) as usize;
            let lr = r.lc_k();
            let mut sub = vec![PolyN::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &lr));
            r = &r.scale_n(&ld) - &BiPoly::new(sub);
        }
        r
    }

    /// gcd in `Q[n, k]`, returned in canonical form (`0` if both are zero).
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.canonical();
        }
        if other.is_zero() {
            return self.canonical();
        }
        let c = self.content_n().gcd(&other.content_n());
        let mut a = self.pp_k();
        let mut b = other.pp_k();
        if a.deg_k() < b.deg_k() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() && b.deg_k() > 0 {
            let r = a.prem(&b);
            a = b;
            b = r.pp_k().canonical();
        }
        let g = if b.is_zero() { a } else { BiPoly::one() };
        g.scale_n(&c).canonical()
    }

    /// Exact quotient in `Q[n][k]`, if `d` divides `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(BiPoly::zero());
        }
        if self.deg_k() < d.deg_k() {
            return None;
        }
        let dd = d.deg_k() as usize;
        let ld = d.lc_k();
        let mut r = self.coeffs.clone();
        let mut q = vec![PolyN::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            if r[i + dd].is_zero() {
                continue;
            }
            let c = r[i + dd].exact_div(&ld)?;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[i + j] = &r[i + j] - &(&c * dc);
            }
            q[i] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(BiPoly::new(q))
        } else {
            None
        }
    }

    pub fn canonical_cmp(&self, other: &BiPoly) -> Ordering {
        self.deg_k().cmp(&other.deg_k()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                match a.canonical_cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.coeffs().iter().all(|x| x.is_integer()))
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            for (i, x) in c.coeffs().iter().enumerate().rev() {
                if x.is_zero() {
                    continue;
                }
                let neg = x.is_negative();
                let a = x.abs();
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {} ", if neg { "-" } else { "+" })?;
                }
                first = false;
                let mut parts: Vec<String> = Vec::new();
                if !a.is_one() || (i == 0 && j == 0) {
                    parts.push(a.to_string());
                }
                match i {
                    0 => {}
                    1 => parts.push("n".into()),
                    _ => parts.push(format!("n^{i}")),
                }
                match j {
                    0 => {}
                    1 => parts.push("k".into()),
                    _ => parts.push(format!("k^{j}")),
                }
                write!(f, "{}", parts.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..len).map(|j| &self.coeff(j) + &rhs.coeff(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        BiPoly::new((0..len).map(|j| &self.coeff(j) - &rhs.coeff(j)).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        if self.is_zero() || rhs.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![PolyN::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

forward_binops!(BiPoly);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    // k^2 - n^2
    fn diff_squares() -> BiPoly {
        BiPoly::from_ints(&[&[0, 0, -1], &[], &[1]])
    }

    #[test]
    fn gcd_and_division() {
        let a = diff_squares();
        let b = BiPoly::from_ints(&[&[0, -1], &[1]]); // k - n
        assert_eq!(a.gcd(&b), b);
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, BiPoly::from_ints(&[&[0, 1], &[1]]));
        let c = BiPoly::from_ints(&[&[1], &[1]]);
        assert!(a.exact_div(&c).is_none());
        assert!(b.gcd(&c).is_one());
    }

    #[test]
    fn gcd_with_n_content() {
        // (n+1)*(k+n) and (n+1)*(n-1)
        let n1 = PolyN::from_ints(&[1, 1]);
        let a = BiPoly::from_ints(&[&[0, 1], &[1]]).scale_n(&n1);
        let b = BiPoly::from_n(&n1 * &PolyN::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&b), BiPoly::from_n(n1));
    }

    #[test]
    fn display_and_eval() {
        let p = BiPoly::from_ints(&[&[1], &[0, 1], &[], &[1]]);
        assert_eq!(p.to_string(), "k^3 + n*k + 1");
        assert_eq!(p.eval(&rat(4), &rat(1)), rat(6));
    }
}
