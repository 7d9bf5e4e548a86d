//! Sums of the polynomial part via the binomial basis:
//! `k^j = sum_i S(j, i) i! C(k, i)` and `sum_{k=0}^{n} C(k, i) = C(n+1, i+1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::Rat;

/// `sum_{k=0}^{n} Q(n, k)`, exact for every integer `n >= 0`.
pub fn sum_polynomial_part(q: &PolyK) -> RatN {
    let mut acc = RatN::zero();
    for (j, c) in q.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(c * &RatN::from_poly(power_sum(j)));
    }
    acc
}

/// `sum_{k=0}^{n} k^j` as a polynomial in `n`.
pub fn power_sum(j: usize) -> PolyN {
    let stirling = stirling2_row(j);
    let mut acc = PolyN::zero();
    let mut fact = BigInt::one();
    for (i, s) in stirling.iter().enumerate() {
        if i > 0 {
            fact *= BigInt::from(i);
        }
        if s.is_zero() {
            continue;
        }
        let coef = Rat::from_integer(s * &fact);
        acc = &acc + &binomial_n_plus_1(i + 1).scale(&coef);
    }
    acc
}

/// Row `j` of the Stirling numbers of the second kind, `S(j, 0..=j)`.
fn stirling2_row(j: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for r in 1..=j {
        let mut next = vec![BigInt::zero(); r + 1];
        for (i, s) in row.iter().enumerate() {
            // S(r, i) = i S(r-1, i) + S(r-1, i-1)
            next[i] += s * BigInt::from(i);
            next[i + 1] += s;
        }
        row = next;
    }
    row
}

/// `C(n + 1, i)` as a polynomial in `n`.
fn binomial_n_plus_1(i: usize) -> PolyN {
    let mut acc = PolyN::one();
    let mut den = BigInt::one();
    for t in 0..i {
        // factor (n + 1 - t)
        acc = &acc * &PolyN::linear(Rat::one(), Rat::from_integer(BigInt::from(1 - t as i64)));
        den *= BigInt::from(t + 1);
    }
    acc.scale(&Rat::from_integer(den).recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn direct(q: &PolyK, n: i64) -> Rat {
        let f = crate::rat_nk::RatNK::from_polyk(q);
        (0..=n)
            .map(|k| f.eval_point(&Rat::from_integer(n.into()), &Rat::from_integer(k.into())).unwrap())
            .sum()
    }

    fn polyk(s: &str) -> PolyK {
        parse(s).unwrap().to_polyk_pair().0
    }

    #[test]
    fn classical_sums() {
        assert_eq!(sum_polynomial_part(&PolyK::one()), RatN::from_poly(PolyN::from_ints(&[1, 1])));
        let gauss = PolyN::from_ints(&[0, 1, 1]).scale(&Rat::new(1.into(), 2.into()));
        assert_eq!(sum_polynomial_part(&PolyK::k()), RatN::from_poly(gauss));
    }

    #[test]
    fn faulhaber_cross_check() {
        let q = polyk("n*k^2");
        let s = sum_polynomial_part(&q);
        for n in 0..=10 {
            assert_eq!(s.eval(&Rat::from_integer(n.into())).unwrap(), direct(&q, n));
        }
        let q = polyk("3*k^5 - n^2*k^3 + 7");
        let s = sum_polynomial_part(&q);
        for n in 0..=10 {
            assert_eq!(s.eval(&Rat::from_integer(n.into())).unwrap(), direct(&q, n));
        }
    }
}
