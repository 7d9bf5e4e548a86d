//! Partial fractions over `Q(n)`: `F = Q + sum A / B^d` with `B`
//! irreducible and `deg_k A < deg_k B`.

use std::cmp::Ordering;
use std::fmt;

use crate::factor::factor;
use crate::poly_k::PolyK;
use crate::rat_nk::RatNK;

/// One term `a / b^d`; `b` is canonical irreducible, `a != 0`,
/// `deg_k a < deg_k b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PFTerm {
    pub a: PolyK,
    pub b: PolyK,
    pub d: usize,
}

impl PFTerm {
    pub fn to_rat(&self) -> RatNK {
        RatNK::from_polyk_ratio(&self.a, &self.b.pow(self.d))
    }

    /// Order by denominator, then by power.
    pub fn key_cmp(&self, other: &PFTerm) -> Ordering {
        self.b
            .canonical_cmp(&other.b)
            .then(self.d.cmp(&other.d))
    }
}

impl fmt::Display for PFTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = RatNK::from_polyk(&self.a);
        let b = RatNK::from_polyk(&self.b);
        if self.d == 1 {
            write!(f, "({a})/({b})")
        } else {
            write!(f, "({a})/({b})^{}", self.d)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PFDecomp {
    pub polypart: PolyK,
    pub terms: Vec<PFTerm>,
}

pub fn pfd(f: &RatNK) -> PFDecomp {
    let (num, den) = f.to_polyk_pair();
    if den.degree() == 0 {
        return PFDecomp {
            polypart: num.scale(&den.lc().recip()),
            terms: Vec::new(),
        };
    }
    let fl = factor(&den);
    let (polypart, r) = num.divrem(&den);
    let r = r.scale(&fl.unit.recip());
    let mut terms = Vec::new();
    if !r.is_zero() {
        for (i, (b, e)) in fl.factors.iter().enumerate() {
            let pe = b.pow(*e);
            // everything reduced mod B^e as early as possible: the
            // coefficients in Q(n) grow quickly otherwise
            let mut others = PolyK::one();
            for (j, (c, m)) in fl.factors.iter().enumerate() {
                if j != i {
                    others = (&others * &c.pow(*m).rem(&pe)).rem(&pe);
                }
            }
            let inv = others
                .inverse_mod(&pe)
                .expect("distinct irreducibles are coprime");
            let mut rest = (&r.rem(&pe) * &inv).rem(&pe);
            // B-adic digits: rest = sum_j A_j B^j
            for j in 0..*e {
                if rest.is_zero() {
                    break;
                }
                let (q, a) = rest.divrem(b);
                if !a.is_zero() {
                    terms.push(PFTerm {
                        a,
                        b: b.clone(),
                        d: e - j,
                    });
                }
                rest = q;
            }
        }
    }
    terms.sort_by(|x, y| x.key_cmp(y));
    PFDecomp { polypart, terms }
}

pub fn recombine(d: &PFDecomp) -> RatNK {
    let mut acc = RatNK::from_polyk(&d.polypart);
    for t in &d.terms {
        acc = &acc + &t.to_rat();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::poly_k::polyk_from_ints;

    #[test]
    fn two_linear_factors() {
        let f = parse("1/((k+1)*(k+2))").unwrap();
        let d = pfd(&f);
        assert!(d.polypart.is_zero());
        assert_eq!(d.terms.len(), 2);
        assert_eq!(d.terms[0].to_rat(), parse("1/(k+1)").unwrap());
        assert_eq!(d.terms[1].to_rat(), parse("-1/(k+2)").unwrap());
        assert_eq!(recombine(&d), f);
    }

    #[test]
    fn polynomial_part() {
        let d = pfd(&parse("k^3/(k+1)").unwrap());
        assert_eq!(d.polypart, polyk_from_ints(&[&[1], &[-1], &[1]]));
        assert_eq!(d.terms.len(), 1);
        assert_eq!(d.terms[0].to_rat(), parse("-1/(k+1)").unwrap());
    }

    #[test]
    fn polynomials_and_zero() {
        let p = parse("n*k^2 - 3/2*k + n^2").unwrap();
        let d = pfd(&p);
        assert!(d.terms.is_empty());
        assert_eq!(recombine(&d), p);
        assert_eq!(recombine(&PFDecomp::default()), RatNK::zero());
    }

    #[test]
    fn repeated_factor_digits() {
        let f = parse("(k^2+n)/((k+n)^3*(k^2-n))").unwrap();
        let d = pfd(&f);
        assert_eq!(recombine(&d), f);
        for t in &d.terms {
            assert!(t.a.degree() < t.b.degree());
        }
        let ds: Vec<usize> = d.terms.iter().filter(|t| t.b.degree() == 1).map(|t| t.d).collect();
        assert_eq!(ds, vec![1, 2, 3]);
    }

    #[test]
    fn n_only_denominators_are_units() {
        let f = parse("1/(n*(k+1)) + 1/(n+1)").unwrap();
        let d = pfd(&f);
        assert_eq!(d.terms.len(), 1);
        assert_eq!(recombine(&d), f);
    }
}
