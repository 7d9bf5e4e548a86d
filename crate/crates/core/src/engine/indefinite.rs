//! Rational indefinite summation: `W(k+1) - W(k) = g(k)` over `Q(n)`.
//!
//! The denominator of `W` divides `(prod_{j=1}^{N} q*(k - j))^E`, where
//! `q*` is the squarefree part of the denominator of `g`, `E` its largest
//! multiplicity and `N` its dispersion. The numerator then solves a linear
//! system over `Q(n)`.

use num_traits::{One, Zero};

use super::lattice::eval_k_ratn;
use super::ProgressionAtom;
use crate::affine::average_root;
use crate::factor::factor;
use crate::linalg::solve;
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::rat_nk::RatNK;
use crate::scalar::{is_integer, Rat};

/// `k -> k + h`.
fn shift(p: &PolyK, h: &Rat) -> PolyK {
    p.apply_affine(&Rat::one(), &Rat::zero(), h)
}

/// Largest integer `h >= 0` with `gcd(q(k), q(k + h)) != 1`, from the
/// irreducible factors.
fn dispersion(factors: &[(PolyK, usize)]) -> usize {
    let mut best = 0;
    for (f, _) in factors {
        for (g, _) in factors {
            if f.degree() != g.degree() {
                continue;
            }
            // f(k + h) has average root mu_f - h
            let Some(h) = (&average_root(f) - &average_root(g)).constant_value() else {
                continue;
            };
            if h <= Rat::zero() || !is_integer(&h) {
                continue;
            }
            if shift(f, &h).monic() == g.monic() {
                best = best.max(h.to_integer().try_into().unwrap_or(usize::MAX));
            }
        }
    }
    best
}

/// Some `W` with `W(n, k+1) - W(n, k) = g(n, k)`.
pub fn indefinite_sum(g: &RatNK) -> Option<RatNK> {
    if g.is_zero() {
        return Some(RatNK::zero());
    }
    let (p, q) = g.to_polyk_pair();
    let (u, deg_bound) = if q.degree() == 0 {
        (PolyK::one(), p.degree() + 1)
    } else {
        let fl = factor(&q);
        let n = dispersion(&fl.factors);
        let e = fl.factors.iter().map(|(_, m)| *m).max().unwrap_or(1);
        let sqf = fl.factors.iter().fold(PolyK::one(), |acc, (f, _)| &acc * f);
        let mut u = PolyK::one();
        for j in 1..=n {
            u = &u * &shift(&sqf, &-Rat::from_integer(j.into()));
        }
        let u = u.pow(e);
        let extra = (p.degree() - q.degree() + 1).max(0);
        let d = u.degree() + extra;
        (u, d)
    };
    if deg_bound < 0 {
        return None;
    }
    let u1 = shift(&u, &Rat::one());
    let rhs = (&(&p * &u) * &u1).exact_div(&q)?;
    let kp1 = PolyK::linear(RatN::one(), RatN::one());
    let cols: Vec<PolyK> = (0..=deg_bound as usize)
        .map(|i| &(&kp1.pow(i) * &u) - &(&PolyK::k().pow(i) * &u1))
        .collect();
    let rows = cols
        .iter()
        .map(PolyK::degree)
        .chain([rhs.degree()])
        .max()
        .unwrap_or(0)
        .max(0) as usize;
    let a: Vec<Vec<RatN>> = (0..=rows)
        .map(|r| cols.iter().map(|c| c.coeff(r)).collect())
        .collect();
    let b: Vec<RatN> = (0..=rows).map(|r| rhs.coeff(r)).collect();
    let y = solve(&a, &b)?;
    let y = PolyK::new(y);
    Some(RatNK::from_polyk_ratio(&y, &u))
}

/// Closes a single atom by a rational antidifference in its index `t`:
/// the value `W(T + 1) - W(0)` as a rational function of `n`.
pub fn indefinite_fallback(at: &ProgressionAtom) -> Option<RatN> {
    if at.weight.is_zero() {
        return Some(RatN::zero());
    }
    let m = Rat::from_integer(at.modulus.into());
    let rho = Rat::from_integer(at.residue.into());
    // in nu: m = step*t + slope*(M nu + rho) + offset
    let shift_nu = PolyN::linear(&at.slope * &m, &at.slope * &rho + &at.offset);
    let arg = PolyK::linear(
        RatN::constant(at.step.clone()),
        RatN::from_poly(shift_nu),
    );
    let num = at.weight.compose_n(&m, &rho).compose(&arg);
    let den = at.base.compose_n(&m, &rho).compose(&arg).pow(at.d);
    let w = indefinite_sum(&RatNK::from_polyk_ratio(&num, &den))?;
    let top = RatN::from_poly(at.len.offset(1).to_poly());
    let r = &eval_k_ratn(&w, &top)? - &eval_k_ratn(&w, &RatN::zero())?;
    Some(super::to_n(&r, at.modulus, at.residue))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::AffineInt;
    use crate::parse::parse;
    use num_bigint::BigInt;

    fn check(g: &str) -> Option<RatNK> {
        let g = parse(g).unwrap();
        let w = indefinite_sum(&g)?;
        for n in 1..4 {
            for k in 0..6 {
                let (nr, kr) = (Rat::from_integer(n.into()), Rat::from_integer(k.into()));
                let lhs = w.eval_point(&nr, &(&kr + Rat::one())).unwrap()
                    - w.eval_point(&nr, &kr).unwrap();
                assert_eq!(lhs, g.eval_point(&nr, &kr).unwrap());
            }
        }
        Some(w)
    }

    #[test]
    fn telescoping_witness() {
        // W = -1/(k+1) up to a constant
        let w = check("1/(k+1) - 1/(k+2)").unwrap();
        let c = &w + &parse("1/(k+1)").unwrap();
        assert!(c.as_ratn().is_some());
        assert!(check("1/((k+n)*(k+n+3))").is_some());
        assert!(check("k^2 + n").is_some());
    }

    #[test]
    fn harmonic_has_no_rational_sum() {
        assert!(indefinite_sum(&parse("1/(k+1)").unwrap()).is_none());
        assert!(indefinite_sum(&parse("1/(k^2+n)").unwrap()).is_none());
    }

    #[test]
    fn fallback_on_atoms() {
        let atom = |w: PolyK| ProgressionAtom {
            base: PolyK::linear(RatN::one(), RatN::one()),
            d: 1,
            weight: w,
            step: Rat::one(),
            slope: Rat::zero(),
            offset: Rat::zero(),
            len: AffineInt::new(BigInt::one(), BigInt::zero()),
            modulus: 1,
            residue: 0,
        };
        assert_eq!(indefinite_fallback(&atom(PolyK::zero())), Some(RatN::zero()));
        assert_eq!(indefinite_fallback(&atom(PolyK::one())), None);
    }
}
