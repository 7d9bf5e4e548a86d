//! Coset merging and boundary extraction for one residue case.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::atoms::{Normalized, Piece, ResidueSplit};
use super::indefinite::indefinite_sum;
use super::{AffineInt, ProgressionAtom};
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::rat_nk::RatNK;
use crate::scalar::Rat;

/// Constant-length mismatches longer than this stay residual.
const MAX_BOUNDARY: i64 = 10_000;

#[derive(Clone, Debug, Default)]
pub struct Reduced {
    /// The explicit boundary terms, before simplification.
    pub terms: Vec<RatN>,
    pub boundary: RatN,
    /// Surviving bulk with nonzero weight and growing length.
    pub residual: Vec<Piece>,
}

impl Reduced {
    /// Residual pieces grouped by identical interval.
    pub fn residual_groups(&self) -> Vec<Vec<&Piece>> {
        let mut groups: BTreeMap<(&AffineInt, &AffineInt), Vec<&Piece>> = BTreeMap::new();
        for p in &self.residual {
            groups.entry((&p.lo, &p.hi)).or_default().push(p);
        }
        groups.into_values().collect()
    }

    /// A residual piece as an atom in `n`.
    pub fn to_atom(&self, norm: &Normalized, residue: u64, p: &Piece) -> ProgressionAtom {
        let m = Rat::from_integer(norm.modulus.into());
        let rho = Rat::from_integer(residue.into());
        let minv = m.recip();
        let slope = &norm.step * Rat::from_integer(p.lo.slope.clone()) / &m;
        let offset =
            &norm.step * Rat::from_integer(p.lo.cst.clone()) + &p.coset - &slope * &rho;
        ProgressionAtom {
            base: norm.base.clone(),
            d: norm.d,
            weight: p.weight.compose_n(&minv, &-(&rho * &minv)),
            step: norm.step.clone(),
            slope,
            offset,
            len: p.hi.sub(&p.lo).offset(-1),
            modulus: norm.modulus,
            residue,
        }
    }
}

/// `m(nu) = step*w(nu) + coset` as a polynomial in `nu`.
fn arg_at(step: &Rat, coset: &Rat, w: &AffineInt) -> RatN {
    RatN::from_poly(PolyN::linear(
        step * Rat::from_integer(w.slope.clone()),
        step * Rat::from_integer(w.cst.clone()) + coset,
    ))
}

/// `weight(m) / base(m)^d` at a point that is a rational function of `nu`.
fn term_at(case: &ResidueSplit, d: usize, weight: &PolyK, m: &RatN) -> Option<RatN> {
    let b = case.base.eval_k(m);
    if b.is_zero() {
        return None;
    }
    Some(&weight.eval_k(m) / &b.pow(d as i64))
}

/// Aligns pieces on each coset, deletes bulk with zero merged weight and
/// turns bounded mismatches into explicit terms.
pub fn reduce_class_sum(norm: &Normalized, case: &ResidueSplit) -> Reduced {
    let mut cosets: BTreeMap<&Rat, Vec<&Piece>> = BTreeMap::new();
    for p in &case.pieces {
        cosets.entry(&p.coset).or_default().push(p);
    }
    let mut out = Reduced::default();
    for (coset, pieces) in cosets {
        let mut cuts: Vec<&AffineInt> = pieces.iter().flat_map(|p| [&p.lo, &p.hi]).collect();
        cuts.sort();
        cuts.dedup();
        for win in cuts.windows(2) {
            let (lo, hi) = (win[0], win[1]);
            let mut weight = PolyK::zero();
            for p in &pieces {
                if &p.lo <= lo && hi <= &p.hi {
                    weight = &weight + &p.weight;
                }
            }
            if weight.is_zero() {
                continue;
            }
            let len = hi.sub(lo);
            let bounded = len.slope.is_zero() && len.cst <= BigInt::from(MAX_BOUNDARY);
            let mut terms = Vec::new();
            if bounded {
                let count = len.cst.to_i64().expect("bounded");
                for i in 0..count {
                    let m = arg_at(&norm.step, coset, &lo.offset(i));
                    match term_at(case, norm.d, &weight, &m) {
                        Some(t) => terms.push(t),
                        None => break,
                    }
                }
            }
            if bounded && terms.len() as i64 == len.cst.to_i64().unwrap_or(-1) {
                out.terms.extend(terms);
            } else {
                out.residual.push(Piece {
                    coset: coset.clone(),
                    weight,
                    lo: lo.clone(),
                    hi: hi.clone(),
                });
            }
        }
    }
    out.boundary = out.terms.iter().fold(RatN::zero(), |acc, t| &acc + t);
    out
}

/// Tries to close residual pieces sharing one interval with a rational
/// antidifference of their combined summand in `w`.
pub fn close_group(norm: &Normalized, case: &ResidueSplit, group: &[&Piece]) -> Option<RatN> {
    let (lo, hi) = (&group.first()?.lo, &group.first()?.hi);
    let mut g = RatNK::zero();
    for p in group {
        let num = p.weight.apply_affine(&norm.step, &Rat::zero(), &p.coset);
        let den = case
            .base
            .apply_affine(&norm.step, &Rat::zero(), &p.coset)
            .pow(norm.d);
        g = &g + &RatNK::from_polyk_ratio(&num, &den);
    }
    if g.is_zero() {
        return Some(RatN::zero());
    }
    let w = indefinite_sum(&g)?;
    let at = |x: &AffineInt| eval_k_ratn(&w, &RatN::from_poly(x.to_poly()));
    Some(&at(hi)? - &at(lo)?)
}

/// `r(nu, x(nu))`, or `None` if the denominator vanishes identically.
pub(crate) fn eval_k_ratn(r: &RatNK, x: &RatN) -> Option<RatN> {
    let (num, den) = r.to_polyk_pair();
    let d = den.eval_k(x);
    if d.is_zero() {
        return None;
    }
    Some(&num.eval_k(x) / &d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::group_classes;
    use crate::engine::atoms::{atoms_from_class, normalize_atoms};
    use crate::parse::parse;
    use crate::pfd::pfd;

    fn reduce(s: &str) -> (Normalized, Vec<Reduced>) {
        let classes = group_classes(&pfd(&parse(s).unwrap()).terms);
        assert_eq!(classes.len(), 1, "{s}");
        let c = &classes[0];
        let norm = normalize_atoms(&atoms_from_class(c), &c.kind(), 64).unwrap();
        let reds = norm.cases.iter().map(|k| reduce_class_sum(&norm, k)).collect();
        (norm, reds)
    }

    #[test]
    fn reflected_pair_cancels() {
        let (_, reds) = reduce("1/(k^3+k*n+1) - 1/((n-k)^3+(n-k)*n+1)");
        assert_eq!(reds.len(), 1);
        assert!(reds[0].boundary.is_zero());
        assert!(reds[0].residual.is_empty());
    }

    #[test]
    fn dilation_quadruple_cancels() {
        let (norm, reds) = reduce(
            "1/(k^3+k*n+1) + 1/((k+n+1)^3+(k+n+1)*n+1) - 1/((2*k)^3+2*k*n+1) - 1/((2*k+1)^3+(2*k+1)*n+1)",
        );
        assert_eq!(norm.modulus, 2);
        for r in reds {
            assert!(r.boundary.is_zero());
            assert!(r.residual.is_empty());
        }
    }

    #[test]
    fn telescoping_boundary() {
        let (_, reds) = reduce("1/(k+1) - 1/(k+2)");
        assert!(reds[0].residual.is_empty());
        let want = &RatN::one() - &RatN::new(PolyN::one(), PolyN::from_ints(&[2, 1]));
        assert_eq!(reds[0].boundary, want);
    }

    #[test]
    fn lone_dilated_term_survives() {
        let (norm, reds) = reduce("1/((2*k)^3+2*k*n+1)");
        assert_eq!(reds.len(), 1);
        assert_eq!(reds[0].residual.len(), 1);
        let case = &norm.cases[0];
        let atom = reds[0].to_atom(&norm, 0, &reds[0].residual[0]);
        for n in 0..=8u64 {
            assert_eq!(atom.eval_at(n), norm.eval_at(n));
        }
        assert_eq!(close_group(&norm, case, &[&reds[0].residual[0]]), None);
    }
}
