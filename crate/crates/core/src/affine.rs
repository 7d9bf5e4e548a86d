//! Affine substitutions `k -> a*k + b*n + c` over Q and the equivalence
//! they induce on irreducible denominators.
//!
//! `B1 ~ B2` when `B1(n, a*k + b*n + c) = s * B2(n, k)` for a unit `s` of
//! `Q(n)`. The test centers both polynomials at their average root, which
//! pins `a` to a handful of rational candidates, and then checks the
//! identity by exact substitution.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::pfd::PFTerm;
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::{rat, rat_pow, rational_root, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl AffineMap {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        assert!(!a.is_zero(), "affine map with a = 0");
        AffineMap { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Self::new(rat(a), rat(b), rat(c))
    }

    pub fn identity() -> Self {
        Self::new(Rat::one(), Rat::zero(), Rat::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    /// The map `k -> self(other(k))`, so that
    /// `apply(B, compose(m1, m2)) == apply(apply(B, m1), m2)`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap::new(
            &self.a * &other.a,
            &self.a * &other.b + &self.b,
            &self.a * &other.c + &self.c,
        )
    }

    pub fn invert(&self) -> AffineMap {
        let inv = self.a.recip();
        AffineMap::new(inv.clone(), -&self.b * &inv, -&self.c * &inv)
    }

    /// `B(n, a*k + b*n + c)`.
    pub fn apply(&self, b: &PolyK) -> PolyK {
        b.apply_affine(&self.a, &self.b, &self.c)
    }

    /// The image `a*k + b*n + c` of a point.
    pub fn map_point(&self, n: &Rat, k: &Rat) -> Rat {
        &self.a * k + &self.b * n + &self.c
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// `-(coefficient of k^(d-1)) / (d * lc)`.
pub fn average_root(b: &PolyK) -> RatN {
    let d = b.degree();
    assert!(d >= 1, "average root of a constant");
    let d = d as usize;
    let sub = b.coeff(d - 1);
    -(&sub / &b.lc().scale(&Rat::from_integer(d.into())))
}

/// Monic centered coefficients `q_0..q_(d-1)` of `B(n, y + mu) / lc`.
fn centered(b: &PolyK, mu: &RatN) -> Vec<RatN> {
    let shifted = b.compose(&PolyK::linear(RatN::one(), mu.clone()));
    let m = shifted.monic();
    let d = m.degree() as usize;
    (0..d).map(|j| m.coeff(j)).collect()
}

struct Centered {
    deg: usize,
    lc: RatN,
    mu: RatN,
    q: Vec<RatN>,
}

impl Centered {
    fn of(b: &PolyK) -> Self {
        let mu = average_root(b);
        Centered {
            deg: b.degree() as usize,
            lc: b.lc(),
            q: centered(b, &mu),
            mu,
        }
    }
}

/// `Some((map, unit))` with `apply(B1, map) = unit * B2`, or `None` if no
/// rational `(a, b, c)` works.
pub fn equiv_test(b1: &PolyK, b2: &PolyK) -> Option<(AffineMap, RatN)> {
    if b1.degree() != b2.degree() || b1.degree() < 1 {
        return None;
    }
    let c1 = Centered::of(b1);
    let c2 = Centered::of(b2);
    for a in candidate_scales(&c1, &c2)? {
        if let Some(found) = try_scale(b1, b2, &c1, &c2, &a) {
            return Some(found);
        }
    }
    None
}

/// Candidate values of `a`, or `None` when the centered supports already
/// rule out every `a`.
fn candidate_scales(c1: &Centered, c2: &Centered) -> Option<Vec<Rat>> {
    let d = c1.deg;
    let mut ratio: Option<(Rat, u32)> = None;
    for j in 0..d {
        let (x, y) = (&c1.q[j], &c2.q[j]);
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return None,
        }
        let rho = (x / y).constant_value()?;
        let e = (d - j) as u32;
        match &ratio {
            Some((_, e0)) if *e0 <= e => {}
            _ => ratio = Some((rho, e)),
        }
    }
    match ratio {
        Some((rho, e)) => {
            let r = rational_root(&rho.abs(), e)?;
            let mut out = Vec::new();
            if rat_pow(&r, e as i64) == rho {
                out.push(r.clone());
            }
            if rat_pow(&-&r, e as i64) == rho && !r.is_zero() {
                out.push(-r);
            }
            Some(out)
        }
        None => Some(free_scale(c1, c2)),
    }
}

/// Centered forms are `y^d` (so `d = 1`): `a` is constrained only by
/// `mu1 - a*mu2` being linear in `n`.
fn free_scale(c1: &Centered, c2: &Centered) -> Vec<Rat> {
    let (p1, r1) = c1.mu.poly_and_proper();
    let (p2, r2) = c2.mu.poly_and_proper();
    if !r2.is_zero() {
        return (&r1 / &r2).constant_value().into_iter().collect();
    }
    if !r1.is_zero() {
        return Vec::new();
    }
    for i in (2..=p2.degree().max(-1)).rev() {
        let i = i as usize;
        let y = p2.coeff(i);
        if !y.is_zero() {
            return vec![p1.coeff(i) / y];
        }
    }
    if p1.degree() > 1 {
        return Vec::new();
    }
    // any a works; prefer the one giving unit 1
    let pref = (&c2.lc / &c1.lc).constant_value();
    match pref {
        Some(a) if !a.is_zero() => vec![a],
        _ => vec![Rat::one()],
    }
}

fn try_scale(
    b1: &PolyK,
    b2: &PolyK,
    c1: &Centered,
    c2: &Centered,
    a: &Rat,
) -> Option<(AffineMap, RatN)> {
    if a.is_zero() {
        return None;
    }
    let shift = &c1.mu - &c2.mu.scale(a);
    if !shift.is_poly() || shift.num().degree() > 1 {
        return None;
    }
    let lin: &PolyN = shift.num();
    let map = AffineMap::new(a.clone(), lin.coeff(1), lin.coeff(0));
    let unit = (&c1.lc / &c2.lc).scale(&rat_pow(a, c1.deg as i64));
    if map.apply(b1) == b2.scale(&unit) {
        Some((map, unit))
    } else {
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutKind {
    Trivial,
    /// The extra involution, with `a = -1`.
    Symmetric(AffineMap),
    RationalType,
}

impl fmt::Display for AutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutKind::Trivial => write!(f, "generic"),
            AutKind::Symmetric(m) => write!(f, "symmetric {m}"),
            AutKind::RationalType => write!(f, "rational"),
        }
    }
}

pub fn aut_group(b: &PolyK) -> AutKind {
    if equiv_test(b, &PolyK::k()).is_some() {
        return AutKind::RationalType;
    }
    let c = Centered::of(b);
    match try_scale(b, b, &c, &c, &-Rat::one()) {
        Some((m, _)) => AutKind::Symmetric(m),
        None => AutKind::Trivial,
    }
}

/// A term together with `apply(rep, map) = unit * term.b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub term: PFTerm,
    pub map: AffineMap,
    pub unit: RatN,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivClass {
    pub rep: PolyK,
    pub d: usize,
    pub members: Vec<ClassMember>,
}

impl EquivClass {
    pub fn kind(&self) -> AutKind {
        aut_group(&self.rep)
    }
}

/// Groups terms by `d` and equivalence of denominators. The first member
/// of each class is its representative, with the identity map.
pub fn group_classes(terms: &[PFTerm]) -> Vec<EquivClass> {
    let mut sorted = terms.to_vec();
    sorted.sort_by(|x, y| x.key_cmp(y));
    let mut classes: Vec<EquivClass> = Vec::new();
    for t in sorted {
        let hit = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.d == t.d)
            .find_map(|(i, c)| equiv_test(&c.rep, &t.b).map(|m| (i, m)));
        match hit {
            Some((i, (map, unit))) => {
                classes[i].members.push(ClassMember { term: t, map, unit });
            }
            None => classes.push(EquivClass {
                rep: t.b.clone(),
                d: t.d,
                members: vec![ClassMember {
                    term: t,
                    map: AffineMap::identity(),
                    unit: RatN::one(),
                }],
            }),
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::pfd::pfd;
    use crate::poly_k::polyk_from_ints;
    use crate::scalar::{rat, ratio};

    fn cubic() -> PolyK {
        polyk_from_ints(&[&[1], &[0, 1], &[], &[1]])
    }

    #[test]
    fn group_laws() {
        let m = AffineMap::from_ints(2, 1, 1);
        assert!(m.compose(&m.invert()).is_identity());
        assert_eq!(
            m.invert(),
            AffineMap::new(ratio(1, 2), ratio(-1, 2), ratio(-1, 2))
        );
        let b = cubic();
        let m2 = AffineMap::from_ints(-1, 3, 2);
        assert_eq!(m.compose(&m2).apply(&b), m2.apply(&m.apply(&b)));
    }

    #[test]
    fn average_roots() {
        assert!(average_root(&cubic()).is_zero());
        let b = polyk_from_ints(&[&[0, 1, 1], &[2]]);
        assert_eq!(
            average_root(&b),
            RatN::from_poly(PolyN::from_ints(&[0, -1, -1]).scale(&ratio(1, 2)))
        );
        let sq = polyk_from_ints(&[&[0, 0, 1], &[0, 2], &[1]]);
        assert_eq!(average_root(&sq), RatN::from_poly(PolyN::from_ints(&[0, -1])));
    }

    #[test]
    fn reflection_is_found() {
        let b = cubic();
        let img = b.apply_affine(&rat(-1), &rat(1), &rat(0));
        let (m, s) = equiv_test(&b, &img).unwrap();
        assert_eq!(m, AffineMap::from_ints(-1, 1, 0));
        assert!(s.is_one());
    }

    #[test]
    fn linear_scaling_prefers_unit_one() {
        let (m, s) = equiv_test(&PolyK::k(), &polyk_from_ints(&[&[1, 1], &[2]])).unwrap();
        assert_eq!(m, AffineMap::from_ints(2, 1, 1));
        assert!(s.is_one());
    }

    #[test]
    fn inequivalent_pair() {
        let a = polyk_from_ints(&[&[0, -1], &[], &[1]]);
        let b = polyk_from_ints(&[&[-1, -1], &[], &[1]]);
        assert!(equiv_test(&a, &b).is_none());
    }

    #[test]
    fn aut_kinds() {
        let sym = polyk_from_ints(&[&[0, -1], &[], &[1]]);
        assert_eq!(aut_group(&sym), AutKind::Symmetric(AffineMap::from_ints(-1, 0, 0)));
        assert_eq!(aut_group(&cubic()), AutKind::Trivial);
        assert_eq!(aut_group(&PolyK::k()), AutKind::RationalType);
        assert_eq!(
            aut_group(&polyk_from_ints(&[&[1, 1], &[2]])),
            AutKind::RationalType
        );
        assert_eq!(aut_group(&polyk_from_ints(&[&[0, 1, 1], &[2]])), AutKind::Trivial);
    }

    #[test]
    fn four_term_generic_class() {
        let f = parse(
            "1/(k^3+k*n+1) + 1/((k+n+1)^3+(k+n+1)*n+1) \
             - 1/((2*k)^3+2*k*n+1) - 1/((2*k+1)^3+(2*k+1)*n+1)",
        )
        .unwrap();
        let classes = group_classes(&pfd(&f).terms);
        assert_eq!(classes.len(), 1);
        let c = &classes[0];
        assert_eq!(c.members.len(), 4);
        let mut maps: Vec<AffineMap> = c.members.iter().map(|m| m.map.clone()).collect();
        maps.sort_by(|x, y| (&x.a, &x.b, &x.c).cmp(&(&y.a, &y.b, &y.c)));
        let expect = [(1, 0, 0), (1, 1, 1), (2, 0, 0), (2, 0, 1)]
            .map(|(a, b, c)| AffineMap::from_ints(a, b, c));
        assert_eq!(maps, expect);
        for m in &c.members {
            assert_eq!(m.map.apply(&c.rep), m.term.b.scale(&m.unit));
        }
    }

    #[test]
    fn classes_split_by_power() {
        let d = pfd(&parse("1/(k+1) - 1/(k+2)").unwrap());
        assert_eq!(group_classes(&d.terms).len(), 1);
        let d = pfd(&parse("1/(k+1) + 1/(k+1)^2").unwrap());
        assert_eq!(group_classes(&d.terms).len(), 2);
    }
}
