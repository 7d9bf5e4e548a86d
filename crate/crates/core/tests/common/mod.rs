//! Random inputs shared by the integration tests. Everything is driven by a
//! caller-supplied RNG so runs are reproducible from a seed.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use std::collections::BTreeSet;

use ratsum::scalar::{rat, ratio};
use ratsum::Rat;
use ratsum::{is_irreducible, parse, AffineMap, PolyK, PolyN, RatN, RatNK};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A polynomial in `n` and `k` with small integer coefficients, as text.
pub fn poly_text(r: &mut impl Rng, dk: u32, dn: u32, coef: i64) -> String {
    let mut terms = Vec::new();
    for j in 0..=dk {
        for i in 0..=dn {
            if (j, i) != (dk, 0) && r.gen_bool(0.5) {
                let c = r.gen_range(-coef..=coef);
                if c != 0 {
                    terms.push(format!("({c})*n^{i}*k^{j}"));
                }
            }
        }
    }
    // keep deg_k = dk exactly
    terms.push(format!("({})*k^{dk}", r.gen_range(1..=coef)));
    terms.join(" + ")
}

pub fn polyk(s: &str) -> PolyK {
    let (num, den) = parse(s).expect("generated text parses").to_polyk_pair();
    assert_eq!(den.degree(), 0, "{s} is not a polynomial");
    num
}

pub fn random_poly(r: &mut impl Rng, dk: u32, dn: u32) -> PolyK {
    polyk(&poly_text(r, dk, dn, 3))
}

/// An expression over the full grammar; may divide by zero.
pub fn random_expr(r: &mut impl Rng, depth: u32) -> String {
    if depth == 0 || r.gen_bool(0.3) {
        return match r.gen_range(0..5) {
            0 => "n".into(),
            1 => "k".into(),
            2 => format!("{}", r.gen_range(-5..=5)),
            3 => format!("{}/{}", r.gen_range(-5..=5), r.gen_range(1..=4)),
            _ => format!("({} + k*n)", r.gen_range(-3..=3)),
        };
    }
    let a = random_expr(r, depth - 1);
    match r.gen_range(0..6) {
        0 => format!("({a}) + ({})", random_expr(r, depth - 1)),
        1 => format!("({a}) - ({})", random_expr(r, depth - 1)),
        2 => format!("({a})*({})", random_expr(r, depth - 1)),
        3 => format!("({a})/({})", random_expr(r, depth - 1)),
        4 => format!("({a})^{}", r.gen_range(0..=3)),
        _ => format!("-({a})"),
    }
}

/// A proper-or-not rational function with a factored denominator.
pub fn random_rational(r: &mut impl Rng) -> RatNK {
    let dk = r.gen_range(0..=3);
    let num = poly_text(r, dk, 1, 3);
    let nf = r.gen_range(1..=2);
    let den: Vec<String> = (0..nf)
        .map(|_| {
            let dk = r.gen_range(1..=2);
            let p = poly_text(r, dk, 1, 3);
            format!("({p})^{}", r.gen_range(1..=2))
        })
        .collect();
    parse(&format!("({num})/({})", den.join("*"))).expect("nonzero denominator")
}

pub fn random_irreducible(r: &mut impl Rng, dk: u32) -> PolyK {
    loop {
        let p = random_poly(r, dk, 2);
        if p.degree() == dk as isize && is_irreducible(&p) {
            return p;
        }
    }
}

/// A map from a fixed grid of small rationals.
pub fn random_map(r: &mut impl Rng) -> AffineMap {
    let a = [rat(1), rat(-1), rat(2), rat(-2), ratio(1, 2), ratio(-1, 3), rat(3)]
        .choose(r)
        .unwrap()
        .clone();
    AffineMap::new(
        a,
        ratio(r.gen_range(-4..=4), r.gen_range(1..=2)),
        ratio(r.gen_range(-6..=6), r.gen_range(1..=3)),
    )
}

/// A nonzero element of `Q(n)`.
pub fn random_unit(r: &mut impl Rng) -> RatN {
    let c = ratio(r.gen_range(1..=5) * if r.gen_bool(0.5) { 1 } else { -1 }, r.gen_range(1..=3));
    match r.gen_range(0..3) {
        0 => RatN::constant(c),
        1 => parse(&format!("n + {}", r.gen_range(1..=4)))
            .unwrap()
            .as_ratn()
            .unwrap()
            .scale(&c),
        _ => parse(&format!("1/(n^2 + {})", r.gen_range(1..=4)))
            .unwrap()
            .as_ratn()
            .unwrap()
            .scale(&c),
    }
}

/// `p(n0, k)` as a polynomial in `k`; `None` at a pole of a coefficient.
pub fn at_n(p: &PolyK, n0: i64) -> Option<PolyN> {
    let cs: Option<Vec<Rat>> = p.coeffs().iter().map(|c| c.eval(&rat(n0))).collect();
    cs.map(PolyN::new)
}

/// Whether some map from the generator grid sends `b1(n0, .)` to a
/// multiple of `b2(n0, .)`.
pub fn grid_equivalent_at(b1: &PolyK, b2: &PolyK, n0: i64) -> bool {
    let (Some(p1), Some(p2)) = (at_n(b1, n0), at_n(b2, n0)) else { return true };
    let target = p2.monic();
    let shifts: BTreeSet<Rat> = (-8..=8)
        .flat_map(|bn| (-36..=36).map(move |cn| ratio(bn, 2) * rat(n0) + ratio(cn, 6)))
        .collect();
    [rat(1), rat(-1), rat(2), rat(-2), ratio(1, 2), ratio(-1, 3), rat(3)]
        .iter()
        .any(|a| shifts.iter().any(|c| p1.compose_linear(a, c).monic() == target))
}
