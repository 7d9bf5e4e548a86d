//! Irreducible factorization in `Q(n)[k]`.
//!
//! Each squarefree part is specialized at an integer `n0`, factored over
//! `Z`, lifted `(n - n0)`-adically, and recombined by trial division.

mod zassenhaus;

pub use zassenhaus::{combinations, factor_squarefree_z};

use num_traits::Zero;

use crate::bivar::BiPoly;
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::Rat;

/// `unit * prod(poly^mult)` equals the input. Factors are canonical,
/// pairwise distinct, and sorted by [`PolyK::canonical_cmp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList {
    pub unit: RatN,
    pub factors: Vec<(PolyK, usize)>,
}

impl FactorList {
    pub fn expand(&self) -> PolyK {
        let mut acc = PolyK::constant(self.unit.clone());
        for (p, m) in &self.factors {
            acc = &acc * &p.pow(*m);
        }
        acc
    }
}

/// Evaluation points compared before lifting.
const GOOD_POINTS: usize = 3;

/// Complete factorization of a nonzero `x`.
pub fn factor(x: &PolyK) -> FactorList {
    assert!(!x.is_zero(), "factor of zero");
    if x.degree() == 0 {
        return FactorList {
            unit: x.lc(),
            factors: Vec::new(),
        };
    }
    let (_, canon) = x.canonical_associate();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_bi(&canon.to_bipoly()) {
        for q in factor_squarefree_bi(&part) {
            factors.push((PolyK::from_bipoly(&q), mult));
        }
    }
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    let mut prod = PolyK::one();
    for (p, m) in &factors {
        prod = &prod * &p.pow(*m);
    }
    let unit = &x.lc() / &prod.lc();
    FactorList { unit, factors }
}

pub fn is_irreducible(x: &PolyK) -> bool {
    let fl = factor(x);
    fl.factors.len() == 1 && fl.factors[0].1 == 1
}

/// Squarefree decomposition of an `n`-primitive polynomial: canonical,
/// pairwise coprime parts of positive `k`-degree with their multiplicities.
pub fn squarefree_bi(f: &BiPoly) -> Vec<(BiPoly, usize)> {
    if f.deg_k() < 1 {
        return Vec::new();
    }
    if has_squarefree_image(f) {
        return vec![(f.canonical(), 1)];
    }
    // Yun; every divisor below is n-primitive, so the quotients stay in Q[n][k]
    let mut out = Vec::new();
    let df = f.derivative_k();
    let g = f.gcd(&df);
    let mut w = f.exact_div(&g).expect("gcd divides");
    let mut y = df.exact_div(&g).expect("gcd divides");
    let mut i = 1;
    while w.deg_k() >= 1 {
        let z = &y - &w.derivative_k();
        let h = w.gcd(&z);
        if h.deg_k() >= 1 {
            out.push((h.clone(), i));
        }
        w = w.exact_div(&h).expect("gcd divides");
        y = z.exact_div(&h).expect("gcd divides");
        i += 1;
    }
    out
}

/// A quick certificate: one specialization that keeps the degree and is
/// squarefree proves the polynomial squarefree.
fn has_squarefree_image(f: &BiPoly) -> bool {
    let lc = f.lc_k();
    candidate_points().take(8).any(|n0| {
        let n0 = Rat::from_integer(n0.into());
        if lc.eval(&n0).is_zero() {
            return false;
        }
        let img = f.eval_n(&n0);
        img.gcd(&img.derivative()).degree() == 0
    })
}

/// Irreducible factors of a squarefree, `n`-primitive polynomial with
/// `deg_k >= 1`, each in canonical form.
pub fn factor_squarefree_bi(f: &BiPoly) -> Vec<BiPoly> {
    let f = f.canonical();
    if f.deg_k() <= 1 {
        return vec![f];
    }
    let Some((n0, images)) = choose_point(&f) else {
        unreachable!("squarefree polynomial has good evaluation points")
    };
    if images.len() == 1 {
        return vec![f];
    }
    let shifted = f.shift_n(&n0);
    let prec = f.deg_n().max(0) as usize + 1;
    let lifted = lift(&shifted, &images, prec);
    let mut out: Vec<BiPoly> = recombine(shifted, lifted, prec)
        .into_iter()
        .map(|g| g.shift_n(&-&n0).canonical())
        .collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

fn candidate_points() -> impl Iterator<Item = i64> {
    (0..).flat_map(|i: i64| if i == 0 { vec![0] } else { vec![i, -i] })
}

/// An integer `n0` where `f(n0, k)` keeps its degree and stays squarefree,
/// together with the monic irreducible factors of that image.
fn choose_point(f: &BiPoly) -> Option<(Rat, Vec<PolyN>)> {
    let lc = f.lc_k();
    let mut best: Option<(Rat, Vec<PolyN>)> = None;
    let mut found = 0;
    for n0 in candidate_points().take(10_000) {
        let n0 = Rat::from_integer(n0.into());
        if lc.eval(&n0).is_zero() {
            continue;
        }
        let img = f.eval_n(&n0);
        if img.gcd(&img.derivative()).degree() > 0 {
            continue;
        }
        let ints = img.primitive().int_coeffs().expect("primitive is integral");
        let fs: Vec<PolyN> = factor_squarefree_z(&ints)
            .into_iter()
            .map(|v| PolyN::new(v.into_iter().map(Rat::from_integer).collect()).monic())
            .collect();
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((n0, fs));
        }
        found += 1;
        if found >= GOOD_POINTS || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

/// Drops every power `t^j` with `j >= prec` (the `n` variable plays `t`).
fn truncate(b: &BiPoly, prec: usize) -> BiPoly {
    BiPoly::new(
        b.coeffs()
            .iter()
            .map(|c| PolyN::new(c.coeffs().iter().take(prec).cloned().collect()))
            .collect(),
    )
}

/// Power-series inverse of `c` modulo `t^prec`; requires `c(0) != 0`.
fn series_inverse(c: &PolyN, prec: usize) -> PolyN {
    let c0 = c.coeff(0);
    let inv0 = c0.recip();
    let mut b: Vec<Rat> = vec![inv0.clone()];
    for j in 1..prec {
        let mut s = Rat::zero();
        for i in 1..=j {
            s += c.coeff(i) * &b[j - i];
        }
        b.push(-s * &inv0);
    }
    PolyN::new(b)
}

/// The coefficient of `t^j`, as a polynomial in `k`.
fn t_coeff(b: &BiPoly, j: usize) -> PolyN {
    PolyN::new(b.coeffs().iter().map(|c| c.coeff(j)).collect())
}

fn from_k_poly(p: &PolyN, j: usize) -> BiPoly {
    BiPoly::new(
        p.coeffs()
            .iter()
            .map(|c| PolyN::monomial(c.clone(), j))
            .collect(),
    )
}

/// Monic lifts `H_i` with `prod H_i = f / lc_k(f)` modulo `t^prec`.
fn lift(f: &BiPoly, images: &[PolyN], prec: usize) -> Vec<BiPoly> {
    let inv = series_inverse(&f.lc_k(), prec);
    let target = truncate(&f.scale_n(&inv), prec);
    let r = images.len();
    let bezout: Vec<PolyN> = (0..r)
        .map(|i| {
            let mut others = PolyN::one();
            for (l, g) in images.iter().enumerate() {
                if l != i {
                    others = &others * g;
                }
            }
            let (_, s, _) = others.rem(&images[i]).xgcd(&images[i]);
            s
        })
        .collect();
    let mut lifted: Vec<BiPoly> = images.iter().map(|u| from_k_poly(u, 0)).collect();
    for j in 1..prec {
        let mut prod = BiPoly::one();
        for h in &lifted {
            prod = truncate(&(&prod * h), j + 1);
        }
        let e = t_coeff(&(&target - &prod), j);
        if e.is_zero() {
            continue;
        }
        for i in 0..r {
            let delta = (&e * &bezout[i]).rem(&images[i]);
            lifted[i] = &lifted[i] + &from_k_poly(&delta, j);
        }
    }
    lifted
}

fn recombine(mut g: BiPoly, mut lifted: Vec<BiPoly>, prec: usize) -> Vec<BiPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let mut cand = BiPoly::from_n(g.lc_k());
            for &i in &subset {
                cand = truncate(&(&cand * &lifted[i]), prec);
            }
            let cand = cand.pp_k().canonical();
            if cand.deg_k() < 1 {
                continue;
            }
            if let Some(q) = g.exact_div(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                g = q;
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, h)| h)
                    .collect();
            }
            None => size += 1,
        }
    }
    if g.deg_k() >= 1 {
        out.push(g.canonical());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_k::polyk_from_ints;

    #[test]
    fn splits_product() {
        let a = polyk_from_ints(&[&[0, -1], &[], &[1]]); // k^2 - n
        let b = polyk_from_ints(&[&[1], &[1]]); // k + 1
        let fl = factor(&(&a * &b));
        assert_eq!(fl.factors, vec![(b, 1), (a, 1)]);
        assert!(fl.unit.is_one());
    }

    #[test]
    fn difference_of_squares() {
        let x = polyk_from_ints(&[&[0, 0, -1], &[], &[1]]);
        let fl = factor(&x);
        let minus = polyk_from_ints(&[&[0, -1], &[1]]);
        let plus = polyk_from_ints(&[&[0, 1], &[1]]);
        assert_eq!(fl.factors, vec![(minus, 1), (plus, 1)]);
    }

    #[test]
    fn cubic_is_irreducible() {
        let b = polyk_from_ints(&[&[1], &[0, 1], &[], &[1]]);
        assert!(is_irreducible(&b));
        assert!(is_irreducible(&polyk_from_ints(&[&[0, -1], &[], &[1]])));
        assert!(is_irreducible(&polyk_from_ints(&[&[0, 1, 1], &[2]])));
        assert!(!is_irreducible(&polyk_from_ints(&[&[1], &[2], &[1]])));
    }

    #[test]
    fn multiplicities_and_units() {
        // (n + 1) * (2k + n)^2 * (k^2 + n^2 + 1) / 3
        let l = polyk_from_ints(&[&[0, 1], &[2]]);
        let q = polyk_from_ints(&[&[1, 0, 1], &[], &[1]]);
        let unit = RatN::new(PolyN::from_ints(&[1, 1]), PolyN::from_ints(&[3]));
        let x = (&l.pow(2) * &q).scale(&unit);
        let fl = factor(&x);
        assert_eq!(fl.factors, vec![(l, 2), (q, 1)]);
        assert_eq!(fl.expand(), x);
    }

    #[test]
    fn needs_recombination() {
        // k^4 - n^2 k^2 ... built so that images split further than the
        // bivariate factors: (k^2 - n)(k^2 - n - 2)
        let a = polyk_from_ints(&[&[0, -1], &[], &[1]]);
        let b = polyk_from_ints(&[&[-2, -1], &[], &[1]]);
        let fl = factor(&(&a * &b));
        assert_eq!(fl.factors.len(), 2);
        assert_eq!(fl.expand(), &a * &b);
    }
}
