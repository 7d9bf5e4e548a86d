//! Rational reconstruction through exact linear algebra.

use num_traits::One;

use super::SampleSeries;
use crate::linalg::{rank_mod_p, solve};
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::Rat;

const HELD_OUT: usize = 3;

/// The lowest-degree `N/D` with `deg N <= p`, `deg D <= q` through the
/// training samples that also matches the last three samples exactly.
/// Degrees are tried by total degree, then by `deg D`.
pub fn fit_rational(s: &SampleSeries, p: usize, q: usize) -> Option<RatN> {
    let pts = s.values();
    if pts.len() < p + q + 2 + HELD_OUT {
        return None;
    }
    let train = &pts[..pts.len() - HELD_OUT];
    for tot in 0..=p + q {
        for dq in 0..=q.min(tot) {
            let dp = tot - dq;
            if dp > p {
                continue;
            }
            if let Some(r) = fit_exact(train, dp, dq) {
                if pts.iter().all(|(n, y)| r.eval(&Rat::from_integer((*n).into())).as_ref() == Some(y)) {
                    return Some(r);
                }
            }
        }
    }
    None
}

/// Solves `N(n_i) = y_i D(n_i)` with `D` monic of degree `dq`.
fn fit_exact(pts: &[(u64, Rat)], dp: usize, dq: usize) -> Option<RatN> {
    let mut a = Vec::with_capacity(pts.len());
    let mut b = Vec::with_capacity(pts.len());
    for (n, y) in pts {
        let x = Rat::from_integer((*n).into());
        let mut pw = vec![Rat::one()];
        for _ in 0..dp.max(dq) {
            let last = pw.last().expect("nonempty").clone();
            pw.push(last * &x);
        }
        let mut row: Vec<Rat> = pw[..=dp].to_vec();
        row.extend(pw[..dq].iter().map(|t| -(t * y)));
        a.push(row);
        b.push(y * &pw[dq]);
    }
    let cols = dp + 1 + dq;
    let aug: Vec<Vec<Rat>> = a
        .iter()
        .zip(&b)
        .map(|(r, y)| {
            let mut r = r.clone();
            r.push(y.clone());
            r
        })
        .collect();
    if rank_mod_p(&aug) == Some(cols + 1) {
        return None;
    }
    // a square subsystem first; the full solve only if it is singular
    let fits = |x: &Vec<Rat>| {
        a.iter()
            .zip(&b)
            .all(|(r, y)| r.iter().zip(x).map(|(c, v)| c * v).sum::<Rat>() == *y)
    };
    let x = solve(&a[..cols.min(a.len())], &b[..cols.min(b.len())])
        .filter(fits)
        .or_else(|| solve(&a, &b))?;
    let num = PolyN::new(x[..=dp].to_vec());
    let mut den: Vec<Rat> = x[dp + 1..].to_vec();
    den.push(Rat::one());
    let den = PolyN::new(den);
    if den.is_zero() {
        return None;
    }
    Some(RatN::new(num, den))
}
