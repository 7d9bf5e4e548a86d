//! Exact Gaussian elimination over `Q` and `Q(n)`.

use num_traits::{One, Zero};

use crate::rat_n::RatN;
use crate::scalar::Rat;

pub(crate) trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for RatN {
    fn zero() -> Self {
        RatN::zero()
    }
    fn one() -> Self {
        RatN::one()
    }
    fn is_zero(&self) -> bool {
        RatN::is_zero(self)
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref<F: Field>(m: &mut [Vec<F>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = F::one().div(&m[r][c]);
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = m[r][j].mul(&f);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// One solution of `a x = b` (free variables set to zero).
pub(crate) fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut row = row.clone();
            row.push(y.clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![F::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][n].clone();
    }
    Some(x)
}

/// A basis of `{x : a x = 0}`.
pub(crate) fn nullspace<F: Field>(a: &[Vec<F>], cols: usize) -> Vec<Vec<F>> {
    let mut m = a.to_vec();
    let pivots = rref(&mut m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); cols];
            v[free] = F::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = F::zero().sub(&m[i][free]);
            }
            v
        })
        .collect()
}

pub(crate) fn rank<F: Field>(a: &[Vec<F>]) -> usize {
    rref(&mut a.to_vec()).len()
}

const SCREEN_P: u128 = (1 << 61) - 1;

fn pow_mod(mut b: u128, mut e: u128) -> u128 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % SCREEN_P;
        }
        b = b * b % SCREEN_P;
        e >>= 1;
    }
    r
}

fn to_mod(x: &Rat) -> Option<u128> {
    let p = num_bigint::BigInt::from(SCREEN_P);
    let red = |v: &num_bigint::BigInt| -> u128 {
        let r = ((v % &p) + &p) % &p;
        u128::try_from(r).expect("reduced")
    };
    let d = red(x.denom());
    (d != 0).then(|| red(x.numer()) * pow_mod(d, SCREEN_P - 2) % SCREEN_P)
}

/// Rank modulo a large prime, a lower bound for the rank over `Q`; `None`
/// if some denominator vanishes modulo the prime.
pub(crate) fn rank_mod_p(a: &[Vec<Rat>]) -> Option<usize> {
    let mut m: Vec<Vec<u128>> = a
        .iter()
        .map(|row| row.iter().map(to_mod).collect::<Option<Vec<u128>>>())
        .collect::<Option<_>>()?;
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = pow_mod(m[r][c], SCREEN_P - 2);
        for i in r + 1..rows {
            if m[i][c] != 0 {
                let f = m[i][c] * inv % SCREEN_P;
                for j in c..cols {
                    let t = f * m[r][j] % SCREEN_P;
                    m[i][j] = (m[i][j] + SCREEN_P - t) % SCREEN_P;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = q(&[&[1, 1], &[1, -1]]);
        assert_eq!(solve(&a, &[rat(3), rat(1)]), Some(vec![rat(2), rat(1)]));
        let a = q(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve(&a, &[rat(1), rat(3)]), None);
        assert_eq!(rank(&a), 1);
        assert_eq!(rank_mod_p(&a), Some(1));
        assert_eq!(rank_mod_p(&q(&[&[1, 2], &[3, 4]])), Some(2));
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            for row in &a {
                let s: Rat = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                assert!(Zero::is_zero(&s));
            }
        }
    }
}
