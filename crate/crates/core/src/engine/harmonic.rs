//! Rational-type classes through Hurwitz-type sums.
//!
//! Every member is `w(n) / (k + p n + q)^d`. Writing
//! `Z(x) = sum_{i >= 0} 1/(x + i)^d` (regularized for `d = 1`), each member
//! sum is a signed combination of `Z` at affine arguments. With
//! `n = M nu + rho` these become `Z(nu + f)`, `f in (0, 1]`, plus explicit
//! rational terms and constants. The class is rational exactly when all
//! `Z(nu + f)` coefficients cancel; the constants (multiples of the
//! weights) are then fixed by exact class values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{assemble, class_value, to_n, ResidueCase, Verdict};
use crate::affine::EquivClass;
use crate::linalg::{rank, solve};
use crate::poly_n::PolyN;
use crate::rat_n::RatN;
use crate::scalar::{floor, is_integer, sign, Rat};

struct Member {
    w: RatN,
    p: Rat,
    q: Rat,
}

fn members(c: &EquivClass) -> Result<Vec<Member>, String> {
    c.members
        .iter()
        .map(|m| {
            let (a, b) = (&m.term.a, &m.term.b);
            if a.degree() > 0 || b.degree() != 1 {
                return Err("member is not of the form w(n)/(k + p n + q)^d".to_string());
            }
            let b1 = b.coeff(1);
            let x = &b.coeff(0) / &b1;
            if !x.is_poly() || x.num().degree() > 1 {
                return Err("root is not affine in n".to_string());
            }
            Ok(Member {
                w: &a.coeff(0) / &b1.pow(c.d as i64),
                p: x.num().coeff(1),
                q: x.num().coeff(0),
            })
        })
        .collect()
}

/// `Z(nu + f)` coefficients and the explicit rational part.
struct Acc {
    d: usize,
    z: BTreeMap<Rat, RatN>,
    explicit: RatN,
}

impl Acc {
    /// `(nu + x)^(-d)`.
    fn pole(&self, x: &Rat) -> RatN {
        RatN::new(PolyN::one(), PolyN::linear(Rat::one(), x.clone()).pow(self.d))
    }

    /// Adds `coef * Z(a nu + c)` with an integer `a >= 0`.
    fn add(&mut self, coef: &RatN, a: &Rat, c: &Rat) {
        assert!(is_integer(a) && !a.is_negative());
        if a.is_zero() {
            return;
        }
        // Z(a x) = a^-d sum_{i<a} Z(x + i/a), up to a constant when d = 1
        let scaled = coef.scale(&num_traits::pow(a.recip(), self.d));
        let count = a.to_integer();
        let mut i = BigInt::zero();
        while i < count {
            let g = (c + Rat::from_integer(i.clone())) / a;
            let f = &g - Rat::from_integer(-floor(&-&g)) + Rat::one();
            let s = (&g - &f).to_integer();
            let slot = self.z.entry(f.clone()).or_insert_with(RatN::zero);
            *slot = &*slot + &scaled;
            // Z(x + s) = Z(x) - sum_{j<s} (x+j)^-d, and the mirror for s < 0
            let mut j = BigInt::zero();
            while j < s.abs() {
                if s.is_positive() {
                    let t = self.pole(&(&f + Rat::from_integer(j.clone())));
                    self.explicit = &self.explicit - &(&scaled * &t);
                } else {
                    let t = self.pole(&(&f - Rat::from_integer(&j + 1)));
                    self.explicit = &self.explicit + &(&scaled * &t);
                }
                j += 1;
            }
            i += 1;
        }
    }
}

fn lin_sign(p: &Rat, q: &Rat) -> i32 {
    if p.is_zero() {
        sign(q)
    } else {
        sign(p)
    }
}

/// First `n` from which `p n + q` keeps its eventual sign.
fn stable_from(p: &Rat, q: &Rat) -> BigInt {
    if p.is_zero() {
        return BigInt::zero();
    }
    let root = -(q / p);
    if root.is_negative() {
        BigInt::zero()
    } else {
        floor(&root) + 1
    }
}

/// Indices of a Q-basis of the span of `ws`.
fn basis(ws: &[RatN]) -> Vec<usize> {
    let den = ws.iter().fold(PolyN::one(), |l, w| {
        let g = l.gcd(w.den());
        &l * &w.den().exact_div(&g).expect("gcd divides")
    });
    let vecs: Vec<Vec<Rat>> = ws
        .iter()
        .map(|w| {
            let p = w.num() * &den.exact_div(w.den()).expect("lcm");
            p.coeffs().to_vec()
        })
        .collect();
    let width = vecs.iter().map(Vec::len).max().unwrap_or(0);
    let mut chosen: Vec<usize> = Vec::new();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (i, v) in vecs.iter().enumerate() {
        let mut v = v.clone();
        v.resize(width, Rat::zero());
        rows.push(v);
        if rank(&rows) > chosen.len() {
            chosen.push(i);
        } else {
            rows.pop();
        }
    }
    chosen
}

/// Verdict for a rational-type class and the first `n` it holds from.
pub(crate) fn sum_rational_type(c: &EquivClass, cap: u64) -> Result<(Verdict, u64), String> {
    let ms = members(c)?;
    let d = c.d;
    let modulus = ms
        .iter()
        .fold(BigInt::one(), |l, m| l.lcm(m.p.denom()));
    if modulus > BigInt::from(cap) {
        return Err(format!("residue modulus {modulus} exceeds the cap {cap}"));
    }
    let big_m: u64 = modulus.clone().try_into().expect("below cap");
    let mr = Rat::from_integer(big_m.into());
    let sd = if d % 2 == 0 { Rat::one() } else { -Rat::one() };
    let mut n0 = BigInt::zero();
    for m in &ms {
        n0 = n0.max(stable_from(&m.p, &m.q));
        n0 = n0.max(stable_from(&(&m.p + Rat::one()), &m.q));
    }
    let mut cases = Vec::new();
    for rho in 0..big_m {
        let rr = Rat::from_integer(rho.into());
        let mut acc = Acc {
            d,
            z: BTreeMap::new(),
            explicit: RatN::zero(),
        };
        let mut ws = Vec::new();
        for m in &ms {
            let w = m.w.compose_linear(&mr, &rr);
            let p1 = &m.p + Rat::one();
            let x0 = &m.p * &rr + &m.q;
            let lo = lin_sign(&m.p, &m.q);
            let hi = lin_sign(&p1, &m.q);
            if lo > 0 {
                acc.add(&w, &(&m.p * &mr), &x0);
                acc.add(&-&w, &(&p1 * &mr), &(&p1 * &rr + &m.q + Rat::one()));
            } else if hi < 0 {
                let sw = w.scale(&sd);
                acc.add(&sw, &-(&p1 * &mr), &-(&p1 * &rr + &m.q));
                acc.add(&-&sw, &-(&m.p * &mr), &(Rat::one() - &x0));
            } else if lo < 0 && hi > 0 {
                if is_integer(&x0) {
                    return Err(format!("pole inside the range for n = {rho} mod {big_m}"));
                }
                acc.add(&-&w.scale(&sd), &-(&m.p * &mr), &(Rat::one() - &x0));
                acc.add(&-&w, &(&p1 * &mr), &(&p1 * &rr + &m.q + Rat::one()));
            } else {
                return Err("pole at a summation endpoint".to_string());
            }
            ws.push(w);
        }
        if acc.z.values().any(|v| !v.is_zero()) {
            return Err(format!(
                "harmonic parts do not cancel for n = {rho} mod {big_m}"
            ));
        }
        let nu0 = (&n0 - BigInt::from(rho)).div_ceil(&modulus).max(BigInt::zero());
        let result = fit_constants(c, &acc.explicit, &ws, big_m, rho, &nu0)?;
        cases.push(ResidueCase {
            modulus: big_m,
            residue: rho,
            result: to_n(&result, big_m, rho),
        });
    }
    let from: u64 = n0.try_into().unwrap_or(u64::MAX);
    Ok((assemble(cases), from))
}

/// `explicit + sum c_i w_i` with rational `c_i` fixed by exact class values
/// at `nu >= nu0`, checked on three further points.
fn fit_constants(
    c: &EquivClass,
    explicit: &RatN,
    ws: &[RatN],
    modulus: u64,
    rho: u64,
    nu0: &BigInt,
) -> Result<RatN, String> {
    let idx = basis(ws);
    let need = idx.len() + 3;
    let mut a: Vec<Vec<Rat>> = Vec::new();
    let mut b: Vec<Rat> = Vec::new();
    let mut nu = nu0.clone();
    let mut tries = 0;
    while a.len() < need && tries < need + 30 {
        tries += 1;
        let nur = Rat::from_integer(nu.clone());
        let n = &nu * BigInt::from(modulus) + BigInt::from(rho);
        nu += 1;
        let Some(s) = class_value(c, &n) else { continue };
        let Some(e) = explicit.eval(&nur) else { continue };
        let row: Option<Vec<Rat>> = idx.iter().map(|&i| ws[i].eval(&nur)).collect();
        let Some(row) = row else { continue };
        a.push(row);
        b.push(s - e);
    }
    if a.len() < need || rank(&a) < idx.len() {
        return Err("not enough sample points to fix the constants".to_string());
    }
    let x = solve(&a, &b).ok_or("constants disagree on validation points")?;
    Ok(idx
        .iter()
        .zip(&x)
        .fold(explicit.clone(), |acc, (&i, ci)| &acc + &ws[i].scale(ci)))
}
