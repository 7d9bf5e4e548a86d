//! Dense integer polynomials, lowest degree first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::modp::Field;

pub type ZPoly = Vec<BigInt>;

pub fn trim_z(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub fn mul_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    trim_z(&mut v);
    v
}

pub fn content_z(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive_z(a: &[BigInt]) -> ZPoly {
    let mut c = content_z(a);
    if c.is_zero() {
        return Vec::new();
    }
    if a.last().unwrap().is_negative() {
        c = -c;
    }
    a.iter().map(|x| x / &c).collect()
}

/// Exact division in Z[x].
pub fn divexact_z(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    if a.len() < d.len() {
        return a.iter().all(|c| c.is_zero()).then(Vec::new);
    }
    let dd = d.len() - 1;
    let ld = d.last().unwrap();
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + dd].div_rem(ld);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in d.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        trim_z(&mut q);
        Some(q)
    } else {
        None
    }
}

/// Pseudo-remainder `lc(d)^(deg a - deg d + 1) * a mod d`.
pub fn prem_z(a: &[BigInt], d: &[BigInt]) -> ZPoly {
    let mut r: ZPoly = a.to_vec();
    trim_z(&mut r);
    let dd = d.len() - 1;
    let ld = d.last().unwrap();
    while r.len() > dd {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - dd;
        for c in r.iter_mut() {
            *c *= ld;
        }
        for (j, y) in d.iter().enumerate() {
            r[shift + j] -= &top * y;
        }
        r.pop();
        trim_z(&mut r);
    }
    r
}

/// A 61-bit prime for coprimality screening.
const SCREEN_PRIME: u64 = (1 << 61) - 1;

/// gcd in `Z[x]` up to sign, via a modular coprimality screen and the
/// primitive remainder sequence. Both inputs nonzero.
pub fn gcd_z(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let mut a = primitive_z(a);
    let mut b = primitive_z(b);
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::from(1)];
    }
    let fp = Field::new(SCREEN_PRIME);
    if fp.reduce_int(a.last().unwrap()) != 0 && fp.reduce_int(b.last().unwrap()) != 0 {
        let g = fp.gcd(&fp.from_ints(&a), &fp.from_ints(&b));
        if g.len() == 1 {
            return vec![BigInt::from(1)];
        }
    }
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem_z(&a, &b);
        a = b;
        b = primitive_z(&r);
    }
    a
}
