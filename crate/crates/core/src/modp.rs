//! Dense polynomials over a small prime field, with Cantor-Zassenhaus
//! factorization. Coefficients are `u64` residues, lowest degree first.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn reduce_int(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_ints(&self, c: &[BigInt]) -> Poly {
        let mut v: Poly = c.iter().map(|x| self.reduce_int(x)).collect();
        trim(&mut v);
        v
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let mut v: Poly = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        trim(&mut v);
        v
    }

    pub fn mul_poly(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + self.mul(x, y)) % self.p;
            }
        }
        trim(&mut v);
        v
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        let mut v: Poly = a.iter().map(|&x| self.mul(x, c)).collect();
        trim(&mut v);
        v
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &Poly, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_empty());
        if a.len() < d.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*d.last().unwrap());
        let dd = d.len() - 1;
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - dd];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + dd], inv);
            if c != 0 {
                for (j, &y) in d.iter().enumerate() {
                    r[i + j] = (r[i + j] + self.p - self.mul(c, y)) % self.p;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &Poly, d: &Poly) -> Poly {
        self.divrem(a, d).1
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s*a + t*b = g` monic.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().unwrap());
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        let mut v: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        trim(&mut v);
        v
    }

    pub fn powmod(&self, base: &Poly, exp: &BigUint, m: &Poly) -> Poly {
        let mut result = vec![1u64];
        let mut b = self.rem(base, m);
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                result = self.rem(&self.mul_poly(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul_poly(&b, &b), m);
            }
        }
        self.rem(&result, m)
    }

    pub fn is_squarefree(&self, a: &Poly) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, in a deterministic order.
    pub fn factor_squarefree(&self, f: &Poly, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }

    /// Number of irreducible factors, from the distinct-degree split alone.
    pub fn count_factors(&self, f: &Poly) -> usize {
        self.distinct_degree(f)
            .iter()
            .map(|(g, d)| (g.len() - 1) / d)
            .sum()
    }

    fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let pbig = BigUint::from(self.p);
        let mut d = 1;
        while 2 * d <= f.len() - 1 {
            h = self.powmod(&h, &pbig, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.len() > 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
        }
        out
    }

    fn equal_degree(&self, g: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
        let deg = g.len() - 1;
        if deg == d {
            out.push(g.clone());
            return;
        }
        // (p^d - 1) / 2
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Poly = {
                let mut v: Poly = (0..deg).map(|_| rng.gen_range(0..self.p)).collect();
                trim(&mut v);
                v
            };
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, g), &vec![1u64]);
            let s = self.gcd(&b, g);
            if s.len() > 1 && s.len() < g.len() {
                let t = self.divrem(g, &s).0;
                self.equal_degree(&s, d, rng, out);
                self.equal_degree(&self.monic(&t), d, rng, out);
                return;
            }
        }
    }
}

pub fn trim(v: &mut Poly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Symmetric lift of a residue modulo `m` to `(-m/2, m/2]`.
pub fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_p() {
        let fp = Field::new(7);
        // (x + 1)(x + 2)(x^2 + 1) mod 7; x^2+1 is irreducible mod 7
        let a = fp.mul_poly(&vec![1, 1], &vec![2, 1]);
        let f = fp.mul_poly(&a, &vec![1, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = fp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs, vec![vec![1, 0, 1], vec![1, 1], vec![2, 1]]);
        assert_eq!(fp.count_factors(&f), 3);
    }
}
