//! Univariate factorization over Z: modular factorization, multifactor
//! Hensel lifting, and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{symmetric, trim, Field, Poly};
use crate::zpoly::{divexact_z, mul_z, primitive_z, trim_z, ZPoly};

const SMALL_PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283,
    293, 307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401,
    409, 419, 421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509,
    521, 523, 541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631,
    641, 643, 647, 653, 659, 661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751,
    757, 761, 769, 773, 787, 797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877,
    881, 883, 887, 907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// How many admissible primes to compare before picking the one with the
/// fewest modular factors.
const PRIME_CANDIDATES: usize = 4;

fn reduce_mod(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim_z(&mut v);
    v
}

fn to_z(a: &Poly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Irreducible factors of a primitive, squarefree `f` with `deg f >= 1`.
/// Factors are primitive with positive leading coefficient, sorted.
pub fn factor_squarefree_z(f: &[BigInt]) -> Vec<ZPoly> {
    let f = primitive_z(f);
    let deg = f.len() - 1;
    if deg <= 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();

    // choose a prime
    let mut best: Option<(usize, Field, Poly)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES {
        let fp = Field::new(p);
        if fp.reduce_int(&lc) == 0 {
            continue;
        }
        let fm = fp.from_ints(&f);
        if !fp.is_squarefree(&fm) {
            continue;
        }
        let monic = fp.monic(&fm);
        let count = fp.count_factors(&monic);
        if best.as_ref().is_none_or(|(c, _, _)| count < *c) {
            best = Some((count, fp, monic));
        }
        tried += 1;
        if tried >= PRIME_CANDIDATES || count == 1 {
            break;
        }
    }
    let (count, fp, monic) = best.expect("no admissible prime below 1000");
    if count == 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let modular = fp.factor_squarefree(&monic, &mut rng);

    // coefficient bound for factors, times the leading coefficient
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * (BigInt::one() << deg) * lc.abs() * 2u32;
    let p = BigInt::from(fp.p);
    let mut modulus = p.clone();
    let mut a = 1u32;
    while modulus <= bound {
        modulus *= &p;
        a += 1;
    }
    let lifted = hensel_lift(&f, &fp, &modular, a);
    recombine(f, lifted, &modulus)
}

/// Lifts monic modular factors of `f / lc(f)` to `p^a`.
fn hensel_lift(f: &[BigInt], fp: &Field, factors: &[Poly], a: u32) -> Vec<ZPoly> {
    let p = BigInt::from(fp.p);
    let pa = num_traits::pow(p.clone(), a as usize);
    let lc = f.last().unwrap();
    let lc_inv = mod_inverse(lc, &pa);
    let target = reduce_mod(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &pa);

    let r = factors.len();
    // s_i * prod_{l != i} g_l = 1 (mod g_i, p)
    let s: Vec<Poly> = (0..r)
        .map(|i| {
            let mut others = vec![1u64];
            for (l, g) in factors.iter().enumerate() {
                if l != i {
                    others = fp.mul_poly(&others, g);
                }
            }
            let (_, inv, _) = fp.xgcd(&fp.rem(&others, &factors[i]), &factors[i]);
            inv
        })
        .collect();

    let mut lifted: Vec<ZPoly> = factors.iter().map(to_z).collect();
    let mut pj = p.clone();
    for _ in 1..a {
        let mut prod = vec![BigInt::one()];
        for g in &lifted {
            prod = mul_z(&prod, g);
        }
        let len = target.len().max(prod.len());
        let err: ZPoly = (0..len)
            .map(|i| {
                let t = target.get(i).cloned().unwrap_or_default();
                let q = prod.get(i).cloned().unwrap_or_default();
                t - q
            })
            .collect();
        let mut e: Poly = err
            .iter()
            .map(|c| {
                let (q, rem) = c.div_mod_floor(&pj);
                debug_assert!(rem.is_zero() || (c.mod_floor(&pa) - &rem).is_zero());
                let _ = rem;
                fp.reduce_int(&q)
            })
            .collect();
        trim(&mut e);
        if !e.is_empty() {
            for (i, g) in factors.iter().enumerate() {
                let delta = fp.rem(&fp.mul_poly(&e, &s[i]), g);
                for (k, d) in delta.iter().enumerate() {
                    if k >= lifted[i].len() {
                        lifted[i].resize(k + 1, BigInt::zero());
                    }
                    lifted[i][k] += &pj * BigInt::from(*d);
                }
            }
        }
        pj *= &p;
    }
    lifted.iter().map(|g| reduce_mod(g, &pa)).collect()
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> BigInt {
    let e = x.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

fn recombine(mut f: ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut cand = vec![lc];
            for &i in &subset {
                cand = reduce_mod(&mul_z(&cand, &lifted[i]), modulus);
            }
            let cand: ZPoly = cand.iter().map(|c| symmetric(c, modulus)).collect();
            let cand = primitive_z(&cand);
            if cand.len() < 2 {
                continue;
            }
            if let Some(q) = divexact_z(&f, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                lifted = keep;
            }
            None => size += 1,
        }
    }
    let rest = primitive_z(&f);
    if rest.len() > 1 {
        out.push(rest);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    out
}

/// Index subsets of `0..n` of the given size, in lexicographic order.
pub fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn factors_products() {
        // (x^2 + 1)(2x - 3)(x^3 - x - 1)
        let a = z(&[1, 0, 1]);
        let b = z(&[-3, 2]);
        let c = z(&[-1, -1, 0, 1]);
        let f = mul_z(&mul_z(&a, &b), &c);
        let fs = factor_squarefree_z(&f);
        assert_eq!(fs, vec![b, a, c]);
    }

    #[test]
    fn irreducible_stays() {
        // x^4 + 1 splits modulo every prime but is irreducible over Q
        let f = z(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_squarefree_z(&f), vec![f.clone()]);
    }

    #[test]
    fn many_linear_factors() {
        let mut f = z(&[1]);
        for r in 1..=8 {
            f = mul_z(&f, &z(&[-r, 1]));
        }
        let fs = factor_squarefree_z(&f);
        assert_eq!(fs.len(), 8);
    }
}
