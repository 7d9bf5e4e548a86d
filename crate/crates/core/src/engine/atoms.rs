//! Rewriting class members as progression atoms over the representative,
//! then reflection, symmetric doubling and the residue split.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{AffineInt, ProgressionAtom};
use crate::affine::{AutKind, EquivClass};
use crate::poly_k::PolyK;
use crate::rat_n::RatN;
use crate::scalar::{floor, rat_lcm, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("residue modulus {needed} exceeds the cap {cap}")]
    ModulusExplosion { needed: BigInt, cap: u64 },
}

/// One member per atom, summed over `t = 0..=n` at `m = a*t + b*n + c`.
pub fn atoms_from_class(c: &EquivClass) -> Vec<ProgressionAtom> {
    c.members
        .iter()
        .map(|mem| {
            let (a, b, cc) = (&mem.map.a, &mem.map.b, &mem.map.c);
            let inv = a.recip();
            // rep(a k + b n + c) = s * b_member(k), so A/b^d = s^d A / rep(m)^d
            let weight = mem
                .term
                .a
                .apply_affine(&inv, &-(b * &inv), &-(cc * &inv))
                .scale(&mem.unit.pow(c.d as i64));
            ProgressionAtom {
                base: c.rep.clone(),
                d: c.d,
                weight,
                step: a.clone(),
                slope: b.clone(),
                offset: cc.clone(),
                len: AffineInt::new(BigInt::one(), BigInt::zero()),
                modulus: 1,
                residue: 0,
            }
        })
        .collect()
}

/// `t -> n - t`; only for atoms still summed over `t = 0..=n`.
pub fn reflect(at: &ProgressionAtom) -> ProgressionAtom {
    assert!(at.modulus == 1 && at.len == AffineInt::new(BigInt::one(), BigInt::zero()));
    ProgressionAtom {
        step: -&at.step,
        slope: &at.step + &at.slope,
        ..at.clone()
    }
}

/// The same sum read through the involution `tau(m) = -m + b0 n + c0`
/// with `base(tau m) = s * base(m)`, then reindexed so the step stays
/// positive.
fn flip(at: &ProgressionAtom, b0: &Rat, c0: &Rat, s: &RatN) -> ProgressionAtom {
    let weight = at
        .weight
        .apply_affine(&-Rat::one(), b0, c0)
        .scale(&s.pow(-(at.d as i64)));
    ProgressionAtom {
        weight,
        slope: b0 - &at.slope - &at.step,
        offset: c0 - &at.offset,
        ..at.clone()
    }
}

/// A summation piece `sum_{w=lo}^{hi-1} weight(nu, m) / base(nu, m)^d` at
/// `m = step*w + coset`, with signed sums when `hi < lo`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub coset: Rat,
    pub weight: PolyK,
    pub lo: AffineInt,
    pub hi: AffineInt,
}

#[derive(Clone, Debug)]
pub struct ResidueSplit {
    pub residue: u64,
    /// The base with `n = modulus*nu + residue` substituted.
    pub base: PolyK,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub modulus: u64,
    pub step: Rat,
    pub base: PolyK,
    pub d: usize,
    pub cases: Vec<ResidueSplit>,
}

impl Normalized {
    /// Exact value for `n`; `None` at a pole.
    pub fn eval_at(&self, n: u64) -> Option<Rat> {
        let case = &self.cases[(n % self.modulus) as usize];
        let nu = BigInt::from(n / self.modulus);
        let nur = Rat::from_integer(nu.clone());
        let mut acc = Rat::zero();
        for p in &case.pieces {
            let (lo, hi) = (p.lo.at(&nu), p.hi.at(&nu));
            let (from, to, sign) = if lo <= hi {
                (lo, hi, Rat::one())
            } else {
                (hi, lo, -Rat::one())
            };
            let mut w = from;
            while w < to {
                let m = &self.step * Rat::from_integer(w.clone()) + &p.coset;
                let b = case.base.eval_point(&nur, &m)?;
                if b.is_zero() {
                    return None;
                }
                let val = p.weight.eval_point(&nur, &m)? / num_traits::pow(b, self.d);
                acc += &sign * val;
                w += 1;
            }
        }
        Some(acc)
    }
}

/// Reflects negative steps, doubles symmetric classes through their
/// involution, brings every atom to the common step and splits `n` by
/// residue so that each argument lies on a fixed coset of the lattice.
pub fn normalize_atoms(
    atoms: &[ProgressionAtom],
    kind: &AutKind,
    cap: u64,
) -> Result<Normalized, NormalizeError> {
    let base = atoms.first().map_or_else(PolyK::one, |a| a.base.clone());
    let d = atoms.first().map_or(1, |a| a.d);
    let mut work: Vec<ProgressionAtom> = atoms
        .iter()
        .map(|a| if a.step.is_negative() { reflect(a) } else { a.clone() })
        .collect();
    if let AutKind::Symmetric(tau) = kind {
        let s = tau_unit(&base, &tau.b, &tau.c);
        let half = RatN::constant(Rat::new(1.into(), 2.into()));
        work = work
            .iter()
            .flat_map(|a| {
                let h = ProgressionAtom {
                    weight: a.weight.scale(&half),
                    ..a.clone()
                };
                let f = flip(&h, &tau.b, &tau.c, &s);
                [h, f]
            })
            .collect();
    }
    let step = work
        .iter()
        .fold(None, |acc: Option<Rat>, a| {
            Some(match acc {
                None => a.step.clone(),
                Some(l) => rat_lcm(&l, &a.step),
            })
        })
        .unwrap_or_else(Rat::one);
    let mut modulus = BigInt::one();
    for a in &work {
        let l = (&step / &a.step).to_integer();
        let e = (&a.slope / &step).denom().clone();
        modulus = modulus.lcm(&l).lcm(&e);
    }
    if modulus > BigInt::from(cap) {
        return Err(NormalizeError::ModulusExplosion {
            needed: modulus,
            cap,
        });
    }
    let big_m: u64 = modulus.try_into().expect("below cap");
    let mr = Rat::from_integer(big_m.into());
    let cases = (0..big_m)
        .map(|rho| {
            let rr = Rat::from_integer(rho.into());
            let mut pieces = Vec::new();
            for a in &work {
                let l = (&step / &a.step).to_integer();
                let e = (&a.slope * &mr / &step).to_integer();
                let weight = a.weight.compose_n(&mr, &rr);
                let grow = BigInt::from(big_m) / &l;
                let mut r = BigInt::zero();
                while r < l {
                    let e0 = &a.step * Rat::from_integer(r.clone()) + &a.slope * &rr + &a.offset;
                    let q0 = floor(&(&e0 / &step));
                    let coset = &e0 - &step * Rat::from_integer(q0.clone());
                    let tail = (BigInt::from(rho) - &r).div_floor(&l);
                    pieces.push(Piece {
                        coset,
                        weight: weight.clone(),
                        lo: AffineInt::new(e.clone(), q0.clone()),
                        hi: AffineInt::new(&e + &grow, q0 + tail + 1),
                    });
                    r += 1;
                }
            }
            ResidueSplit {
                residue: rho,
                base: base.compose_n(&mr, &rr),
                pieces,
            }
        })
        .collect();
    Ok(Normalized {
        modulus: big_m,
        step,
        base,
        d,
        cases,
    })
}

/// `s` with `base(-m + b0 n + c0) = s * base(m)`.
fn tau_unit(base: &PolyK, b0: &Rat, c0: &Rat) -> RatN {
    let img = base.apply_affine(&-Rat::one(), b0, c0);
    &img.lc() / &base.lc()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::group_classes;
    use crate::engine::class_value;
    use crate::parse::parse;
    use crate::pfd::pfd;

    fn classes(s: &str) -> Vec<EquivClass> {
        group_classes(&pfd(&parse(s).unwrap()).terms)
    }

    fn atoms_total(atoms: &[ProgressionAtom], n: u64) -> Option<Rat> {
        atoms.iter().map(|a| a.eval_at(n)).sum()
    }

    const CASES: &[&str] = &[
        "1/(k^3+k*n+1) - 1/((n-k)^3+(n-k)*n+1)",
        "1/(k^3+k*n+1) + 1/((k+n+1)^3+(k+n+1)*n+1) - 1/((2*k)^3+2*k*n+1) - 1/((2*k+1)^3+(2*k+1)*n+1)",
        "1/(k+1) + 2/(k+2+n) - 2/(2*k+1)",
        "1/(k^2+1) - 3/((n-k)^2+1) + k/((2*k+n)^2+1)^2",
        "(k+n)/(3*k^2+n+2)",
    ];

    #[test]
    fn atoms_reproduce_member_sums() {
        for s in CASES {
            for c in classes(s) {
                let atoms = atoms_from_class(&c);
                for n in 0..=10u64 {
                    let want = class_value(&c, &n.into());
                    assert_eq!(atoms_total(&atoms, n), want, "{s} at n = {n}");
                }
            }
        }
    }

    #[test]
    fn reflection_preserves_value() {
        for c in classes(CASES[3]) {
            for a in atoms_from_class(&c) {
                let r = reflect(&a);
                for n in 0..=15 {
                    assert_eq!(a.eval_at(n), r.eval_at(n));
                }
            }
        }
    }

    #[test]
    fn normalization_preserves_value() {
        for s in CASES {
            for c in classes(s) {
                let atoms = atoms_from_class(&c);
                let norm = normalize_atoms(&atoms, &c.kind(), 64).unwrap();
                for n in 0..=15u64 {
                    assert_eq!(norm.eval_at(n), atoms_total(&atoms, n), "{s} at n = {n}");
                }
            }
        }
    }

    #[test]
    fn dilation_needs_parity_split() {
        let c = &classes(CASES[1])[0];
        assert_eq!(c.members.len(), 4);
        let norm = normalize_atoms(&atoms_from_class(c), &c.kind(), 64).unwrap();
        assert_eq!(norm.step, Rat::from_integer(2.into()));
        assert_eq!(norm.modulus, 2);
        let norm = normalize_atoms(&atoms_from_class(c), &c.kind(), 1);
        assert!(matches!(norm, Err(NormalizeError::ModulusExplosion { .. })));
    }

    #[test]
    fn single_identity_atom_is_unchanged() {
        let c = &classes("1/(k^3+k*n+1)")[0];
        let atoms = atoms_from_class(c);
        assert_eq!(atoms.len(), 1);
        assert!(atoms[0].weight.is_one());
        let norm = normalize_atoms(&atoms, &c.kind(), 64).unwrap();
        assert_eq!(norm.modulus, 1);
        assert_eq!(norm.cases[0].pieces.len(), 1);
    }
}
