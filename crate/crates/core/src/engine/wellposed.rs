//! Where the denominator of `F` vanishes at some `k` in `0..=n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::factor::factor;
use crate::poly_k::PolyK;
use crate::poly_n::PolyN;
use crate::rat_nk::RatNK;
use crate::scalar::{is_integer, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorStatus {
    /// Root `k = p n + q`, decided exactly: it lands on an integer in
    /// `0..=n` for infinitely many `n`, namely large `n` in these residues.
    IllPosed { modulus: u64, residues: Vec<u64> },
    /// Root `k = p n + q` that hits the range at most finitely often.
    WellPosed,
    /// A factor of `n` alone; bad for the listed `n`.
    NContent,
    SampledOk,
    SampledBad,
}

impl fmt::Display for FactorStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorStatus::IllPosed { modulus, residues } => {
                let rs: Vec<String> = residues.iter().map(u64::to_string).collect();
                write!(f, "ill-posed for n = {} mod {modulus}", rs.join(","))
            }
            FactorStatus::WellPosed => write!(f, "well-posed"),
            FactorStatus::NContent => write!(f, "n-content"),
            FactorStatus::SampledOk => write!(f, "sampled-ok"),
            FactorStatus::SampledBad => write!(f, "sampled-bad"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub factor: PolyK,
    pub status: FactorStatus,
    /// Every `n <= horizon` at which this factor has a root in `0..=n`.
    pub bad_n: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WellposedReport {
    pub horizon: u64,
    pub factors: Vec<FactorReport>,
    /// Union of the per-factor lists.
    pub bad_n: Vec<u64>,
}

impl WellposedReport {
    /// Whether the sum is defined for all large `n`.
    pub fn eventually_wellposed(&self) -> bool {
        !self
            .factors
            .iter()
            .any(|f| matches!(f.status, FactorStatus::IllPosed { .. }))
    }
}

/// Nonnegative integer roots of `p` up to `horizon`.
fn n_roots(p: &PolyN, horizon: u64) -> Vec<u64> {
    let mut out: Vec<u64> = p
        .rational_roots()
        .into_iter()
        .filter(|r| is_integer(r) && !r.is_negative())
        .filter_map(|r| u64::try_from(r.to_integer()).ok())
        .filter(|&r| r <= horizon)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn affine_root(b: &PolyK) -> Option<(Rat, Rat)> {
    if b.degree() != 1 {
        return None;
    }
    let x = -(&b.coeff(0) / &b.coeff(1));
    (x.is_poly() && x.num().degree() <= 1).then(|| (x.num().coeff(1), x.num().coeff(0)))
}

fn linear_status(p: &Rat, q: &Rat) -> FactorStatus {
    let l: BigInt = p.denom().lcm(q.denom());
    let lu: u64 = l.clone().try_into().unwrap_or(u64::MAX);
    let residues: Vec<u64> = (0..lu.min(1 << 16))
        .filter(|&r| is_integer(&(p * Rat::from_integer(r.into()) + q)))
        .collect();
    let zero = Rat::zero();
    let one = Rat::from_integer(1.into());
    let above = *p > zero || (p.is_zero() && *q >= zero);
    let below = *p < one || (*p == one && *q <= zero);
    if !residues.is_empty() && above && below {
        FactorStatus::IllPosed {
            modulus: lu,
            residues,
        }
    } else {
        FactorStatus::WellPosed
    }
}

/// Scan of `n <= horizon`, `k <= n` for zeros of `b` (or poles of its
/// coefficients, which make the term undefined as well).
fn scan(b: &PolyK, horizon: u64) -> Vec<u64> {
    (0..=horizon)
        .filter(|&n| {
            let nr = Rat::from_integer(n.into());
            (0..=n).any(|k| {
                b.eval_point(&nr, &Rat::from_integer(k.into()))
                    .is_none_or(|v| v.is_zero())
            })
        })
        .collect()
}

pub fn wellposedness_check(f: &RatNK, horizon: u64) -> WellposedReport {
    assert!(horizon >= 1, "horizon must be positive");
    let (_, den) = f.to_polyk_pair();
    let mut factors = Vec::new();
    let fl = factor(&den);
    let content = fl.unit.num().clone();
    if content.degree() > 0 {
        factors.push(FactorReport {
            factor: PolyK::constant(crate::rat_n::RatN::from_poly(content.clone())),
            status: FactorStatus::NContent,
            bad_n: n_roots(&content, horizon),
        });
    }
    for (b, _) in &fl.factors {
        let (status, bad_n) = match affine_root(b) {
            Some((p, q)) => {
                let bad = (0..=horizon)
                    .filter(|&n| {
                        let x = &p * Rat::from_integer(n.into()) + &q;
                        is_integer(&x)
                            && !x.is_negative()
                            && x <= Rat::from_integer(n.into())
                    })
                    .collect();
                (linear_status(&p, &q), bad)
            }
            None => {
                let bad = scan(b, horizon);
                let st = if bad.is_empty() {
                    FactorStatus::SampledOk
                } else {
                    FactorStatus::SampledBad
                };
                (st, bad)
            }
        };
        factors.push(FactorReport {
            factor: b.clone(),
            status,
            bad_n,
        });
    }
    let mut bad_n: Vec<u64> = factors.iter().flat_map(|f| f.bad_n.iter().copied()).collect();
    bad_n.sort_unstable();
    bad_n.dedup();
    WellposedReport {
        horizon,
        factors,
        bad_n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn brute(s: &str, horizon: u64) -> Vec<u64> {
        let f = parse(s).unwrap();
        (0..=horizon)
            .filter(|&n| {
                (0..=n).any(|k| {
                    f.eval_point(&Rat::from_integer(n.into()), &Rat::from_integer(k.into()))
                        .is_err()
                })
            })
            .collect()
    }

    #[test]
    fn half_root_is_ill_posed_on_even_n() {
        let r = wellposedness_check(&parse("1/(2*k-n)").unwrap(), 30);
        assert_eq!(
            r.factors[0].status,
            FactorStatus::IllPosed {
                modulus: 2,
                residues: vec![0]
            }
        );
        assert_eq!(r.bad_n, brute("1/(2*k-n)", 30));
        assert!(r.bad_n.iter().all(|n| n % 2 == 0));
    }

    #[test]
    fn shifted_root_is_fine() {
        let r = wellposedness_check(&parse("1/(k+1)").unwrap(), 30);
        assert_eq!(r.factors[0].status, FactorStatus::WellPosed);
        assert!(r.bad_n.is_empty());
    }

    #[test]
    fn other_factors_are_sampled() {
        let r = wellposedness_check(&parse("1/(k^3+k*n+1)").unwrap(), 12);
        assert_eq!(r.factors[0].status, FactorStatus::SampledOk);
        for s in ["1/(k^2-n)", "1/((n-3)*(k+1))", "1/(k-4)"] {
            assert_eq!(wellposedness_check(&parse(s).unwrap(), 20).bad_n, brute(s, 20), "{s}");
        }
    }
}
