//! Brute-force evaluation and reconstruction, independent of the engine.
//!
//! Nothing here calls into [`crate::engine`]; tests compare the two.

mod demo;
mod fit;
mod recurrence;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::poly_n::PolyN;
use crate::rat_nk::RatNK;
use crate::scalar::Rat;

pub use demo::{
    conjecture_check, hardness_demo, hardness_value, ClassFit, ConjectureReport, GridPoint,
    HardnessReport, VIOLATION_FLAG,
};
pub use fit::fit_rational;
pub use recurrence::{recurrence_search, RecurrenceCandidate, RecurrenceError, DEFAULT_MARGIN};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleValue {
    Value(Rat),
    /// The smallest `k` where a denominator vanishes.
    Pole { k: u64 },
}

impl fmt::Display for SampleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleValue::Value(v) => write!(f, "{v}"),
            SampleValue::Pole { k } => write!(f, "pole at k = {k}"),
        }
    }
}

impl SampleValue {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            SampleValue::Value(v) => Some(v),
            SampleValue::Pole { .. } => None,
        }
    }
}

/// Samples with strictly increasing `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SampleSeries {
    pub entries: Vec<(u64, SampleValue)>,
}

impl SampleSeries {
    pub fn new(entries: Vec<(u64, SampleValue)>) -> Self {
        assert!(
            entries.windows(2).all(|w| w[0].0 < w[1].0),
            "sample points must increase"
        );
        SampleSeries { entries }
    }

    pub fn from_values(start: u64, values: Vec<Rat>) -> Self {
        Self::new(
            values
                .into_iter()
                .enumerate()
                .map(|(i, v)| (start + i as u64, SampleValue::Value(v)))
                .collect(),
        )
    }

    /// Pole-free `(n, value)` pairs.
    pub fn values(&self) -> Vec<(u64, Rat)> {
        self.entries
            .iter()
            .filter_map(|(n, v)| v.value().map(|x| (*n, x.clone())))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `F(n0, .)` with integer coefficients, for fast evaluation at integer `k`.
pub(crate) struct AtN {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
    /// `F(n0, k) = scale * num(k) / den(k)`.
    scale: Rat,
}

impl AtN {
    pub(crate) fn new(f: &RatNK, n0: u64) -> Self {
        let nr = Rat::from_integer(n0.into());
        let (p, q) = (f.num().eval_n(&nr), f.den().eval_n(&nr));
        let (pd, qd) = (p.denom_lcm(), q.denom_lcm());
        let int = |x: &PolyN, d: &BigInt| {
            x.scale(&Rat::from_integer(d.clone()))
                .int_coeffs()
                .expect("cleared denominators")
        };
        AtN {
            num: int(&p, &pd),
            den: int(&q, &qd),
            scale: Rat::new(qd, pd),
        }
    }

    fn horner(cs: &[BigInt], k: &BigInt) -> BigInt {
        cs.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    /// `None` at a pole.
    pub(crate) fn at(&self, k: u64) -> Option<Rat> {
        let kb = BigInt::from(k);
        let d = Self::horner(&self.den, &kb);
        if d.is_zero() {
            return None;
        }
        Some(&self.scale * Rat::new(Self::horner(&self.num, &kb), d))
    }
}

/// `sum_{k=0}^{n} F(n, k)` exactly, or the first pole.
pub fn eval_definite_sum(f: &RatNK, n: u64) -> SampleValue {
    let g = AtN::new(f, n);
    let mut acc = Rat::zero();
    for k in 0..=n {
        match g.at(k) {
            Some(v) => acc += v,
            None => return SampleValue::Pole { k },
        }
    }
    SampleValue::Value(acc)
}

/// Samples `n` in `range`, in parallel, in order.
pub fn sample(f: &RatNK, range: std::ops::RangeInclusive<u64>) -> SampleSeries {
    let entries = range
        .into_par_iter()
        .map(|n| (n, eval_definite_sum(f, n)))
        .collect();
    SampleSeries::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::scalar::ratio;

    #[test]
    fn definite_sums() {
        let f = parse("1/((k+1)*(k+2))").unwrap();
        assert_eq!(eval_definite_sum(&f, 3), SampleValue::Value(ratio(4, 5)));
        let f = parse("1/(k^3+k*n+1) - 1/((n-k)^3+(n-k)*n+1)").unwrap();
        for n in 0..=20 {
            assert_eq!(eval_definite_sum(&f, n), SampleValue::Value(Rat::zero()));
        }
        let f = parse("1/(2*k-n)").unwrap();
        assert_eq!(eval_definite_sum(&f, 4), SampleValue::Pole { k: 2 });
    }

    #[test]
    fn sampling_is_ordered() {
        let s = sample(&parse("1/(2*k-n)").unwrap(), 0..=6);
        assert_eq!(s.len(), 7);
        assert_eq!(s.values().iter().map(|(n, _)| *n).collect::<Vec<_>>(), vec![1, 3, 5]);
    }
}
