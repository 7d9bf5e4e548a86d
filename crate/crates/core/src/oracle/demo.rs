//! The non-recurrence demonstration and the per-class conjecture check.

use num_traits::Zero;
use rayon::prelude::*;

use super::fit::fit_rational;
use super::recurrence::{recurrence_search, RecurrenceCandidate, RecurrenceError};
use super::{eval_definite_sum, AtN, SampleSeries, SampleValue};
use crate::affine::group_classes;
use crate::pfd::pfd;
use crate::poly_k::PolyK;
use crate::rat_n::RatN;
use crate::rat_nk::RatNK;
use crate::scalar::Rat;

pub const VIOLATION_FLAG: &str = "CONJECTURE-VIOLATION-CANDIDATE";

/// `R(n) = sum_{k=0}^{n} 1/(k + n(n+1)/2)`, the reciprocals of the `n`-th
/// block of consecutive integers.
pub fn hardness_value(n: u64) -> Rat {
    assert!(n >= 1, "R(0) has a pole");
    let start = n * (n + 1) / 2;
    (start..=start + n)
        .map(|i| Rat::new(1.into(), i.into()))
        .sum()
}

#[derive(Clone, Debug)]
pub struct GridPoint {
    pub order: usize,
    pub degree: usize,
    pub outcome: Result<Option<RecurrenceCandidate>, RecurrenceError>,
}

#[derive(Clone, Debug)]
pub struct HardnessReport {
    pub n_max: u64,
    pub values: Vec<(u64, Rat)>,
    pub grid: Vec<GridPoint>,
    pub fit: Option<RatN>,
}

impl HardnessReport {
    /// No grid point produced a recurrence.
    pub fn none_found(&self) -> bool {
        self.grid.iter().all(|g| matches!(g.outcome, Ok(None)))
    }
}

/// Values for `n = 1..=n_max`, a recurrence search over orders `1..=3` and
/// degrees `0..=4`, and a rational fit with bounds `(6, 6)`.
pub fn hardness_demo(n_max: u64) -> HardnessReport {
    assert!(n_max >= 5, "n_max must be at least 5");
    let values: Vec<(u64, Rat)> = (1..=n_max)
        .into_par_iter()
        .map(|n| (n, hardness_value(n)))
        .collect();
    let series = SampleSeries::new(
        values
            .iter()
            .map(|(n, v)| (*n, SampleValue::Value(v.clone())))
            .collect(),
    );
    let cells: Vec<(usize, usize)> = (1..=3).flat_map(|m| (0..=4).map(move |d| (m, d))).collect();
    let grid = cells
        .into_par_iter()
        .map(|(order, degree)| GridPoint {
            order,
            degree,
            outcome: recurrence_search(&series, order, degree),
        })
        .collect();
    HardnessReport {
        n_max,
        fit: fit_rational(&series, 6, 6),
        values,
        grid,
    }
}

#[derive(Clone, Debug)]
pub struct ClassFit {
    pub rep: PolyK,
    pub d: usize,
    pub members: usize,
    pub fit: Option<RatN>,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub full_fit: Option<RatN>,
    pub classes: Vec<ClassFit>,
    /// Set iff the full sum fits but some class sum does not.
    pub violation: bool,
}

impl ConjectureReport {
    pub fn flags(&self) -> Vec<&'static str> {
        if self.violation {
            vec![VIOLATION_FLAG]
        } else {
            Vec::new()
        }
    }
}

/// Sum of several terms at `n`, term by term.
fn series_of(terms: &[RatNK], n_max: u64) -> SampleSeries {
    let entries = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let gs: Vec<AtN> = terms.iter().map(|t| AtN::new(t, n)).collect();
            let mut acc = Rat::zero();
            for k in 0..=n {
                for g in &gs {
                    match g.at(k) {
                        Some(v) => acc += v,
                        None => return (n, SampleValue::Pole { k }),
                    }
                }
            }
            (n, SampleValue::Value(acc))
        })
        .collect();
    SampleSeries::new(entries)
}

/// Fits the full sum and every class sum over `n = 0..=n_max`.
pub fn conjecture_check(f: &RatNK, p: usize, q: usize, n_max: u64) -> ConjectureReport {
    let full: Vec<(u64, SampleValue)> = (0..=n_max)
        .into_par_iter()
        .map(|n| (n, eval_definite_sum(f, n)))
        .collect();
    let full_fit = fit_rational(&SampleSeries::new(full), p, q);
    let dec = pfd(f);
    let classes: Vec<ClassFit> = group_classes(&dec.terms)
        .iter()
        .map(|c| {
            let terms: Vec<RatNK> = c.members.iter().map(|m| m.term.to_rat()).collect();
            ClassFit {
                rep: c.rep.clone(),
                d: c.d,
                members: c.members.len(),
                fit: fit_rational(&series_of(&terms, n_max), p, q),
            }
        })
        .collect();
    let violation = full_fit.is_some() && classes.iter().any(|c| c.fit.is_none());
    ConjectureReport {
        full_fit,
        classes,
        violation,
    }
}
