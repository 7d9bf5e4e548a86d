//! Guessing `sum_{i=0}^{m} a_i(n) R(n+i) = 0` from exact values.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use super::SampleSeries;
use crate::linalg::{nullspace, rank_mod_p};
use crate::poly_n::PolyN;
use crate::scalar::Rat;

/// Extra equations beyond the number of unknowns.
pub const DEFAULT_MARGIN: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RecurrenceError {
    #[error("need {needed} consecutive pole-free samples, found {available}")]
    InsufficientSamples { needed: usize, available: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCandidate {
    pub order: usize,
    /// `a_0, ..., a_m`, not all zero.
    pub coeffs: Vec<PolyN>,
}

impl RecurrenceCandidate {
    /// Whether the identity holds wherever the series has all the values.
    pub fn holds_on(&self, s: &SampleSeries) -> bool {
        let vals = s.values();
        let at = |n: u64| vals.iter().find(|(x, _)| *x == n).map(|(_, v)| v);
        vals.iter().all(|(n, _)| {
            let terms: Option<Vec<&Rat>> = (0..=self.order).map(|i| at(n + i as u64)).collect();
            let Some(terms) = terms else { return true };
            let nr = Rat::from_integer((*n).into());
            let sum: Rat = self
                .coeffs
                .iter()
                .zip(terms)
                .map(|(a, r)| a.eval(&nr) * r)
                .sum();
            sum.is_zero()
        })
    }
}

impl fmt::Display for RecurrenceCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*R(n+{i})", a.display_var("n"))?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " = 0")
    }
}

/// The longest run of consecutive pole-free samples.
fn longest_run(s: &SampleSeries) -> Vec<(u64, Rat)> {
    let vals = s.values();
    let mut best: Vec<(u64, Rat)> = Vec::new();
    let mut cur: Vec<(u64, Rat)> = Vec::new();
    for (n, v) in vals {
        if cur.last().is_some_and(|(p, _)| *p + 1 != n) {
            cur.clear();
        }
        cur.push((n, v));
        if cur.len() > best.len() {
            best = cur.clone();
        }
    }
    best
}

/// A recurrence of order `m` with coefficient degree `<= deg`, or `None`
/// when the nullspace of the sample equations is trivial.
pub fn recurrence_search(
    s: &SampleSeries,
    m: usize,
    deg: usize,
) -> Result<Option<RecurrenceCandidate>, RecurrenceError> {
    let cols = (m + 1) * (deg + 1);
    let needed = cols + m + DEFAULT_MARGIN;
    let run = longest_run(s);
    if run.len() < needed {
        return Err(RecurrenceError::InsufficientSamples {
            needed,
            available: run.len(),
        });
    }
    let rows: Vec<Vec<Rat>> = (0..run.len() - m)
        .map(|r| {
            let nr = Rat::from_integer(run[r].0.into());
            let mut pw = vec![Rat::one()];
            for _ in 0..deg {
                let last = pw.last().expect("nonempty").clone();
                pw.push(last * &nr);
            }
            let mut row = Vec::with_capacity(cols);
            for (_, v) in &run[r..=r + m] {
                row.extend(pw.iter().map(|p| p * v));
            }
            row
        })
        .collect();
    if rank_mod_p(&rows) == Some(cols) {
        return Ok(None);
    }
    let Some(v) = nullspace(&rows, cols).into_iter().next() else {
        return Ok(None);
    };
    let coeffs = v
        .chunks(deg + 1)
        .map(|c| PolyN::new(c.to_vec()))
        .collect();
    let cand = RecurrenceCandidate { order: m, coeffs };
    debug_assert!(cand.holds_on(s));
    Ok(cand.holds_on(s).then_some(cand))
}
