//! Exact rational definite summation.
//!
//! Given a rational function `F(n, k)` over Q, the crate decides (when it
//! can) whether `sum_{k=0}^{n} F(n, k)` agrees with a rational function of
//! `n`. The decision is made class by class: `F` is split into partial
//! fractions over `Q(n)`, the terms are grouped by affine-substitution
//! equivalence of their denominators, and every class is summed on its own.
//!
//! The main entry points are [`parse`], [`pfd`], [`group_classes`],
//! [`sum_total`] and the brute-force [`oracle`] used to check it all.
//!
//! ```
//! use ratsum::{parse, sum_total, Verdict};
//!
//! let f = parse("1/(k^3+k*n+1) - 1/((n-k)^3+(n-k)*n+1)").unwrap();
//! let (verdict, _report) = sum_total(&f, &Default::default());
//! assert!(matches!(verdict, Verdict::RationalSum(r) if r.is_zero()));
//! ```

#[macro_use]
mod macros;
mod linalg;
mod modp;
mod zpoly;

pub mod affine;
pub mod bivar;
pub mod engine;
pub mod factor;
pub mod oracle;
pub mod parse;
pub mod pfd;
pub mod poly_k;
pub mod poly_n;
pub mod rat_n;
pub mod rat_nk;
pub mod scalar;

#[cfg(doctest)]
mod guide;

pub use affine::{aut_group, equiv_test, group_classes, AffineMap, AutKind, EquivClass};
pub use bivar::BiPoly;
pub use engine::{sum_class, sum_total, EngineConfig, SumReport, Verdict};
pub use factor::{factor, is_irreducible, FactorList};
pub use parse::{format, parse, ParseError};
pub use pfd::{pfd, recombine, PFDecomp, PFTerm};
pub use poly_k::PolyK;
pub use poly_n::PolyN;
pub use rat_n::RatN;
pub use rat_nk::{PoleAt, RatNK};
pub use scalar::Rat;
