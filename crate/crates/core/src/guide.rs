//! The guide chapters, compiled as doctests.

#[doc = include_str!("../../../book/src/overview.md")]
mod overview {}
#[doc = include_str!("../../../book/src/expressions.md")]
mod expressions {}
#[doc = include_str!("../../../book/src/factoring.md")]
mod factoring {}
#[doc = include_str!("../../../book/src/classes.md")]
mod classes {}
#[doc = include_str!("../../../book/src/summation.md")]
mod summation {}
#[doc = include_str!("../../../book/src/oracle.md")]
mod oracle {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
