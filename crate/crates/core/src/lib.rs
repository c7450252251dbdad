//! Stieltjes constants and Hurwitz zeta Laurent data.
//!
//! The crate computes `gamma_k(a)` and related constants by several
//! independent routes and checks a catalog of identities between them.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod numkernel;
pub mod quadrature;
pub mod series;
pub mod stieltjes;
pub mod verify;
pub mod zetacore;

pub use error::{Error, Result};
