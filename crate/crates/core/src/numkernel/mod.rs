//! Numerical kernel shared by every other module: exact combinatorics,
//! Bernoulli polynomials and their periodic extension, compensated
//! summation, extended precision and incomplete-gamma tail bounds.

mod bernoulli;
mod combinatorics;
pub mod dd;
mod incgamma;
mod summation;

pub(crate) use bernoulli::horner as horner_dd;
pub use bernoulli::{
    bernoulli_number, bernoulli_poly, bernoulli_poly_coeffs, bernoulli_poly_dd, periodic_bernoulli,
    periodic_bernoulli_sup, pn_sup_bound,
};
pub use combinatorics::{binomial, factorial, stirling_s1, stirling_s1_f64};
pub use dd::Dd;
pub use incgamma::{ln_gamma, upper_incomplete_gamma};
pub use summation::{compensated_sum, NeumaierSum};

use num_complex::Complex64;

/// Default absolute target tolerance.
pub const DEFAULT_TOL: f64 = 1e-13;

/// A real value together with an achieved absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkingReal {
    pub value: f64,
    pub err: f64,
}

impl WorkingReal {
    pub fn new(value: f64, err: f64) -> Self {
        WorkingReal { value, err }
    }

    pub fn exact(value: f64) -> Self {
        WorkingReal {
            value,
            err: f64::EPSILON * value.abs(),
        }
    }

    pub fn meets(&self, tol: f64) -> bool {
        self.err <= tol
    }
}

/// A complex value with an achieved absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorkingComplex {
    pub value: Complex64,
    pub err: f64,
}
