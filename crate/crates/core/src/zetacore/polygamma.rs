//! Digamma by recurrence and asymptotic series; polygamma via Hurwitz zeta.

use num_traits::ToPrimitive;

use super::hurwitz::hurwitz_zeta_real;
use crate::error::{Error, Result};
use crate::numkernel::{bernoulli_number, NeumaierSum, WorkingReal};

const SHIFT_TO: f64 = 16.0;

/// `psi(a)` for `a > 0`, independent of the zeta engine.
pub fn digamma(a: f64) -> Result<WorkingReal> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("digamma: need a > 0 (a = {a})")));
    }
    // psi(a) = psi(a + m) - sum_{i<m} 1/(a + i)
    let mut shift = NeumaierSum::new();
    let mut x = a;
    while x < SHIFT_TO {
        shift.add(-1.0 / x);
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum_k B_{2k} / (2k x^{2k})
    let x2 = x * x;
    let mut acc = NeumaierSum::new();
    acc.add(x.ln());
    acc.add(-0.5 / x);
    let mut p = 1.0;
    let mut last = 0.0;
    for k in 1..=12 {
        p /= x2;
        let b = bernoulli_number(2 * k).to_f64().unwrap_or(f64::NAN);
        let t = -b / (2 * k) as f64 * p;
        acc.add(t);
        last = t;
    }
    let value = acc.value() + shift.value();
    let err = last.abs() + f64::EPSILON * (acc.abs_sum() + shift.abs_sum());
    Ok(WorkingReal::new(value, err))
}

/// `psi^{(n)}(a) = (-1)^{n+1} n! zeta(n+1, a)` for `n >= 1`.
pub fn polygamma(n: usize, a: f64) -> Result<WorkingReal> {
    polygamma_tol(n, a, 1e-15)
}

pub fn polygamma_tol(n: usize, a: f64, tol: f64) -> Result<WorkingReal> {
    if n == 0 {
        return digamma(a);
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("polygamma: need a > 0 (a = {a})")));
    }
    let fact: f64 = (1..=n).map(|i| i as f64).product();
    let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let z = hurwitz_zeta_real(n as f64 + 1.0, a, tol / fact)?;
    Ok(WorkingReal::new(sign * fact * z.value, fact * z.err))
}
