//! Dilcher's generalized digamma function
//!
//! `psi_k(a) = -gamma_k - ln^k(a)/a - sum_{v>=1} [ln^k(v+a)/(v+a) - ln^k(v)/v]`.
//!
//! The sum is taken directly up to `N` and the rest by Euler–Maclaurin on
//! `h(v) = f(v+a) - f(v)`, `f(x) = ln^k x / x`.

use num_traits::ToPrimitive;

use super::gamma_oracle;
use crate::error::{Error, Result};
use crate::numkernel::{bernoulli_number, NeumaierSum, WorkingReal};
use crate::quadrature::Weight;

const CORRECTIONS: usize = 8;
const MAX_N: usize = 1 << 14;

/// `-(ln^{k+1}(N+a) - ln^{k+1} N) / (k+1)`, the integral of `h` over `[N, inf)`,
/// expanded in `d = ln(1 + a/N)` to avoid cancellation.
fn tail_integral(k: usize, a: f64, n: f64) -> f64 {
    let l = n.ln();
    let d = (a / n).ln_1p();
    let p = k + 1;
    let mut acc = 0.0;
    let mut binom = 1.0;
    for i in 1..=p {
        binom *= (p - i + 1) as f64 / i as f64;
        acc += binom * l.powi((p - i) as i32) * d.powi(i as i32);
    }
    -acc / p as f64
}

/// `(value, error)` of `sum_{v>=1} h(v)`.
fn difference_sum(k: usize, a: f64, n: usize) -> (f64, f64) {
    let f = Weight::log_power(k, 1);
    let mut acc = NeumaierSum::new();
    for v in 1..n {
        let x = v as f64;
        acc.add((f.eval(x + a) - f.eval(x)).to_f64());
    }
    let nf = n as f64;
    let h_n = (f.eval(nf + a) - f.eval(nf)).to_f64();
    acc.add(tail_integral(k, a, nf));
    acc.add(0.5 * h_n);
    // - sum_j B_{2j}/(2j)! h^{(2j-1)}(N)
    let mut d = f.derivative();
    let mut fact = 1.0;
    let mut last = 0.0;
    for j in 1..=CORRECTIONS {
        fact *= ((2 * j - 1) * (2 * j)) as f64;
        let b = bernoulli_number(2 * j).to_f64().unwrap_or(f64::NAN) / fact;
        let t = -b * (d.eval(nf + a) - d.eval(nf)).to_f64();
        acc.add(t);
        last = t.abs();
        d = d.derivative().derivative();
    }
    (
        acc.value(),
        2.0 * last + acc.error_bound() + 4.0 * f64::EPSILON * acc.abs_sum(),
    )
}

/// `psi_k(a)`; the constant `gamma_k = gamma_k(1)` is taken from the
/// contour oracle at `a = 1`.
pub fn dilcher_psi(k: usize, a: f64, tol: f64) -> Result<WorkingReal> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("dilcher_psi: need a > 0 (a = {a})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("dilcher_psi: tol must be positive"));
    }
    let g = gamma_oracle(k, 1.0, tol / 4.0)?;
    let head = -g.value - super::log_term(k, a);
    let mut n = 32;
    let mut best = (f64::NAN, f64::INFINITY);
    while n <= MAX_N {
        let (s, e) = difference_sum(k, a, n);
        let err = e + g.err + f64::EPSILON * head.abs();
        if err < best.1 {
            best = (head - s, err);
        }
        if err <= tol {
            return Ok(WorkingReal::new(head - s, err));
        }
        n *= 4;
    }
    Err(Error::convergence(format!("dilcher_psi k={k} a={a}"), best.0, best.1))
}
