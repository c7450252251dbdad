//! `C_k(a)` from the periodic Bernoulli integral representation
//!
//! `C_k(a) = (-1)^{k-1} sum_{j=0}^{k+1} s(k+1, k+1-j)/j! int_1^inf P_k(x-a) ln^j x / x^{k+1} dx`
//!
//! with `P_k(x) = B_k(x - floor x)`, valid for `0 < a <= 1`. Larger `a` is
//! reduced with `gamma_k(a+1) = gamma_k(a) - ln^k(a)/a`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Method, StieltjesValue};
use crate::error::{Error, Result};
use crate::numkernel::{factorial, stirling_s1, Dd, NeumaierSum};
use crate::quadrature::{integrate_p1_shifted, integrate_pn_logk, integrate_pn_weighted, PiecewiseIntegrand, Weight};

/// `s(k+1, k+1-j) / j!` for `j = 0..=k+1`.
fn stirling_coeffs(k: usize) -> Result<Vec<Dd>> {
    (0..=k + 1)
        .map(|j| {
            let s: BigInt = stirling_s1(k + 1, k + 1 - j)?;
            Ok(Dd::from_rational(&BigRational::new(s, factorial(j))))
        })
        .collect()
}

/// The combined weight `x^{-(k+1)} sum_j s(k+1, k+1-j)/j! ln^j x`.
///
/// Summing the log powers pointwise in double-double avoids the cancellation
/// between separately integrated terms, which grows like `k!`.
pub fn stirling_log_weight(k: usize) -> Result<Weight> {
    Ok(Weight::LogPoly {
        power: k as u32 + 1,
        coeffs: stirling_coeffs(k)?,
    })
}

/// Write `a = a0 + m` with `0 < a0 <= 1` and integer `m >= 0`.
pub fn lattice_reduce(a: f64) -> (f64, usize) {
    if a <= 1.0 {
        return (a, 0);
    }
    let m = (a - 1.0).ceil();
    (a - m, m as usize)
}

fn check_args(k: usize, a: f64, tol: f64) -> Result<()> {
    if k == 0 {
        return Err(Error::domain("c_k_integral: need k >= 1"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("c_k_integral: need a > 0 (a = {a})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("c_k_integral: tol must be positive"));
    }
    Ok(())
}

/// `-sum_{i=1}^m ln^k(a0+i)/(a0+i)`, the correction from `C_k(a0)` to `C_k(a0+m)`.
fn lattice_shift(k: usize, a0: f64, m: usize) -> (f64, f64) {
    let mut acc = NeumaierSum::new();
    for i in 1..=m {
        acc.add(-super::log_term(k, a0 + i as f64));
    }
    (acc.value(), acc.error_bound() + 4.0 * f64::EPSILON * acc.abs_sum())
}

fn sign(k: usize) -> f64 {
    if k % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `C_k(a)` with the Stirling-weighted log powers combined into one integrand.
pub fn c_k_integral(k: usize, a: f64, tol: f64) -> Result<StieltjesValue> {
    check_args(k, a, tol)?;
    let (a0, m) = lattice_reduce(a);
    let q = integrate_pn_weighted(k, a0, 1.0, &stirling_log_weight(k)?, tol)?;
    let (shift, shift_err) = lattice_shift(k, a0, m);
    Ok(StieltjesValue {
        k,
        a,
        value: sign(k) * q.value + shift,
        err: q.error_bound + shift_err,
        method: Method::Integral,
        work: q.panels,
    })
}

/// `C_k(a)` term by term: the `j = 0` integral `int P_k(x-a)/x^{k+1}`
/// first, then the log-power integrals `j = 1..=k` (the `j = k+1` term
/// vanishes since `s(k+1, 0) = 0`).
pub fn c_k_integral_split(k: usize, a: f64, tol: f64) -> Result<StieltjesValue> {
    check_args(k, a, tol)?;
    let (a0, m) = lattice_reduce(a);
    let coeffs = stirling_coeffs(k)?;
    let per = tol / (k as f64 + 1.0);
    let mut acc = Dd::ZERO;
    let mut err = 0.0;
    let mut panels = 0;
    for (j, c) in coeffs.iter().enumerate().take(k + 1) {
        let p = PiecewiseIntegrand {
            n: k,
            k: j,
            offset: a0,
            scale: 1.0,
            power: k as u32 + 1,
        };
        let cj = c.to_f64().abs();
        let q = integrate_pn_logk(&p, per / cj.max(1.0))?;
        acc += *c * Dd::from_f64(q.value);
        err += cj * q.error_bound + f64::EPSILON * (cj * q.value).abs();
        panels += q.panels;
    }
    let (shift, shift_err) = lattice_shift(k, a0, m);
    Ok(StieltjesValue {
        k,
        a,
        value: sign(k) * acc.to_f64() + shift,
        err: err + shift_err,
        method: Method::Integral,
        work: panels,
    })
}

/// `gamma_0(a) = -ln a + 1/(2a) - int_0^inf P_1(x) / (x+a)^2 dx`, the
/// `k = 0` member of the same family.
pub fn gamma0_integral(a: f64, tol: f64) -> Result<StieltjesValue> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("gamma0_integral: need a > 0 (a = {a})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("gamma0_integral: tol must be positive"));
    }
    let q = integrate_p1_shifted(0.0, a, 2, tol)?;
    let head = -a.ln() + 0.5 / a;
    let value = head - q.value;
    Ok(StieltjesValue {
        k: 0,
        a,
        value,
        err: q.error_bound + 2.0 * f64::EPSILON * (head.abs() + value.abs()),
        method: Method::Integral,
        work: q.panels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_zero_is_minus_digamma() {
        for &a in &[0.1, 0.5, 1.0, 3.7] {
            let g = gamma0_integral(a, 1e-12).unwrap();
            let d = crate::zetacore::digamma(a).unwrap();
            assert!((g.value + d.value).abs() <= g.err + d.err + 1e-14, "a = {a}");
        }
    }

    #[test]
    fn reduction_lands_in_unit_interval() {
        assert_eq!(lattice_reduce(0.3), (0.3, 0));
        assert_eq!(lattice_reduce(1.0), (1.0, 0));
        assert_eq!(lattice_reduce(1.5), (0.5, 1));
        assert_eq!(lattice_reduce(2.0), (1.0, 1));
        assert_eq!(lattice_reduce(3.25), (0.25, 3));
    }

    #[test]
    fn weight_row_sums_to_zero_past_j0() {
        // sum_j s(k+1, k+1-j) = (k+1)-th row sum = 0 for k + 1 >= 2
        for k in 1..8 {
            let w = stirling_coeffs(k).unwrap();
            let f: Vec<f64> = (0..w.len()).map(|j| (1..=j).map(|i| i as f64).product()).collect();
            let row: f64 = w.iter().zip(&f).map(|(c, fj)| c.to_f64() * fj).sum();
            assert!(row.abs() < 1e-9, "k = {k}");
        }
    }

    #[test]
    fn first_stieltjes_at_one() {
        let c = c_k_integral(1, 1.0, 1e-12).unwrap();
        let g = crate::stieltjes::gamma_oracle(1, 1.0, 1e-13).unwrap();
        assert!((c.value - g.value).abs() <= c.err + g.err + 1e-13);
    }

    #[test]
    fn split_and_combined_agree() {
        for &(k, a) in &[(1, 1.0), (2, 0.5), (4, 0.25), (6, 0.8)] {
            let c = c_k_integral(k, a, 1e-11).unwrap();
            let s = c_k_integral_split(k, a, 1e-11).unwrap();
            assert!((c.value - s.value).abs() <= c.err + s.err, "k={k} a={a}");
        }
    }

    #[test]
    fn lattice_shift_matches_oracle() {
        let c = c_k_integral(2, 1.75, 1e-11).unwrap().c_to_gamma();
        let g = crate::stieltjes::gamma_oracle(2, 1.75, 1e-12).unwrap();
        assert!((c.value - g.value).abs() < 1e-10);
    }

    #[test]
    fn rejects_k_zero() {
        assert!(matches!(c_k_integral(0, 0.5, 1e-8), Err(Error::Domain(_))));
    }
}
