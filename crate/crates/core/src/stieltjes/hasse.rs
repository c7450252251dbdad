//! `gamma_k = gamma_k(1)` from the first Hasse series.
//!
//! `zeta(1+u) = S(u) / (1 - 2^{-u})` with
//! `S(u) = sum_j (-1)^j H_j u^j / j!`, `H_j = hasse_log_sum(j, 1)`.

use super::{Method, StieltjesValue};
use crate::error::Result;
use crate::numkernel::Dd;
use crate::series::{series_mul, series_reciprocal_simple_zero, LaurentSeries};
use crate::zetacore::hasse_log_sum_detail;

/// `gamma_k` using at most `terms` outer Hasse terms; `tol = 0` sums
/// exactly `terms` terms.
pub fn gamma_hasse(k: usize, terms: usize, tol: f64) -> Result<StieltjesValue> {
    let order = k + 2;
    let mut s = Vec::with_capacity(order + 1);
    let mut errs = Vec::with_capacity(order + 1);
    let mut fact = 1.0;
    let mut used = 0;
    for j in 0..=order {
        if j > 0 {
            fact *= j as f64;
        }
        let h = hasse_log_sum_detail(j, 1.0, terms, tol)?;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s.push(Dd::from_f64(sign * h.value / fact));
        errs.push(h.err / fact);
        used = used.max(h.terms_used);
    }
    let recip = series_reciprocal_simple_zero(&LaurentSeries::one_minus_two_pow(order + 2))?;
    let zeta = series_mul(&recip, &LaurentSeries::analytic_dd(s))?;
    let kf: f64 = (1..=k).map(|i| i as f64).product();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let value = sign * kf * zeta.coeff(k);
    // |coefficients of 1/(1 - 2^{-u})| are at most 1/ln 2
    let err = kf * errs.iter().sum::<f64>() / std::f64::consts::LN_2 + 4.0 * f64::EPSILON * value.abs();
    Ok(StieltjesValue {
        k,
        a: 1.0,
        value,
        err,
        method: Method::Hasse,
        work: used,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stieltjes::gamma_oracle;

    #[test]
    fn matches_oracle_for_low_index() {
        for k in 0..4 {
            let h = gamma_hasse(k, 120, 1e-15).unwrap();
            let o = gamma_oracle(k, 1.0, 1e-14).unwrap();
            assert!((h.value - o.value).abs() <= h.err + o.err + 1e-15, "k = {k}");
        }
    }
}
