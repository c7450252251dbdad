//! The constants `eta_j` of `ln zeta(s) = -ln(s-1) - sum_{p>=1} eta_{p-1}/p (s-1)^p`.

use super::laurent_coefficients;
use crate::error::{Error, Result};
use crate::numkernel::Dd;
use crate::series::{series_log, LaurentSeries};

/// Largest supported `J`.
pub const MAX_ETA: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct EtaSequence {
    /// `eta_0..=eta_J`.
    pub values: Vec<f64>,
    pub err: f64,
}

/// `eta_0..=eta_J` from `ln[(s-1) zeta(s)] = ln[1 + sum_k (-1)^k gamma_k u^{k+1} / k!]`.
pub fn eta_from_gamma(j_max: usize, tol: f64) -> Result<EtaSequence> {
    if j_max > MAX_ETA {
        return Err(Error::domain(format!("eta_from_gamma: need J <= {MAX_ETA}")));
    }
    let gammas = laurent_coefficients(j_max, 1.0, tol / 4.0)?;
    let mut taylor = vec![Dd::ONE];
    let mut fact = 1.0;
    let mut weighted_err = 0.0;
    for g in &gammas {
        if g.k > 0 {
            fact *= g.k as f64;
        }
        let sign = if g.k % 2 == 0 { 1.0 } else { -1.0 };
        taylor.push(Dd::from_f64(sign * g.value / fact));
        weighted_err += g.err / fact;
    }
    let log = series_log(&LaurentSeries::analytic_dd(taylor))?;
    let values: Vec<f64> = (1..=j_max + 1).map(|p| -(p as f64) * log.coeff(p)).collect();
    // first-order propagation: coefficients of ln(1 + x) near x = 0 are O(1)
    let err = 2.0 * (j_max as f64 + 1.0) * weighted_err.max(f64::EPSILON);
    Ok(EtaSequence { values, err })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stieltjes::gamma_oracle;

    #[test]
    fn first_two_in_closed_form() {
        let e = eta_from_gamma(3, 1e-13).unwrap();
        let g0 = gamma_oracle(0, 1.0, 1e-14).unwrap().value;
        let g1 = gamma_oracle(1, 1.0, 1e-14).unwrap().value;
        assert!((e.values[0] + g0).abs() <= e.err);
        assert!((e.values[1] - (2.0 * g1 + g0 * g0)).abs() <= e.err + 1e-15);
    }

    #[test]
    fn log_derivative_matches_difference() {
        // -zeta'/zeta(s) - 1/(s-1) = sum_p eta_{p-1} u^{p-1}
        let e = eta_from_gamma(8, 1e-12).unwrap();
        let u: f64 = 0.05;
        let series: f64 = e.values.iter().enumerate().map(|(i, v)| v * u.powi(i as i32)).sum();
        let h = 1e-4;
        let z = |t: f64| crate::zetacore::riemann_zeta_real(t, 1e-16).unwrap().value.ln();
        let dlog =
            (z(1.0 + u - 2.0 * h) - 8.0 * z(1.0 + u - h) + 8.0 * z(1.0 + u + h) - z(1.0 + u + 2.0 * h)) / (12.0 * h);
        assert!((-dlog - 1.0 / u - series).abs() < 1e-8);
    }

    #[test]
    fn order_cap() {
        assert!(eta_from_gamma(MAX_ETA + 1, 1e-10).is_err());
    }
}
