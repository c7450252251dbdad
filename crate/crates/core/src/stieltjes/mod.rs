//! Stieltjes constants `gamma_k(a)` and the regularized `C_k(a)`.
//!
//! `gamma_k(a)` is defined by
//! `zeta(s, a) = 1/(s-1) + sum_k (-1)^k gamma_k(a) (s-1)^k / k!` and
//! `C_k(a) = gamma_k(a) - ln^k(a) / a`. Four independent routes are provided:
//! a Cauchy-integral oracle over Hurwitz zeta, the periodic Bernoulli
//! integral representation, Dilcher's generalized digamma series and, for
//! `a = 1`, the Hasse series.

mod asymptotic;
mod dilcher;
mod eta;
mod hasse;
mod integral;
mod oracle;

use std::fmt;

pub use asymptotic::{asymptotic_fit, AsymptoticFit, MIN_FIT_K};
pub use dilcher::dilcher_psi;
pub use eta::{eta_from_gamma, EtaSequence, MAX_ETA};
pub use hasse::gamma_hasse;
pub use integral::{c_k_integral, c_k_integral_split, gamma0_integral, lattice_reduce, stirling_log_weight};
pub use oracle::{gamma_oracle, laurent_coefficients, ContourConfig};

/// Route by which a value was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    Integral,
    Dilcher,
    Hasse,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::Integral => "integral",
            Method::Dilcher => "dilcher",
            Method::Hasse => "hasse",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "integral" => Ok(Method::Integral),
            "dilcher" => Ok(Method::Dilcher),
            "hasse" => Ok(Method::Hasse),
            _ => Err(crate::Error::domain(format!("unknown method {s:?}"))),
        }
    }
}

/// A value of `gamma_k(a)` (or `C_k(a)`, see the producing function) with an
/// absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StieltjesValue {
    pub k: usize,
    pub a: f64,
    pub value: f64,
    pub err: f64,
    pub method: Method,
    /// Work measure: contour nodes, quadrature panels or series terms.
    pub work: usize,
}

/// `ln^k(a) / a`, the difference `gamma_k(a) - C_k(a)`.
pub fn log_term(k: usize, a: f64) -> f64 {
    a.ln().powi(k as i32) / a
}

impl StieltjesValue {
    /// Reinterpret a `gamma_k(a)` value as `C_k(a)`.
    pub fn gamma_to_c(self) -> StieltjesValue {
        let t = log_term(self.k, self.a);
        StieltjesValue {
            value: self.value - t,
            err: self.err + f64::EPSILON * t.abs(),
            ..self
        }
    }

    /// Reinterpret a `C_k(a)` value as `gamma_k(a)`.
    pub fn c_to_gamma(self) -> StieltjesValue {
        let t = log_term(self.k, self.a);
        StieltjesValue {
            value: self.value + t,
            err: self.err + f64::EPSILON * t.abs(),
            ..self
        }
    }
}

/// `gamma_k(a)` by the chosen route; the integral route uses
/// [`gamma0_integral`] at `k = 0`. The Hasse route requires `a = 1` and
/// runs to [`DEFAULT_TERMS`](crate::zetacore::DEFAULT_TERMS) outer terms at
/// most.
pub fn gamma_k(k: usize, a: f64, method: Method, tol: f64) -> crate::Result<StieltjesValue> {
    match method {
        Method::Oracle => gamma_oracle(k, a, tol),
        Method::Integral if k == 0 => gamma0_integral(a, tol),
        Method::Integral => Ok(c_k_integral(k, a, tol)?.c_to_gamma()),
        Method::Dilcher => {
            let p = dilcher_psi(k, a, tol)?;
            Ok(StieltjesValue {
                k,
                a,
                value: -p.value,
                err: p.err,
                method,
                work: 0,
            })
        }
        Method::Hasse => {
            if a != 1.0 {
                return Err(crate::Error::domain("the Hasse route needs a = 1"));
            }
            gamma_hasse(k, crate::zetacore::DEFAULT_TERMS, tol)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn routes_agree_at_one() {
        for k in [0, 2] {
            let want = gamma_oracle(k, 1.0, 1e-13).unwrap().value;
            for m in [Method::Oracle, Method::Integral, Method::Dilcher, Method::Hasse] {
                let v = gamma_k(k, 1.0, m, 1e-10).unwrap();
                assert_eq!(v.method, m);
                assert!((v.value - want).abs() <= 1e-10, "{m}");
            }
        }
        assert!(gamma_k(1, 0.5, Method::Hasse, 1e-10).is_err());
    }

    #[test]
    fn definition_identity_round_trips() {
        let v = StieltjesValue {
            k: 3,
            a: 0.25,
            value: 1.5,
            err: 0.0,
            method: Method::Oracle,
            work: 0,
        };
        let back = v.gamma_to_c().c_to_gamma();
        assert!((back.value - v.value).abs() <= 4.0 * f64::EPSILON * log_term(3, 0.25).abs());
        assert_eq!(log_term(5, 1.0), 0.0);
    }

    #[test]
    fn method_names_parse() {
        for m in [Method::Oracle, Method::Integral, Method::Dilcher, Method::Hasse] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("simpson".parse::<Method>().is_err());
    }
}
