//! Classical constants from truncated Hasse log-sums.
//!
//! With `A = hasse_log_sum(1, 1)`, `B = hasse_log_sum(2, 1)` and `L = ln 2`:
//! `gamma = L/2 - A/L`, `gamma_1 = -(L^2/12 - A/2 + B/(2L))`,
//! `eta_1 = L^2/12 + A^2/L^2 - B/L` and `ln pi = L - 2 hasse_log_sum(1, 0)`.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use super::hasse::{hasse1_zeta, hasse_log_sum_detail};
use crate::error::{Error, Result};

/// A constant reachable by a finite Hasse sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasseConstant {
    /// Euler's constant.
    Gamma,
    /// The first Stieltjes constant.
    Gamma1,
    /// The coefficient `eta_1` of the logarithmic derivative of zeta.
    Eta1,
    LnPi,
    /// `B_{2n}`, recovered from `zeta(2n)`.
    BernoulliEven(usize),
}

impl HasseConstant {
    pub fn name(self) -> &'static str {
        match self {
            HasseConstant::Gamma => "gamma",
            HasseConstant::Gamma1 => "gamma1",
            HasseConstant::Eta1 => "eta1",
            HasseConstant::LnPi => "lnpi",
            HasseConstant::BernoulliEven(_) => "bernoulli-even",
        }
    }
}

impl fmt::Display for HasseConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HasseConstant::BernoulliEven(n) => write!(f, "B_{}", 2 * n),
            c => f.write_str(c.name()),
        }
    }
}

impl FromStr for HasseConstant {
    type Err = Error;

    /// Parses the names of [`HasseConstant::name`]; `bernoulli-even` maps to
    /// `B_2`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gamma" => Ok(HasseConstant::Gamma),
            "gamma1" => Ok(HasseConstant::Gamma1),
            "eta1" => Ok(HasseConstant::Eta1),
            "lnpi" => Ok(HasseConstant::LnPi),
            "bernoulli-even" => Ok(HasseConstant::BernoulliEven(1)),
            _ => Err(Error::domain(format!("unknown constant {s:?}"))),
        }
    }
}

/// A constant with its truncation estimate and the number of outer terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantValue {
    pub value: f64,
    pub err: f64,
    pub terms: usize,
}

/// Evaluate `c` from exactly `terms` outer terms.
pub fn hasse_constant(c: HasseConstant, terms: usize) -> Result<ConstantValue> {
    if terms == 0 {
        return Err(Error::domain("hasse_constant: need at least one term"));
    }
    let l2 = LN_2 * LN_2;
    let log_sum = |j: usize, s: f64| hasse_log_sum_detail(j, s, terms, 0.0);
    let (value, err) = match c {
        HasseConstant::Gamma => {
            let a = log_sum(1, 1.0)?;
            (0.5 * LN_2 - a.value / LN_2, a.err / LN_2)
        }
        HasseConstant::Gamma1 => {
            let a = log_sum(1, 1.0)?;
            let b = log_sum(2, 1.0)?;
            (-(l2 / 12.0 - 0.5 * a.value + b.value / (2.0 * LN_2)), a.err + b.err)
        }
        HasseConstant::Eta1 => {
            let a = log_sum(1, 1.0)?;
            let b = log_sum(2, 1.0)?;
            let v = l2 / 12.0 + a.value * a.value / l2 - b.value / LN_2;
            (v, 2.0 * a.value.abs() * a.err / l2 + b.err / LN_2)
        }
        HasseConstant::LnPi => {
            let s = log_sum(1, 0.0)?;
            (LN_2 - 2.0 * s.value, 2.0 * s.err)
        }
        HasseConstant::BernoulliEven(n) => {
            if !(1..=40).contains(&n) {
                return Err(Error::domain("bernoulli-even: need 1 <= n <= 40"));
            }
            let z = hasse1_zeta(2.0 * n as f64, terms, 0.0)?;
            let two_n = 2 * n as i32;
            let fact: f64 = (1..=2 * n).map(|i| i as f64).product();
            let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
            let scale = sign * fact / (2f64.powi(two_n - 1) * PI.powi(two_n));
            (scale * z.value, scale.abs() * z.err)
        }
    };
    Ok(ConstantValue {
        value,
        err: err + 4.0 * f64::EPSILON * value.abs(),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_to_sixteen_places() {
        let g = hasse_constant(HasseConstant::Gamma, 52).unwrap();
        assert!((g.value - 0.577_215_664_901_532_9).abs() < 5e-16);
    }

    #[test]
    fn ln_pi_and_bernoulli() {
        let l = hasse_constant(HasseConstant::LnPi, 60).unwrap();
        assert!((l.value - PI.ln()).abs() < 1e-12);
        let b4 = hasse_constant(HasseConstant::BernoulliEven(2), 120).unwrap();
        assert!((b4.value + 1.0 / 30.0).abs() < 1e-12);
    }

    #[test]
    fn eta1_from_gamma_pair() {
        let g = hasse_constant(HasseConstant::Gamma, 120).unwrap().value;
        let g1 = hasse_constant(HasseConstant::Gamma1, 120).unwrap().value;
        let e = hasse_constant(HasseConstant::Eta1, 120).unwrap();
        assert!((e.value - (2.0 * g1 + g * g)).abs() < 1e-12);
    }

    #[test]
    fn names_round_trip() {
        for c in [
            HasseConstant::Gamma,
            HasseConstant::Gamma1,
            HasseConstant::Eta1,
            HasseConstant::LnPi,
        ] {
            assert_eq!(c.name().parse::<HasseConstant>().unwrap(), c);
        }
        assert!(hasse_constant(HasseConstant::Gamma, 0).is_err());
    }
}
