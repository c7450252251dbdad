//! Truncated Laurent series about `s = 1` in the variable `u = s - 1`.
//!
//! A [`LaurentSeries`] is `pole / u + sum_{i <= order} taylor[i] u^i`, plus an
//! optional symbolic `-ln u` term produced by [`series_log`]. Coefficients are
//! held in double-double so that the recurrences below do not amplify input
//! rounding. All operations are exact through the order they report.

use crate::error::{Error, Result};
use crate::numkernel::Dd;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    /// Coefficient of `1/u`.
    pub pole: Dd,
    /// Taylor coefficients `c_0..=c_order`.
    pub taylor: Vec<Dd>,
    /// When set the series carries an additional `-ln u` term.
    pub neg_log_u: bool,
}

impl LaurentSeries {
    pub fn analytic(taylor: Vec<f64>) -> Self {
        Self::analytic_dd(taylor.into_iter().map(Dd::from_f64).collect())
    }

    pub fn analytic_dd(taylor: Vec<Dd>) -> Self {
        Self::with_pole_dd(Dd::ZERO, taylor)
    }

    pub fn with_pole(pole: f64, taylor: Vec<f64>) -> Self {
        Self::with_pole_dd(Dd::from_f64(pole), taylor.into_iter().map(Dd::from_f64).collect())
    }

    pub fn with_pole_dd(pole: Dd, taylor: Vec<Dd>) -> Self {
        assert!(!taylor.is_empty(), "a series needs at least c_0");
        LaurentSeries {
            pole,
            taylor,
            neg_log_u: false,
        }
    }

    /// The monomial `u`, known through `order`.
    pub fn u(order: usize) -> Self {
        let mut t = vec![0.0; order.max(1) + 1];
        t[1] = 1.0;
        Self::analytic(t)
    }

    /// `1/u` with a zero analytic part through `order`.
    pub fn inv_u(order: usize) -> Self {
        Self::with_pole(1.0, vec![0.0; order + 1])
    }

    /// `1 - 2^{1-s} = -sum_{j>=1} (-ln 2)^j / j! u^j`.
    pub fn one_minus_two_pow(order: usize) -> Self {
        let mut t = vec![Dd::ZERO; order.max(1) + 1];
        let mut term = Dd::ONE;
        for (j, c) in t.iter_mut().enumerate().skip(1) {
            term = -(term * Dd::LN2) / Dd::from_f64(j as f64);
            *c = -term;
        }
        Self::analytic_dd(t)
    }

    pub fn order(&self) -> usize {
        self.taylor.len() - 1
    }

    pub fn has_pole(&self) -> bool {
        self.pole != Dd::ZERO
    }

    pub fn pole_f64(&self) -> f64 {
        self.pole.to_f64()
    }

    pub fn coeff(&self, i: usize) -> f64 {
        self.coeff_dd(i).to_f64()
    }

    pub fn coeff_dd(&self, i: usize) -> Dd {
        self.taylor.get(i).copied().unwrap_or(Dd::ZERO)
    }

    pub fn coeffs(&self) -> Vec<f64> {
        self.taylor.iter().map(|c| c.to_f64()).collect()
    }

    pub fn truncate(mut self, order: usize) -> Self {
        self.taylor.truncate(order + 1);
        self
    }

    /// Evaluate the pole and analytic parts at `u`; ignores a symbolic log.
    pub fn eval(&self, u: f64) -> f64 {
        let mut acc = Dd::ZERO;
        for c in self.taylor.iter().rev() {
            acc = acc.mul_f64(u) + *c;
        }
        if self.has_pole() {
            acc += self.pole / Dd::from_f64(u);
        }
        acc.to_f64()
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        let order = self.order().min(other.order());
        let taylor = (0..=order).map(|i| self.coeff_dd(i) + other.coeff_dd(i)).collect();
        LaurentSeries {
            pole: self.pole + other.pole,
            taylor,
            neg_log_u: self.neg_log_u ^ other.neg_log_u,
        }
    }

    pub fn scale(&self, k: f64) -> LaurentSeries {
        LaurentSeries {
            pole: self.pole.mul_f64(k),
            taylor: self.taylor.iter().map(|c| c.mul_f64(k)).collect(),
            neg_log_u: self.neg_log_u,
        }
    }
}

fn cauchy_product(a: &[Dd], b: &[Dd], order: usize) -> Vec<Dd> {
    let at = |v: &[Dd], i: usize| v.get(i).copied().unwrap_or(Dd::ZERO);
    (0..=order)
        .map(|n| {
            let mut acc = Dd::ZERO;
            for i in 0..=n {
                acc += at(a, i) * at(b, n - i);
            }
            acc
        })
        .collect()
}

/// Product of two series, at most one of which has a pole part.
///
/// With a pole factor `p/u` the analytic partner is shifted down one power,
/// so the result is exact through `min(order) - 1`; otherwise through
/// `min(order)`.
pub fn series_mul(a: &LaurentSeries, b: &LaurentSeries) -> Result<LaurentSeries> {
    if a.has_pole() && b.has_pole() {
        return Err(Error::Unsupported("series_mul: both factors have a pole part".into()));
    }
    if a.neg_log_u || b.neg_log_u {
        return Err(Error::Unsupported("series_mul: symbolic log factor".into()));
    }
    let (sing, other) = if a.has_pole() { (a, b) } else { (b, a) };
    let base_order = a.order().min(b.order());
    if !sing.has_pole() {
        return Ok(LaurentSeries::analytic_dd(cauchy_product(
            &a.taylor, &b.taylor, base_order,
        )));
    }
    let order = base_order.saturating_sub(1);
    let p = sing.pole;
    let mut taylor = cauchy_product(&sing.taylor, &other.taylor, order);
    for (i, t) in taylor.iter_mut().enumerate() {
        *t += p * other.coeff_dd(i + 1);
    }
    Ok(LaurentSeries::with_pole_dd(p * other.coeff_dd(0), taylor))
}

fn analytic_log(c: &[Dd]) -> Result<Vec<Dd>> {
    let c0 = c[0];
    if !(c0.hi > 0.0) {
        return Err(Error::domain(format!(
            "series_log: leading coefficient {} is not positive",
            c0.to_f64()
        )));
    }
    let n = c.len();
    let mut l = vec![Dd::ZERO; n];
    l[0] = c0.ln();
    // c * l' = c'  =>  m c0 l_m = m c_m - sum_{k=1}^{m-1} k l_k c_{m-k}
    for m in 1..n {
        let mut acc = c[m].mul_f64(m as f64);
        for k in 1..m {
            acc -= (l[k] * c[m - k]).mul_f64(k as f64);
        }
        l[m] = acc / c0.mul_f64(m as f64);
    }
    Ok(l)
}

/// Logarithm of a series.
///
/// An analytic input needs `c_0 > 0`. An input `p/u + A(u)` with `p > 0` is
/// read as `(1/u) (p + u A(u))`; the result carries the `-ln u` term
/// symbolically (`neg_log_u`) and the log of the analytic factor, exact
/// through the input order.
pub fn series_log(a: &LaurentSeries) -> Result<LaurentSeries> {
    if a.neg_log_u {
        return Err(Error::Unsupported("series_log: input already has a log term".into()));
    }
    if !a.has_pole() {
        return Ok(LaurentSeries::analytic_dd(analytic_log(&a.taylor)?));
    }
    let mut factor = Vec::with_capacity(a.taylor.len() + 1);
    factor.push(a.pole);
    factor.extend_from_slice(&a.taylor);
    Ok(LaurentSeries {
        pole: Dd::ZERO,
        taylor: analytic_log(&factor)?,
        neg_log_u: true,
    })
}

/// Exponential of an analytic series.
pub fn series_exp(a: &LaurentSeries) -> Result<LaurentSeries> {
    if a.has_pole() || a.neg_log_u {
        return Err(Error::Unsupported("series_exp: analytic input required".into()));
    }
    let c = &a.taylor;
    let n = c.len();
    let mut e = vec![Dd::ZERO; n];
    e[0] = c[0].exp();
    // e' = c' e  =>  m e_m = sum_{k=1}^{m} k c_k e_{m-k}
    for m in 1..n {
        let mut acc = Dd::ZERO;
        for k in 1..=m {
            acc += (c[k] * e[m - k]).mul_f64(k as f64);
        }
        e[m] = acc / Dd::from_f64(m as f64);
    }
    Ok(LaurentSeries::analytic_dd(e))
}

/// Reciprocal of an analytic series with a simple zero at `u = 0`.
///
/// For `a = c_1 u + c_2 u^2 + ...` returns `b_0/u + b_1 + b_2 u + ...` where
/// `sum b_i u^i = 1 / (c_1 + c_2 u + ...)`; exact through `order - 2`.
pub fn series_reciprocal_simple_zero(a: &LaurentSeries) -> Result<LaurentSeries> {
    if a.has_pole() || a.neg_log_u {
        return Err(Error::domain("series_reciprocal_simple_zero: input must be analytic"));
    }
    if a.coeff_dd(0) != Dd::ZERO {
        return Err(Error::domain("series_reciprocal_simple_zero: c_0 must vanish"));
    }
    let c1 = a.coeff_dd(1);
    if c1 == Dd::ZERO {
        return Err(Error::domain(
            "series_reciprocal_simple_zero: c_1 = 0 (higher-order zero)",
        ));
    }
    let shifted = &a.taylor[1..];
    let n = shifted.len();
    let mut b = vec![Dd::ZERO; n];
    b[0] = c1.recip();
    for m in 1..n {
        let mut acc = Dd::ZERO;
        for k in 1..=m {
            acc += shifted[k] * b[m - k];
        }
        b[m] = -acc / c1;
    }
    let pole = b[0];
    let taylor = if n >= 2 { b[1..].to_vec() } else { vec![Dd::ZERO] };
    Ok(LaurentSeries::with_pole_dd(pole, taylor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn product_of_binomials() {
        let a = LaurentSeries::analytic(vec![1.0, 1.0, 0.0, 0.0]);
        let b = LaurentSeries::analytic(vec![1.0, -1.0, 0.0, 0.0]);
        let p = series_mul(&a, &b).unwrap();
        assert_eq!(p.coeffs(), vec![1.0, 0.0, -1.0, 0.0]);
    }

    #[test]
    fn pole_cancellation() {
        let p = series_mul(&LaurentSeries::inv_u(6), &LaurentSeries::u(6)).unwrap();
        assert!(!p.has_pole());
        assert_eq!(p.coeff(0), 1.0);
        assert!(p.coeffs()[1..].iter().all(|&c| c == 0.0));
        assert_eq!(p.order(), 5);
    }

    #[test]
    fn two_poles_unsupported() {
        let e = series_mul(&LaurentSeries::inv_u(3), &LaurentSeries::inv_u(3));
        assert!(matches!(e, Err(Error::Unsupported(_))));
    }

    #[test]
    fn log_one_plus_u() {
        let l = series_log(&LaurentSeries::analytic(vec![1.0, 1.0, 0.0, 0.0, 0.0, 0.0])).unwrap();
        let expect = [0.0, 1.0, -0.5, 1.0 / 3.0, -0.25, 0.2];
        for (c, e) in l.coeffs().iter().zip(expect) {
            assert!((c - e).abs() < 1e-16);
        }
    }

    #[test]
    fn log_of_constant_e() {
        let l = series_log(&LaurentSeries::analytic_dd(vec![Dd::ONE.exp(), Dd::ZERO, Dd::ZERO])).unwrap();
        assert!((l.coeff(0) - 1.0).abs() < 1e-16);
        assert_eq!(l.coeff(1), 0.0);
    }

    #[test]
    fn log_nonpositive_leading_term() {
        assert!(matches!(
            series_log(&LaurentSeries::analytic(vec![-1.0, 1.0])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            series_log(&LaurentSeries::analytic(vec![0.0, 1.0])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn log_with_pole_is_symbolic() {
        // 1/u + 1/2 -> -ln u + ln(1 + u/2)
        let s = LaurentSeries::with_pole(1.0, vec![0.5, 0.0, 0.0]);
        let l = series_log(&s).unwrap();
        assert!(l.neg_log_u);
        assert!((l.coeff(1) - 0.5).abs() < 1e-16);
        assert!((l.coeff(2) + 0.125).abs() < 1e-16);
    }

    #[test]
    fn reciprocal_of_u() {
        let r = series_reciprocal_simple_zero(&LaurentSeries::u(4)).unwrap();
        assert_eq!(r.pole_f64(), 1.0);
        assert!(r.coeffs().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn reciprocal_rejects_double_zero() {
        let a = LaurentSeries::analytic(vec![0.0, 0.0, 1.0]);
        assert!(matches!(series_reciprocal_simple_zero(&a), Err(Error::Domain(_))));
    }

    #[test]
    fn reciprocal_reproduces_known_expansion() {
        let l2 = std::f64::consts::LN_2;
        let r = series_reciprocal_simple_zero(&LaurentSeries::one_minus_two_pow(12)).unwrap();
        assert!((r.pole_f64() - 1.0 / l2).abs() <= 1e-15 / l2);
        assert!((r.coeff(0) - 0.5).abs() <= 1e-15 * 0.5);
        assert!((r.coeff(1) - l2 / 12.0).abs() <= 1e-15 * l2 / 12.0);
        assert!(r.coeff(2).abs() <= 1e-16);
        let c3 = -l2.powi(3) / 720.0;
        assert!((r.coeff(3) - c3).abs() <= 1e-15 * c3.abs());
    }

    #[test]
    fn exp_undoes_log_on_pole_factor() {
        let s = LaurentSeries::with_pole(1.0, vec![0.3, -0.2, 0.1, 0.05]);
        let l = series_log(&s).unwrap();
        let e = series_exp(&LaurentSeries::analytic_dd(l.taylor.clone())).unwrap();
        let expect = [1.0, 0.3, -0.2, 0.1, 0.05];
        for (c, x) in e.coeffs().iter().zip(expect) {
            assert!((c - x).abs() < 1e-15);
        }
    }

    proptest! {
        #[test]
        fn exp_log_roundtrip(tail in proptest::collection::vec(-2.0f64..2.0, 1..12)) {
            let mut c = vec![1.0];
            c.extend(tail);
            let s = LaurentSeries::analytic(c.clone());
            let back = series_exp(&series_log(&s).unwrap()).unwrap();
            for (x, y) in back.coeffs().iter().zip(&c) {
                prop_assert!((x - y).abs() <= 1e-14 * (1.0 + y.abs()));
            }
        }

        #[test]
        fn mul_then_reciprocal(tail in proptest::collection::vec(-1.0f64..1.0, 6)) {
            // a = u (1 + tail), r = 1/a; a * r = 1 through the reported order
            let mut c = vec![0.0, 1.0];
            c.extend(tail);
            let a = LaurentSeries::analytic(c);
            let r = series_reciprocal_simple_zero(&a).unwrap();
            let p = series_mul(&a, &r).unwrap();
            prop_assert!(!p.has_pole());
            prop_assert!((p.coeff(0) - 1.0).abs() < 1e-14);
            for i in 1..p.order() {
                prop_assert!(p.coeff(i).abs() < 1e-13);
            }
        }
    }
}
