use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::combinatorics::binomial;
use super::dd::Dd;
use super::WorkingReal;
use crate::error::{Error, Result};

#[derive(Debug, Default)]
struct BernoulliCache {
    numbers: Vec<BigRational>,
    rows: Vec<Option<Arc<Vec<Dd>>>>,
}

impl BernoulliCache {
    fn extend_numbers(&mut self, j: usize) {
        if self.numbers.is_empty() {
            self.numbers.push(BigRational::one());
        }
        while self.numbers.len() <= j {
            let n = self.numbers.len();
            // sum_{i=0}^{n} C(n+1, i) B_i = 0
            let mut acc = BigRational::zero();
            for (i, b) in self.numbers.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc += BigRational::from_integer(binomial(n + 1, i)) * b;
            }
            let bn = -acc / BigRational::from_integer(BigInt::from(n + 1));
            self.numbers.push(bn);
        }
    }
}

fn cache() -> &'static RwLock<BernoulliCache> {
    static CACHE: OnceLock<RwLock<BernoulliCache>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(BernoulliCache::default()))
}

/// Exact Bernoulli number `B_j` with `B_1 = -1/2`.
pub fn bernoulli_number(j: usize) -> BigRational {
    {
        let c = cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = c.numbers.get(j) {
            return b.clone();
        }
    }
    let mut c = cache().write().expect("bernoulli cache poisoned");
    c.extend_numbers(j);
    c.numbers[j].clone()
}

/// Coefficients of `B_n(x)` in ascending powers of `x`, rounded to
/// double-double from the exact rationals.
pub fn bernoulli_poly_coeffs(n: usize) -> Arc<Vec<Dd>> {
    {
        let c = cache().read().expect("bernoulli cache poisoned");
        if let Some(Some(row)) = c.rows.get(n) {
            return row.clone();
        }
    }
    let mut c = cache().write().expect("bernoulli cache poisoned");
    c.extend_numbers(n);
    if c.rows.len() <= n {
        c.rows.resize(n + 1, None);
    }
    if let Some(row) = &c.rows[n] {
        return row.clone();
    }
    // B_n(x) = sum_j C(n, j) B_j x^{n-j}
    let row: Vec<Dd> = (0..=n)
        .map(|power| {
            let j = n - power;
            let q = BigRational::from_integer(binomial(n, j)) * &c.numbers[j];
            Dd::from_rational(&q)
        })
        .collect();
    let row = Arc::new(row);
    c.rows[n] = Some(row.clone());
    row
}

#[inline]
pub(crate) fn horner(coeffs: &[Dd], x: f64) -> Dd {
    let mut acc = Dd::ZERO;
    for c in coeffs.iter().rev() {
        acc = acc.mul_f64(x) + *c;
    }
    acc
}

/// `B_n(x)` in double-double.
pub fn bernoulli_poly_dd(n: usize, x: f64) -> Dd {
    horner(&bernoulli_poly_coeffs(n), x)
}

/// `B_n(x)` by Horner evaluation of the exact coefficient row.
pub fn bernoulli_poly(n: usize, x: f64) -> WorkingReal {
    let coeffs = bernoulli_poly_coeffs(n);
    let v = horner(&coeffs, x);
    let mut mag = 0.0;
    let ax = x.abs();
    for c in coeffs.iter().rev() {
        mag = mag * ax + c.hi.abs();
    }
    let value = v.to_f64();
    WorkingReal::new(value, 0.5 * f64::EPSILON * value.abs() + 8.0 * Dd::EPSILON * mag)
}

/// Periodic Bernoulli function `P_n(x) = B_n(x - floor(x))`.
pub fn periodic_bernoulli(n: usize, x: f64) -> WorkingReal {
    bernoulli_poly(n, x - x.floor())
}

/// `[3 + (-1)^n] / (2 pi)^n`, the classical sup bound for `|P_n(x)| / n!`
/// (valid for `n >= 2`).
pub fn pn_sup_bound(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("pn_sup_bound: n must be at least 1"));
    }
    let num = if n.is_multiple_of(2) { 4.0 } else { 2.0 };
    Ok(num / (2.0 * PI).powi(n as i32))
}

/// A sup bound for the unnormalized `|P_n(x)|`, usable in tail estimates.
pub fn periodic_bernoulli_sup(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 0.5,
        _ => {
            let fact: f64 = (1..=n).map(|i| i as f64).product();
            fact * pn_sup_bound(n).expect("n >= 2")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bernoulli_number_examples() {
        assert_eq!(bernoulli_number(0), rat(1, 1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(2), rat(1, 6));
        assert_eq!(bernoulli_number(5), rat(0, 1));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_vanish_and_recurrence_holds() {
        for j in (3..60).step_by(2) {
            assert!(bernoulli_number(j).is_zero());
        }
        for n in 1..40 {
            let s: BigRational = (0..=n)
                .map(|j| BigRational::from_integer(binomial(n + 1, j)) * bernoulli_number(j))
                .sum();
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn poly_endpoint_symmetry() {
        // B_n(1) = (-1)^n B_n(0)
        for n in 0..30 {
            let b0 = bernoulli_poly_dd(n, 0.0);
            let b1 = bernoulli_poly_dd(n, 1.0);
            let expect = if n % 2 == 0 { b0 } else { -b0 };
            let scale: f64 = bernoulli_poly_coeffs(n).iter().map(|c| c.abs().to_f64()).sum();
            assert!((b1 - expect).abs().to_f64() <= 1e-28 * scale, "n = {n}");
        }
    }

    #[test]
    fn poly_examples() {
        assert_eq!(bernoulli_poly(1, 0.25).value, -0.25);
        assert!((bernoulli_poly(2, 0.0).value - 1.0 / 6.0).abs() < 1e-17);
        assert_eq!(bernoulli_poly(3, 0.5).value, 0.0);
    }

    #[test]
    fn periodic_examples() {
        assert_eq!(periodic_bernoulli(1, 2.25).value, -0.25);
        assert!((periodic_bernoulli(2, -0.5).value + 1.0 / 12.0).abs() < 1e-17);
        assert_eq!(periodic_bernoulli(1, 0.5).value, 0.0);
    }

    #[test]
    fn sup_bound_examples() {
        assert!((pn_sup_bound(1).unwrap() - 1.0 / PI).abs() < 1e-15);
        assert!((pn_sup_bound(2).unwrap() - 4.0 / (4.0 * PI * PI)).abs() < 1e-15);
        assert!((pn_sup_bound(3).unwrap() - 2.0 / (2.0 * PI).powi(3)).abs() < 1e-17);
        assert!(matches!(pn_sup_bound(0), Err(Error::Domain(_))));
    }
}
