//! The two globally convergent Hasse series and their log-moment sums.
//!
//! Inner alternating binomial sums `sum_k (-1)^k C(n,k) f(k)` lose roughly
//! `n log10 2` digits, so the forward-difference table is kept in
//! double-double and built one anti-diagonal per outer term.

use crate::error::{Error, Result};
use crate::numkernel::{Dd, WorkingReal};

/// Default cap on outer terms for the first series.
pub const DEFAULT_TERMS: usize = 120;
/// Most negative `s` accepted (the `s = -2n`, `n <= 3` family).
pub const MIN_S: f64 = -6.0;
const MIN_TERMS: usize = 8;

/// Partial result of a first-series sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HasseSum {
    pub value: f64,
    pub err: f64,
    pub terms_used: usize,
}

impl HasseSum {
    pub fn working(&self) -> WorkingReal {
        WorkingReal::new(self.value, self.err)
    }
}

/// Streaming alternating differences `D_n = sum_k (-1)^k C(n,k) f(k)`.
///
/// The anti-diagonal `diag[i] = D_i(M - i)` is updated in place when
/// `f(M + 1)` arrives, where `D_i(m)` is the difference starting at `m`.
struct DifferenceTable {
    diag: Vec<Dd>,
}

impl DifferenceTable {
    fn new() -> Self {
        DifferenceTable { diag: Vec::new() }
    }

    /// Push `f(M+1)` and return `D_{M+1}(0)`.
    fn push(&mut self, f_next: Dd) -> Dd {
        let mut carry = f_next;
        for slot in self.diag.iter_mut() {
            // new[i] = last[i-1] - new[i-1]
            let next = *slot - carry;
            *slot = carry;
            carry = next;
        }
        self.diag.push(carry);
        carry
    }
}

fn integer_exponent(s: f64) -> Option<i32> {
    if s.fract() == 0.0 && s.abs() <= 200.0 {
        Some(s as i32)
    } else {
        None
    }
}

/// `ln^j(k+1) (k+1)^{-s}` in double-double.
fn log_moment(j: usize, s: f64, k: usize) -> Dd {
    let x = Dd::from_f64((k + 1) as f64);
    let pow = match integer_exponent(s) {
        Some(e) if e >= 0 => x.powi(e as u32).recip(),
        Some(e) => x.powi((-e) as u32),
        None => (x.ln().mul_f64(-s)).exp(),
    };
    if j == 0 {
        pow
    } else if k == 0 {
        Dd::ZERO
    } else {
        x.ln().powi(j as u32) * pow
    }
}

/// `sum_{n>=0} 2^{-(n+1)} sum_{k=0}^n (-1)^k C(n,k) ln^j(k+1) (k+1)^{-s}`.
///
/// At most `terms` outer terms are summed; with `tol > 0` the sum stops
/// once the last term and a geometric tail estimate are both below `tol/4`.
/// `tol = 0` sums exactly `terms` outer terms.
pub fn hasse_log_sum_detail(j: usize, s: f64, terms: usize, tol: f64) -> Result<HasseSum> {
    if !s.is_finite() || s < MIN_S {
        return Err(Error::Unsupported(format!(
            "hasse_log_sum: s = {s} is below the supported range s >= {MIN_S}"
        )));
    }
    if terms == 0 {
        return Err(Error::domain("hasse_log_sum: need at least one term"));
    }
    if !(tol >= 0.0) {
        return Err(Error::domain("hasse_log_sum: tol must be non-negative"));
    }
    let mut table = DifferenceTable::new();
    let mut sum = Dd::ZERO;
    let mut weight = Dd::from_f64(0.5);
    let mut prev = f64::NAN;
    let mut ratios = [f64::NAN; 3];
    let mut last = 0.0;
    let mut used = 0;
    for n in 0..terms {
        let d = table.push(log_moment(j, s, n));
        let t = d * weight;
        sum += t;
        weight = weight.mul_f64(0.5);
        last = t.to_f64().abs();
        used = n + 1;
        if prev.is_finite() && prev > 0.0 {
            ratios.rotate_left(1);
            ratios[2] = last / prev;
        }
        prev = last;
        if tol > 0.0 && used >= MIN_TERMS {
            let rho = geometric_ratio(&ratios);
            let tail = tail_estimate(last, rho);
            if last <= tol / 4.0 && tail <= tol / 4.0 {
                break;
            }
        }
    }
    let rho = geometric_ratio(&ratios);
    // terms that have sunk into double-double rounding no longer decay
    let noise = 1e6 * Dd::EPSILON * sum.to_f64().abs().max(1.0);
    let tail = if rho >= 1.0 && last <= noise {
        noise
    } else {
        tail_estimate(last, rho)
    };
    if rho >= 1.0 && last > tol.max(noise) {
        return Err(Error::convergence(
            "hasse_log_sum: terms are not decaying",
            sum.to_f64(),
            last,
        ));
    }
    let rounding = 4.0 * f64::EPSILON * sum.to_f64().abs();
    Ok(HasseSum {
        value: sum.to_f64(),
        err: tail + rounding,
        terms_used: used,
    })
}

fn geometric_ratio(r: &[f64; 3]) -> f64 {
    let m = r.iter().copied().filter(|x| x.is_finite()).fold(f64::NAN, f64::max);
    if m.is_nan() {
        0.5
    } else {
        m
    }
}

fn tail_estimate(last: f64, rho: f64) -> f64 {
    if rho < 1.0 {
        last * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    }
}

pub fn hasse_log_sum(j: usize, s: f64, terms: usize, tol: f64) -> Result<WorkingReal> {
    hasse_log_sum_detail(j, s, terms, tol).map(|h| h.working())
}

/// `1 / (1 - 2^{1-s})`.
fn hasse_prefactor(s: f64) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Pole("Hasse series prefactor: s = 1".into()));
    }
    let d = -((1.0 - s) * std::f64::consts::LN_2).exp_m1();
    Ok(1.0 / d)
}

/// `zeta(s)` by the first Hasse series.
pub fn hasse1_zeta(s: f64, terms: usize, tol: f64) -> Result<WorkingReal> {
    let pre = hasse_prefactor(s)?;
    let inner = hasse_log_sum_detail(0, s, terms, tol / pre.abs())?;
    Ok(WorkingReal::new(
        pre * inner.value,
        pre.abs() * inner.err + f64::EPSILON * (pre * inner.value).abs(),
    ))
}

/// `zeta'(s) = -ln 2 / (2^{s-1} - 1) zeta(s) - hasse_log_sum(1, s) / (1 - 2^{1-s})`.
pub fn hasse1_zeta_prime(s: f64, tol: f64) -> Result<WorkingReal> {
    let pre = hasse_prefactor(s)?;
    let z = hasse1_zeta(s, DEFAULT_TERMS, tol / 4.0)?;
    let l1 = hasse_log_sum_detail(1, s, DEFAULT_TERMS, tol / (4.0 * pre.abs()))?;
    // -ln2/(2^{s-1}-1) = -ln 2 * pre * 2^{1-s}
    let c = -std::f64::consts::LN_2 * pre * (1.0 - s).exp2();
    let value = c * z.value - pre * l1.value;
    let err = c.abs() * z.err + pre.abs() * l1.err + 4.0 * f64::EPSILON * (c * z.value).abs().max(value.abs());
    Ok(WorkingReal::new(value, err))
}

/// Settings of the second-series extrapolation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hasse2Config {
    /// Smallest partial-sum length.
    pub base: usize,
    /// Number of doublings; the largest length is `base * 2^levels`.
    pub levels: usize,
}

impl Default for Hasse2Config {
    fn default() -> Self {
        Hasse2Config { base: 64, levels: 14 }
    }
}

/// Result of the second series with its extrapolation diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hasse2Sum {
    pub value: f64,
    pub err: f64,
    /// Largest number of outer terms actually summed.
    pub terms_used: usize,
}

/// Partial sums `sum_{l < N_p} T_l(m) / (l + 1)` at `N_p = base 2^p` where
/// `T_l(m) = sum_k (-1)^k C(l,k) (k+1)^{-m}`, via the positive recurrence
/// `T_l(m) = (1/(l+1)) sum_{i<=l} T_i(m-1)`, `T_l(1) = 1/(l+1)`.
fn hasse2_partial_sums(m: usize, cfg: Hasse2Config) -> Vec<Dd> {
    let total = cfg.base << cfg.levels;
    let mut cum = vec![Dd::ZERO; m]; // cum[q-1] = sum_{i<=l} T_i(q)
    let mut out = Vec::with_capacity(cfg.levels + 1);
    let mut acc = Dd::ZERO;
    let mut next = cfg.base;
    for l in 0..total {
        let inv = Dd::from_f64((l + 1) as f64).recip();
        let mut t = inv; // T_l(1)
        cum[0] += t;
        for q in 1..m {
            t = cum[q - 1] * inv;
            cum[q] += t;
        }
        acc += t * inv;
        if l + 1 == next {
            out.push(acc);
            next *= 2;
        }
    }
    out
}

/// Confluent Richardson extrapolation for an error expansion in
/// `N^{-j} P_j(ln N)` with `deg P_j < m`, sampled at doubling `N`.
fn confluent_richardson(seq: &[Dd], m: usize) -> Vec<Dd> {
    let mut cur = seq.to_vec();
    let mut j = 1;
    'outer: loop {
        let r = 0.5f64.powi(j);
        for _ in 0..m {
            if cur.len() < 2 {
                break 'outer;
            }
            cur = cur
                .windows(2)
                .map(|w| (w[1] - w[0].mul_f64(r)) / Dd::from_f64(1.0 - r))
                .collect();
        }
        j += 1;
    }
    cur
}

/// `zeta(s)` for integer `s >= 2` by the second Hasse series
/// `1/(s-1) sum_l 1/(l+1) sum_k (-1)^k C(l,k) (k+1)^{1-s}`.
pub fn hasse2_zeta_detail(s: f64, cfg: Hasse2Config) -> Result<Hasse2Sum> {
    if s == 1.0 {
        return Err(Error::Pole("hasse2_zeta: s = 1".into()));
    }
    if s.fract() != 0.0 || !(2.0..=40.0).contains(&s) {
        return Err(Error::Unsupported(format!(
            "hasse2_zeta: only integer 2 <= s <= 40 is supported (s = {s})"
        )));
    }
    if cfg.base < 4 || cfg.levels < 2 {
        return Err(Error::domain("hasse2_zeta: need base >= 4 and levels >= 2"));
    }
    let m = s as usize - 1;
    let sums = hasse2_partial_sums(m, cfg);
    let full = confluent_richardson(&sums, m);
    let shorter = confluent_richardson(&sums[..sums.len() - 1], m);
    let shifted = confluent_richardson(&sums[1..], m);
    let v = full[full.len() - 1];
    let d1 = (v - shorter[shorter.len() - 1]).abs().to_f64();
    let d2 = (v - shifted[shifted.len() - 1]).abs().to_f64();
    let scale = 1.0 / (s - 1.0);
    let err = scale * d1.max(d2) + 4.0 * f64::EPSILON * v.to_f64().abs() * scale;
    Ok(Hasse2Sum {
        value: v.to_f64() * scale,
        err,
        terms_used: cfg.base << cfg.levels,
    })
}

/// `zeta(s)` by the second Hasse series; `terms` caps the largest partial
/// sum length. Fails when the extrapolation estimate exceeds `tol`.
pub fn hasse2_zeta(s: f64, terms: usize, tol: f64) -> Result<WorkingReal> {
    let mut cfg = Hasse2Config::default();
    while (cfg.base << cfg.levels) > terms.max(cfg.base << 2) {
        cfg.levels -= 1;
    }
    let h = hasse2_zeta_detail(s, cfg)?;
    if h.err > tol {
        return Err(Error::convergence("hasse2_zeta extrapolation", h.value, h.err));
    }
    Ok(WorkingReal::new(h.value, h.err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zetacore::riemann_zeta_real;
    use std::f64::consts::{LN_2, PI};

    #[test]
    fn difference_table_matches_direct_sum() {
        let f = |k: usize| Dd::from_f64(1.0 / (k as f64 + 1.0).powi(2));
        let mut t = DifferenceTable::new();
        for n in 0..20usize {
            let d = t.push(f(n)).to_f64();
            let mut direct = 0.0;
            let mut c = 1.0;
            for k in 0..=n {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                direct += sign * c * f(k).to_f64();
                c = c * (n - k) as f64 / (k + 1) as f64;
            }
            assert!((d - direct).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn ln2_from_q_zero_terms() {
        let h = hasse_log_sum(0, 1.0, 200, 1e-16).unwrap();
        assert!((h.value - LN_2).abs() < 2e-16);
    }

    #[test]
    fn lnpi_rearrangement() {
        let h = hasse_log_sum(1, 0.0, 200, 1e-16).unwrap();
        assert!((h.value - 0.5 * (LN_2 - PI.ln())).abs() < 1e-15);
    }

    #[test]
    fn zeta_values() {
        let z2 = hasse1_zeta(2.0, 60, 1e-15).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() <= 1e-13);
        let zm1 = hasse1_zeta(-1.0, 60, 1e-15).unwrap();
        assert!((zm1.value + 1.0 / 12.0).abs() < 1e-15);
        assert!(matches!(hasse1_zeta(1.0, 60, 1e-15), Err(Error::Pole(_))));
    }

    #[test]
    fn cross_method_with_euler_maclaurin() {
        for &s in &[-2.5, -1.0, 0.5, 2.0, 3.0] {
            let h = hasse1_zeta(s, DEFAULT_TERMS, 1e-15).unwrap().value;
            let e = riemann_zeta_real(s, 1e-15).unwrap().value;
            assert!((h - e).abs() <= 1e-12 * e.abs().max(1.0), "s = {s}: {h} vs {e}");
        }
    }

    #[test]
    fn derivative_values() {
        let d0 = hasse1_zeta_prime(0.0, 1e-15).unwrap();
        assert!((d0.value + 0.5 * (2.0 * PI).ln()).abs() < 1e-14);
        let z3 = riemann_zeta_real(3.0, 1e-16).unwrap().value;
        let dm2 = hasse1_zeta_prime(-2.0, 1e-14).unwrap();
        let expect = -z3 / (4.0 * PI * PI);
        assert!((dm2.value - expect).abs() <= 1e-12 * expect.abs());
        // five-point difference of zeta at s = 2
        let h = 1e-3;
        let z = |t: f64| riemann_zeta_real(t, 1e-16).unwrap().value;
        let fd = (z(2.0 - 2.0 * h) - 8.0 * z(2.0 - h) + 8.0 * z(2.0 + h) - z(2.0 + 2.0 * h)) / (12.0 * h);
        let d2 = hasse1_zeta_prime(2.0, 1e-15).unwrap();
        assert!((d2.value - fd).abs() < 1e-10);
    }

    #[test]
    fn second_series() {
        let z2 = hasse2_zeta(2.0, 1 << 20, 1e-12).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-12);
        let z3 = hasse2_zeta_detail(3.0, Hasse2Config::default()).unwrap();
        let e3 = riemann_zeta_real(3.0, 1e-16).unwrap().value;
        assert!((z3.value - e3).abs() <= 1e-10, "{z3:?} vs {e3}");
        assert!((z3.value - e3).abs() <= z3.err.max(1e-14));
        assert!(matches!(
            hasse2_zeta_detail(2.5, Hasse2Config::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn second_series_estimate_covers_error() {
        for s in 2..=8 {
            let z = hasse2_zeta_detail(s as f64, Hasse2Config::default()).unwrap();
            let e = riemann_zeta_real(s as f64, 1e-16).unwrap().value;
            assert!((z.value - e).abs() <= z.err.max(4.0 * f64::EPSILON * e), "s = {s}");
        }
    }

    #[test]
    fn negative_s_is_restricted() {
        assert!(matches!(hasse_log_sum(1, -8.0, 60, 1e-10), Err(Error::Unsupported(_))));
    }
}
