//! Hurwitz zeta by Euler–Maclaurin summation, valid for any complex `s != 1`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::numkernel::{bernoulli_number, NeumaierSum, WorkingComplex, WorkingReal};

/// Parameters of one Euler–Maclaurin evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerMaclaurinConfig {
    /// Number of directly summed terms `N`.
    pub direct_terms: usize,
    /// Number of Bernoulli correction terms `J`.
    pub correction_terms: usize,
}

const MAX_J: usize = 40;
const MAX_N: usize = 1 << 16;

/// `B_{2j} / (2j)!` for `j = 0..=MAX_J + 1`.
fn bernoulli_ratios() -> &'static [f64] {
    static T: OnceLock<Vec<f64>> = OnceLock::new();
    T.get_or_init(|| {
        let mut fact = 1.0f64;
        let mut out = Vec::with_capacity(MAX_J + 2);
        for j in 0..=MAX_J + 1 {
            if j > 0 {
                fact *= ((2 * j - 1) * (2 * j)) as f64;
            }
            let b = bernoulli_number(2 * j).to_f64().unwrap_or(f64::NAN);
            out.push(b / fact);
        }
        out
    })
}

/// Remainder bound after `j` corrections with `n` direct terms.
fn remainder_bound(s: Complex64, a: f64, n: usize, j: usize) -> f64 {
    let sigma = s.re;
    let top = sigma + 2.0 * j as f64 + 1.0;
    if top <= 0.0 {
        return f64::INFINITY;
    }
    // |(s)_{2j+1}|
    let mut poch = 1.0;
    for i in 0..=2 * j {
        poch *= (s + i as f64).norm();
    }
    let z = s + (2 * j + 1) as f64;
    let b = bernoulli_ratios()[j + 1].abs();
    poch * z.norm() / top * b * (n as f64 + a).powf(-top)
}

/// Choose `(N, J)` so that the remainder bound is at most `tol`.
pub fn choose_config(s: Complex64, a: f64, tol: f64) -> Option<(EulerMaclaurinConfig, f64)> {
    // for Re s < 0 the direct terms grow and cost digits, so start small
    let mut n = if s.re < 0.0 {
        1
    } else {
        (s.norm().ceil() as usize + 10).max(10)
    };
    while n <= MAX_N {
        let mut best = (f64::INFINITY, 0);
        for j in 1..=MAX_J {
            let r = remainder_bound(s, a, n, j);
            if r < best.0 {
                best = (r, j);
            }
            if r <= tol {
                let cfg = EulerMaclaurinConfig {
                    direct_terms: n,
                    correction_terms: j,
                };
                return Some((cfg, r));
            }
        }
        n = if n < 32 { n + 1 } else { n * 2 };
    }
    None
}

/// Evaluate with a fixed configuration; returns the value, the remainder
/// bound and the sum of absolute direct terms.
pub fn hurwitz_em(s: Complex64, a: f64, cfg: EulerMaclaurinConfig) -> (Complex64, f64, f64) {
    let n = cfg.direct_terms;
    let mut re = NeumaierSum::new();
    let mut im = NeumaierSum::new();
    for k in 0..n {
        let t = (-s * (k as f64 + a).ln()).exp();
        re.add(t.re);
        im.add(t.im);
    }
    let na = n as f64 + a;
    let ln_na = na.ln();
    let pow = (-s * ln_na).exp(); // (N+a)^{-s}
    let mut tail = pow * na / (s - 1.0) + pow * 0.5;
    // sum_j B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
    let br = bernoulli_ratios();
    let mut poch = s; // (s)_1
    let mut p = pow / na; // (N+a)^{-s-1}
    for (j, b) in br.iter().enumerate().take(cfg.correction_terms + 1).skip(1) {
        tail += poch * p * b;
        let jj = 2 * j as i32;
        poch = poch * (s + (jj - 1) as f64) * (s + jj as f64);
        p /= na * na;
    }
    let scale = re.abs_sum().max(im.abs_sum()) + tail.norm();
    let v = Complex64::new(re.value(), im.value()) + tail;
    (v, remainder_bound(s, a, n, cfg.correction_terms), scale)
}

/// `zeta(s, a)` for complex `s != 1` and `a > 0` to absolute tolerance `tol`.
pub fn hurwitz_zeta(s: Complex64, a: f64, tol: f64) -> Result<WorkingComplex> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole("hurwitz_zeta: s = 1".into()));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("hurwitz_zeta: need a > 0 (a = {a})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("hurwitz_zeta: tol must be positive"));
    }
    let target = 0.5 * tol;
    let Some((cfg, rem)) = choose_config(s, a, target) else {
        let cfg = EulerMaclaurinConfig {
            direct_terms: MAX_N,
            correction_terms: MAX_J,
        };
        let (v, r, _) = hurwitz_em(s, a, cfg);
        return Err(Error::convergence("hurwitz_zeta remainder", v.re, r));
    };
    let (v, _, scale) = hurwitz_em(s, a, cfg);
    let err = rem + 2.0 * f64::EPSILON * scale;
    Ok(WorkingComplex { value: v, err })
}

/// Real-argument convenience wrapper.
pub fn hurwitz_zeta_real(s: f64, a: f64, tol: f64) -> Result<WorkingReal> {
    let z = hurwitz_zeta(Complex64::new(s, 0.0), a, tol)?;
    Ok(WorkingReal::new(z.value.re, z.err))
}

/// `zeta(s) = zeta(s, 1)`.
pub fn riemann_zeta(s: Complex64, tol: f64) -> Result<WorkingComplex> {
    hurwitz_zeta(s, 1.0, tol)
}

pub fn riemann_zeta_real(s: f64, tol: f64) -> Result<WorkingReal> {
    hurwitz_zeta_real(s, 1.0, tol)
}
