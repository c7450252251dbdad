//! Leading sinusoid of `C_k(a)` in `a` for large `k`.
//!
//! Replacing `P_k` by its first Fourier mode in the integral representation
//! gives `C_k(a) ~ r1 cos 2 pi a - r2 sin 2 pi a`, with relative corrections
//! of order `2^{-k}`.

use std::f64::consts::PI;

use super::stirling_log_weight;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_trig_weighted, Trig};

/// Smallest index accepted by [`asymptotic_fit`].
pub const MIN_FIT_K: usize = 11;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticFit {
    pub k: usize,
    pub r1: f64,
    pub r2: f64,
    pub amplitude: f64,
    /// In `[0, 1)`, with `predicted(a) = amplitude sin(2 pi (a + phase))`.
    pub phase: f64,
    /// Error bound on `r1` and `r2` from the quadrature.
    pub err: f64,
}

impl AsymptoticFit {
    fn from_coefficients(k: usize, r1: f64, r2: f64, err: f64) -> Self {
        let amplitude = r1.hypot(r2);
        let phase = (r1.atan2(-r2) / (2.0 * PI)).rem_euclid(1.0);
        // rem_euclid may round up to exactly 1
        let phase = if phase >= 1.0 { 0.0 } else { phase };
        AsymptoticFit {
            k,
            r1,
            r2,
            amplitude,
            phase,
            err,
        }
    }

    /// `r1 cos 2 pi a - r2 sin 2 pi a`.
    pub fn predicted(&self, a: f64) -> f64 {
        let t = 2.0 * PI * a;
        self.r1 * t.cos() - self.r2 * t.sin()
    }

    /// `amplitude sin(2 pi (a + phase))`.
    pub fn sinusoid(&self, a: f64) -> f64 {
        self.amplitude * (2.0 * PI * (a + self.phase)).sin()
    }
}

/// `2 k! / (2 pi)^k`, the first Fourier amplitude of `P_k`.
fn fourier_amplitude(k: usize) -> f64 {
    let mut v = 2.0;
    for i in 1..=k {
        v *= i as f64 / (2.0 * PI);
    }
    v
}

/// Fit coefficients `r1`, `r2` for index `k >= 11`.
///
/// Odd `k = 2n-1`: `P_k(y) ~ (-1)^n A_k sin 2 pi y`, so
/// `r1 = kappa int sin(2 pi x) w`, `r2 = kappa int cos(2 pi x) w` with
/// `kappa = (-1)^n A_k`. Even `k = 2n`: `P_k(y) ~ (-1)^{n-1} A_k cos 2 pi y`
/// and the overall sign of the representation flips, giving
/// `r1 = -kappa int cos w`, `r2 = kappa int sin w`.
pub fn asymptotic_fit(k: usize, tol: f64) -> Result<AsymptoticFit> {
    if k < MIN_FIT_K {
        return Err(Error::domain(format!("asymptotic_fit: need k >= {MIN_FIT_K}")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("asymptotic_fit: tol must be positive"));
    }
    let w = stirling_log_weight(k)?;
    let amp = fourier_amplitude(k);
    let qt = tol / amp;
    let s = integrate_trig_weighted(Trig::Sin, &w, qt)?;
    let c = integrate_trig_weighted(Trig::Cos, &w, qt)?;
    let err = amp * s.error_bound.max(c.error_bound);
    let (r1, r2) = if k % 2 == 1 {
        let n = k.div_ceil(2);
        let kappa = if n.is_multiple_of(2) { amp } else { -amp };
        (kappa * s.value, kappa * c.value)
    } else {
        let n = k / 2;
        let kappa = if n % 2 == 1 { amp } else { -amp };
        (-kappa * c.value, kappa * s.value)
    };
    Ok(AsymptoticFit::from_coefficients(k, r1, r2, err))
}
