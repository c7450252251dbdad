//! Taylor coefficients of `zeta(s, a) - 1/(s-1)` by the trapezoid rule on a
//! circle about `s = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Method, StieltjesValue};
use crate::error::{Error, Result};
use crate::numkernel::NeumaierSum;
use crate::zetacore::hurwitz_zeta;

/// Radii tried in order; larger radii damp the `k!` amplification of
/// rounding at the price of slower trapezoid convergence.
const RADII: [f64; 8] = [1.0, 2.0, 3.0, 4.0, 6.0, 8.0, 12.0, 16.0];

/// One contour evaluation setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourConfig {
    pub radius: f64,
    pub nodes: usize,
}

impl ContourConfig {
    /// Default node count `max(64, 8k)`.
    pub fn default_nodes(k: usize) -> usize {
        (8 * k).max(64)
    }
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// `g` on the upper half of the circle: `(theta_j, g(1 + r e^{i theta_j}), err)`.
fn circle_values(a: f64, cfg: ContourConfig, ztol: f64) -> Result<Vec<(usize, Complex64, f64)>> {
    let m = cfg.nodes;
    let mut out = Vec::with_capacity(m / 2 + 1);
    for j in 0..=m / 2 {
        let theta = 2.0 * PI * j as f64 / m as f64;
        let w = Complex64::from_polar(cfg.radius, theta);
        let z = hurwitz_zeta(w + 1.0, a, ztol)?;
        let g = z.value - w.inv();
        out.push((j, g, z.err + f64::EPSILON * g.norm()));
    }
    Ok(out)
}

/// `gamma_k(a)` for every `k` in `ks` from one set of circle values,
/// returning `(value, rounding bound)` pairs.
fn coefficients(vals: &[(usize, Complex64, f64)], ks: &[usize], cfg: ContourConfig) -> Vec<(f64, f64)> {
    let m = cfg.nodes;
    // node errors are independent roundings, so their average shrinks like
    // the square root of the node count; three standard deviations are kept
    let count = vals.len() as f64;
    let mean_err = vals.iter().map(|v| v.2).sum::<f64>() / count;
    let node_err = 3.0 * mean_err / count.sqrt();
    let max_g = vals.iter().map(|v| v.1.norm()).fold(0.0, f64::max);
    ks.iter()
        .map(|&k| {
            let mut acc = NeumaierSum::new();
            for &(j, g, _) in vals {
                // conjugate symmetry folds the lower half onto the upper
                let weight = if j == 0 || 2 * j == m { 1.0 } else { 2.0 };
                let phase = -2.0 * PI * ((j * k) % m) as f64 / m as f64;
                acc.add(weight * (g * Complex64::from_polar(1.0, phase)).re);
            }
            let scale = factorial_f64(k) / (m as f64 * cfg.radius.powi(k as i32));
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let round = factorial_f64(k) / cfg.radius.powi(k as i32) * (node_err + 2.0 * f64::EPSILON * max_g)
                + scale * acc.error_bound();
            (sign * scale * acc.value(), round)
        })
        .collect()
}

fn check_args(a: f64, tol: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!("gamma_oracle: need a > 0 (a = {a})")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("gamma_oracle: tol must be positive"));
    }
    Ok(())
}

/// `gamma_k(a)` for `k` in `0..=k_max`, sharing contour evaluations.
///
/// Each coefficient is accepted at the first radius where doubling the node
/// count changes it by less than the remaining budget.
pub fn laurent_coefficients(k_max: usize, a: f64, tol: f64) -> Result<Vec<StieltjesValue>> {
    check_args(a, tol)?;
    let mut done: Vec<Option<StieltjesValue>> = vec![None; k_max + 1];
    let mut best: Vec<(f64, f64)> = vec![(f64::NAN, f64::INFINITY); k_max + 1];
    for &r in &RADII {
        let pending: Vec<usize> = (0..=k_max).filter(|&k| done[k].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let kp = *pending.last().expect("nonempty");
        let m = ContourConfig::default_nodes(kp);
        let coarse = ContourConfig { radius: r, nodes: m };
        let fine = ContourConfig {
            radius: r,
            nodes: 2 * m,
        };
        let kf = factorial_f64(kp);
        let ztol = (0.01 * tol * r.powi(kp as i32) / kf).clamp(1e-20, 1e-16);
        let v1 = coefficients(&circle_values(a, coarse, ztol)?, &pending, coarse);
        let v2 = coefficients(&circle_values(a, fine, ztol)?, &pending, fine);
        for (i, &k) in pending.iter().enumerate() {
            let err = (v1[i].0 - v2[i].0).abs() + v2[i].1;
            if err < best[k].1 {
                best[k] = (v2[i].0, err);
            }
            if err <= tol {
                done[k] = Some(StieltjesValue {
                    k,
                    a,
                    value: v2[i].0,
                    err,
                    method: Method::Oracle,
                    work: 3 * m,
                });
            }
        }
    }
    done.into_iter()
        .enumerate()
        .map(|(k, v)| {
            v.ok_or_else(|| Error::convergence(format!("contour oracle for gamma_{k}({a})"), best[k].0, best[k].1))
        })
        .collect()
}

/// `gamma_k(a)` from the `k`-th Taylor coefficient of `zeta(s, a) - 1/(s-1)`.
pub fn gamma_oracle(k: usize, a: f64, tol: f64) -> Result<StieltjesValue> {
    check_args(a, tol)?;
    let mut best = (f64::NAN, f64::INFINITY);
    let m = ContourConfig::default_nodes(k);
    let kf = factorial_f64(k);
    for &r in &RADII {
        let ztol = (0.01 * tol * r.powi(k as i32) / kf).clamp(1e-20, 1e-16);
        let coarse = ContourConfig { radius: r, nodes: m };
        let fine = ContourConfig {
            radius: r,
            nodes: 2 * m,
        };
        let (c1, _) = coefficients(&circle_values(a, coarse, ztol)?, &[k], coarse)[0];
        let (c2, round) = coefficients(&circle_values(a, fine, ztol)?, &[k], fine)[0];
        let err = (c1 - c2).abs() + round;
        if err < best.1 {
            best = (c2, err);
        }
        if err <= tol {
            return Ok(StieltjesValue {
                k,
                a,
                value: c2,
                err,
                method: Method::Oracle,
                work: 3 * m,
            });
        }
    }
    Err(Error::convergence(
        format!("contour oracle for gamma_{k}({a})"),
        best.0,
        best.1,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::compensated_sum;

    /// `sum_{n<=N} ln^k n / n - ln^{k+1} N / (k+1)` with Euler–Maclaurin
    /// corrections for `f = ln^k x / x` at `x = N`.
    fn limit_formula(k: usize) -> f64 {
        let n = 2000.0f64;
        let s = compensated_sum((1..=2000).map(|i| {
            let x = i as f64;
            x.ln().powi(k as i32) / x
        }))
        .value;
        let l = n.ln();
        let f = l.powi(k as i32) / n;
        // f' = (k l^{k-1} - l^k) / n^2
        let lkm1 = if k == 0 { 0.0 } else { k as f64 * l.powi(k as i32 - 1) };
        let d1 = (lkm1 - l.powi(k as i32)) / (n * n);
        s - l.powi(k as i32 + 1) / (k as f64 + 1.0) - f / 2.0 - d1 / 12.0
    }

    #[test]
    fn euler_constant_and_first_stieltjes() {
        let g0 = gamma_oracle(0, 1.0, 1e-14).unwrap();
        assert!((g0.value - limit_formula(0)).abs() < 1e-12);
        assert!((g0.value - 0.577_215_664_901_532_9).abs() < 1e-15);
        let g1 = gamma_oracle(1, 1.0, 1e-14).unwrap();
        assert!((g1.value - limit_formula(1)).abs() < 1e-11);
        assert!((g1.value + 0.072_815_845_483_676_7).abs() < 1e-14);
    }

    #[test]
    fn gamma_zero_is_minus_digamma() {
        for &a in &[0.5, 0.25, 1.7, 3.2] {
            let g = gamma_oracle(0, a, 1e-13).unwrap();
            let psi = crate::zetacore::digamma(a).unwrap();
            assert!((g.value + psi.value).abs() <= 1e-13, "a = {a}");
        }
    }

    #[test]
    fn shared_contour_agrees_with_single() {
        let all = laurent_coefficients(6, 0.3, 1e-11).unwrap();
        for v in &all {
            let one = gamma_oracle(v.k, 0.3, 1e-11).unwrap();
            assert!(
                (v.value - one.value).abs() <= v.err + one.err,
                "k={} {} {} {:e} {:e}",
                v.k,
                v.value,
                one.value,
                v.err,
                one.err
            );
        }
    }

    #[test]
    fn shift_recurrence_holds() {
        // gamma_k(a + 1) = gamma_k(a) - ln^k(a) / a
        for k in 0..5 {
            let a = 0.4;
            let l = gamma_oracle(k, a + 1.0, 1e-12).unwrap();
            let r = gamma_oracle(k, a, 1e-12).unwrap();
            assert!((l.value - (r.value - super::super::log_term(k, a))).abs() < 1e-11);
        }
    }

    #[test]
    fn high_index_uses_large_radius() {
        let g = gamma_oracle(20, 1.0, 1e-10).unwrap();
        assert!(g.err <= 1e-10);
        assert!((g.value - 4.663_435_615_115_594e-4).abs() < 1e-10, "{}", g.value);
    }

    #[test]
    fn bad_arguments() {
        assert!(matches!(gamma_oracle(0, 0.0, 1e-10), Err(Error::Domain(_))));
        assert!(matches!(gamma_oracle(0, 1.0, 0.0), Err(Error::Domain(_))));
    }
}
