//! The individual identity evaluations.

use std::f64::consts::{LN_2, PI};

use num_traits::ToPrimitive;

use super::{Evaluation, IdentityId, Params};
use crate::error::{Error, Result};
use crate::numkernel::{bernoulli_number, NeumaierSum};
use crate::quadrature::{integrate_p1_shifted, integrate_p1_tail, integrate_pn_weighted, integrate_unit_a};
use crate::stieltjes::{
    asymptotic_fit, c_k_integral, c_k_integral_split, dilcher_psi, eta_from_gamma, gamma_hasse, gamma_oracle, log_term,
    stirling_log_weight, StieltjesValue,
};
use crate::zetacore::{
    digamma, hasse1_zeta, hasse1_zeta_prime, hasse2_zeta, hasse_constant, hasse_log_sum_detail, hurwitz_zeta_real,
    polygamma_tol, riemann_zeta_real, HasseConstant, DEFAULT_TERMS,
};

/// Default truncation index `K` of the derivative series.
pub const P7_TERMS: usize = 40;
const FD_STEP: f64 = 1e-3;
const HASSE2_CAP: usize = 1 << 20;

fn get(p: &Params, key: &str) -> Result<f64> {
    p.get(key)
        .copied()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::domain(format!("missing parameter {key:?}")))
}

fn get_int(p: &Params, key: &str, min: usize, max: usize) -> Result<usize> {
    let v = get(p, key)?;
    if v.fract() != 0.0 || v < min as f64 || v > max as f64 {
        return Err(Error::domain(format!(
            "parameter {key} = {v} must be an integer in [{min}, {max}]"
        )));
    }
    Ok(v as usize)
}

/// Accuracy requested from the underlying routines for pass tolerance `tol`.
fn work_tol(tol: f64) -> f64 {
    (tol / 20.0).clamp(1e-13, 1e-10)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    (1..=k).fold(1.0, |acc, i| acc * (n - k + i) as f64 / i as f64)
}

fn sign(k: usize) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn c_oracle(k: usize, a: f64, tol: f64) -> Result<StieltjesValue> {
    Ok(gamma_oracle(k, a, tol)?.gamma_to_c())
}

pub(super) fn evaluate(id: IdentityId, p: &Params, tol: f64) -> Result<Evaluation> {
    let wt = work_tol(tol);
    match id {
        IdentityId::P1 => antiperiodic(p),
        IdentityId::P2 => multiplication(p, wt),
        IdentityId::P3 => rational_sum(p, wt),
        IdentityId::P4 => unit_integral(p, wt),
        IdentityId::P5 => sinusoid(p),
        IdentityId::P6 => shifted_sum(p, wt),
        IdentityId::P7 => derivative(p),
        IdentityId::P8a => hasse_gamma0(p),
        IdentityId::P8b => hasse_gamma1(p),
        IdentityId::P8c => hasse_eta1(p, wt),
        IdentityId::P8d => hasse_ln_pi(p),
        IdentityId::P8e => hasse_even_zeta(p, wt),
        IdentityId::P8f => zeta_prime_negative_even(p, wt, true),
        IdentityId::E16 => zeta_prime_negative_even(p, wt, false),
        IdentityId::HP => hansen_patrick(p, wt),
        IdentityId::A1 => polygamma_general(p, wt),
        IdentityId::A6 => polygamma_shifted(p, wt),
        IdentityId::D => dilcher(p, wt),
        IdentityId::X17 => split_form(p, wt),
    }
}

/// `C_k(a + 1/2) / C_k(a)` against `-1`.
fn antiperiodic(p: &Params) -> Result<Evaluation> {
    let k = get_int(p, "k", 1, 60)?;
    let a = get(p, "a")?;
    if !(a > 0.0 && a <= 0.5) {
        return Err(Error::domain("P1: need 0 < a <= 1/2"));
    }
    let lo = c_k_integral(k, a, 1e-12)?;
    let hi = c_k_integral(k, a + 0.5, 1e-12)?;
    let ratio = hi.value / lo.value;
    let err = (hi.err + ratio.abs() * lo.err) / lo.value.abs();
    Ok(Evaluation {
        lhs: ratio,
        rhs: -1.0,
        err,
        work: lo.work + hi.work,
        lhs_route: "bernoulli-integral",
        rhs_route: "limit",
        note: None,
    })
}

/// `gamma_n = (-1)^{n-1} m^{1-n} int P_n(mx) w - sum_{r<m} C_n(r/m)`.
fn multiplication(p: &Params, wt: f64) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 30)?;
    let m = get_int(p, "m", 1, 64)?;
    let lhs = gamma_oracle(n, 1.0, wt)?;
    let q = integrate_pn_weighted(n, 0.0, m as f64, &stirling_log_weight(n)?, wt)?;
    let mut acc = NeumaierSum::new();
    let scale = -sign(n) * (m as f64).powi(1 - n as i32);
    acc.add(scale * q.value);
    let mut err = scale.abs() * q.error_bound + lhs.err;
    for r in 1..m {
        let c = c_oracle(n, r as f64 / m as f64, wt)?;
        acc.add(-c.value);
        err += c.err;
    }
    Ok(Evaluation {
        lhs: lhs.value,
        rhs: acc.value(),
        err,
        work: q.panels + lhs.work,
        lhs_route: "contour",
        rhs_route: "bernoulli-integral+contour",
        note: None,
    })
}

/// `sum_{r<q} gamma_k(r/q)` against the combination of `gamma_j`, `ln q`.
fn rational_sum(p: &Params, wt: f64) -> Result<Evaluation> {
    let q = get_int(p, "q", 2, 64)?;
    let k = get_int(p, "k", 0, 10)?;
    let mut lhs = NeumaierSum::new();
    let mut err = 0.0;
    let mut work = 0;
    let amp = q as f64 * (1.0 + (q as f64).ln()).powi(k as i32);
    let wt = (wt / amp).max(1e-13);
    for r in 1..q {
        let g = gamma_oracle(k, r as f64 / q as f64, wt)?;
        lhs.add(g.value);
        err += g.err;
        work += g.work;
    }
    let l = (q as f64).ln();
    let qf = q as f64;
    let gam: Vec<StieltjesValue> = (0..=k)
        .map(|j| gamma_hasse(j, DEFAULT_TERMS, wt))
        .collect::<Result<_>>()?;
    let mut rhs = NeumaierSum::new();
    rhs.add(-gam[k].value);
    rhs.add(qf * sign(k) * l.powi(k as i32 + 1) / (k as f64 + 1.0));
    for j in 0..=k {
        let c = qf * binomial(k, j) * sign(j) * l.powi(j as i32);
        rhs.add(c * gam[k - j].value);
        err += c.abs() * gam[k - j].err;
    }
    Ok(Evaluation {
        lhs: lhs.value(),
        rhs: rhs.value(),
        err,
        work,
        lhs_route: "contour",
        rhs_route: "hasse",
        note: None,
    })
}

/// `1/(1-s) + int_0^1 [zeta(s,a) - a^{-s}] da` against zero.
fn unit_integral(p: &Params, wt: f64) -> Result<Evaluation> {
    let s = get(p, "s")?;
    if !(s < 1.0) {
        return Err(Error::domain("P4: need s < 1"));
    }
    // zeta(s, a) - a^{-s} = zeta(s, a + 1)
    let q = integrate_unit_a(|a| Ok(hurwitz_zeta_real(s, a + 1.0, 1e-16)?.value), s, wt)?;
    Ok(Evaluation {
        lhs: q.value,
        rhs: 0.0,
        err: q.error_bound,
        work: q.panels,
        lhs_route: "quadrature-over-hurwitz",
        rhs_route: "zero",
        note: None,
    })
}

/// Largest `|C_k(a) - m sin(2 pi (a + phi))| / m` over `a = i/8`.
fn sinusoid(p: &Params) -> Result<Evaluation> {
    let k = get_int(p, "k", crate::stieltjes::MIN_FIT_K, 60)?;
    let fit = asymptotic_fit(k, 1e-13)?;
    let mut worst: f64 = 0.0;
    let mut gap: f64 = 0.0;
    let mut err = fit.err / fit.amplitude;
    let mut work = 0;
    for i in 1..=8 {
        let a = i as f64 / 8.0;
        let c = c_k_integral(k, a, 1e-12)?;
        worst = worst.max((c.value - fit.sinusoid(a)).abs() / fit.amplitude);
        gap = gap.max(log_term(k, a).abs() / fit.amplitude);
        err = err.max(c.err / fit.amplitude);
        work += c.work;
    }
    Ok(Evaluation {
        lhs: worst,
        rhs: 0.0,
        err,
        work,
        lhs_route: "bernoulli-integral",
        rhs_route: "fourier-fit",
        note: Some(format!(
            "amplitude {:e}, phase {:.6}; gamma_k differs from C_k by up to {gap:.3e} amplitudes",
            fit.amplitude, fit.phase
        )),
    })
}

/// `sum_{j<n} C_k(a +- j/n) = (-1)^{k-1} n^{1-k} int P_k(n(x-a)) w`.
fn shifted_sum(p: &Params, wt: f64) -> Result<Evaluation> {
    let k = get_int(p, "k", 1, 30)?;
    let n = get_int(p, "n", 1, 64)?;
    let a = get(p, "a")?;
    let sg = get(p, "sign")?;
    if sg.abs() != 1.0 {
        return Err(Error::domain("P6: sign must be +1 or -1"));
    }
    let mut lhs = NeumaierSum::new();
    let mut err = 0.0;
    let mut outside = false;
    let mut lattice = NeumaierSum::new();
    for j in 0..n {
        let x = a + sg * j as f64 / n as f64;
        if !(x > 0.0) {
            return Err(Error::domain(format!("P6: argument {x} is not positive")));
        }
        if x > 1.0 {
            outside = true;
            lattice.add(log_term(k, x));
        }
        let c = c_oracle(k, x, wt)?;
        lhs.add(c.value);
        err += c.err;
    }
    let q = integrate_pn_weighted(k, a, n as f64, &stirling_log_weight(k)?, wt)?;
    let scale = -sign(k) * (n as f64).powi(1 - k as i32);
    err += scale.abs() * q.error_bound;
    Ok(Evaluation {
        lhs: lhs.value(),
        rhs: scale * q.value,
        err,
        work: q.panels,
        lhs_route: "contour",
        rhs_route: "bernoulli-integral",
        note: outside.then(|| {
            format!(
                "some a + j/n lie outside (0, 1], where the integral form no longer gives C_k; \
                 adding ln^k(x)/x back for those arguments leaves {:.3e}",
                (lhs.value() + lattice.value() - scale * q.value).abs()
            )
        }),
    })
}

/// `(-1)^j/j! d gamma_j/da` by central differences against
/// `-[j=0] - sum_{k>=j-1} (-1)^k/k! C(k+1, j) gamma_k(a)`.
fn derivative(p: &Params) -> Result<Evaluation> {
    let j = get_int(p, "j", 0, 10)?;
    let a = get(p, "a")?;
    let terms = match p.get("terms") {
        Some(_) => get_int(p, "terms", j + 1, 60)?,
        None => P7_TERMS,
    };
    if !(a > 2.0 * FD_STEP) {
        return Err(Error::domain("P7: need a > 2h"));
    }
    let h = FD_STEP;
    let f = |x: f64| -> Result<f64> {
        if j == 0 {
            Ok(-digamma(x)?.value)
        } else {
            Ok(gamma_oracle(j, x, 1e-13)?.value)
        }
    };
    let fd = (f(a - 2.0 * h)? - 8.0 * f(a - h)? + 8.0 * f(a + h)? - f(a + 2.0 * h)?) / (12.0 * h);
    let lhs = sign(j) / factorial(j) * fd;

    let series = |kmax: usize| -> Result<(f64, f64, f64)> {
        let mut acc = NeumaierSum::new();
        if j == 0 {
            acc.add(-1.0);
        }
        let mut err = 0.0;
        let mut last = 0.0;
        for k in j.saturating_sub(1)..=kmax {
            let w = sign(k) / factorial(k) * binomial(k + 1, j);
            let tol_k = (1e-12 / w.abs()).min(1e-2);
            let g = gamma_oracle(k, a, tol_k)?;
            acc.add(-w * g.value);
            err += w.abs() * g.err;
            last = g.value.abs();
        }
        // crude tail: |gamma_K| 2^{K+1} / K!
        let tail = last * 2f64.powi(kmax as i32 + 1) / factorial(kmax) * binomial(kmax + 1, j).max(1.0);
        Ok((acc.value(), err, tail))
    };
    let (rhs, rhs_err, tail) = series(terms)?;
    Ok(Evaluation {
        lhs,
        rhs,
        err: rhs_err + tail,
        work: terms,
        lhs_route: if j == 0 {
            "digamma-difference"
        } else {
            "contour-difference"
        },
        rhs_route: "contour-series",
        note: Some(format!("K={terms} tail {tail:.2e}")),
    })
}

fn log_sums(terms: usize) -> Result<(f64, f64, f64)> {
    let a = hasse_log_sum_detail(1, 1.0, terms, 0.0)?;
    let b = hasse_log_sum_detail(2, 1.0, terms, 0.0)?;
    Ok((a.value, b.value, a.err + b.err))
}

fn terms_param(p: &Params) -> Result<usize> {
    get_int(p, "terms", 1, 4096)
}

/// `gamma = ln 2 / 2 - A / ln 2`.
fn hasse_gamma0(p: &Params) -> Result<Evaluation> {
    let terms = terms_param(p)?;
    let rhs = hasse_constant(HasseConstant::Gamma, terms)?;
    let lhs = gamma_oracle(0, 1.0, 2e-15)?;
    Ok(Evaluation {
        lhs: lhs.value,
        rhs: rhs.value,
        err: lhs.err + rhs.err,
        work: terms,
        lhs_route: "contour",
        rhs_route: "hasse",
        note: None,
    })
}

/// `-gamma_1 = ln^2 2 / 12 - A/2 + B/(2 ln 2)`.
fn hasse_gamma1(p: &Params) -> Result<Evaluation> {
    let terms = terms_param(p)?;
    let rhs = hasse_constant(HasseConstant::Gamma1, terms)?;
    let lhs = gamma_oracle(1, 1.0, 1e-15)?;
    Ok(Evaluation {
        lhs: lhs.value,
        rhs: rhs.value,
        err: lhs.err + rhs.err,
        work: terms,
        lhs_route: "contour",
        rhs_route: "hasse",
        note: None,
    })
}

/// `eta_1 = ln^2 2/12 + A^2/ln^2 2 - B/ln 2`.
fn hasse_eta1(p: &Params, wt: f64) -> Result<Evaluation> {
    let terms = terms_param(p)?;
    let (a, b, e) = log_sums(terms)?;
    let l2 = LN_2 * LN_2;
    let rhs = l2 / 12.0 + a * a / l2 - b / LN_2;
    let halved = l2 / 12.0 + 0.5 * a * a / l2 - b / LN_2;
    let eta = eta_from_gamma(1, wt)?;
    Ok(Evaluation {
        lhs: eta.values[1],
        rhs,
        err: eta.err + 4.0 * e,
        work: terms,
        lhs_route: "contour-log-series",
        rhs_route: "hasse",
        note: Some(format!(
            "with the factor 1/2 on the squared sum the residual is {:.3e}",
            (eta.values[1] - halved).abs()
        )),
    })
}

/// `ln pi = ln 2 - 2 sum 2^{-n-1} sum_k (-1)^k C(n,k) ln(k+1)`.
fn hasse_ln_pi(p: &Params) -> Result<Evaluation> {
    let terms = terms_param(p)?;
    let rhs = hasse_constant(HasseConstant::LnPi, terms)?;
    Ok(Evaluation {
        lhs: PI.ln(),
        rhs: rhs.value,
        err: rhs.err + f64::EPSILON,
        work: terms,
        lhs_route: "libm",
        rhs_route: "hasse",
        note: None,
    })
}

/// `(-1)^{n-1} 2^{2n-1} pi^{2n} B_{2n} / (2n)!` against either Hasse series.
fn hasse_even_zeta(p: &Params, wt: f64) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 20)?;
    let series = get_int(p, "series", 1, 2)?;
    let b = bernoulli_number(2 * n).to_f64().unwrap_or(f64::NAN);
    let lhs = sign(n - 1) * 2f64.powi(2 * n as i32 - 1) * PI.powi(2 * n as i32) * b / factorial(2 * n);
    let s = 2.0 * n as f64;
    let (rhs, route, work) = if series == 1 {
        (hasse1_zeta(s, DEFAULT_TERMS, wt * lhs)?, "hasse-first", DEFAULT_TERMS)
    } else {
        (hasse2_zeta(s, HASSE2_CAP, 1e-9 * lhs)?, "hasse-second", HASSE2_CAP)
    };
    Ok(Evaluation {
        lhs,
        rhs: rhs.value,
        err: rhs.err + 8.0 * f64::EPSILON * lhs,
        work,
        lhs_route: "bernoulli-number",
        rhs_route: route,
        note: None,
    })
}

/// `zeta'(-2n) = (-1)^n (2n)! zeta(2n+1) / (2 (2 pi)^{2n})`; the odd zeta
/// value comes from the second Hasse series (`second = true`) or from
/// Euler–Maclaurin.
fn zeta_prime_negative_even(p: &Params, wt: f64, second: bool) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 3)?;
    let lhs = hasse1_zeta_prime(-2.0 * n as f64, wt)?;
    let s = 2.0 * n as f64 + 1.0;
    let z = if second {
        hasse2_zeta(s, HASSE2_CAP, 1e-10)?
    } else {
        riemann_zeta_real(s, 1e-15)?
    };
    let c = sign(n) * factorial(2 * n) / (2.0 * (2.0 * PI).powi(2 * n as i32));
    Ok(Evaluation {
        lhs: lhs.value,
        rhs: c * z.value,
        err: lhs.err + c.abs() * z.err,
        work: DEFAULT_TERMS,
        lhs_route: "hasse-derivative",
        rhs_route: if second { "hasse-second" } else { "euler-maclaurin" },
        note: None,
    })
}

/// `sum_{r<q} zeta(s, r/q) = (q^s - 1) zeta(s)`.
fn hansen_patrick(p: &Params, wt: f64) -> Result<Evaluation> {
    let q = get_int(p, "q", 2, 64)?;
    let s = get(p, "s")?;
    let mut lhs = NeumaierSum::new();
    let mut err = 0.0;
    for r in 1..q {
        let z = hurwitz_zeta_real(s, r as f64 / q as f64, 1e-15)?;
        lhs.add(z.value);
        err += z.err;
    }
    let f = (q as f64).powf(s) - 1.0;
    let z = hasse1_zeta(s, DEFAULT_TERMS, wt)?;
    Ok(Evaluation {
        lhs: lhs.value(),
        rhs: f * z.value,
        err: err + f.abs() * z.err,
        work: DEFAULT_TERMS,
        lhs_route: "euler-maclaurin",
        rhs_route: "hasse-first",
        note: None,
    })
}

/// `(-1)^n/(n+1)! psi^(n)(s) + 1/(n+1) sum_{k<=m} (s+k)^{-n-1}` against
/// `int_m^inf P_1(x)/(x+s+1)^{n+2} - 1/(n(n+1)(s+m+1)^n) - 1/(2(n+1)(s+m+1)^{n+1})`.
fn polygamma_general(p: &Params, wt: f64) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 20)?;
    let m = get_int(p, "m", 1, 1000)?;
    let s = get(p, "s")?;
    if !(s > 0.0) {
        return Err(Error::domain("A1: need s > 0"));
    }
    let nf = n as f64;
    let pre = sign(n) / factorial(n + 1);
    let psi = polygamma_tol(n, s, wt / pre.abs())?;
    let mut lhs = NeumaierSum::new();
    lhs.add(pre * psi.value);
    for k in 0..=m {
        lhs.add((s + k as f64).powi(-(n as i32 + 1)) / (nf + 1.0));
    }
    let q = integrate_p1_tail(n, m, s, wt)?;
    let t = s + m as f64 + 1.0;
    let rhs = q.value - 1.0 / (nf * (nf + 1.0) * t.powi(n as i32)) - 0.5 / ((nf + 1.0) * t.powi(n as i32 + 1));
    let extra = 1.0 / ((nf + 1.0) * (s + m as f64).powi(n as i32 + 1));
    Ok(Evaluation {
        lhs: lhs.value(),
        rhs,
        err: pre.abs() * psi.err + q.error_bound,
        work: q.panels,
        lhs_route: "polygamma",
        rhs_route: "p1-quadrature",
        note: Some(format!(
            "the extra term 1/((n+1)(s+m)^(n+1)) would leave a residual of {extra:.3e}"
        )),
    })
}

/// `(-1)^n/(n+1)! psi^(n)(s+1)` against
/// `-1/(n(n+1)(s+1)^n) - 1/(2(n+1)(s+1)^{n+1}) + int_1^inf P_1(x)/(x+s)^{n+2}`.
fn polygamma_shifted(p: &Params, wt: f64) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 20)?;
    let s = get(p, "s")?;
    if !(s > 0.0) {
        return Err(Error::domain("A6: need s > 0"));
    }
    let nf = n as f64;
    let pre = sign(n) / factorial(n + 1);
    let psi = polygamma_tol(n, s + 1.0, wt / pre.abs())?;
    let q = integrate_p1_shifted(1.0, s, n as u32 + 2, wt)?;
    let t = s + 1.0;
    let rhs = q.value - 1.0 / (nf * (nf + 1.0) * t.powi(n as i32)) - 0.5 / ((nf + 1.0) * t.powi(n as i32 + 1));
    let extra = 1.0 / ((nf + 1.0) * s.powi(n as i32 + 1));
    Ok(Evaluation {
        lhs: pre * psi.value,
        rhs,
        err: pre.abs() * psi.err + q.error_bound,
        work: q.panels,
        lhs_route: "polygamma",
        rhs_route: "p1-quadrature",
        note: Some(format!(
            "the extra term 1/((n+1)s^(n+1)) would leave a residual of {extra:.3e}"
        )),
    })
}

/// `psi_k(a) = -gamma_k(a)`.
fn dilcher(p: &Params, wt: f64) -> Result<Evaluation> {
    let k = get_int(p, "k", 0, 20)?;
    let a = get(p, "a")?;
    let psi = dilcher_psi(k, a, wt)?;
    let g = gamma_oracle(k, a, wt)?;
    Ok(Evaluation {
        lhs: psi.value,
        rhs: -g.value,
        err: psi.err + g.err,
        work: g.work,
        lhs_route: "dilcher-series",
        rhs_route: "contour",
        note: None,
    })
}

/// `C_n(1)` by the term-split integral against `gamma_n`.
fn split_form(p: &Params, wt: f64) -> Result<Evaluation> {
    let n = get_int(p, "n", 1, 30)?;
    let c = c_k_integral_split(n, 1.0, wt)?;
    let g = gamma_oracle(n, 1.0, wt)?;
    Ok(Evaluation {
        lhs: c.value,
        rhs: g.value,
        err: c.err + g.err,
        work: c.work,
        lhs_route: "bernoulli-integral-split",
        rhs_route: "contour",
        note: None,
    })
}
