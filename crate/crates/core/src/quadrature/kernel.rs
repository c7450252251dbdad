//! Oscillatory kernels and smooth weights for integrals over `[lo, inf)`.
//!
//! An integrand is `kernel(x) * weight(x)`. Kernels are periodic and mean
//! zero with explicit antiderivatives, which makes the tail past a cut point
//! computable by repeated integration by parts.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numkernel::{bernoulli_poly_coeffs, pn_sup_bound, upper_incomplete_gamma, Dd};

/// Periodic, mean-zero factor of an integrand.
#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `P_n(scale (x - offset))`.
    Bernoulli { n: usize, offset: f64, scale: f64 },
    /// `cos(2 pi x + phase)`.
    Trig { phase: f64 },
}

/// The two trigonometric kernels of the sinusoid fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trig {
    Sin,
    Cos,
}

impl Trig {
    pub fn kernel(self) -> Kernel {
        match self {
            Trig::Cos => Kernel::Trig { phase: 0.0 },
            Trig::Sin => Kernel::Trig { phase: -PI / 2.0 },
        }
    }
}

impl Kernel {
    pub fn bernoulli(n: usize, offset: f64, scale: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Bernoulli kernel needs n >= 1"));
        }
        if !(scale > 0.0) || !offset.is_finite() {
            return Err(Error::domain("Bernoulli kernel needs scale > 0 and a finite offset"));
        }
        Ok(Kernel::Bernoulli { n, offset, scale })
    }

    /// Distance between consecutive breakpoints.
    pub fn period(&self) -> f64 {
        match self {
            Kernel::Bernoulli { scale, .. } => 1.0 / scale,
            Kernel::Trig { .. } => 0.5,
        }
    }

    /// Index `j` of the last breakpoint `anchor + j * period <= x`.
    pub fn cell_index(&self, x: f64) -> f64 {
        match self {
            Kernel::Bernoulli { offset, scale, .. } => (scale * (x - offset)).floor(),
            Kernel::Trig { .. } => (2.0 * x).floor(),
        }
    }

    pub fn breakpoint(&self, j: f64) -> f64 {
        match self {
            Kernel::Bernoulli { offset, scale, .. } => offset + j / scale,
            Kernel::Trig { .. } => 0.5 * j,
        }
    }

    /// Value at `x` lying in cell `j`; the cell fixes the polynomial branch
    /// so nodes near a breakpoint never pick the wrong side.
    pub fn eval_in_cell(&self, x: f64, j: f64) -> Dd {
        match self {
            Kernel::Bernoulli { n, offset, scale } => {
                let y = (scale * (x - offset) - j).clamp(0.0, 1.0);
                crate::numkernel::bernoulli_poly_dd(*n, y)
            }
            Kernel::Trig { phase } => {
                let f = x - x.floor();
                Dd::from_f64((2.0 * PI * f + phase).cos())
            }
        }
    }

    pub fn eval(&self, x: f64) -> Dd {
        self.eval_in_cell(x, self.cell_index(x))
    }

    /// The `r`-th antiderivative that is itself periodic and mean zero.
    pub fn antiderivative(&self, r: usize, x: f64) -> f64 {
        match self {
            Kernel::Bernoulli { n, offset, scale } => {
                let y = scale * (x - offset);
                let f = y - y.floor();
                let p = horner_f64(&bernoulli_poly_coeffs(n + r), f);
                p * falling_ratio(*n, r) / scale.powi(r as i32)
            }
            Kernel::Trig { phase } => {
                let f = x - x.floor();
                let ph = phase - r as f64 * PI / 2.0;
                (2.0 * PI * f + ph).cos() / (2.0 * PI).powi(r as i32)
            }
        }
    }

    /// Sup norm of the `r`-th antiderivative (`r >= 1`).
    pub fn antiderivative_sup(&self, r: usize) -> f64 {
        match self {
            Kernel::Bernoulli { n, scale, .. } => {
                // |P_m| <= m! * pn_sup_bound(m) for m >= 2
                let m = n + r;
                let fact_n: f64 = (1..=*n).map(|i| i as f64).product();
                fact_n * pn_sup_bound(m).expect("m >= 2") / scale.powi(r as i32)
            }
            Kernel::Trig { .. } => (2.0 * PI).powi(-(r as i32)),
        }
    }
}

/// `n! / (n + r)!`
fn falling_ratio(n: usize, r: usize) -> f64 {
    (n + 1..=n + r).fold(1.0, |acc, i| acc / i as f64)
}

fn horner_f64(coeffs: &[Dd], x: f64) -> f64 {
    crate::numkernel::horner_dd(coeffs, x).to_f64()
}

/// Smooth, eventually monotone factor of an integrand.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    /// `x^{-power} * sum_i coeffs[i] ln^i x`.
    LogPoly { power: u32, coeffs: Vec<Dd> },
    /// `factor * (x + shift)^{-power}`.
    ShiftedPower { factor: f64, shift: f64, power: u32 },
}

impl Weight {
    /// `ln^k x / x^power`.
    pub fn log_power(k: usize, power: u32) -> Self {
        let mut coeffs = vec![Dd::ZERO; k + 1];
        coeffs[k] = Dd::ONE;
        Weight::LogPoly { power, coeffs }
    }

    pub fn shifted_power(shift: f64, power: u32) -> Self {
        Weight::ShiftedPower {
            factor: 1.0,
            shift,
            power,
        }
    }

    pub fn eval(&self, x: f64) -> Dd {
        match self {
            Weight::LogPoly { power, coeffs } => {
                let xd = Dd::from_f64(x);
                let t = xd.ln();
                let mut acc = Dd::ZERO;
                for c in coeffs.iter().rev() {
                    acc = acc * t + *c;
                }
                acc * xd.recip().powi(*power)
            }
            Weight::ShiftedPower { factor, shift, power } => {
                let base = Dd::from_f64(x) + Dd::from_f64(*shift);
                base.recip().powi(*power).mul_f64(*factor)
            }
        }
    }

    /// First derivative as another weight of the same family.
    pub fn derivative(&self) -> Weight {
        match self {
            Weight::LogPoly { power, coeffs } => {
                // d/dx [x^{-p} c_i t^i] = x^{-p-1} (-p c_i t^i + i c_i t^{i-1})
                let p = *power as f64;
                let n = coeffs.len();
                let out = (0..n)
                    .map(|i| {
                        let next = if i + 1 < n {
                            coeffs[i + 1].mul_f64((i + 1) as f64)
                        } else {
                            Dd::ZERO
                        };
                        next - coeffs[i].mul_f64(p)
                    })
                    .collect();
                Weight::LogPoly {
                    power: power + 1,
                    coeffs: out,
                }
            }
            Weight::ShiftedPower { factor, shift, power } => Weight::ShiftedPower {
                factor: -factor * *power as f64,
                shift: *shift,
                power: power + 1,
            },
        }
    }

    /// Upper bound on `int_X^inf |w(x)| dx`.
    pub fn abs_tail_integral(&self, x: f64) -> Result<f64> {
        match self {
            Weight::LogPoly { power, coeffs } => {
                if *power < 2 || x < 1.0 {
                    return Err(Error::domain("abs_tail_integral: need power >= 2 and X >= 1"));
                }
                let q = *power as f64 - 1.0;
                let z = q * x.ln();
                let mut acc = 0.0;
                for (i, c) in coeffs.iter().enumerate() {
                    if c.hi == 0.0 {
                        continue;
                    }
                    let g = upper_incomplete_gamma(i as f64 + 1.0, z)?;
                    acc += c.abs().to_f64() * (g.value + g.err) / q.powi(i as i32 + 1);
                }
                Ok(acc * (1.0 + 1e-12))
            }
            Weight::ShiftedPower { factor, shift, power } => {
                if *power < 2 || x + shift <= 0.0 {
                    return Err(Error::domain("abs_tail_integral: need power >= 2 and X + shift > 0"));
                }
                let q = *power as f64 - 1.0;
                Ok(factor.abs() * (x + shift).powf(-q) / q)
            }
        }
    }

    /// Sum of absolute coefficients, a scale used for roundoff floors.
    pub fn magnitude(&self) -> f64 {
        match self {
            Weight::LogPoly { coeffs, .. } => coeffs.iter().map(|c| c.abs().to_f64()).sum(),
            Weight::ShiftedPower { factor, .. } => factor.abs(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antiderivative_differentiates_back() {
        let k = Kernel::bernoulli(3, 0.3, 2.0).unwrap();
        let h = 1e-6;
        for &x in &[1.37, 2.91, 4.02] {
            let d = (k.antiderivative(1, x + h) - k.antiderivative(1, x - h)) / (2.0 * h);
            assert!((d - k.eval(x).to_f64()).abs() < 1e-8);
            let d2 = (k.antiderivative(2, x + h) - k.antiderivative(2, x - h)) / (2.0 * h);
            assert!((d2 - k.antiderivative(1, x)).abs() < 1e-8);
        }
        let t = Trig::Sin.kernel();
        for &x in &[1.1, 1.7] {
            let d = (t.antiderivative(1, x + h) - t.antiderivative(1, x - h)) / (2.0 * h);
            assert!((d - (2.0 * PI * x).sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn weight_derivative_matches_difference() {
        let w = Weight::LogPoly {
            power: 3,
            coeffs: vec![Dd::from_f64(1.0), Dd::from_f64(-2.0), Dd::from_f64(0.5)],
        };
        let d = w.derivative();
        let h = 1e-6;
        for &x in &[1.5, 3.0, 7.0] {
            let fd = (w.eval(x + h) - w.eval(x - h)).to_f64() / (2.0 * h);
            assert!((fd - d.eval(x).to_f64()).abs() < 1e-8);
        }
        let s = Weight::shifted_power(0.5, 3);
        let sd = s.derivative();
        let fd = (s.eval(2.0 + h) - s.eval(2.0 - h)).to_f64() / (2.0 * h);
        assert!((fd - sd.eval(2.0).to_f64()).abs() < 1e-9);
    }

    #[test]
    fn sup_of_antiderivatives_holds_on_grid() {
        let k = Kernel::bernoulli(2, 0.0, 3.0).unwrap();
        for r in 1..6 {
            let sup = k.antiderivative_sup(r);
            for i in 0..500 {
                let x = 1.0 + i as f64 / 499.0;
                assert!(k.antiderivative(r, x).abs() <= sup);
            }
        }
    }
}
