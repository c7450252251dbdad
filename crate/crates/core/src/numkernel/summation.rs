use super::WorkingReal;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    count: usize,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
        self.count += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// Error bound `2 u |S| + 2 n u^2 sum |x_i|` for the compensated result.
    pub fn error_bound(&self) -> f64 {
        let u = f64::EPSILON / 2.0;
        2.0 * u * self.value().abs() + 2.0 * (self.count as f64) * u * u * self.abs_sum
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    pub fn result(&self) -> WorkingReal {
        WorkingReal::new(self.value(), self.error_bound())
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        s.extend(iter);
        s
    }
}

/// Compensated sum of a finite sequence, accumulated in order.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> WorkingReal {
    terms.into_iter().collect::<NeumaierSum>().result()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    #[test]
    fn cancellation_case() {
        let s = compensated_sum([1.0, 1e-16, -1.0]);
        assert_eq!(s.value, 1e-16);
    }

    #[test]
    fn empty_sum() {
        let s = compensated_sum(std::iter::empty());
        assert_eq!(s.value, 0.0);
        assert_eq!(s.err, 0.0);
    }

    #[test]
    fn million_tenths() {
        // exact rational oracle: 10^6 copies of the double nearest 0.1
        let tenth = BigRational::from_float(0.1f64).unwrap();
        let exact = (tenth * BigRational::from_integer(BigInt::from(1_000_000)))
            .to_f64()
            .unwrap();
        let s = compensated_sum(std::iter::repeat_n(0.1, 1_000_000));
        assert!((s.value - exact).abs() <= 1e-9);
        assert!((s.value - 1e5).abs() <= 1e-9);
        let naive: f64 = std::iter::repeat_n(0.1, 1_000_000).sum();
        assert!((naive - exact).abs() > (s.value - exact).abs());
    }
}
