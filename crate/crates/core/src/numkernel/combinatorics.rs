use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest row index the Stirling table will grow to.
pub const MAX_STIRLING_N: usize = 400;

/// Signed Stirling numbers of the first kind, rows `0..=max_n`.
#[derive(Debug, Default)]
struct StirlingTable {
    rows: Vec<Vec<BigInt>>,
}

impl StirlingTable {
    fn max_n(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    fn extend_to(&mut self, n: usize) {
        if self.rows.is_empty() {
            self.rows.push(vec![BigInt::one()]);
        }
        while self.rows.len() <= n {
            let k = self.rows.len() - 1;
            let prev = &self.rows[k];
            let kk = BigInt::from(k);
            let mut row = vec![BigInt::zero(); k + 2];
            // s(k+1, m) = s(k, m-1) - k s(k, m)
            for (m, slot) in row.iter_mut().enumerate() {
                let mut v = BigInt::zero();
                if m >= 1 {
                    v += &prev[m - 1];
                }
                if m <= k {
                    v -= &kk * &prev[m];
                }
                *slot = v;
            }
            self.rows.push(row);
        }
    }
}

fn stirling_table() -> &'static RwLock<StirlingTable> {
    static TABLE: OnceLock<RwLock<StirlingTable>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(StirlingTable::default()))
}

/// Signed Stirling number of the first kind `s(n, m)`, exact.
pub fn stirling_s1(n: usize, m: usize) -> Result<BigInt> {
    if m > n {
        return Err(Error::domain(format!("stirling_s1: m = {m} exceeds n = {n}")));
    }
    if n > MAX_STIRLING_N {
        return Err(Error::domain(format!(
            "stirling_s1: n = {n} exceeds table cap {MAX_STIRLING_N}"
        )));
    }
    {
        let table = stirling_table().read().expect("stirling table poisoned");
        if table.max_n().is_some_and(|mx| mx >= n) {
            return Ok(table.rows[n][m].clone());
        }
    }
    let mut table = stirling_table().write().expect("stirling table poisoned");
    table.extend_to(n);
    Ok(table.rows[n][m].clone())
}

/// `s(n, m)` rounded to the nearest double.
pub fn stirling_s1_f64(n: usize, m: usize) -> Result<f64> {
    Ok(stirling_s1(n, m)?.to_f64().unwrap_or(f64::NAN))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_s1(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling_s1(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_s1(4, 2).unwrap(), BigInt::from(11));
        assert_eq!(stirling_s1(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(stirling_s1(5, 0).unwrap(), BigInt::zero());
        assert_eq!(stirling_s1(4, 3).unwrap(), BigInt::from(-6));
    }

    #[test]
    fn stirling_out_of_range() {
        assert!(matches!(stirling_s1(2, 3), Err(Error::Domain(_))));
        assert!(stirling_s1(MAX_STIRLING_N + 1, 0).is_err());
    }

    #[test]
    fn stirling_row_sums() {
        for n in 2..=25 {
            let row: Vec<BigInt> = (0..=n).map(|m| stirling_s1(n, m).unwrap()).collect();
            let signed: BigInt = row.iter().sum();
            assert!(signed.is_zero(), "row {n}");
            let abs: BigInt = row
                .iter()
                .map(|v| if v < &BigInt::zero() { -v } else { v.clone() })
                .sum();
            assert_eq!(abs, factorial(n), "row {n}");
        }
    }

    #[test]
    fn stirling_large_row_exceeds_u64() {
        // s(41, 1) = (-1)^40 40!
        assert_eq!(stirling_s1(41, 1).unwrap(), factorial(40));
        assert_eq!(stirling_s1(41, 41).unwrap(), BigInt::one());
    }

    #[test]
    fn stirling_concurrent_builds_agree() {
        let handles: Vec<_> = (0..8)
            .map(|i| std::thread::spawn(move || stirling_s1(60 + i, 30).unwrap()))
            .collect();
        let vals: Vec<BigInt> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for (i, v) in vals.iter().enumerate() {
            assert_eq!(v, &stirling_s1(60 + i, 30).unwrap());
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(52, 26), BigInt::from(495_918_532_948_104u64));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }
}
