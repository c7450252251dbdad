//! Default parameter sets and tolerances for each identity.

use std::fmt;
use std::str::FromStr;

use super::{params, IdentityId, Params};
use crate::error::{Error, Result};

/// Tolerance profile of a suite run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    /// `1e-8` on identities without a sharper intrinsic tolerance.
    #[default]
    Fast,
    /// `1e-11` where the routes support it.
    Deep,
}

impl Profile {
    /// Generic tolerance of exact identities.
    pub fn base_tol(self) -> f64 {
        match self {
            Profile::Fast => 1e-8,
            Profile::Deep => 1e-11,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Profile::Fast => "fast",
            Profile::Deep => "deep",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "deep" => Ok(Profile::Deep),
            _ => Err(Error::domain(format!("unknown profile {s:?}"))),
        }
    }
}

/// One parameter set of one identity with its pass tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub id: IdentityId,
    pub params: Params,
    pub tol: f64,
}

fn case(id: IdentityId, p: &[(&str, f64)], tol: f64) -> Case {
    Case {
        id,
        params: params(p),
        tol,
    }
}

/// Default cases of `id` under `profile`.
///
/// Asymptotic identities (P1, P5) and the finite-difference check (P7)
/// carry intrinsic tolerances independent of the profile; identities with
/// a sharper stated accuracy use the smaller of the two.
pub fn default_cases(id: IdentityId, profile: Profile) -> Vec<Case> {
    use IdentityId::*;
    let base = profile.base_tol();
    let sharp = |t: f64| t.min(base);
    match id {
        P1 => vec![
            case(P1, &[("k", 15.0), ("a", 0.2)], 1e-2),
            case(P1, &[("k", 25.0), ("a", 0.2)], 1e-4),
        ],
        P2 => {
            let mut v = Vec::new();
            for n in 1..=3 {
                for m in 2..=3 {
                    v.push(case(P2, &[("n", n as f64), ("m", m as f64)], base));
                }
            }
            v
        }
        P3 => {
            let mut v = Vec::new();
            for q in [2, 3, 4, 6] {
                for k in 0..=3 {
                    v.push(case(P3, &[("q", q as f64), ("k", k as f64)], 1e-9));
                }
            }
            v
        }
        P4 => [-0.5, 0.0, 0.3].iter().map(|&s| case(P4, &[("s", s)], base)).collect(),
        P5 => vec![case(P5, &[("k", 21.0)], 1e-2), case(P5, &[("k", 31.0)], 1e-3)],
        P6 => {
            // plus branch where every a + j/n stays in (0, 1], minus branch
            // where every a - j/n does
            let mut v = Vec::new();
            for k in 1..=3 {
                for n in 2..=3 {
                    v.push(case(
                        P6,
                        &[("k", k as f64), ("n", n as f64), ("a", 0.3), ("sign", 1.0)],
                        base,
                    ));
                    v.push(case(
                        P6,
                        &[("k", k as f64), ("n", n as f64), ("a", 0.9), ("sign", -1.0)],
                        base,
                    ));
                }
            }
            v
        }
        P7 => {
            let mut v = Vec::new();
            for j in 0..=3 {
                for a in [0.5, 1.0] {
                    let tol = if j == 0 { 1e-8 } else { 1e-6 };
                    v.push(case(P7, &[("j", j as f64), ("a", a)], tol));
                }
            }
            v
        }
        P8a => vec![case(P8a, &[("terms", 52.0)], 5e-15)],
        P8b => vec![case(P8b, &[("terms", 52.0)], 1e-13)],
        P8c => vec![case(P8c, &[("terms", 60.0)], sharp(1e-9))],
        P8d => vec![case(P8d, &[("terms", 60.0)], 1e-12)],
        P8e => {
            let mut v = Vec::new();
            for n in 1..=4 {
                v.push(case(P8e, &[("n", n as f64), ("series", 1.0)], 1e-10));
                v.push(case(P8e, &[("n", n as f64), ("series", 2.0)], 1e-8));
            }
            v
        }
        P8f => (1..=3).map(|n| case(P8f, &[("n", n as f64)], 1e-8)).collect(),
        E16 => (1..=3).map(|n| case(E16, &[("n", n as f64)], 1e-8)).collect(),
        HP => {
            let mut v = Vec::new();
            for q in [2, 3, 5] {
                for s in [-0.5, 2.0, 3.5] {
                    v.push(case(HP, &[("q", q as f64), ("s", s)], sharp(1e-10)));
                }
            }
            v
        }
        A1 => {
            let mut v = Vec::new();
            for n in 1..=3 {
                for m in 1..=3 {
                    for s in [0.5, 1.0, 2.5] {
                        v.push(case(A1, &[("n", n as f64), ("m", m as f64), ("s", s)], sharp(1e-10)));
                    }
                }
            }
            v
        }
        A6 => {
            let mut v = Vec::new();
            for n in 1..=3 {
                for s in [0.5, 1.5] {
                    v.push(case(A6, &[("n", n as f64), ("s", s)], sharp(1e-10)));
                }
            }
            v
        }
        D => {
            let mut v = Vec::new();
            for k in 0..=3 {
                for a in [0.25, 1.0, 1.5] {
                    v.push(case(D, &[("k", k as f64), ("a", a)], base));
                }
            }
            v
        }
        X17 => (1..=6).map(|n| case(X17, &[("n", n as f64)], sharp(1e-9))).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_has_cases() {
        for id in IdentityId::ALL {
            let c = default_cases(id, Profile::Fast);
            assert!(!c.is_empty(), "{id}");
            assert!(c.iter().all(|x| x.tol > 0.0 && x.id == id));
        }
    }

    #[test]
    fn deep_is_never_looser() {
        for id in IdentityId::ALL {
            for (f, d) in default_cases(id, Profile::Fast)
                .iter()
                .zip(default_cases(id, Profile::Deep))
            {
                assert!(d.tol <= f.tol);
            }
        }
    }

    #[test]
    fn profile_names() {
        assert_eq!("deep".parse::<Profile>().unwrap(), Profile::Deep);
        assert!("medium".parse::<Profile>().is_err());
    }
}
