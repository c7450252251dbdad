//! Identity checks: each evaluates both sides of one identity by different
//! routes and reports the residual.

mod catalog;
mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

pub use catalog::{default_cases, Case, Profile};

use crate::error::{Error, Result};

/// Named numeric parameters of a check.
pub type Params = BTreeMap<String, f64>;

/// Build a [`Params`] map from pairs.
pub fn params(pairs: &[(&str, f64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// Catalog of checkable identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityId {
    P1,
    P2,
    P3,
    P4,
    P5,
    P6,
    P7,
    P8a,
    P8b,
    P8c,
    P8d,
    P8e,
    P8f,
    E16,
    HP,
    A1,
    A6,
    D,
    X17,
}

impl IdentityId {
    pub const ALL: [IdentityId; 19] = [
        IdentityId::P1,
        IdentityId::P2,
        IdentityId::P3,
        IdentityId::P4,
        IdentityId::P5,
        IdentityId::P6,
        IdentityId::P7,
        IdentityId::P8a,
        IdentityId::P8b,
        IdentityId::P8c,
        IdentityId::P8d,
        IdentityId::P8e,
        IdentityId::P8f,
        IdentityId::E16,
        IdentityId::HP,
        IdentityId::A1,
        IdentityId::A6,
        IdentityId::D,
        IdentityId::X17,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityId::P1 => "P1",
            IdentityId::P2 => "P2",
            IdentityId::P3 => "P3",
            IdentityId::P4 => "P4",
            IdentityId::P5 => "P5",
            IdentityId::P6 => "P6",
            IdentityId::P7 => "P7",
            IdentityId::P8a => "P8a",
            IdentityId::P8b => "P8b",
            IdentityId::P8c => "P8c",
            IdentityId::P8d => "P8d",
            IdentityId::P8e => "P8e",
            IdentityId::P8f => "P8f",
            IdentityId::E16 => "E16",
            IdentityId::HP => "HP",
            IdentityId::A1 => "A1",
            IdentityId::A6 => "A6",
            IdentityId::D => "D",
            IdentityId::X17 => "X17",
        }
    }

    /// Whether `pass` compares the relative rather than absolute residual.
    pub fn scale_free(self) -> bool {
        matches!(
            self,
            IdentityId::P8e | IdentityId::P8f | IdentityId::E16 | IdentityId::HP
        )
    }

    /// Parse a comma-separated list; `all` expands to the whole catalog.
    pub fn parse_list(s: &str) -> Result<Vec<IdentityId>> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part.eq_ignore_ascii_case("all") {
                out.extend_from_slice(&IdentityId::ALL);
            } else {
                out.push(part.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::domain(format!("unknown identity id {s:?}")))
    }
}

/// Both sides of one evaluated identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub lhs: f64,
    pub rhs: f64,
    /// Error estimate of `lhs - rhs` from the underlying routines.
    pub err: f64,
    pub work: usize,
    pub lhs_route: &'static str,
    pub rhs_route: &'static str,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity_id: IdentityId,
    pub params: Params,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub terms_or_panels: usize,
    pub elapsed: Duration,
    /// Error estimate of the residual reported by the routines.
    pub err_estimate: f64,
    pub lhs_route: &'static str,
    pub rhs_route: &'static str,
    /// Diagnostic text; set on failure to evaluate.
    pub note: Option<String>,
}

impl VerificationReport {
    /// The residual that `pass` is judged on.
    pub fn judged_residual(&self) -> f64 {
        if self.identity_id.scale_free() {
            self.rel_residual
        } else {
            self.abs_residual
        }
    }
}

/// Evaluate one identity; evaluation errors give `pass = false` with a note.
pub fn run_check(id: IdentityId, params: &Params, tol: f64) -> VerificationReport {
    let start = Instant::now();
    let out = checks::evaluate(id, params, tol);
    let elapsed = start.elapsed();
    match out {
        Ok(e) => {
            let abs_residual = (e.lhs - e.rhs).abs();
            let rel_residual = abs_residual / e.lhs.abs().max(e.rhs.abs()).max(f64::MIN_POSITIVE);
            let judged = if id.scale_free() { rel_residual } else { abs_residual };
            VerificationReport {
                identity_id: id,
                params: params.clone(),
                lhs: e.lhs,
                rhs: e.rhs,
                abs_residual,
                rel_residual,
                tolerance: tol,
                pass: judged <= tol,
                terms_or_panels: e.work,
                elapsed,
                err_estimate: e.err,
                lhs_route: e.lhs_route,
                rhs_route: e.rhs_route,
                note: e.note,
            }
        }
        Err(err) => VerificationReport {
            identity_id: id,
            params: params.clone(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_residual: f64::NAN,
            rel_residual: f64::NAN,
            tolerance: tol,
            pass: false,
            terms_or_panels: 0,
            elapsed,
            err_estimate: f64::NAN,
            lhs_route: "",
            rhs_route: "",
            note: Some(err.to_string()),
        },
    }
}

/// Run the default cases of every id in `ids`, in parallel, returning
/// reports ordered by id and then parameters.
pub fn run_suite(ids: &[IdentityId], profile: Profile) -> Vec<VerificationReport> {
    let mut cases: Vec<Case> = ids.iter().flat_map(|&id| default_cases(id, profile)).collect();
    cases.sort_by(|a, b| a.id.cmp(&b.id).then_with(|| cmp_params(&a.params, &b.params)));
    cases.par_iter().map(|c| run_check(c.id, &c.params, c.tol)).collect()
}

fn cmp_params(a: &Params, b: &Params) -> std::cmp::Ordering {
    let ka = a.iter().map(|(k, v)| (k.as_str(), *v));
    let kb = b.iter().map(|(k, v)| (k.as_str(), *v));
    ka.partial_cmp(kb).unwrap_or(std::cmp::Ordering::Equal)
}

/// Pass count over a set of reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteSummary {
    pub total: usize,
    pub passed: usize,
}

impl SuiteSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        SuiteSummary {
            total: reports.len(),
            passed: reports.iter().filter(|r| r.pass).count(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.total == 0 {
            write!(f, "0 checks")
        } else {
            write!(f, "{}/{} pass", self.passed, self.total)
        }
    }
}
