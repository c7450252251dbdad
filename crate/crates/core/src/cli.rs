//! Command-line front end: `compute`, `verify` and `table`.
//!
//! Exit codes: `0` success, `1` verification failures, `2` usage or domain
//! errors, `3` convergence failures.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::stieltjes::{gamma_k, Method};
use crate::verify::{run_suite, IdentityId, Profile, SuiteSummary, VerificationReport};
use crate::zetacore::{hasse1_zeta, hasse2_zeta, hasse_constant, riemann_zeta_real, HasseConstant, DEFAULT_TERMS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;

/// Version of the `verify --json` report layout.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "Stieltjes constants and zeta identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single value.
    Compute {
        #[command(subcommand)]
        what: ComputeCommand,
    },
    /// Run identity checks and report residuals.
    Verify(VerifyArgs),
    /// Write a CSV table of gamma_k(a).
    Table(TableArgs),
}

#[derive(Debug, Subcommand)]
pub enum ComputeCommand {
    /// gamma_k(a).
    Stieltjes(StieltjesArgs),
    /// A constant from a finite Hasse sum.
    Constant(ConstantArgs),
    /// zeta(s).
    Zeta(ZetaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Oracle,
    Integral,
    Dilcher,
}

impl From<RouteArg> for Method {
    fn from(r: RouteArg) -> Method {
        match r {
            RouteArg::Oracle => Method::Oracle,
            RouteArg::Integral => Method::Integral,
            RouteArg::Dilcher => Method::Dilcher,
        }
    }
}

#[derive(Debug, Args)]
pub struct StieltjesArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub a: f64,
    #[arg(long, value_enum, default_value_t = RouteArg::Oracle)]
    pub method: RouteArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantName {
    Gamma,
    Gamma1,
    Eta1,
    Lnpi,
    BernoulliEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantMethod {
    Hasse,
}

#[derive(Debug, Args)]
pub struct ConstantArgs {
    #[arg(long)]
    pub name: ConstantName,
    #[arg(long, value_enum, default_value_t = ConstantMethod::Hasse)]
    pub method: ConstantMethod,
    /// Outer Hasse terms.
    #[arg(long, default_value_t = 52)]
    pub terms: usize,
    /// Index `n` of `B_{2n}` for `bernoulli-even`.
    #[arg(long, default_value_t = 1)]
    pub n: usize,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("series").args(["hasse1", "hasse2", "em"]).multiple(false)))]
pub struct ZetaArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    /// First (globally convergent) Hasse series.
    #[arg(long)]
    pub hasse1: bool,
    /// Second Hasse series; integer `s` in `[2, 40]`.
    #[arg(long)]
    pub hasse2: bool,
    /// Euler–Maclaurin (the default).
    #[arg(long)]
    pub em: bool,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Comma-separated identity ids, or `all`.
    #[arg(long, default_value = "all")]
    pub id: String,
    #[arg(long, value_enum, default_value_t = ProfileArg::Fast)]
    pub profile: ProfileArg,
    /// Also write the reports as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "STIELTJES_JOBS")]
    pub jobs: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Fast,
    Deep,
}

impl From<ProfileArg> for Profile {
    fn from(p: ProfileArg) -> Profile {
        match p {
            ProfileArg::Fast => Profile::Fast,
            ProfileArg::Deep => Profile::Deep,
        }
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Rows cover `k = 0..k_max`.
    #[arg(long)]
    pub k_max: usize,
    /// `start:stop:step`, stop included.
    #[arg(long)]
    pub a_grid: String,
    #[arg(long, value_enum, default_value_t = RouteArg::Integral)]
    pub method: RouteArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Write to a file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// One computed value as emitted by `compute`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub value: String,
    pub error_estimate: String,
    pub method: String,
    pub terms_used: usize,
    pub elapsed_ms: u64,
}

#[derive(Debug, Serialize)]
struct Diagnostic<'a> {
    name: &'a str,
    params: &'a BTreeMap<String, String>,
    error: String,
    best: Option<String>,
    bound: Option<String>,
}

/// `verify --json` document.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub generated_at: String,
    pub checks: Vec<CheckRecord>,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
    pub abs_residual: String,
    pub rel_residual: String,
    pub tolerance: String,
    pub pass: bool,
    pub terms_or_panels: usize,
    pub elapsed_ms: u64,
}

impl From<&VerificationReport> for CheckRecord {
    fn from(r: &VerificationReport) -> Self {
        CheckRecord {
            identity_id: r.identity_id.to_string(),
            params: r.params.iter().map(|(k, v)| (k.clone(), decimal(*v))).collect(),
            lhs: decimal(r.lhs),
            rhs: decimal(r.rhs),
            abs_residual: decimal(r.abs_residual),
            rel_residual: decimal(r.rel_residual),
            tolerance: decimal(r.tolerance),
            pass: r.pass,
            terms_or_panels: r.terms_or_panels,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

/// Shortest decimal string that parses back to `x` exactly.
pub fn decimal(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:?}")
    }
}

/// Parse `start:stop:step` into grid points; `stop` is included when it
/// lies on the grid up to rounding.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err(format!("a-grid {text:?} is not start:stop:step"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("a-grid value {s:?}: {e}"));
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(step > 0.0) || !step.is_finite() {
        return Err("a-grid step must be positive".into());
    }
    if !start.is_finite() || !stop.is_finite() || stop < start {
        return Err("a-grid needs finite start <= stop".into());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err("a-grid has more than 10^6 points".into());
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Convergence { .. } => EXIT_CONVERGENCE,
        _ => EXIT_USAGE,
    }
}

fn report_error(
    out: &mut dyn Write,
    err: &mut dyn Write,
    name: &str,
    params: &BTreeMap<String, String>,
    e: &Error,
) -> i32 {
    let (best, bound) = match e {
        Error::Convergence { best, bound, .. } => (Some(decimal(*best)), Some(decimal(*bound))),
        _ => (None, None),
    };
    let d = Diagnostic {
        name,
        params,
        error: e.to_string(),
        best,
        bound,
    };
    let _ = writeln!(err, "error: {e}");
    if matches!(e, Error::Convergence { .. }) {
        if let Ok(s) = serde_json::to_string(&d) {
            let _ = writeln!(out, "{s}");
        }
    }
    exit_code(e)
}

/// Parse `args` (including the program name) and run; returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match cli.command {
        Command::Compute { what } => compute(what, out, err),
        Command::Verify(v) => verify(v, out, err),
        Command::Table(t) => table(t, out, err),
    }
}

fn compute(what: ComputeCommand, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let mut params = BTreeMap::new();
    let result = match what {
        ComputeCommand::Stieltjes(a) => {
            params.insert("k".into(), a.k.to_string());
            params.insert("a".into(), decimal(a.a));
            params.insert("tol".into(), decimal(a.tol));
            let method = Method::from(a.method);
            gamma_k(a.k, a.a, method, a.tol).map(|v| ("stieltjes", v.value, v.err, method.as_str(), v.work))
        }
        ComputeCommand::Constant(a) => {
            let c = match a.name {
                ConstantName::Gamma => HasseConstant::Gamma,
                ConstantName::Gamma1 => HasseConstant::Gamma1,
                ConstantName::Eta1 => HasseConstant::Eta1,
                ConstantName::Lnpi => HasseConstant::LnPi,
                ConstantName::BernoulliEven => {
                    params.insert("n".into(), a.n.to_string());
                    HasseConstant::BernoulliEven(a.n)
                }
            };
            params.insert("terms".into(), a.terms.to_string());
            hasse_constant(c, a.terms).map(|v| (c.name(), v.value, v.err, "hasse", v.terms))
        }
        ComputeCommand::Zeta(a) => {
            params.insert("s".into(), decimal(a.s));
            params.insert("tol".into(), decimal(a.tol));
            if a.hasse1 {
                hasse1_zeta(a.s, DEFAULT_TERMS, a.tol).map(|v| ("zeta", v.value, v.err, "hasse1", DEFAULT_TERMS))
            } else if a.hasse2 {
                let cap = 1 << 20;
                hasse2_zeta(a.s, cap, a.tol).map(|v| ("zeta", v.value, v.err, "hasse2", cap))
            } else {
                riemann_zeta_real(a.s, a.tol).map(|v| ("zeta", v.value, v.err, "em", 0))
            }
        }
    };
    match result {
        Ok((name, value, e, method, terms)) => {
            let rec = OutputRecord {
                name: name.into(),
                params,
                value: decimal(value),
                error_estimate: decimal(e),
                method: method.into(),
                terms_used: terms,
                elapsed_ms: start.elapsed().as_millis() as u64,
            };
            match serde_json::to_string(&rec) {
                Ok(s) => {
                    let _ = writeln!(out, "{s}");
                    EXIT_OK
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    EXIT_FAILED
                }
            }
        }
        Err(e) => report_error(out, err, "compute", &params, &e),
    }
}

fn verify(v: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ids = match IdentityId::parse_list(&v.id) {
        Ok(ids) => ids,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let profile = Profile::from(v.profile);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(v.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let reports = pool.install(|| run_suite(&ids, profile));
    let _ = writeln!(
        out,
        "{:<5} {:<34} {:>24} {:>24} {:>10} {:>8}  {:<4} {:>7}",
        "id", "params", "lhs", "rhs", "residual", "tol", "", "ms"
    );
    for r in &reports {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(
            out,
            "{:<5} {:<34} {:>24.16e} {:>24.16e} {:>10.3e} {:>8.0e}  {:<4} {:>7}",
            r.identity_id.as_str(),
            params.join(","),
            r.lhs,
            r.rhs,
            r.judged_residual(),
            r.tolerance,
            if r.pass { "PASS" } else { "FAIL" },
            r.elapsed.as_millis()
        );
        if let Some(note) = &r.note {
            let _ = writeln!(out, "      note: {note}");
        }
    }
    let summary = SuiteSummary::of(&reports);
    let _ = writeln!(out, "{summary} ({profile})");
    if let Some(path) = v.json {
        let doc = Report {
            schema_version: SCHEMA_VERSION,
            generated_at: chrono::Utc::now().to_rfc3339(),
            checks: reports.iter().map(CheckRecord::from).collect(),
        };
        let written = serde_json::to_string_pretty(&doc)
            .map_err(|e| e.to_string())
            .and_then(|s| fs::write(&path, s + "\n").map_err(|e| e.to_string()));
        if let Err(e) = written {
            let _ = writeln!(err, "error: writing {}: {e}", path.display());
            return EXIT_FAILED;
        }
    }
    if summary.all_pass() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn table(t: TableArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let grid = match parse_grid(&t.a_grid) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let method = Method::from(t.method);
    let mut csv = String::from("k,a,value,err,method\n");
    for k in 0..t.k_max {
        for &a in &grid {
            match gamma_k(k, a, method, t.tol) {
                Ok(v) => csv.push_str(&format!(
                    "{k},{},{},{},{method}\n",
                    decimal(a),
                    decimal(v.value),
                    decimal(v.err)
                )),
                Err(e) => {
                    let mut params = BTreeMap::new();
                    params.insert("k".into(), k.to_string());
                    params.insert("a".into(), decimal(a));
                    return report_error(out, err, "table", &params, &e);
                }
            }
        }
    }
    match t.out {
        Some(path) => {
            if let Err(e) = fs::write(&path, csv) {
                let _ = writeln!(err, "error: writing {}: {e}", path.display());
                return EXIT_FAILED;
            }
        }
        None => {
            let _ = write!(out, "{csv}");
        }
    }
    EXIT_OK
}
