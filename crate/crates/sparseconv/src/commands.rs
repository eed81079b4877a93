//! Subcommand bodies. Each returns the text destined for standard output and
//! standard error plus a status; `main` only prints and maps exit codes.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde_json::Value;
use sparseconv_core::addset::{
    base_expand_compress, compress_convolution, compression_bound_for_m, compression_bound_n,
    konyagin_lev_bound, min_diameter_search, Strategy,
};
use sparseconv_core::gauss::{gaussian_ratio, make_pair, optimal_sigma, SweepRecord};
use sparseconv_core::stability::{
    analytic_alpha, corollary_universal_bound, sharp_alpha_alternating, sharp_alpha_exhaustive,
};

use crate::json::{
    bound_result_to_json, compression_bound_to_json, freiman_map_to_json, num, obj,
    parse_compress_input, point_set_to_json, seq_to_json, to_pretty, CompressInput,
};
use crate::suites::{self, norm_check, Suite};
use crate::sweep::{parse_s_list, parse_sigma_spec, write_csv};
use crate::CliError;

/// Tolerance for exhaustive and alternating results to count as agreeing.
pub const AGREEMENT_TOL: f64 = 1e-6;
/// Relative tolerance of the compression norm checks.
pub const NORM_TOL: f64 = 1e-12;
/// Golden-section tolerance for the optimal width.
pub const SIGMA_TOL: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A verification inside the command failed; exit code 1.
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub status: Status,
}

impl CommandOutput {
    fn ok(stdout: String) -> Self {
        CommandOutput { stdout, stderr: String::new(), status: Status::Ok }
    }

    fn with_status(stdout: String, passed: bool) -> Self {
        CommandOutput {
            stdout,
            stderr: String::new(),
            status: if passed { Status::Ok } else { Status::Failed },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Exhaustive,
    Alternating,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StrategyArg {
    BaseExpand,
    Search,
}

fn require_positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Usage(format!("--{name} must be at least 1")));
    }
    Ok(())
}

pub fn bound(s: usize, f: usize, n: Option<u64>, as_json: bool) -> Result<CommandOutput, CliError> {
    require_positive("s", s)?;
    require_positive("f", f)?;
    if n == Some(0) {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let corollary = corollary_universal_bound(s, f)?;
    let analytic = match n {
        Some(n) => analytic_alpha(s, f, n)?,
        None => corollary.analytic.expect("corollary carries its closed form"),
    };
    let comp = compression_bound_n(s, f)?;

    if as_json {
        let v = obj([
            ("s", s.into()),
            ("f", f.into()),
            ("n", n.map_or(Value::Null, Value::from)),
            ("analytic", crate::json::analytic_to_json(&analytic)),
            ("compression_bound", compression_bound_to_json(&comp)),
            ("corollary", bound_result_to_json(&corollary)),
        ]);
        return Ok(CommandOutput::ok(to_pretty(&v)));
    }

    let mut out = String::new();
    let n_text = match n {
        Some(n) => n.to_string(),
        None => match corollary.n {
            Some(v) => format!("{v} = n(s+f-1)"),
            None => format!("2^{} = n(s+f-1)", crate::json::fmt15(analytic.log2_n)),
        },
    };
    writeln!(out, "s = {s}, f = {f}, n = {n_text}").unwrap();
    writeln!(out, "log2 alpha (closed form)     {}", crate::json::fmt15(analytic.log2_alpha)).unwrap();
    if let Some(eq) = analytic.log2_alpha_equal_sparsity {
        writeln!(out, "log2 alpha (s = f form)      {}", crate::json::fmt15(eq)).unwrap();
    }
    if analytic.exact {
        writeln!(out, "closed form is exact for this (s, f)").unwrap();
    }
    let comp_n = comp.n.map_or_else(
        || format!("2^{} (exceeds 2^63)", crate::json::fmt15(comp.log2_n)),
        |v| v.to_string(),
    );
    writeln!(out, "n(m), m = {:<3}                {comp_n}", comp.m).unwrap();
    writeln!(out, "universal log2 alpha         {}", crate::json::fmt15(corollary.log2_alpha)).unwrap();
    Ok(CommandOutput::ok(out))
}

pub struct SharpArgs {
    pub s: usize,
    pub f: usize,
    pub n: usize,
    pub method: Method,
    pub restarts: usize,
    pub seed: u64,
    pub grid: usize,
}

pub fn sharp(a: &SharpArgs) -> Result<CommandOutput, CliError> {
    require_positive("s", a.s)?;
    require_positive("f", a.f)?;
    require_positive("n", a.n)?;
    require_positive("restarts", a.restarts)?;
    require_positive("grid", a.grid)?;
    let exhaustive = || sharp_alpha_exhaustive(a.s, a.f, a.n, a.grid);
    let alternating = || sharp_alpha_alternating(a.s, a.f, a.n, a.restarts, a.seed);
    match a.method {
        Method::Exhaustive => Ok(CommandOutput::ok(to_pretty(&bound_result_to_json(&exhaustive()?)))),
        Method::Alternating => Ok(CommandOutput::ok(to_pretty(&bound_result_to_json(&alternating()?)))),
        Method::Both => {
            let (ex, alt) = rayon::join(exhaustive, alternating);
            let (ex, alt) = (ex?, alt?);
            let diff = alt.alpha() - ex.alpha();
            let agree = diff.abs() <= AGREEMENT_TOL;
            let v = obj([
                ("exhaustive", bound_result_to_json(&ex)),
                ("alternating", bound_result_to_json(&alt)),
                (
                    "agreement",
                    obj([
                        ("difference", num(diff)),
                        ("tolerance", num(AGREEMENT_TOL)),
                        ("within_tolerance", agree.into()),
                    ]),
                ),
            ]);
            Ok(CommandOutput::with_status(to_pretty(&v), agree))
        }
    }
}

pub fn compress(input: &Path, strategy: StrategyArg, n_max: usize) -> Result<CommandOutput, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
    let strategy_name = match strategy {
        StrategyArg::BaseExpand => "base-expand",
        StrategyArg::Search => "search",
    };
    let core_strategy = match strategy {
        StrategyArg::BaseExpand => Strategy::BaseExpand,
        StrategyArg::Search => Strategy::Search { n_max },
    };
    match parse_compress_input(&text)? {
        CompressInput::Points(a) => {
            a.group().require_torsion_free()?;
            let map = match core_strategy {
                Strategy::BaseExpand => base_expand_compress(&a)?,
                Strategy::Search { n_max } => min_diameter_search(&a, n_max)?,
            };
            let m = a.len();
            let v = obj([
                ("input", point_set_to_json(&a)),
                ("strategy", strategy_name.into()),
                ("m", m.into()),
                ("map", freiman_map_to_json(&map)),
                ("diameter", map.diameter().into()),
                ("compression_bound", compression_bound_to_json(&compression_bound_for_m(m)?)),
                ("konyagin_lev_bound", num(konyagin_lev_bound(m))),
            ]);
            Ok(CommandOutput::with_status(to_pretty(&v), map.is_verified()))
        }
        CompressInput::Pair(x, y) => {
            let cp = compress_convolution(&x, &y, core_strategy)?;
            let checks = norm_check(&x, &y, &cp.x, &cp.y)?;
            let preserved = checks.holds(NORM_TOL);
            let rows: Vec<Value> = checks
                .rows
                .iter()
                .map(|&(name, a, b, rel)| {
                    obj([
                        ("name", name.into()),
                        ("original", num(a)),
                        ("compressed", num(b)),
                        ("relative_difference", num(rel)),
                    ])
                })
                .collect();
            let m = cp.map.domain().len();
            let v = obj([
                ("strategy", strategy_name.into()),
                ("s", x.len().into()),
                ("f", y.len().into()),
                ("x_shift", cp.x_shift.clone().into()),
                ("y_shift", cp.y_shift.clone().into()),
                ("map", freiman_map_to_json(&cp.map)),
                ("diameter", cp.map.diameter().into()),
                ("n", cp.n.into()),
                ("compression_bound", compression_bound_to_json(&compression_bound_n(x.len(), y.len())?)),
                ("konyagin_lev_bound", num(konyagin_lev_bound(m))),
                ("x_compressed", seq_to_json(&cp.x)),
                ("y_compressed", seq_to_json(&cp.y)),
                ("norms", rows.into()),
                ("norms_preserved", preserved.into()),
            ]);
            Ok(CommandOutput::with_status(to_pretty(&v), preserved && cp.map.is_verified()))
        }
    }
}

/// One line of the Gaussian summary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianSummary {
    pub s: usize,
    pub sigma_star: f64,
    pub log_ratio_star: f64,
    pub bound: f64,
    /// `ln ratio` at `sigma = (s - 1) / 2`.
    pub log_ratio_mid: f64,
}

impl GaussianSummary {
    pub fn meets_bound(&self) -> bool {
        self.log_ratio_mid >= self.bound
    }
}

pub fn gaussian_records(s_list: &[usize], grid: &[f64]) -> Result<Vec<SweepRecord>, CliError> {
    let cells: Vec<(usize, f64)> =
        s_list.iter().flat_map(|&s| grid.iter().map(move |&sigma| (s, sigma))).collect();
    let out: Result<Vec<SweepRecord>, sparseconv_core::Error> = cells
        .par_iter()
        .map(|&(s, sigma)| Ok(gaussian_ratio(&make_pair(s, sigma)?)))
        .collect();
    Ok(out?)
}

pub fn gaussian_summary(s_list: &[usize], lo: f64, hi: f64) -> Result<Vec<GaussianSummary>, CliError> {
    let out: Result<Vec<GaussianSummary>, sparseconv_core::Error> = s_list
        .par_iter()
        .map(|&s| {
            let (sigma_star, log_ratio_star) = if hi > lo {
                let o = optimal_sigma(s, lo, hi, SIGMA_TOL)?;
                (o.sigma_star, o.log_ratio_star)
            } else {
                (lo, gaussian_ratio(&make_pair(s, lo)?).log_ratio)
            };
            let log_ratio_mid = gaussian_ratio(&make_pair(s, (s as f64 - 1.0) / 2.0)?).log_ratio;
            Ok(GaussianSummary { s, sigma_star, log_ratio_star, bound: -(s as f64) / 2.0, log_ratio_mid })
        })
        .collect();
    Ok(out?)
}

fn summary_text(rows: &[GaussianSummary]) -> String {
    let f = crate::json::fmt15;
    let mut out = String::from("# s, sigma_star, ln_ratio_at_sigma_star, -s/2, ln_ratio_at_(s-1)/2, at_least_-s/2\n");
    for r in rows {
        let flag = if r.meets_bound() { "yes" } else { "NO" };
        writeln!(
            out,
            "# {}, {}, {}, {}, {}, {flag}",
            r.s,
            f(r.sigma_star),
            f(r.log_ratio_star),
            f(r.bound),
            f(r.log_ratio_mid)
        )
        .unwrap();
    }
    out
}

/// CSV goes to `out` when given (summary on stdout), otherwise CSV on stdout
/// and the summary on stderr.
pub fn gaussian(s_spec: &str, sigma_spec: &str, out: Option<&Path>) -> Result<CommandOutput, CliError> {
    let s_list = parse_s_list(s_spec)?;
    let grid = parse_sigma_spec(sigma_spec)?;
    let records = gaussian_records(&s_list, &grid)?;
    let summary = summary_text(&gaussian_summary(&s_list, grid[0], *grid.last().expect("nonempty"))?);
    let mut csv_bytes = Vec::new();
    write_csv(&mut csv_bytes, &records)?;
    let csv_text = String::from_utf8(csv_bytes).expect("csv output is UTF-8");
    match out {
        Some(path) => {
            std::fs::write(path, csv_text)?;
            let mut stdout = format!("wrote {} rows to {}\n", records.len(), path.display());
            stdout.push_str(&summary);
            Ok(CommandOutput::ok(stdout))
        }
        None => Ok(CommandOutput { stdout: csv_text, stderr: summary, status: Status::Ok }),
    }
}

pub fn verify(suite: Suite, seed: u64) -> Result<CommandOutput, CliError> {
    let reports = suites::run(suite, seed);
    let mut out = String::new();
    for r in &reports {
        out.push_str(&r.to_string());
    }
    let failed: usize = reports.iter().filter(|r| !r.passed()).count();
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    writeln!(
        out,
        "verify {}: {} suites, {checks} checks, {failed} suites failed",
        suite.name(),
        reports.len()
    )
    .unwrap();
    Ok(CommandOutput::with_status(out, failed == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_rejects_zero() {
        assert!(matches!(bound(0, 2, None, false), Err(CliError::Usage(_))));
        assert!(matches!(bound(2, 2, Some(0), false), Err(CliError::Usage(_))));
    }

    #[test]
    fn summary_flags() {
        let r = GaussianSummary { s: 3, sigma_star: 1.0, log_ratio_star: -1.0, bound: -1.5, log_ratio_mid: -1.2 };
        assert!(r.meets_bound());
        let text = summary_text(&[r]);
        assert!(text.lines().nth(1).unwrap().ends_with("yes"));
    }
}
