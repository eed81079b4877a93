//! Sweep specifications and the CSV writer for the Gaussian experiment.

use std::io::Write;

use sparseconv_core::gauss::SweepRecord;

use crate::json::fmt15;
use crate::CliError;

pub const CSV_HEADER: [&str; 5] = ["s", "sigma", "log_ratio_nat", "log2_ratio", "precision"];

/// Parses `lo:hi:step` into the inclusive grid `lo, lo+step, ..., hi`.
///
/// `(hi - lo) / step` must be an integer up to `1e-9`.
pub fn parse_sigma_spec(spec: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || CliError::Usage(format!("sigma spec {spec:?} must look like lo:hi:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.trim().parse::<f64>().map_err(|_| bad())?;
        if !slot.is_finite() {
            return Err(bad());
        }
    }
    let [lo, hi, step] = v;
    if lo <= 0.0 || hi < lo || step <= 0.0 {
        return Err(CliError::Usage(format!(
            "sigma spec {spec:?} needs 0 < lo <= hi and step > 0"
        )));
    }
    let count = (hi - lo) / step;
    let k = count.round();
    if (count - k).abs() > 1e-9 * count.max(1.0) {
        return Err(CliError::Usage(format!(
            "sigma spec {spec:?}: (hi - lo) / step = {count} is not an integer"
        )));
    }
    if k > 1e6 {
        return Err(CliError::Usage(format!("sigma spec {spec:?} has too many points")));
    }
    Ok((0..=k as usize).map(|i| lo + i as f64 * step).collect())
}

/// Parses a comma-separated list of odd integers `>= 3`.
pub fn parse_s_list(spec: &str) -> Result<Vec<usize>, CliError> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let s: usize = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{part:?} is not a positive integer")))?;
        if s < 3 || s.is_multiple_of(2) {
            return Err(CliError::Usage(format!("s = {s} must be odd and at least 3")));
        }
        out.push(s);
    }
    Ok(out)
}

pub fn write_csv<W: Write>(out: W, records: &[SweepRecord]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.s.to_string(),
            fmt15(r.sigma),
            fmt15(r.log_ratio),
            fmt15(r.log2_ratio()),
            r.precision_used.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
