//! Comparison of measured `a_n` against `2^(5/6) sqrt(n)` and against the
//! separatrix crossings through `a_n ~ 2^(1/3) b`.
//!
//! The threshold `a_n`, where the maxima count steps from `n` to `n + 1`,
//! belongs to the solution that rides the separatrix between the bands with
//! asymptotes `2n - 3/2` and `2n + 1/2`. That separatrix crosses the
//! diagonal at `b_{n-1}`, so rows pair `a_n` with `b_{n-1}`.

use std::io::Write;

use oscillode_core::averaging::{a_from_crossing, predict_a_n};
use oscillode_core::Error as NumericError;

use crate::config::Settings;
use crate::error::Result;
use crate::formats::fmt_real;
use crate::parallel::{par_find_a, par_find_b};

pub const REPORT_HEADER: [&str; 7] = [
    "n",
    "a_n_measured",
    "a_n_predicted",
    "b_n_measured",
    "ratio",
    "residual",
    "b_index",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub n: u32,
    pub a_n_measured: f64,
    pub a_n_predicted: f64,
    /// Separatrix crossing `b_m` with `m = b_index`.
    pub b_n_measured: f64,
    pub b_index: u32,
    /// `a_n_measured / a_n_predicted`.
    pub ratio: f64,
    /// `a_n_measured - 2^(1/3) b_n_measured`.
    pub residual: f64,
}

/// Index of the separatrix crossing paired with `a_n`.
pub fn paired_b_index(n: u32) -> u32 {
    n - 1
}

/// One row per `n` in `1..=n_max`, in ascending order. Failed rows carry
/// their error without aborting the others.
pub fn build_report(n_max: u32, settings: &Settings) -> Result<Vec<(u32, Result<ReportRow, NumericError>)>> {
    if !(1..=100).contains(&n_max) {
        return Err(crate::Error::Invalid(format!("n_max must lie in 1..=100, got {n_max}")));
    }
    let ns: Vec<u32> = (1..=n_max).collect();
    let ms: Vec<u32> = ns.iter().map(|&n| paired_b_index(n)).collect();
    let cfg = &settings.solver;
    let a = par_find_a(&ns, cfg, settings.width, settings.workers);
    let b = par_find_b(&ms, cfg, settings.width, settings.workers);
    Ok(ns
        .iter()
        .zip(a.into_iter().zip(b))
        .map(|(&n, (a, b))| {
            let row = a.and_then(|a| {
                let b = b?;
                let predicted = predict_a_n(n);
                Ok(ReportRow {
                    n,
                    a_n_measured: a.value,
                    a_n_predicted: predicted,
                    b_n_measured: b.value,
                    b_index: b.index,
                    ratio: a.value / predicted,
                    residual: a.value - a_from_crossing(b.value),
                })
            });
            (n, row)
        })
        .collect())
}

pub fn write_report<W: Write>(w: W, rows: &[ReportRow]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(REPORT_HEADER)?;
    for r in rows {
        out.write_record([
            r.n.to_string(),
            fmt_real(r.a_n_measured),
            fmt_real(r.a_n_predicted),
            fmt_real(r.b_n_measured),
            fmt_real(r.ratio),
            fmt_real(r.residual),
            r.b_index.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}
