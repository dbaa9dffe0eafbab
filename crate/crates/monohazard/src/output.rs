//! CSV and JSON encodings of power-study results.
//!
//! CSV columns, in order: `label, model_params, n, mc_reps, test_name,
//! alpha, reject_rate, mc_se, mean_h_start, mean_h_crit, mean_T, failures`.
//! Bandwidth and statistic means are empty for the global sign test. JSON is
//! an array of objects with the same fields plus `mean_h_ratio` and the full
//! `config`.

use std::io::{self, Write};

use serde::Deserialize;

use crate::harness::PowerStudyResult;

pub const CSV_COLUMNS: [&str; 12] = [
    "label",
    "model_params",
    "n",
    "mc_reps",
    "test_name",
    "alpha",
    "reject_rate",
    "mc_se",
    "mean_h_start",
    "mean_h_crit",
    "mean_T",
    "failures",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, thiserror::Error)]
pub enum OutputError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// One CSV row read back.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct CsvRow {
    pub label: String,
    pub model_params: String,
    pub n: usize,
    pub mc_reps: usize,
    pub test_name: String,
    pub alpha: f64,
    pub reject_rate: f64,
    pub mc_se: f64,
    pub mean_h_start: Option<f64>,
    pub mean_h_crit: Option<f64>,
    #[serde(rename = "mean_T")]
    pub mean_t: Option<f64>,
    pub failures: usize,
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn emit_results<W: Write>(
    results: &[PowerStudyResult],
    format: Format,
    mut out: W,
) -> Result<(), OutputError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in results {
                w.write_record([
                    r.label.clone(),
                    r.model_params.clone(),
                    r.n.to_string(),
                    r.mc_reps.to_string(),
                    r.test_name.clone(),
                    r.alpha.to_string(),
                    r.reject_rate.to_string(),
                    r.mc_se.to_string(),
                    opt(r.mean_h_start),
                    opt(r.mean_h_crit),
                    opt(r.mean_t),
                    r.failures.to_string(),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, results)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CsvRow>, OutputError> {
    let mut rdr = csv::Reader::from_reader(input);
    Ok(rdr.deserialize().collect::<Result<Vec<CsvRow>, _>>()?)
}
