//! Sample files: CSV with a version comment line, or JSON lines.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use isomorph::diagnostics::format_number;
use isomorph::Output;
use serde::Serialize;

use crate::config::{SampleFormat, FORMAT_VERSION};

#[derive(Serialize)]
struct JsonRow<'a> {
    format_version: u32,
    iter: usize,
    beta: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<&'a [f64]>,
}

pub fn header(k: usize, emit_gamma: bool) -> Vec<String> {
    let mut cols = vec!["iter".to_string()];
    cols.extend((1..=k).map(|i| format!("beta_{i}")));
    if emit_gamma {
        cols.extend((1..=k).map(|i| format!("gamma_{i}")));
    }
    cols
}

pub fn write_csv<W: Write>(mut w: W, out: &Output, k: usize, emit_gamma: bool) -> std::io::Result<()> {
    writeln!(w, "# format_version={FORMAT_VERSION}")?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(header(k, emit_gamma))?;
    for (row, iter) in out.iterations.iter().enumerate() {
        let mut record = vec![iter.to_string()];
        record.extend(out.beta_draws[row].iter().map(|&x| format_number(x)));
        if emit_gamma {
            record.extend(out.gamma_draws[row].iter().map(|&x| format_number(x)));
        }
        csv.write_record(&record)?;
    }
    csv.flush()
}

pub fn write_jsonl<W: Write>(mut w: W, out: &Output, emit_gamma: bool) -> std::io::Result<()> {
    for (row, &iter) in out.iterations.iter().enumerate() {
        let line = JsonRow {
            format_version: FORMAT_VERSION,
            iter,
            beta: &out.beta_draws[row],
            gamma: emit_gamma.then(|| out.gamma_draws[row].as_slice()),
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    w.flush()
}

pub fn write_samples(
    path: &Path,
    format: SampleFormat,
    out: &Output,
    k: usize,
    emit_gamma: bool,
) -> std::io::Result<()> {
    let w = BufWriter::new(create(path)?);
    match format {
        SampleFormat::Csv => write_csv(w, out, k, emit_gamma),
        SampleFormat::Jsonl => write_jsonl(w, out, emit_gamma),
    }
}

/// Creates `path`, making missing parent directories first.
pub fn create(path: &Path) -> std::io::Result<File> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    File::create(path)
}
