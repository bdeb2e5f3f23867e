//! Output formats and destinations.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use normord::coeff::{format_scalar, Scalar};

use crate::{Failure, Format, OutputArgs};

/// One command result in every format it supports.
pub struct Artifact {
    /// `false` when the command ran a check that did not hold.
    pub ok: bool,
    pub json: String,
    /// Header row first.
    pub csv: Option<Vec<Vec<String>>>,
    pub pretty: String,
}

pub fn cells(row: &[Scalar]) -> Vec<String> {
    row.iter().map(format_scalar).collect()
}

/// Header `label, 0, 1, ..` and rows prefixed with their index.
pub fn indexed_table(label: &str, width: usize, rows: &[Vec<String>]) -> Vec<Vec<String>> {
    let mut out = vec![std::iter::once(label.to_string()).chain((0..width).map(|k| k.to_string())).collect()];
    for (n, row) in rows.iter().enumerate() {
        let mut line = vec![n.to_string()];
        line.extend((0..width).map(|k| row.get(k).cloned().unwrap_or_else(|| "0".into())));
        out.push(line);
    }
    out
}

/// Right-aligned columns, without the header row.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..rows.iter().map(Vec::len).max().unwrap_or(0))
        .map(|k| rows.iter().filter_map(|r| r.get(k)).map(|c| c.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

fn csv_text(rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Pretty => "txt",
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Writes to `--output`, else into the default directory, else to stdout.
pub fn emit(a: &Artifact, out: &OutputArgs, name: &str, default_dir: Option<PathBuf>) -> Result<(), Failure> {
    let mut text = match out.format {
        Format::Json => a.json.clone(),
        Format::Pretty => a.pretty.clone(),
        Format::Csv => {
            let rows = a
                .csv
                .as_ref()
                .ok_or_else(|| Failure::Input(format!("{name} has no csv output; use json or pretty")))?;
            csv_text(rows)?
        }
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    let target = match (&out.output, default_dir) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(dir.join(format!("{name}.{}", extension(out.format)))),
        (None, None) => None,
    };
    match target {
        Some(path) => {
            write_file(&path, &text)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}
