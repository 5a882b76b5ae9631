//! File formats. Everything is CSV with '#' comment lines:
//!
//! * curve: header `k,V`, one row per dimension, k contiguous from 0;
//! * x,y sample: header `x,y`;
//! * dataset: header row of column names, target picked by name, the
//!   remaining columns taken as features in file order;
//! * points / covariance: headerless numeric rows of equal width;
//! * value list: one number per line, no header.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::CliError;

fn input(message: impl Into<String>) -> CliError {
    CliError::Input(message.into())
}

fn reader(path: &Path, has_headers: bool) -> Result<csv::Reader<fs::File>, CliError> {
    ReaderBuilder::new()
        .has_headers(has_headers)
        .comment(Some(b'#'))
        .trim(Trim::All)
        .from_path(path)
        .map_err(|err| input(format!("cannot read {}: {err}", path.display())))
}

fn record_line(record: &StringRecord) -> u64 {
    record.position().map(|p| p.line()).unwrap_or(0)
}

fn parse_field(path: &Path, record: &StringRecord, index: usize, what: &str) -> Result<f64, CliError> {
    let raw = record.get(index).unwrap_or("");
    let value: f64 = raw.parse().map_err(|_| {
        input(format!(
            "{}:{}: {what} must be a number, got {raw:?}",
            path.display(),
            record_line(record)
        ))
    })?;
    if !value.is_finite() {
        return Err(input(format!(
            "{}:{}: {what} must be finite, got {raw}",
            path.display(),
            record_line(record)
        )));
    }
    Ok(value)
}

/// Reads the curve format: header `k,V`, dimensions 0..=K in order.
pub fn read_curve(path: &Path) -> Result<Vec<f64>, CliError> {
    let mut reader = reader(path, true)?;
    let headers = reader
        .headers()
        .map_err(|err| input(format!("{}: {err}", path.display())))?;
    if headers.len() != 2 || &headers[0] != "k" || &headers[1] != "V" {
        return Err(input(format!(
            "{}: expected header \"k,V\", got {:?}",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|err| input(format!("{}: {err}", path.display())))?;
        let line = record_line(&record);
        let k_raw = record.get(0).unwrap_or("");
        let k: usize = k_raw.parse().map_err(|_| {
            input(format!(
                "{}:{line}: k must be a non-negative integer, got {k_raw:?}",
                path.display()
            ))
        })?;
        if k != values.len() {
            return Err(input(format!(
                "{}:{line}: expected k = {} (contiguous from 0), got {k}",
                path.display(),
                values.len()
            )));
        }
        values.push(parse_field(path, &record, 1, "V")?);
    }
    if values.is_empty() {
        return Err(input(format!("{}: curve has no data rows", path.display())));
    }
    Ok(values)
}

/// Reads a two-column sample with header `x,y`.
pub fn read_xy(path: &Path) -> Result<(Vec<f64>, Vec<f64>), CliError> {
    let mut reader = reader(path, true)?;
    let headers = reader
        .headers()
        .map_err(|err| input(format!("{}: {err}", path.display())))?;
    if headers.len() != 2 || &headers[0] != "x" || &headers[1] != "y" {
        return Err(input(format!(
            "{}: expected header \"x,y\", got {:?}",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|err| input(format!("{}: {err}", path.display())))?;
        xs.push(parse_field(path, &record, 0, "x")?);
        ys.push(parse_field(path, &record, 1, "y")?);
    }
    if xs.is_empty() {
        return Err(input(format!("{}: sample has no data rows", path.display())));
    }
    Ok((xs, ys))
}

/// Reads a dataset with named columns: the target column by name, every
/// other column as a feature in file order.
pub fn read_dataset(path: &Path, target: &str) -> Result<(Vec<f64>, Vec<Vec<f64>>), CliError> {
    let mut reader = reader(path, true)?;
    let headers = reader
        .headers()
        .map_err(|err| input(format!("{}: {err}", path.display())))?
        .clone();
    let target_index = headers.iter().position(|name| name == target).ok_or_else(|| {
        input(format!(
            "{}: no column named {target:?}; available: {}",
            path.display(),
            headers.iter().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let mut targets = Vec::new();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|err| input(format!("{}: {err}", path.display())))?;
        let mut row = Vec::with_capacity(headers.len() - 1);
        for index in 0..headers.len() {
            let value = parse_field(path, &record, index, &headers[index])?;
            if index == target_index {
                targets.push(value);
            } else {
                row.push(value);
            }
        }
        rows.push(row);
    }
    if targets.is_empty() {
        return Err(input(format!("{}: dataset has no data rows", path.display())));
    }
    Ok((targets, rows))
}

/// Reads headerless numeric rows of equal width (points, matrices).
pub fn read_float_rows(path: &Path, what: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let mut reader = reader(path, false)?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|err| input(format!("{}: {err}", path.display())))?;
        let mut row = Vec::with_capacity(record.len());
        for index in 0..record.len() {
            row.push(parse_field(path, &record, index, "entry")?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(input(format!("{}: {what} file has no rows", path.display())));
    }
    Ok(rows)
}

/// Reads one number per line; blank lines and '#' comments are skipped.
pub fn read_values(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|err| input(format!("cannot read {}: {err}", path.display())))?;
    let mut values = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| {
            input(format!(
                "{}:{}: expected a number, got {line:?}",
                path.display(),
                index + 1
            ))
        })?;
        values.push(value);
    }
    if values.is_empty() {
        return Err(input(format!("{}: no values found", path.display())));
    }
    Ok(values)
}

/// Renders the curve format. Values print through f64's shortest
/// round-trip formatting, so re-reading reproduces them bit for bit.
pub fn curve_csv(values: &[f64]) -> String {
    let mut text = String::from("k,V\n");
    for (k, value) in values.iter().enumerate() {
        let _ = writeln!(text, "{k},{value}");
    }
    text
}

/// Writes a curve to the given path, or to stdout when none is given.
pub fn write_curve(values: &[f64], output: Option<&Path>) -> Result<(), CliError> {
    let text = curve_csv(values);
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|err| input(format!("cannot write {}: {err}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
