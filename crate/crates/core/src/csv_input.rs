//! Plain comma-delimited numeric input.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvOptions {
    /// Skip the first row.
    pub has_header: bool,
    pub delimiter: u8,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            has_header: false,
            delimiter: b',',
        }
    }
}

/// Reads one point per row, in file order.
pub fn load_csv(path: impl AsRef<Path>, options: &CsvOptions) -> Result<Dataset> {
    load_csv_with_digest(path, options).map(|(ds, _)| ds)
}

/// Like [`load_csv`], also returning the hex SHA-256 of the file contents.
pub fn load_csv_with_digest(
    path: impl AsRef<Path>,
    options: &CsvOptions,
) -> Result<(Dataset, String)> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let digest = hex::encode(Sha256::digest(&bytes));
    Ok((parse_csv(&bytes, options)?, digest))
}

/// Parses CSV bytes. Errors name the 1-based line and column.
pub fn parse_csv(bytes: &[u8], options: &CsvOptions) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(options.has_header)
        .delimiter(options.delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(bytes);

    let mut coords = Vec::new();
    let mut width = None;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Data(format!("malformed CSV: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(str::is_empty) {
            continue;
        }
        let expected = *width.get_or_insert(record.len());
        if record.len() != expected {
            return Err(Error::Data(format!(
                "row {line} has {} fields, expected {expected}",
                record.len()
            )));
        }
        for (col, field) in record.iter().enumerate() {
            let value: f64 = field.parse().map_err(|_| {
                Error::Data(format!(
                    "row {line}, column {}: {field:?} is not a number",
                    col + 1
                ))
            })?;
            if !value.is_finite() {
                return Err(Error::Data(format!(
                    "row {line}, column {}: {field:?} is not finite",
                    col + 1
                )));
            }
            coords.push(value);
        }
    }
    let Some(p) = width else {
        return Err(Error::Data("CSV input contains no data rows".into()));
    };
    Dataset::from_flat(coords, p)
}
