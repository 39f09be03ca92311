//! CSV ingestion: one column per component, one row per timestamp, with an
//! optional header detected by whether the first cell parses as a number.

use std::io::{Read, Write};
use std::path::Path;

use super::MultivariateTimeSeries;
use crate::error::{Error, Result};

pub fn read_csv<R: Read>(reader: R) -> Result<MultivariateTimeSeries> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut columns: Vec<Vec<f64>> = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(row + 1, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if row == 0 && record.get(0).is_some_and(|c| c.parse::<f64>().is_err()) {
            columns = vec![Vec::new(); record.len()];
            continue;
        }
        if columns.is_empty() {
            columns = vec![Vec::new(); record.len()];
        }
        if record.len() != columns.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} fields, found {}", columns.len(), record.len()),
            });
        }
        for (col, cell) in record.iter().enumerate() {
            let value = cell.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("non-numeric cell `{cell}` in column {}", col + 1),
            })?;
            columns[col].push(value);
        }
    }
    if columns.is_empty() {
        return Err(Error::NoComponents);
    }
    MultivariateTimeSeries::from_columns(columns)
}

pub fn read_csv_path(path: impl AsRef<Path>) -> Result<MultivariateTimeSeries> {
    read_csv(std::fs::File::open(path)?)
}

/// Writes `y1,y2,...` followed by one row per timestamp.
pub fn write_csv<W: Write>(mts: &MultivariateTimeSeries, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let m = mts.num_components();
    w.write_record((1..=m).map(|i| format!("y{i}")))?;
    for t in 0..mts.len() {
        w.write_record(
            mts.components()
                .iter()
                .map(|c| c.values()[t].to_string()),
        )?;
    }
    w.flush()?;
    Ok(())
}
