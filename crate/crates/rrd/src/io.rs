//! Flat CSV files with a header row:
//!
//! - `t,jump`: a sample path
//! - `i,increment`: an increment series
//! - `x,value`: a density estimate
//!
//! Floats use Rust's shortest round-trip formatting, so re-reading yields
//! identical values.

use std::io::{Read, Write};

use rrd_core::{DensityEstimate, IncrementSeries, SamplePath};

use crate::HarnessError;

pub fn write_path<W: Write>(path: &SamplePath, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "jump"])?;
    for (t, x) in path.jump_times.iter().zip(&path.jump_sizes) {
        w.write_record([t.to_string(), x.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_increments<W: Write>(series: &IncrementSeries, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["i", "increment"])?;
    for (i, x) in series.values().iter().enumerate() {
        w.write_record([(i + 1).to_string(), x.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads an `i,increment` file. Rows must be numbered `1..=n` in order.
pub fn read_increments<R: Read>(input: R, delta: f64) -> Result<IncrementSeries, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    let mut values = Vec::new();
    for (row, rec) in r.records().enumerate() {
        let rec = rec?;
        let (i, x) = two_fields(&rec, row)?;
        if i != (row + 1) as f64 {
            return Err(HarnessError::Input(format!(
                "row {}: expected index {}, found {i}",
                row + 1,
                row + 1
            )));
        }
        values.push(x);
    }
    Ok(IncrementSeries::new(delta, values)?)
}

pub fn write_density<W: Write>(est: &DensityEstimate, out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["x", "value"])?;
    for (x, v) in est.grid.nodes().zip(&est.values) {
        w.write_record([x.to_string(), v.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Reads `x,value` rows back as pairs.
pub fn read_density<R: Read>(input: R) -> Result<Vec<(f64, f64)>, HarnessError> {
    let mut r = csv::Reader::from_reader(input);
    r.records()
        .enumerate()
        .map(|(row, rec)| two_fields(&rec?, row))
        .collect()
}

fn two_fields(rec: &csv::StringRecord, row: usize) -> Result<(f64, f64), HarnessError> {
    let field = |k: usize| -> Result<f64, HarnessError> {
        let s = rec.get(k).ok_or_else(|| {
            HarnessError::Input(format!(
                "row {}: expected 2 fields, found {}",
                row + 1,
                rec.len()
            ))
        })?;
        s.trim().parse().map_err(|_| {
            HarnessError::Input(format!("row {}: cannot parse {s:?} as a number", row + 1))
        })
    };
    Ok((field(0)?, field(1)?))
}
