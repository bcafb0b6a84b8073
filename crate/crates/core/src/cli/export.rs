//! CSV, PGM and JSON writers.

use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

/// Min and max of `log₁₀(f + 1)` used to scale an image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImageNormalization {
    pub min: f64,
    pub max: f64,
}

/// Writes `header` then one row per record. Floats use the shortest
/// representation that round-trips.
pub fn write_csv<W: Write>(out: W, header: &[String], rows: impl IntoIterator<Item = Vec<String>>) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()
}

/// Coordinate column names `x1 … x{d}`, skipping the 0-based `skip`.
pub fn coordinate_header(d: usize, skip: Option<usize>) -> Vec<String> {
    (0..d)
        .filter(|&i| Some(i) != skip)
        .map(|i| format!("x{}", i + 1))
        .collect()
}

/// Reads the columns whose header starts with `x`, row-major.
pub fn read_coordinates(path: &Path) -> io::Result<(usize, Vec<f64>)> {
    let mut r = csv::Reader::from_path(path)?;
    let cols: Vec<usize> = r
        .headers()?
        .iter()
        .enumerate()
        .filter(|(_, h)| h.starts_with('x'))
        .map(|(i, _)| i)
        .collect();
    if cols.is_empty() {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "no x-columns in header"));
    }
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        for &c in &cols {
            let v: f64 = rec[c]
                .parse()
                .map_err(|e| io::Error::new(io::ErrorKind::InvalidData, format!("column {c}: {e}")))?;
            out.push(v);
        }
    }
    Ok((cols.len(), out))
}

/// Binary 16-bit PGM (`P5`, maxval 65535, big-endian) of `log₁₀(f + 1)`,
/// min-max normalized. A constant image maps to 0.
pub fn write_pgm<W: Write>(mut out: W, rows: usize, cols: usize, values: &[f64]) -> io::Result<ImageNormalization> {
    assert_eq!(rows * cols, values.len(), "image layout does not match value count");
    let t: Vec<f64> = values.iter().map(|f| (f + 1.0).log10()).collect();
    let min = t.iter().copied().fold(f64::INFINITY, f64::min);
    let max = t.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = max - min;
    write!(out, "P5\n{cols} {rows}\n65535\n")?;
    let mut buf = Vec::with_capacity(2 * t.len());
    for v in t {
        let level = if span > 0.0 { ((v - min) / span * 65535.0).round() as u16 } else { 0 };
        buf.extend_from_slice(&level.to_be_bytes());
    }
    out.write_all(&buf)?;
    out.flush()?;
    Ok(ImageNormalization { min, max })
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")
}
