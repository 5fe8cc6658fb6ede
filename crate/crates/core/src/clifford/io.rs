//! On-disk field format: a JSON header next to a raw little-endian payload.
//!
//! The payload lives at the header path with extension `bin` and stores each listed channel
//! as interleaved `(re, im)` f64 pairs in row-major order, channels back to back.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{GridField, GridGeometry};
use crate::error::{Error, Result};

pub const DTYPE: &str = "f64-complex-interleaved";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub m: usize,
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
    pub channels: Vec<usize>,
    pub dtype: String,
    pub endianness: String,
    pub layout: String,
}

pub fn payload_path(header: &Path) -> PathBuf {
    header.with_extension("bin")
}

pub fn write_field(field: &GridField, header_path: &Path) -> Result<()> {
    let geo = field.geometry();
    let header = FieldHeader {
        m: geo.dim(),
        shape: geo.shape.clone(),
        spacing: geo.spacing.clone(),
        origin: geo.origin.clone(),
        channels: field.channel_indices(),
        dtype: DTYPE.to_string(),
        endianness: "little".to_string(),
        layout: "row-major".to_string(),
    };
    let text = serde_json::to_string_pretty(&header).map_err(|e| Error::Format(e.to_string()))?;
    fs::write(header_path, text + "\n")?;
    let mut out = BufWriter::new(fs::File::create(payload_path(header_path))?);
    for (_, data) in field.channels() {
        for c in data {
            out.write_all(&c.re.to_le_bytes())?;
            out.write_all(&c.im.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn read_field(header_path: &Path) -> Result<GridField> {
    let text = fs::read_to_string(header_path)?;
    let header: FieldHeader = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
    if header.dtype != DTYPE || header.endianness != "little" || header.layout != "row-major" {
        return Err(Error::Format(format!(
            "unsupported encoding {}/{}/{}",
            header.dtype, header.endianness, header.layout
        )));
    }
    if header.m != header.shape.len() {
        return Err(Error::DimensionMismatch { left: header.m, right: header.shape.len() });
    }
    let geo = GridGeometry::new(header.shape, header.spacing, header.origin)?;
    let n = geo.len();
    let bytes = fs::read(payload_path(header_path))?;
    if bytes.len() != header.channels.len() * n * 16 {
        return Err(Error::Format(format!(
            "payload has {} bytes, expected {}",
            bytes.len(),
            header.channels.len() * n * 16
        )));
    }
    let mut field = GridField::empty(geo);
    for (c, &blade) in header.channels.iter().enumerate() {
        let block = &bytes[c * n * 16..(c + 1) * n * 16];
        let data = block
            .chunks_exact(16)
            .map(|b| {
                Complex64::new(
                    f64::from_le_bytes(b[..8].try_into().unwrap()),
                    f64::from_le_bytes(b[8..].try_into().unwrap()),
                )
            })
            .collect();
        field.set_channel(blade, data)?;
    }
    Ok(field)
}
