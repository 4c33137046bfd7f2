//! Line-oriented text format for dense tensors.
//!
//! ```text
//! mten 1
//! order 3
//! dim 2
//! storage dense
//! 4 -1
//! -1 -1
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. A `dense` payload
//! holds exactly `dim^order` whitespace-separated values in row-major order.
//! A `coo` payload has one entry per line: `order` 1-based indices followed
//! by the value; unlisted entries are zero and repeated indices are rejected.
//! Values are written with the shortest representation that parses back to
//! the same `f64`.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use mtensor::{DenseTensor, MultiIndex};
use thiserror::Error;

pub const FORMAT_TAG: &str = "mten";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Storage {
    Dense,
    Coo,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
    #[error("line {line}: duplicate coo index {index}")]
    DuplicateIndex { line: usize, index: MultiIndex },
    #[error(transparent)]
    Tensor(#[from] mtensor::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn keyed<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    key: &'static str,
) -> Result<(usize, &'a str), FormatError> {
    let (no, line) = lines.next().ok_or(FormatError::Truncated(key))?;
    let mut parts = line.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(k), Some(v), None) if k == key => Ok((no, v)),
        _ => Err(syntax(no, format!("expected `{key} <value>`"))),
    }
}

fn parse_usize(no: usize, v: &str) -> Result<usize, FormatError> {
    v.parse().map_err(|_| syntax(no, format!("invalid integer `{v}`")))
}

fn parse_f64(no: usize, v: &str) -> Result<f64, FormatError> {
    v.parse().map_err(|_| syntax(no, format!("invalid number `{v}`")))
}

pub fn parse_tensor(text: &str) -> Result<DenseTensor, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, version) = keyed(&mut lines, FORMAT_TAG)?;
    if version != FORMAT_VERSION.to_string() {
        return Err(syntax(no, format!("unsupported format version `{version}`")));
    }
    let (no, v) = keyed(&mut lines, "order")?;
    let order = parse_usize(no, v)?;
    let (no, v) = keyed(&mut lines, "dim")?;
    let dim = parse_usize(no, v)?;
    let (no, v) = keyed(&mut lines, "storage")?;
    let storage = match v {
        "dense" => Storage::Dense,
        "coo" => Storage::Coo,
        other => return Err(syntax(no, format!("unknown storage `{other}`"))),
    };

    match storage {
        Storage::Dense => {
            let mut values = Vec::new();
            for (no, line) in lines {
                for tok in line.split_whitespace() {
                    values.push(parse_f64(no, tok)?);
                }
            }
            Ok(DenseTensor::new(order, dim, values)?)
        }
        Storage::Coo => {
            let mut t = DenseTensor::filled(order, dim, 0.0)?.into_entries();
            let shape = DenseTensor::filled(order, dim, 0.0)?;
            let mut seen = HashSet::new();
            for (no, line) in lines {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != order + 1 {
                    return Err(syntax(no, format!("expected {order} indices and a value")));
                }
                let idx = toks[..order]
                    .iter()
                    .map(|s| parse_usize(no, s))
                    .collect::<Result<Vec<_>, _>>()?;
                let idx = MultiIndex::new(idx);
                let offset = shape
                    .offset_of(&idx)
                    .map_err(|_| syntax(no, format!("index {idx} out of range")))?;
                if !seen.insert(offset) {
                    return Err(FormatError::DuplicateIndex { line: no, index: idx });
                }
                t[offset] = parse_f64(no, toks[order])?;
            }
            Ok(DenseTensor::new(order, dim, t)?)
        }
    }
}

pub fn read_tensor(path: &Path) -> Result<DenseTensor, FormatError> {
    parse_tensor(&std::fs::read_to_string(path)?)
}

pub fn render_tensor(t: &DenseTensor, storage: Storage) -> String {
    let mut out = String::new();
    let mode = match storage {
        Storage::Dense => "dense",
        Storage::Coo => "coo",
    };
    let _ = writeln!(
        out,
        "{FORMAT_TAG} {FORMAT_VERSION}\norder {}\ndim {}\nstorage {mode}",
        t.order(),
        t.dim()
    );
    match storage {
        Storage::Dense => {
            for fiber in t.entries().chunks(t.dim()) {
                let row: Vec<String> = fiber.iter().map(|v| v.to_string()).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        Storage::Coo => {
            for (offset, v) in t.entries().iter().enumerate() {
                if *v != 0.0 {
                    let idx = t.index_of(offset);
                    let idx: Vec<String> = idx.components().iter().map(|i| i.to_string()).collect();
                    let _ = writeln!(out, "{} {v}", idx.join(" "));
                }
            }
        }
    }
    out
}

pub fn write_tensor(path: &Path, t: &DenseTensor, storage: Storage) -> Result<(), FormatError> {
    std::fs::write(path, render_tensor(t, storage))?;
    Ok(())
}
