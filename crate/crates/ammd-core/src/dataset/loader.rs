//! Sequence file parsing and canonical-form writing.
//!
//! Canonical format: one frame per line, `3·J` decimal reals, comma- or
//! whitespace-delimited (auto-detected), `#` comment lines ignored. Adapters
//! cover dataset-native layouts: an optional column selection picks and
//! reorders raw columns, and a joint-per-line mode groups `J` consecutive
//! lines into one frame.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::posture::{Posture, PostureSequence};
use crate::scalar::Real;

/// Describes how a sequence file maps onto `D = 3·J` coordinates per frame.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceFormat {
    /// Number of skeleton joints `J`.
    pub joints: usize,
    /// Raw-column indices that form the coordinates, in output order.
    /// `None` takes all columns as-is.
    pub columns: Option<Vec<usize>>,
    /// Dataset-native layout with one joint per line (`J` lines per frame);
    /// each line contributes 3 coordinates.
    pub joint_per_line: bool,
}

impl SequenceFormat {
    /// Canonical layout: one frame per line, exactly `3·J` columns.
    pub fn canonical(joints: usize) -> Self {
        Self {
            joints,
            columns: None,
            joint_per_line: false,
        }
    }
}

fn tokens(line: &str) -> Vec<&str> {
    if line.contains(',') {
        line.split(',').map(str::trim).filter(|t| !t.is_empty()).collect()
    } else {
        line.split_whitespace().collect()
    }
}

fn parse_values<R: Real>(path: &str, line_no: usize, line: &str) -> Result<Vec<R>> {
    tokens(line)
        .into_iter()
        .map(|tok| {
            let value: R = tok.parse().map_err(|_| Error::Parse {
                path: path.to_string(),
                line: line_no,
                message: format!("non-numeric token '{tok}'"),
            })?;
            if !value.is_finite() {
                return Err(Error::Parse {
                    path: path.to_string(),
                    line: line_no,
                    message: format!("non-finite value '{tok}'"),
                });
            }
            Ok(value)
        })
        .collect()
}

fn select_columns<R: Real>(
    path: &str,
    line_no: usize,
    raw: Vec<R>,
    columns: &Option<Vec<usize>>,
    expected: usize,
) -> Result<Vec<R>> {
    let selected = match columns {
        None => raw,
        Some(cols) => cols
            .iter()
            .map(|&c| {
                raw.get(c).copied().ok_or_else(|| Error::Parse {
                    path: path.to_string(),
                    line: line_no,
                    message: format!(
                        "column index {c} out of range for {} columns",
                        raw.len()
                    ),
                })
            })
            .collect::<Result<Vec<R>>>()?,
    };
    if selected.len() != expected {
        return Err(Error::Parse {
            path: path.to_string(),
            line: line_no,
            message: format!("expected {expected} columns, found {}", selected.len()),
        });
    }
    Ok(selected)
}

/// Parse a sequence file per the format descriptor. Errors cite 1-based line
/// numbers.
pub fn load_sequence_file<R: Real>(
    path: &Path,
    format: &SequenceFormat,
) -> Result<PostureSequence<R>> {
    let path_str = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path_str.clone(),
        source,
    })?;

    // (line number, content) with comments and blank lines dropped
    let data_lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
        .collect();
    if data_lines.is_empty() {
        return Err(Error::Parse {
            path: path_str,
            line: 0,
            message: "no frames found".into(),
        });
    }

    let dim = 3 * format.joints;
    let mut postures = Vec::new();
    if format.joint_per_line {
        let per_joint = 3;
        if !data_lines.len().is_multiple_of(format.joints) {
            let (last_line, _) = *data_lines.last().unwrap();
            return Err(Error::Parse {
                path: path_str,
                line: last_line,
                message: format!(
                    "{} data lines is not a multiple of {} joints",
                    data_lines.len(),
                    format.joints
                ),
            });
        }
        for frame in data_lines.chunks(format.joints) {
            let mut coords = Vec::with_capacity(dim);
            for &(line_no, line) in frame {
                let raw = parse_values::<R>(&path_str, line_no, line)?;
                let joint = select_columns(&path_str, line_no, raw, &format.columns, per_joint)?;
                coords.extend(joint);
            }
            postures.push(Posture::new(coords)?);
        }
    } else {
        for &(line_no, line) in &data_lines {
            let raw = parse_values::<R>(&path_str, line_no, line)?;
            let coords = select_columns(&path_str, line_no, raw, &format.columns, dim)?;
            postures.push(Posture::new(coords)?);
        }
    }
    PostureSequence::new(path_str, postures)
}

/// Write a sequence in canonical form: one frame per line, coordinates in
/// shortest round-trip decimal form, single-space separated, trailing newline.
pub fn write_sequence_file<R: Real>(seq: &PostureSequence<R>, path: &Path) -> Result<()> {
    let mut out = String::new();
    for p in seq.postures() {
        let mut first = true;
        for c in p.coords() {
            if !first {
                out.push(' ');
            }
            out.push_str(&format!("{c}"));
            first = false;
        }
        out.push('\n');
    }
    fs::write(path, out).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}
