//! The half-space system input file: `{"vectors": [[int, ...], ...], "offsets": [int, ...]}`.

use std::path::Path;

use polymult_core::{Error as CoreError, HalfSpaceSystem};
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum SystemFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing or non-array field `{0}`")]
    Field(&'static str),
    #[error("ragged rows: row {row} has {len} entries, expected {expected}")]
    Ragged { row: usize, len: usize, expected: usize },
    #[error("non-integer entry at {location}: {value}")]
    NonInteger { location: String, value: String },
    #[error("vectors do not sum to zero: column {column} sums to {sum}")]
    NonZeroSum { column: usize, sum: i64 },
    #[error("invalid system: {0}")]
    Invalid(CoreError),
}

impl SystemFileError {
    /// Schema violations are parse errors; the rest are hypothesis violations.
    pub fn is_parse_error(&self) -> bool {
        !matches!(self, SystemFileError::NonZeroSum { .. } | SystemFileError::Invalid(_))
    }
}

fn integer(v: &Value, location: impl FnOnce() -> String) -> Result<i64, SystemFileError> {
    v.as_i64().ok_or_else(|| SystemFileError::NonInteger {
        location: location(),
        value: v.to_string(),
    })
}

pub fn parse_system(text: &str) -> Result<HalfSpaceSystem, SystemFileError> {
    let doc: Value = serde_json::from_str(text)?;
    let rows = doc
        .get("vectors")
        .and_then(Value::as_array)
        .ok_or(SystemFileError::Field("vectors"))?;
    let offsets = doc
        .get("offsets")
        .and_then(Value::as_array)
        .ok_or(SystemFileError::Field("offsets"))?;

    let expected = rows.first().and_then(Value::as_array).map_or(0, Vec::len);
    let mut vectors = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or(SystemFileError::Field("vectors"))?;
        if row.len() != expected {
            return Err(SystemFileError::Ragged {
                row: i,
                len: row.len(),
                expected,
            });
        }
        vectors.push(
            row.iter()
                .enumerate()
                .map(|(j, v)| integer(v, || format!("vectors[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let offsets = offsets
        .iter()
        .enumerate()
        .map(|(i, v)| integer(v, || format!("offsets[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;

    HalfSpaceSystem::new(vectors, offsets).map_err(|e| match e {
        CoreError::NonZeroSum { column, sum } => SystemFileError::NonZeroSum { column, sum },
        CoreError::RaggedRow { row, len, expected } => SystemFileError::Ragged { row, len, expected },
        other => SystemFileError::Invalid(other),
    })
}

pub fn read_system(path: &Path) -> Result<HalfSpaceSystem, SystemFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| SystemFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text)
}
