//! Plain-text data files: one real number per line, `#` comments and blank
//! lines ignored.

use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: cannot parse {text:?} as a number")]
    Malformed { line: usize, text: String },
}

pub fn parse_values(text: &str) -> Result<Vec<f64>, DataError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| DataError::Malformed {
            line: k + 1,
            text: line.to_string(),
        })?;
        if !v.is_finite() {
            return Err(DataError::Malformed {
                line: k + 1,
                text: line.to_string(),
            });
        }
        out.push(v);
    }
    Ok(out)
}

pub fn read_values(path: &Path) -> Result<Vec<f64>, DataError> {
    let text = std::fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_values(&text)
}

pub fn format_values(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 20);
    for v in values {
        s.push_str(&v.to_string());
        s.push('\n');
    }
    s
}
