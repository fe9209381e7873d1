//! Reading element lists from inline values, CSV and JSON-lines files.

use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::semigroup::{Carrier, Element};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: malformed literal {literal:?}: {reason}")]
    Literal {
        line: usize,
        column: usize,
        literal: String,
        reason: String,
    },
    #[error("line {line}, column {column}: vector {literal:?} has {found} components, carrier dimension is {expected}")]
    Dimension {
        line: usize,
        column: usize,
        literal: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {reason}")]
    Structure { line: usize, reason: String },
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
    #[error("no elements in input")]
    Empty,
    #[error("odd number of elements ({0}); pairing needs an even count")]
    OddCount(usize),
}

/// Where the elements come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSource {
    /// Comma-separated literals given on the command line.
    Values(String),
    Csv(PathBuf),
    JsonLines(PathBuf),
}

impl InputSource {
    /// Picks the file format from the extension, falling back to the first
    /// non-blank character (`[` means JSON-lines).
    pub fn from_path(path: &Path) -> Result<Self, IngestError> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase);
        match ext.as_deref() {
            Some("csv") => Ok(InputSource::Csv(path.to_path_buf())),
            Some("jsonl" | "ndjson" | "json") => Ok(InputSource::JsonLines(path.to_path_buf())),
            _ => {
                let text = read(path)?;
                if text.trim_start().starts_with('[') {
                    Ok(InputSource::JsonLines(path.to_path_buf()))
                } else {
                    Ok(InputSource::Csv(path.to_path_buf()))
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, IngestError> {
    fs::read_to_string(path).map_err(|source| IngestError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads the elements and checks that there is a non-zero even number of
/// them. With `all`, every JSON-lines line is concatenated; otherwise only
/// the first non-blank line is used.
pub fn ingest(
    source: &InputSource,
    carrier: Carrier,
    all: bool,
) -> Result<Vec<Element>, IngestError> {
    let elements = match source {
        InputSource::Values(text) => parse_values(text, carrier)?,
        InputSource::Csv(path) => parse_csv(&read(path)?, carrier)?,
        InputSource::JsonLines(path) => parse_json_lines(&read(path)?, carrier, all)?,
    };
    match elements.len() {
        0 => Err(IngestError::Empty),
        len if len % 2 == 1 => Err(IngestError::OddCount(len)),
        _ => Ok(elements),
    }
}

/// Splits on commas outside parentheses and quotes. Returns each token with
/// its 1-based starting column, trimmed.
fn split_top_level(text: &str, line: usize) -> Result<Vec<(usize, String)>, IngestError> {
    let mut tokens = Vec::new();
    let mut depth = 0usize;
    let mut quoted = false;
    let mut start = 0usize;
    let chars: Vec<char> = text.chars().collect();
    for (idx, &c) in chars.iter().enumerate() {
        match c {
            '"' => quoted = !quoted,
            '(' if !quoted => depth += 1,
            ')' if !quoted => {
                depth = depth.checked_sub(1).ok_or_else(|| IngestError::Structure {
                    line,
                    reason: format!("unbalanced ')' at column {}", idx + 1),
                })?
            }
            ',' if !quoted && depth == 0 => {
                tokens.push(token(&chars[start..idx], start));
                start = idx + 1;
            }
            _ => {}
        }
    }
    if depth != 0 || quoted {
        return Err(IngestError::Structure {
            line,
            reason: "unterminated '(' or '\"'".into(),
        });
    }
    tokens.push(token(&chars[start..], start));
    Ok(tokens)
}

fn token(chars: &[char], offset: usize) -> (usize, String) {
    let raw: String = chars.iter().collect();
    let lead = raw.len() - raw.trim_start().len();
    let lead_chars = raw[..lead].chars().count();
    (offset + lead_chars + 1, raw.trim().to_string())
}

fn parse_literal(
    carrier: Carrier,
    literal: &str,
    line: usize,
    column: usize,
) -> Result<Element, IngestError> {
    let text = literal
        .strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .unwrap_or(literal);
    if let Carrier::NaturalVectorLexAdd { dim } = carrier {
        if let Some(inner) = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
        {
            let found = inner.split(',').count();
            if found != dim {
                return Err(IngestError::Dimension {
                    line,
                    column,
                    literal: literal.to_string(),
                    expected: dim,
                    found,
                });
            }
        }
    }
    Element::parse(carrier, text).map_err(|e| IngestError::Literal {
        line,
        column,
        literal: literal.to_string(),
        reason: e.to_string(),
    })
}

pub fn parse_values(text: &str, carrier: Carrier) -> Result<Vec<Element>, IngestError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    split_top_level(text, 1)?
        .into_iter()
        .map(|(column, literal)| parse_literal(carrier, &literal, 1, column))
        .collect()
}

/// One element per cell, row-major. Cells holding vectors must be quoted.
/// Columns in errors count cells.
pub fn parse_csv(text: &str, carrier: Carrier) -> Result<Vec<Element>, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        for (idx, cell) in record.iter().enumerate() {
            if cell.is_empty() && record.len() == 1 {
                continue;
            }
            out.push(parse_literal(carrier, cell, line, idx + 1)?);
        }
    }
    Ok(out)
}

/// Each non-blank line is an array `[e1, e2, ...]` of literals, bare or
/// quoted, e.g. `[(1,0),(0,2)]` or `["1/2","3"]`.
pub fn parse_json_lines(
    text: &str,
    carrier: Carrier,
    all: bool,
) -> Result<Vec<Element>, IngestError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let lead = raw.len() - raw.trim_start().len();
        let body = trimmed
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| IngestError::Structure {
                line,
                reason: "expected a [ ... ] array".into(),
            })?;
        if !body.trim().is_empty() {
            let offset = raw[..lead].chars().count() + 1;
            for (column, literal) in split_top_level(body, line)? {
                out.push(parse_literal(carrier, &literal, line, column + offset)?);
            }
        }
        if !all {
            break;
        }
    }
    Ok(out)
}
