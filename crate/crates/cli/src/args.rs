//! Parsing of integer and vector command-line arguments.

use mukai_bn::{Int, MukaiVector};
use thiserror::Error;

/// Largest absolute value accepted for any integer input.
pub const INPUT_BOUND: Int = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ArgError {
    #[error("empty value")]
    Empty,
    #[error("`{0}` is not an integer")]
    NotAnInteger(String),
    #[error("`{0}` is outside [-{INPUT_BOUND}, {INPUT_BOUND}]")]
    OutOfRange(String),
    #[error("expected three comma-separated entries `r,d,a`, found {0}")]
    Arity(usize),
}

pub fn parse_int(s: &str) -> Result<Int, ArgError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ArgError::Empty);
    }
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ArgError::NotAnInteger(t.to_string()));
    }
    let value: Int = t.parse().map_err(|_| ArgError::OutOfRange(t.to_string()))?;
    if value.abs() > INPUT_BOUND {
        return Err(ArgError::OutOfRange(t.to_string()));
    }
    Ok(value)
}

/// Parse `r,d,a`, optionally wrapped in parentheses, as a Mukai vector.
pub fn parse_vector(s: &str) -> Result<MukaiVector, ArgError> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .unwrap_or(t);
    if inner.trim().is_empty() {
        return Err(ArgError::Empty);
    }
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(ArgError::Arity(parts.len()));
    }
    Ok(MukaiVector::new(
        parse_int(parts[0])?,
        parse_int(parts[1])?,
        parse_int(parts[2])?,
    ))
}

/// Parse a whitespace-separated list of vectors such as `(1,1,2) (2,3,5)`.
pub fn parse_vector_list(s: &str) -> Result<Vec<MukaiVector>, ArgError> {
    s.split_whitespace().map(parse_vector).collect()
}
