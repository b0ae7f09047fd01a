//! The `key = value` configuration file.
//!
//! Blank lines and lines starting with `#` are ignored. Keys may use `-` or
//! `_` interchangeably. Recognised keys are `n`, `max-rank`, `workers`,
//! `r1-max`, `d1-max` and `a1-max`; anything else is rejected so that typos
//! do not silently fall back to defaults.

use mukai_bn::Int;
use thiserror::Error;

use crate::args::{parse_int, ArgError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Config {
    pub n: Option<Int>,
    pub max_rank: Option<Int>,
    pub workers: Option<usize>,
    pub r1_max: Option<Int>,
    pub d1_max: Option<Int>,
    pub a1_max: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: `{key}` is set twice")]
    Duplicate { line: usize, key: String },
    #[error("line {line}: {key}: {source}")]
    Value {
        line: usize,
        key: String,
        source: ArgError,
    },
    #[error("line {line}: {key} must be nonnegative")]
    Negative { line: usize, key: String },
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let mut cfg = Config::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let key = key.trim().replace('_', "-");
        let value = parse_int(value).map_err(|source| ConfigError::Value {
            line,
            key: key.clone(),
            source,
        })?;
        let slot = match key.as_str() {
            "n" => &mut cfg.n,
            "max-rank" => &mut cfg.max_rank,
            "r1-max" => &mut cfg.r1_max,
            "d1-max" => &mut cfg.d1_max,
            "a1-max" => &mut cfg.a1_max,
            "workers" => {
                if cfg.workers.is_some() {
                    return Err(ConfigError::Duplicate { line, key });
                }
                let w = usize::try_from(value).map_err(|_| ConfigError::Negative { line, key })?;
                cfg.workers = Some(w);
                continue;
            }
            _ => return Err(ConfigError::UnknownKey { line, key }),
        };
        if slot.is_some() {
            return Err(ConfigError::Duplicate { line, key });
        }
        *slot = Some(value);
    }
    Ok(cfg)
}
