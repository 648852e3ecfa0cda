//! Textual and JSON notation for pair classes.
//!
//! The compact form is whitespace-separated `key=value` tokens:
//!
//! ```text
//! n=6 b=9,10 b0=9 dx=0 dy=0
//! ```
//!
//! `dx`, `dy` default to `0` and `b0` to the first characteristic exponent,
//! so `n=6 b=9,10` already describes a plain class. The JSON form uses the
//! same data as an object:
//!
//! ```text
//! {"n": 6, "betas": [9, 10], "beta0": 9, "dx": 0, "dy": 0}
//! ```
//!
//! Anything starting with `{` is parsed as JSON.

use crate::branch::{validate_pair, ClassError, PairClass};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("at byte {column}: `{token}`: {message}")]
    Parse {
        column: usize,
        token: String,
        message: String,
    },
    #[error("json at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Class(#[from] ClassError),
}

/// JSON shape of a class; also the canonical serialization the CLI emits.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDto {
    n: u64,
    betas: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    beta0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dx: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dy: Option<u8>,
}

fn flag(value: Option<u8>, key: &str) -> Result<bool, LiteralError> {
    match value {
        None | Some(0) => Ok(false),
        Some(1) => Ok(true),
        Some(other) => Err(LiteralError::Parse {
            column: 0,
            token: format!("{key}={other}"),
            message: "flag must be 0 or 1".into(),
        }),
    }
}

fn build(dto: ClassDto) -> Result<PairClass, LiteralError> {
    let dx = flag(dto.dx, "dx")?;
    let dy = flag(dto.dy, "dy")?;
    let beta0 = dto
        .beta0
        .or_else(|| dto.betas.first().copied())
        .unwrap_or(0);
    Ok(validate_pair(dto.n, &dto.betas, beta0, dx, dy)?)
}

/// Parses either notation into a validated class.
pub fn parse_class_literal(input: &str) -> Result<PairClass, LiteralError> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') {
        let dto: ClassDto = serde_json::from_str(trimmed).map_err(|e| LiteralError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        return build(dto);
    }

    let mut n: Option<u64> = None;
    let mut betas: Option<Vec<u64>> = None;
    let mut beta0: Option<u64> = None;
    let mut dx: Option<u8> = None;
    let mut dy: Option<u8> = None;
    let mut offset = 0;
    for token in input.split_whitespace() {
        let column = offset + input[offset..].find(token).expect("token from input");
        offset = column + token.len();
        let fail = |message: &str| LiteralError::Parse {
            column,
            token: token.to_string(),
            message: message.into(),
        };
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| fail("expected key=value"))?;
        let mut parse_u64 = |text: &str| -> Result<u64, LiteralError> {
            text.parse::<u64>()
                .map_err(|_| fail("expected a nonnegative integer"))
        };
        match key {
            "n" => {
                if n.replace(parse_u64(value)?).is_some() {
                    return Err(fail("duplicate key `n`"));
                }
            }
            "b" => {
                let list = value
                    .split(',')
                    .map(&mut parse_u64)
                    .collect::<Result<Vec<u64>, _>>()?;
                if betas.replace(list).is_some() {
                    return Err(fail("duplicate key `b`"));
                }
            }
            "b0" => {
                if beta0.replace(parse_u64(value)?).is_some() {
                    return Err(fail("duplicate key `b0`"));
                }
            }
            "dx" => {
                if dx.replace(parse_u64(value)? as u8).is_some() {
                    return Err(fail("duplicate key `dx`"));
                }
            }
            "dy" => {
                if dy.replace(parse_u64(value)? as u8).is_some() {
                    return Err(fail("duplicate key `dy`"));
                }
            }
            _ => return Err(fail("unknown key (expected n, b, b0, dx, dy)")),
        }
    }
    let n = n.ok_or_else(|| LiteralError::Parse {
        column: 0,
        token: input.trim().to_string(),
        message: "missing key `n`".into(),
    })?;
    let betas = betas.ok_or_else(|| LiteralError::Parse {
        column: 0,
        token: input.trim().to_string(),
        message: "missing key `b`".into(),
    })?;
    build(ClassDto {
        n,
        betas,
        beta0,
        dx,
        dy,
    })
}

/// Compact `key=value` rendering; always explicit about every field.
pub fn format_class_literal(pair: &PairClass) -> String {
    let betas: Vec<String> = pair.betas().iter().map(|b| b.to_string()).collect();
    format!(
        "n={} b={} b0={} dx={} dy={}",
        pair.n(),
        betas.join(","),
        pair.beta0(),
        u64::from(pair.delta_x()),
        u64::from(pair.delta_y()),
    )
}

/// Canonical JSON object for a class, with every field explicit.
pub fn class_to_json(pair: &PairClass) -> serde_json::Value {
    serde_json::json!({
        "n": pair.n(),
        "betas": pair.betas(),
        "beta0": pair.beta0(),
        "dx": u64::from(pair.delta_x()),
        "dy": u64::from(pair.delta_y()),
    })
}
