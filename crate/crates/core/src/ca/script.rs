//! Environment scripts: one step per line,
//! `offers: p=v, q=w ; ready: r, s`.
//!
//! Either part may be left out. A line holding only `-` is an idle step.
//! Blank lines and lines starting with `#` are skipped. Values are integers,
//! `true`/`false` or double-quoted text.

use thiserror::Error;

use crate::values::Datum;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepSpec {
    pub offers: Vec<(String, Datum)>,
    pub ready: Vec<String>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("script line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

pub fn parse_script(text: &str) -> Result<Vec<StepSpec>, ScriptError> {
    let mut steps = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| ScriptError {
            line: i + 1,
            message,
        };
        let mut spec = StepSpec::default();
        if line != "-" {
            for part in line.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                if let Some(rest) = part.strip_prefix("offers:") {
                    for item in list(rest) {
                        let (port, value) = item
                            .split_once('=')
                            .ok_or_else(|| err(format!("expected `port=value`, found `{item}`")))?;
                        let port = port_name(port).map_err(&err)?;
                        let value = parse_value(value.trim()).map_err(&err)?;
                        spec.offers.push((port, value));
                    }
                } else if let Some(rest) = part.strip_prefix("ready:") {
                    for item in list(rest) {
                        spec.ready.push(port_name(item).map_err(&err)?);
                    }
                } else {
                    return Err(err(format!("expected `offers:` or `ready:`, found `{part}`")));
                }
            }
        }
        steps.push(spec);
    }
    Ok(steps)
}

fn list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty())
}

fn port_name(s: &str) -> Result<String, String> {
    let s = s.trim();
    let ok = !s.is_empty()
        && s.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_alphanumeric() || "_[]@#.$".contains(c));
    if ok {
        Ok(s.to_string())
    } else {
        Err(format!("`{s}` is not a port name"))
    }
}

fn parse_value(s: &str) -> Result<Datum, String> {
    if let Ok(i) = s.parse::<i64>() {
        return Ok(Datum::Int(i));
    }
    match s {
        "true" => return Ok(Datum::Bool(true)),
        "false" => return Ok(Datum::Bool(false)),
        _ => {}
    }
    if s.len() >= 2 && s.starts_with('"') && s.ends_with('"') {
        return Ok(Datum::Text(s[1..s.len() - 1].to_string()));
    }
    Err(format!("`{s}` is not a value"))
}
