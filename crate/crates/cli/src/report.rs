use std::fmt;
use std::io::Write;

use lagrange_core::num::to_decimal;
use lagrange_core::{Error, Real};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub value: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(name: &str, value: &str) -> Self {
        Self::of_bytes(name, value, value.as_bytes())
    }

    /// Records `value` (e.g. a path) but hashes `bytes` (e.g. its contents).
    pub fn of_bytes(name: &str, value: &str, bytes: &[u8]) -> Self {
        InputDigest {
            name: name.into(),
            value: value.into(),
            sha256: sha256_hex(bytes),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub inputs: Vec<InputDigest>,
    pub result: Value,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig, inputs: Vec<InputDigest>, result: Value) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: config.clone(),
            inputs,
            result,
        }
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> anyhow::Result<()> {
        let value = serde_json::to_value(self)?;
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &value)?;
                writeln!(out)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["key", "value"])?;
                let mut rows = Vec::new();
                flatten("", &value, &mut rows);
                for (k, v) in rows {
                    w.write_record([k, v])?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, rows)),
        Value::Array(a) => a
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&key(&i.to_string()), x, rows)),
        Value::String(s) => rows.push((prefix.into(), s.clone())),
        Value::Null => rows.push((prefix.into(), String::new())),
        other => rows.push((prefix.into(), other.to_string())),
    }
}

pub fn dec(x: &Real) -> String {
    to_decimal(x)
}

pub fn decs(xs: &[Real]) -> Vec<String> {
    xs.iter().map(to_decimal).collect()
}

/// Shortest round-trip decimal, never in exponent form.
pub fn dec_f64(x: f64) -> String {
    x.to_string()
}

/// A command's report together with an assertion that may have failed.
pub struct Outcome {
    pub report: Report,
    pub violation: Option<String>,
}

impl Outcome {
    pub fn ok(report: Report) -> Self {
        Outcome {
            report,
            violation: None,
        }
    }
}

/// Failures that stop a command before a report exists.
#[derive(Debug)]
pub enum Failure {
    /// A connection or another degenerate configuration in the input.
    Degenerate(String),
    /// Malformed or out-of-range input.
    Parse(String),
    Other(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Degenerate(_) => 3,
            Failure::Parse(_) => 4,
            Failure::Other(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Degenerate(m) => write!(f, "degenerate input: {m}"),
            Failure::Parse(m) => write!(f, "parse error: {m}"),
            Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ConnectionFound { .. }
            | Error::ConnectionStop { .. }
            | Error::Degenerate(_)
            | Error::SingularPoint(_) => Failure::Degenerate(e.to_string()),
            Error::Parse { .. }
            | Error::InvalidPermutation(_)
            | Error::NotAdmissible(_)
            | Error::InvalidLengths(_)
            | Error::NotSuspension
            | Error::NotClosed
            | Error::NotComposable(_)
            | Error::OutOfRange(_)
            | Error::NotConnected
            | Error::InvalidOrigami(_) => Failure::Parse(e.to_string()),
            other => Failure::Other(other.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            Failure::Other(e.into())
        } else {
            Failure::Parse(e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flatten_paths() {
        let v = serde_json::json!({"a": {"b": [1, "x"]}, "c": null});
        let mut rows = Vec::new();
        flatten("", &v, &mut rows);
        assert_eq!(
            rows,
            vec![
                ("a.b.0".into(), "1".into()),
                ("a.b.1".into(), "x".into()),
                ("c".into(), String::new())
            ]
        );
    }

    #[test]
    fn exit_classes() {
        assert_eq!(
            Failure::from(Error::ConnectionStop { step: 3 }).exit_code(),
            3
        );
        assert_eq!(
            Failure::from(Error::Parse {
                pos: 1,
                msg: "x".into()
            })
            .exit_code(),
            4
        );
        assert_eq!(Failure::from(Error::NotConnectedInEvenGraph).exit_code(), 1);
    }

    #[test]
    fn f64_is_plain_decimal() {
        assert_eq!(dec_f64(1e-10), "0.0000000001");
    }
}
