//! Report assembly and rendering in the supported output formats.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

/// Identifies the structured output layout; bumped on any incompatible change.
pub const SCHEMA: &str = "mckay-report";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Svg => "svg",
        })
    }
}

/// How a command failed.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: unreadable file, parse error, a command that does not apply. Exit code 2.
    Input(anyhow::Error),
    /// A cross-check or consistency check did not hold. Exit code 1.
    Mismatch(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {e:#}"),
            Failure::Mismatch(e) => write!(f, "check failed: {e:#}"),
        }
    }
}

pub fn input(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Input(e.into())
}

pub fn internal(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Mismatch(e.into())
}

pub type Outcome = Result<Report, Failure>;

/// Everything a command produced. `failed` is set when a check inside the report did not hold;
/// the report is still printed before the process exits with code 1.
#[derive(Debug, Default)]
pub struct Report {
    pub command: &'static str,
    pub text: String,
    pub data: Value,
    pub dot: Option<String>,
    pub svg: Option<String>,
    pub failed: Option<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    version: u32,
    command: &'a str,
    status: &'static str,
    data: &'a Value,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, data: Value::Null, ..Default::default() }
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn fail(&mut self, why: impl Into<String>) {
        self.failed.get_or_insert_with(|| why.into());
    }

    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let env = Envelope {
                    schema: SCHEMA,
                    version: SCHEMA_VERSION,
                    command: self.command,
                    status: if self.failed.is_some() { "fail" } else { "pass" },
                    data: &self.data,
                };
                let mut s = serde_json::to_string_pretty(&env).map_err(internal)?;
                s.push('\n');
                Ok(s)
            }
            Format::Dot => self
                .dot
                .clone()
                .ok_or_else(|| input(anyhow::anyhow!("`{}` has no dot output", self.command))),
            Format::Svg => self
                .svg
                .clone()
                .ok_or_else(|| input(anyhow::anyhow!("`{}` has no svg output", self.command))),
        }
    }
}
