use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::config::SCHEMA;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub generated_unix: u64,
}

impl Meta {
    pub fn now() -> Self {
        Self {
            tool: "tfcert".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            generated_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Top-level JSON document written by every command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document<T> {
    pub schema: u32,
    pub command: String,
    pub report: T,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Meta>,
}

impl<T: Serialize> Document<T> {
    pub fn new(command: &str, report: T, with_meta: bool) -> Self {
        Self {
            schema: SCHEMA,
            command: command.into(),
            report,
            meta: with_meta.then(Meta::now),
        }
    }

    pub fn to_json(&self) -> Result<String, Failure> {
        let mut s = serde_json::to_string_pretty(self)
            .map_err(|e| Failure::input(format!("serialization failed: {e}")))?;
        s.push('\n');
        Ok(s)
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
