//! JSON document helpers shared by every file format.
//!
//! All writers emit pretty-printed JSON with struct-declaration key order and
//! a trailing newline, so rerunning a pipeline stage on identical inputs
//! rewrites byte-identical files. Every document carries a `schema` tag;
//! readers accept a missing tag (hand-written files) but reject a wrong one.

use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::Path;

use crate::error::{Error, Result};

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable document");
    text.push('\n');
    text
}

pub fn check_schema(found: Option<&str>, expected: &str) -> Result<()> {
    match found {
        None => Ok(()),
        Some(s) if s == expected => Ok(()),
        Some(s) => Err(Error::Parse(format!(
            "schema mismatch: found {s:?}, expected {expected:?}"
        ))),
    }
}

pub fn read_json_file<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{what} {}: {e}", path.display())))
}

pub fn write_text_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)?;
    Ok(())
}
