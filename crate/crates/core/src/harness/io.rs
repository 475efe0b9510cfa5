//! JSON reading and writing. Bodies use `{"dim": d, "vertices": [[..], ..]}`;
//! facets are recomputed on load.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::ConvexBody;

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

pub fn read_body(path: impl AsRef<Path>) -> Result<ConvexBody> {
    read_json(path)
}

pub fn write_body(path: impl AsRef<Path>, body: &ConvexBody) -> Result<()> {
    write_json(path, body)
}
