//! Stable text renderings shared by reports: sorted-key JSON, exact rationals and
//! fixed-precision decimals.

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    // serde_json's default map is ordered, so the round trip through Value sorts keys.
    let v: Value = serde_json::to_value(value).map_err(|e| Error::Integrity(e.to_string()))?;
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Error::Integrity(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// `count/total` without reduction.
pub fn rational(count: u64, total: u64) -> String {
    format!("{count}/{total}")
}

/// Six digits after the decimal point.
pub fn decimal6(x: f64) -> String {
    format!("{x:.6}")
}
