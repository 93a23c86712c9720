//! Machine-readable check reports shared by the verification commands.

use serde::Serialize;

/// One verified identity: both sides and the verdict.
/// Serializes as `{"identity": …, "lhs": …, "rhs": …, "pass": …}`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub identity: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
    pub pass: bool,
}

impl Report {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization cannot fail")
    }
}
