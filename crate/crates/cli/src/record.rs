use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA: &str = "spiral-output/1";

/// The machine-readable envelope printed by `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema: String,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    /// Wall-clock time, present only with `--timing` so that default output
    /// stays byte-identical between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl OutputRecord {
    pub fn new(command: &str, inputs: Value, result: Value, elapsed_ms: Option<u128>) -> Self {
        OutputRecord { schema: SCHEMA.to_string(), command: command.to_string(), inputs, result, elapsed_ms }
    }
}
