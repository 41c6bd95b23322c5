//! The JSON envelope every command emits and the cache stores.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub schema_version: u32,
    /// SHA-256 of the command, its canonical inputs and the engine version.
    pub key: String,
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub witnesses: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

pub fn record_key(command: &str, inputs: &Value) -> String {
    let canonical = json!({
        "schema_version": SCHEMA_VERSION,
        "engine": env!("CARGO_PKG_VERSION"),
        "command": command,
        "inputs": inputs,
    });
    hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
}

impl ResultRecord {
    pub fn new(command: &str, inputs: Value, outputs: Value, witnesses: Vec<Value>) -> Self {
        ResultRecord {
            schema_version: SCHEMA_VERSION,
            key: record_key(command, &inputs),
            command: command.to_string(),
            inputs,
            outputs,
            witnesses,
            timings: None,
        }
    }

    /// Same results, ignoring timings.
    pub fn same_results(&self, other: &ResultRecord) -> bool {
        self.key == other.key && self.outputs == other.outputs && self.witnesses == other.witnesses
    }
}
