//! JSON envelope written by the command-line tool.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

/// JSON Schema describing [`RunReport`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    /// The command line, space-joined.
    pub command: String,
    /// SHA-256 of the input bytes; `None` when the command reads no input.
    pub input_sha: Option<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub ms: u64,
}

impl RunReport {
    pub fn new(command: String, input: Option<&[u8]>, result: Value, seed: Option<u64>, ms: u64) -> Self {
        RunReport { schema: SCHEMA_VERSION, command, input_sha: input.map(sha256_hex), result, seed, ms }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
