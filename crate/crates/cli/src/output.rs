//! The JSON envelope shared by every command.

use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0";

/// Where a result came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsOut {
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub field_prime: u32,
    pub seed: u64,
}

/// Result of recomputing a closed-form answer with the oracle.
#[derive(Clone, Debug, Serialize)]
pub struct OracleAgreement {
    pub agrees: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub provenance: Provenance,
    pub params: ParamsOut,
    pub result: serde_json::Value,
    pub oracle: Option<OracleAgreement>,
}

/// What a command produced: text for the terminal, the JSON envelope, and whether a check failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub text: String,
    pub envelope: Envelope,
    pub mismatch: bool,
}
