use grouplab_core::Error;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Validation,
    Budget,
    Internal,
}

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    pub kind: FailureKind,
    pub message: String,
    /// Partial result to keep in the report, e.g. a VC lower bound.
    #[serde(skip)]
    pub partial: Option<Value>,
}

impl Failure {
    pub fn validation(message: String) -> Self {
        Failure { kind: FailureKind::Validation, message, partial: None }
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            FailureKind::Validation => EXIT_VALIDATION,
            FailureKind::Budget => EXIT_BUDGET,
            FailureKind::Internal => EXIT_FAILED,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match e {
            Error::BudgetExhausted { .. } => FailureKind::Budget,
            Error::Consistency(_) => FailureKind::Internal,
            _ => FailureKind::Validation,
        };
        Failure { kind, message: e.to_string(), partial: None }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub config_hash: String,
    pub version: &'static str,
    pub task: String,
    pub inputs: Value,
    pub result: Value,
    pub timings_ms: Value,
    pub errors: Vec<Failure>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.errors.iter().map(Failure::exit_code).max().unwrap_or(EXIT_OK)
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
        text.push('\n');
        text
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

/// SHA-256 of the canonical (sorted-key, compact) JSON of `config`.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_string(&to_value(config)).expect("value serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}
