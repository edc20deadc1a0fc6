//! JSON front end for `stratum-core`: problem documents in, reports out.

mod input;
mod report;
mod run;

use thiserror::Error;

pub use input::{
    parse, parse_with, ArrowSpec, Compiled, FieldSpec, Literal, ModuleSpec, Overrides, ProblemSpec, Side, TermSpec,
    DEFAULT_MAX_PATH_LENGTH,
};
pub use report::{Boundary, CheckResult, ModuleResult, Report, StandardRow, Verdict, Witness};
pub use run::{run, Check, Options};

/// Exit status for malformed input.
pub const EXIT_INPUT_ERROR: u8 = 2;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(serde_json::Error),
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

impl InputError {
    pub fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> Self {
        InputError::Invalid { field: field.into(), message: message.to_string() }
    }
}
