//! Output envelope and exit-code policy.
//!
//! Exit codes: 0 success/verified, 1 verification failed, 2 input error,
//! 3 missing obligation (cube-root hint), 4 internal limit (degree cap).

use std::fmt;

use serde_json::{json, Value};

use crate::expr::ExprError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_MISSING_OBLIGATION: i32 = 3;
pub const EXIT_LIMIT: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Expr(ExprError),
    Core(pfaff_core::Error),
    Io(String),
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Expr(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Input(e) => write!(f, "{e}"),
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        CliError::Expr(e)
    }
}

impl From<pfaff_core::Error> for CliError {
    fn from(e: pfaff_core::Error) -> Self {
        CliError::Core(e)
    }
}

fn core_exit_code(e: &pfaff_core::Error) -> i32 {
    use pfaff_core::Error::*;
    match e {
        HintRequired { .. } => EXIT_MISSING_OBLIGATION,
        DegreeCap { .. } => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

pub fn exit_code_for(e: &CliError) -> i32 {
    match e {
        CliError::Expr(ExprError::Syntax { .. }) => EXIT_INPUT,
        CliError::Expr(ExprError::Core(c)) => core_exit_code(c),
        CliError::Core(c) => core_exit_code(c),
        CliError::Io(_) | CliError::Input(_) => EXIT_INPUT,
    }
}

/// What one command run produces, in both human and JSON shapes. The JSON
/// envelope always carries the same five keys.
pub struct Outcome {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub verified: bool,
    pub exit_code: i32,
    pub human: String,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    pub fn failure(command: &'static str, inputs: Value, err: &CliError) -> Outcome {
        Outcome {
            command,
            inputs,
            result: json!({ "error": err.to_string() }),
            verified: false,
            exit_code: exit_code_for(err),
            human: String::new(),
            diagnostics: vec![err.to_string()],
        }
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "verified": self.verified,
            "exit_code": self.exit_code,
        })
    }

    /// Prints the report and returns the process exit code.
    pub fn emit(&self, json_mode: bool) -> i32 {
        for d in &self.diagnostics {
            eprintln!("{d}");
        }
        if json_mode {
            println!("{}", self.envelope());
        } else if !self.human.is_empty() {
            println!("{}", self.human);
        }
        self.exit_code
    }
}

/// 17 significant digits, enough for a lossless f64 round trip.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}
