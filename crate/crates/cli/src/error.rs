//! CLI error taxonomy mapped onto process exit codes.

use std::fmt;

/// Exit codes: 0 ok, 2 config, 3 blow-up, 4 bound violation, 5 inequality
/// violation, 1 anything else.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    BlowUp { t: f64, detail: String },
    BoundViolation(String),
    InequalityViolation(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::BlowUp { .. } => 3,
            CliError::BoundViolation(_) => 4,
            CliError::InequalityViolation(_) => 5,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::BlowUp { t, detail } => write!(f, "blow-up at t = {t}: {detail}"),
            CliError::BoundViolation(msg) => write!(f, "bound violation: {msg}"),
            CliError::InequalityViolation(msg) => write!(f, "inequality violation: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<mkse_core::Error> for CliError {
    fn from(e: mkse_core::Error) -> Self {
        match e {
            mkse_core::Error::BlowUp { t, max_abs } => CliError::BlowUp {
                t,
                detail: format!("last finite max |coeff| = {max_abs:.3e}"),
            },
            mkse_core::Error::InequalityViolated { ref name, ratio } => {
                CliError::InequalityViolation(format!("{name}: ratio {ratio}"))
            }
            other => CliError::Config(other.to_string()),
        }
    }
}
