use serde::Serialize;
use std::fmt;

/// Failure classes, each with its own process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExitKind {
    Internal,
    Usage,
    Config,
    Resonance,
    Transversality,
    Degeneracy,
    Input,
}

impl ExitKind {
    pub fn code(self) -> u8 {
        match self {
            ExitKind::Internal => 1,
            ExitKind::Usage => 2,
            ExitKind::Config => 3,
            ExitKind::Resonance => 4,
            ExitKind::Transversality => 5,
            ExitKind::Degeneracy => 6,
            ExitKind::Input => 7,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Config, message)
    }

    pub fn input(message: impl Into<String>) -> Self {
        Self::new(ExitKind::Input, message)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub fn core_kind(e: &beltrami::Error) -> ExitKind {
    use beltrami::Error as E;
    match e {
        E::InvalidParams(_) | E::DegenerateLattice { .. } | E::ZeroMode { .. } => ExitKind::Config,
        E::Resonance { .. }
        | E::NearZeroDivisor { .. }
        | E::SecondHarmonicResonance { .. }
        | E::RangeViolation { .. } => ExitKind::Resonance,
        E::TransversalityFailure { .. } => ExitKind::Transversality,
        E::DegenerateFit(_) | E::SingularJacobian { .. } | E::NonConvergence { .. } | E::ZeroDenominator { .. } => {
            ExitKind::Degeneracy
        }
        E::ArityMismatch { .. } | E::IncompatibleFields { .. } | E::OrderMismatch { .. } => ExitKind::Internal,
    }
}

impl From<beltrami::Error> for CliError {
    fn from(e: beltrami::Error) -> Self {
        Self::new(core_kind(&e), e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::new(ExitKind::Internal, format!("i/o: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::new(ExitKind::Internal, format!("json: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::new(ExitKind::Internal, format!("csv: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
