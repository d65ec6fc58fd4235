use crate::lattice_spectral::Mode;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate lattice: |det| = {det:e}")]
    DegenerateLattice { det: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("resonant radius s = {radius}: {detail}")]
    Resonance { radius: f64, detail: String },

    #[error("zero wave vector in {context}")]
    ZeroMode { context: String },

    #[error("operation '{op}' expects a {expected} field")]
    ArityMismatch { op: &'static str, expected: &'static str },

    #[error("incompatible fields: truncation {left} vs {right}")]
    IncompatibleFields { left: usize, right: usize },

    #[error("order mismatch: need {needed} terms, have {available}")]
    OrderMismatch { needed: usize, available: usize },

    #[error("Newton iteration did not converge after {iterations} steps (|F| = {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("singular Jacobian (det = {det:e})")]
    SingularJacobian { det: f64 },

    #[error("range violation: right-hand side has kernel component {magnitude:e} at mode {mode:?}")]
    RangeViolation { mode: Mode, magnitude: f64 },

    #[error("near-zero divisor at mode {mode:?}: rho = {rho:e}")]
    NearZeroDivisor { mode: Mode, rho: f64 },

    #[error("zero denominator: |{combination}| vanishes")]
    ZeroDenominator { combination: String },

    #[error("second-harmonic resonance for {monomial}: rho = {rho:e}")]
    SecondHarmonicResonance { monomial: String, rho: f64 },

    #[error("transversality fails: det = {det:e}")]
    TransversalityFailure { det: f64 },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
