//! Lyapunov–Schmidt coefficient pipeline for doubly periodic waves.

mod closed_form;
mod graded;
mod tables;

pub use closed_form::{
    cubic_coeffs, p20_1, p20_2, p30_1, p30_2, q_from_p, quadratic_coeffs, t_multipliers, CubicCoeffs, QuadraticCoeffs,
    TKind,
};
pub use graded::GradedFunctional;
pub use tables::{
    ab_coeffs, ab_coeffs_with, eta2_table, eta2_table_with, mu_from_ab, mu_linear, synthesize_wave, AmplitudeState,
    CoefficientRoute, Coefficients, ExpansionTables, MonomialKey, MuCoeffs,
};
