//! Lattice geometry, Fourier fields, the multipliers `c` and `t`, and pseudo-spectral calculus.

mod field;
mod lattice;
mod multipliers;
mod space;
mod vec2;

pub use field::{Field, SpectralScalarField, SpectralVectorField};
pub use lattice::{build_lattice, LatticePair, Mode, PhysicalParams};
pub use multipliers::{
    check_nonresonance, check_nonresonance_tol, multipliers_c_t, multipliers_c_t_tol, resonance_margin,
    NonresonanceReport, ResonanceKind, ResonantMode, RESONANCE_TOL, SERIES_SWITCH,
};
pub use space::{fft_friendly_size, CalculusKind, PhysicalGrid, SpectralSpace, DEFAULT_PADDING};
pub use vec2::{CVec2, Vec2};
