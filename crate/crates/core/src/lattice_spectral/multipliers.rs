use super::lattice::{LatticePair, Mode, PhysicalParams};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;

/// Default distance to `(π/2)ℕ` below which a radius counts as resonant.
pub const RESONANCE_TOL: f64 = 1e-8;

/// Below this value of `|α² − s²|` the multipliers are evaluated by their Taylor series.
pub const SERIES_SWITCH: f64 = 1e-6;

/// `(c(s), t(s))` with the default resonance tolerance.
pub fn multipliers_c_t(s: f64, params: &PhysicalParams) -> Result<(f64, f64)> {
    multipliers_c_t_tol(s, params.alpha, params.depth, RESONANCE_TOL)
}

pub fn multipliers_c_t_tol(s: f64, alpha: f64, h: f64, tol: f64) -> Result<(f64, f64)> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParams(format!("radius must be non-negative, got {s}")));
    }
    let a = alpha.abs();
    let z = (a - s) * (a + s);
    if z.abs() < SERIES_SWITCH {
        let w = h * h * z;
        let t = h * (1.0 + w * (1.0 / 3.0 + w * (2.0 / 15.0 + w * (17.0 / 315.0 + w * 62.0 / 2835.0))));
        let c = (1.0 - w * (1.0 / 3.0 + w * (1.0 / 45.0 + w * (2.0 / 945.0 + w / 4725.0)))) / h;
        return Ok((c, t));
    }
    if z > 0.0 {
        let x = z.sqrt();
        if let Some((n, d)) = half_pi_distance(h * x) {
            if d <= tol {
                return Err(Error::Resonance {
                    radius: s,
                    detail: format!("h·sqrt(alpha^2 - s^2) is within {d:e} of {n}·π/2"),
                });
            }
        }
        let tn = (h * x).tan();
        Ok((x / tn, tn / x))
    } else {
        let y = (-z).sqrt();
        let th = (h * y).tanh();
        Ok((y / th, th / y))
    }
}

/// Nearest positive multiple `n` of `π/2` and the distance to it.
fn half_pi_distance(v: f64) -> Option<(u64, f64)> {
    let n = (v / FRAC_PI_2).round();
    if n >= 1.0 {
        Some((n as u64, (v - n * FRAC_PI_2).abs()))
    } else {
        let d = (v - FRAC_PI_2).abs();
        Some((1, d))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ResonanceKind {
    /// `|k| = |α|`.
    CriticalRadius,
    /// `h√(α² − |k|²)` sits on `n·π/2`.
    HalfPiMultiple { n: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonantMode {
    pub mode: Mode,
    pub kind: ResonanceKind,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonresonanceReport {
    pub resonant_modes: Vec<ResonantMode>,
    pub min_margin: f64,
    pub tolerance: f64,
}

impl NonresonanceReport {
    pub fn is_clear(&self) -> bool {
        self.resonant_modes.is_empty()
    }
}

/// Distance of the radius `s` to the nearest violation of the non-resonance condition,
/// together with the violation type achieving it.
pub fn resonance_margin(s: f64, alpha: f64, h: f64) -> (f64, ResonanceKind) {
    let a = alpha.abs();
    let mut best = ((s - a).abs(), ResonanceKind::CriticalRadius);
    if s < a {
        if let Some((n, d)) = half_pi_distance(h * ((a - s) * (a + s)).sqrt()) {
            if d < best.0 {
                best = (d, ResonanceKind::HalfPiMultiple { n });
            }
        }
    }
    best
}

pub fn check_nonresonance(lattice: &LatticePair, params: &PhysicalParams, n: usize) -> NonresonanceReport {
    check_nonresonance_tol(lattice, params, n, RESONANCE_TOL)
}

/// Scans the nonzero modes of the box `[−N,N]²`.
pub fn check_nonresonance_tol(
    lattice: &LatticePair,
    params: &PhysicalParams,
    n: usize,
    tol: f64,
) -> NonresonanceReport {
    let n = n as i32;
    let mut resonant_modes = Vec::new();
    let mut min_margin = f64::INFINITY;
    for m1 in -n..=n {
        for m2 in -n..=n {
            let mode = Mode::new(m1, m2);
            if mode.is_zero() {
                continue;
            }
            let s = lattice.wavevector(mode).norm();
            let (d, kind) = resonance_margin(s, params.alpha, params.depth);
            min_margin = min_margin.min(d);
            if d <= tol {
                resonant_modes.push(ResonantMode {
                    mode,
                    kind,
                    distance: d,
                });
            }
        }
    }
    NonresonanceReport {
        resonant_modes,
        min_margin,
        tolerance: tol,
    }
}
