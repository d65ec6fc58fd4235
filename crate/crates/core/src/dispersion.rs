//! Linear theory: dispersion relation, reference velocity, transversality and `J₁₀`.

use crate::error::{Error, Result};
use crate::lattice_spectral::{multipliers_c_t, LatticePair, Mode, PhysicalParams, SpectralScalarField, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Relative tolerance for calling `ρ(k)` a root, against the scale `g|k|²t(|k|)`.
pub const ROOT_TOL: f64 = 1e-8;
/// Kernel components of a right-hand side must be below this fraction of its norm.
pub const RANGE_TOL: f64 = 1e-12;
pub const NEWTON_TOL: f64 = 1e-12;
pub const NEWTON_MAX_ITER: usize = 50;

/// The four kernel modes `±k₁, ±k₂` in generator indices.
pub const KERNEL_MODES: [Mode; 4] = [
    Mode { m1: 1, m2: 0 },
    Mode { m1: -1, m2: 0 },
    Mode { m1: 0, m2: 1 },
    Mode { m1: 0, m2: -1 },
];

pub fn is_kernel_mode(m: Mode) -> bool {
    KERNEL_MODES.contains(&m)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersionQuery {
    pub k: Vec2,
    pub c: Vec2,
    pub beta: f64,
}

impl DispersionQuery {
    pub fn new(k: Vec2, c: Vec2, beta: f64) -> Self {
        Self { k, c, beta }
    }
}

fn t_of(k: Vec2, params: &PhysicalParams) -> Result<f64> {
    if k.norm_sq() == 0.0 {
        return Err(Error::ZeroMode {
            context: "dispersion relation".into(),
        });
    }
    Ok(multipliers_c_t(k.norm(), params)?.1)
}

/// `ρ(k,c,β) = [g + β|k|² − (α/|k|²)(c·k)(k⊥·c)]|k|²t(|k|) − (c·k)²`.
pub fn rho(q: &DispersionQuery, params: &PhysicalParams) -> Result<f64> {
    let t = t_of(q.k, params)?;
    let k2 = q.k.norm_sq();
    let ck = q.c.dot(q.k);
    let bracket = params.gravity + q.beta * k2 - params.alpha / k2 * ck * q.k.perp().dot(q.c);
    Ok(bracket * k2 * t - ck * ck)
}

/// `∇_c ρ = −αt[(k⊥·c)k + (c·k)k⊥] − 2(c·k)k`.
pub fn grad_c_rho(q: &DispersionQuery, params: &PhysicalParams) -> Result<Vec2> {
    let t = t_of(q.k, params)?;
    let k = q.k;
    let ck = q.c.dot(k);
    Ok((k * k.perp().dot(q.c) + k.perp() * ck) * (-params.alpha * t) - k * (2.0 * ck))
}

/// Scale against which `|ρ(k)|` is judged.
pub fn root_scale(k: Vec2, params: &PhysicalParams) -> Result<f64> {
    let t = t_of(k, params)?;
    Ok((params.gravity * k.norm_sq() * t).abs())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobianKind {
    Analytic,
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOutcome {
    pub c0: Vec2,
    pub iterations: usize,
    pub residual: f64,
}

/// Newton solve of `ρ(k₁,c,β) = ρ(k₂,c,β) = 0` for the reference velocity.
pub fn solve_c0(
    lattice: &LatticePair,
    params: &PhysicalParams,
    beta: f64,
    guess: Vec2,
    jacobian: JacobianKind,
) -> Result<NewtonOutcome> {
    let (k1, k2) = (lattice.k1, lattice.k2);
    let f = |c: Vec2| -> Result<(f64, f64)> {
        Ok((
            rho(&DispersionQuery::new(k1, c, beta), params)?,
            rho(&DispersionQuery::new(k2, c, beta), params)?,
        ))
    };
    let row = |k: Vec2, c: Vec2| -> Result<Vec2> {
        match jacobian {
            JacobianKind::Analytic => grad_c_rho(&DispersionQuery::new(k, c, beta), params),
            JacobianKind::FiniteDifference => {
                let h = 1e-6 * (1.0 + c.norm());
                let r = |d: Vec2| rho(&DispersionQuery::new(k, c + d, beta), params);
                let ex = Vec2::new(h, 0.0);
                let ey = Vec2::new(0.0, h);
                Ok(Vec2::new(
                    (r(ex)? - r(-ex)?) / (2.0 * h),
                    (r(ey)? - r(-ey)?) / (2.0 * h),
                ))
            }
        }
    };

    let mut c = guess;
    let mut res = f64::INFINITY;
    for it in 1..=NEWTON_MAX_ITER {
        let (f1, f2) = f(c)?;
        res = f1.hypot(f2);
        if !res.is_finite() {
            break;
        }
        if res < NEWTON_TOL {
            return Ok(NewtonOutcome {
                c0: c,
                iterations: it,
                residual: res,
            });
        }
        let a = row(k1, c)?;
        let b = row(k2, c)?;
        let det = a.x * b.y - a.y * b.x;
        if det.abs() <= 1e-14 * a.norm() * b.norm() || det == 0.0 {
            return Err(Error::SingularJacobian { det });
        }
        let dx = (f1 * b.y - f2 * a.y) / det;
        let dy = (a.x * f2 - b.x * f1) / det;
        c = c - Vec2::new(dx, dy);
    }
    Err(Error::NonConvergence {
        iterations: NEWTON_MAX_ITER,
        residual: res,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransversalityReport {
    pub roots_found: Vec<Mode>,
    pub det_value: f64,
    pub pass: bool,
}

pub fn check_transversality(lattice: &LatticePair, params: &PhysicalParams, n: usize) -> Result<TransversalityReport> {
    let nn = n as i32;
    let mut roots = Vec::new();
    for m1 in -nn..=nn {
        for m2 in -nn..=nn {
            let m = Mode::new(m1, m2);
            if m.is_zero() {
                continue;
            }
            let k = lattice.wavevector(m);
            let r = rho(&DispersionQuery::new(k, params.c0, params.beta), params)?;
            if r.abs() < ROOT_TOL * root_scale(k, params)? {
                roots.push(m);
            }
        }
    }
    let a = grad_c_rho(&DispersionQuery::new(lattice.k1, params.c0, params.beta), params)?;
    let b = grad_c_rho(&DispersionQuery::new(lattice.k2, params.c0, params.beta), params)?;
    let det = a.x * b.y - a.y * b.x;
    let exact = roots.len() == 4 && KERNEL_MODES.iter().all(|m| roots.contains(m));
    let pass = exact && det.abs() > ROOT_TOL * (1.0 + a.norm() * b.norm());
    Ok(TransversalityReport {
        roots_found: roots,
        det_value: det,
        pass,
    })
}

/// Fourier multiplier of `J₁₀` at mode `k`: `g` at `k = 0`, else `(c(|k|)/|k|²)ρ(k,c₀,β)`.
pub fn j10_multiplier(k: Vec2, params: &PhysicalParams) -> Result<f64> {
    let k2 = k.norm_sq();
    if k2 == 0.0 {
        return Ok(params.gravity);
    }
    let (c, _) = multipliers_c_t(k.norm(), params)?;
    let c0 = params.c0;
    let ck = c0.dot(k);
    // Equal to cρ/|k|² because c·t = 1, and finite where t vanishes.
    Ok(params.gravity + params.beta * k2 - (params.alpha * k.perp().dot(c0) * ck + c * ck * ck) / k2)
}

pub fn j10_apply(
    eta: &SpectralScalarField,
    params: &PhysicalParams,
    lattice: &LatticePair,
) -> Result<SpectralScalarField> {
    let mut out = SpectralScalarField::zeros(eta.n());
    for (m, v) in eta.iter_nonzero() {
        out.set(m, v * j10_multiplier(lattice.wavevector(m), params)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct J10Solution {
    pub eta: SpectralScalarField,
    /// Set when `β = 0`: the inverse is unbounded and the result is only formal.
    pub formal: bool,
    pub smallest_divisor: f64,
    pub smallest_divisor_mode: Option<Mode>,
}

/// Inverse of `J₁₀` on its range; kernel modes of the result are zero.
pub fn j10_solve(f: &SpectralScalarField, params: &PhysicalParams, lattice: &LatticePair) -> Result<J10Solution> {
    let norm = f.l2_norm();
    for &m in &KERNEL_MODES {
        let a = f.get(m).norm();
        if a > RANGE_TOL * norm {
            return Err(Error::RangeViolation { mode: m, magnitude: a });
        }
    }
    let mut eta = SpectralScalarField::zeros(f.n());
    let mut smallest = f64::INFINITY;
    let mut smallest_mode = None;
    for (m, v) in f.iter_nonzero() {
        if is_kernel_mode(m) {
            continue;
        }
        let k = lattice.wavevector(m);
        let d = j10_multiplier(k, params)?;
        if !m.is_zero() {
            let r = rho(&DispersionQuery::new(k, params.c0, params.beta), params)?;
            if r.abs() < ROOT_TOL * root_scale(k, params)? {
                return Err(Error::NearZeroDivisor { mode: m, rho: r });
            }
        }
        if d.abs() < smallest {
            smallest = d.abs();
            smallest_mode = Some(m);
        }
        eta.set(m, v / Complex64::new(d, 0.0));
    }
    Ok(J10Solution {
        eta,
        formal: params.beta == 0.0,
        smallest_divisor: smallest,
        smallest_divisor_mode: smallest_mode,
    })
}
