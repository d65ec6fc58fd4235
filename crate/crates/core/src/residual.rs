//! Direct evaluation of the steady-wave functional `J(η, μ)` with truncated `T`-expansions.

use crate::bifurcation::{synthesize_wave, AmplitudeState, ExpansionTables};
use crate::dispersion::KERNEL_MODES;
use crate::error::{Error, Result};
use crate::expansion_ops::{Expansion, LinearOps};
use crate::lattice_spectral::{
    LatticePair, PhysicalParams, SpectralScalarField, SpectralSpace, SpectralVectorField, Vec2,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub const DEFAULT_ORDER: usize = 4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub residual_field: SpectralScalarField,
    pub l2_norm: f64,
    pub sup_norm: f64,
    pub kernel_projection_norm: f64,
    pub truncation_order: usize,
}

/// `sin(x)/x`, exact at the origin.
fn sinc(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Evaluates `J` for one lattice, parameter set and truncation box.
pub struct ResidualEvaluator {
    ops: LinearOps,
}

impl ResidualEvaluator {
    pub fn new(lattice: &LatticePair, params: &PhysicalParams, n: usize) -> Result<Self> {
        Ok(Self {
            ops: LinearOps::new(SpectralSpace::new(*lattice, n), *params)?,
        })
    }

    pub fn from_ops(ops: LinearOps) -> Self {
        Self { ops }
    }

    pub fn ops(&self) -> &LinearOps {
        &self.ops
    }

    fn sp(&self) -> &SpectralSpace {
        self.ops.space()
    }

    /// Horizontal surface trace `u*_h` and normal flux `u*·N = ∇·S(η)⊥` of the reference flow.
    pub fn ustar_surface(&self, eta: &SpectralScalarField, c: Vec2) -> (SpectralVectorField, SpectralScalarField) {
        let sp = self.sp();
        let a = self.ops.alpha();
        let g = sp.to_grid(eta);
        let cos = sp.from_grid(&g.map(|e| (a * e).cos()));
        let sin = sp.from_grid(&g.map(|e| (a * e).sin()));
        let uh = &SpectralVectorField::from_scalar(&cos, c) + &SpectralVectorField::from_scalar(&sin, c.perp());

        // sin(αη)/α and (cos(αη) − 1)/α without cancellation at small α.
        let s_sin = sp.from_grid(&g.map(|e| e * sinc(a * e)));
        let s_cos = sp.from_grid(&g.map(|e| {
            let h = sinc(a * e / 2.0);
            -(a * e * e / 2.0) * h * h
        }));
        let s = &SpectralVectorField::from_scalar(&s_cos, c) + &SpectralVectorField::from_scalar(&s_sin, c.perp());
        (uh, sp.div_perp(&s))
    }

    pub fn evaluate(&self, eta: &SpectralScalarField, mu: Vec2, order: usize) -> Result<ResidualReport> {
        if order == 0 {
            return Err(Error::OrderMismatch {
                needed: 1,
                available: 0,
            });
        }
        let sp = self.sp();
        let params = self.ops.params();
        let c = params.c0 + mu;
        let ex = Expansion::new(&self.ops, eta)?;
        let t = ex.taylor_t(c, order)?.partial_sum();
        let (uh, un) = self.ustar_surface(eta, c);
        let ge = ex.grad_eta();

        let tg = |f: &SpectralScalarField| sp.to_grid(f);
        let (tx, ty) = (tg(&t.x), tg(&t.y));
        let (gx, gy) = (tg(&ge.x), tg(&ge.y));
        let (hx, hy) = (tg(&uh.x), tg(&uh.y));
        let un = tg(&un);
        let eg = tg(eta);
        let beta = params.beta;
        let grav = params.gravity;

        let m = sp.grid_size();
        let mut main = Vec::with_capacity(m * m);
        let mut flux_x = Vec::with_capacity(m * m);
        let mut flux_y = Vec::with_capacity(m * m);
        for i in 0..m * m {
            let (t1, t2) = (tx.values()[i], ty.values()[i]);
            let (p1, p2) = (gx.values()[i], gy.values()[i]);
            let w = 1.0 + p1 * p1 + p2 * p2;
            let q = -un.values()[i] + t1 * p1 + t2 * p2;
            let v = 0.5 * (t1 * t1 + t2 * t2) - q * q / (2.0 * w)
                + t1 * hx.values()[i]
                + t2 * hy.values()[i]
                + grav * eg.values()[i];
            main.push(v);
            let r = w.sqrt();
            flux_x.push(p1 / r);
            flux_y.push(p2 / r);
        }
        let regrid = |d: Vec<Complex64>| sp.from_grid(&tx.with_values(d));
        let mut field = regrid(main);
        if beta != 0.0 {
            let flux = SpectralVectorField {
                x: regrid(flux_x),
                y: regrid(flux_y),
            };
            field -= &(&sp.div(&flux) * beta);
        }
        Ok(self.report(field, order))
    }

    fn report(&self, field: SpectralScalarField, order: usize) -> ResidualReport {
        let kernel = KERNEL_MODES
            .iter()
            .map(|&m| field.get(m).norm_sqr())
            .sum::<f64>()
            .sqrt();
        ResidualReport {
            l2_norm: field.l2_norm(),
            sup_norm: self.sp().to_grid(&field).max_abs(),
            kernel_projection_norm: kernel,
            truncation_order: order,
            residual_field: field,
        }
    }
}

/// `J(η, μ)` with `T` truncated at `order`, on the truncation box of `eta`.
pub fn evaluate_j(
    eta: &SpectralScalarField,
    mu: Vec2,
    order: usize,
    params: &PhysicalParams,
    lattice: &LatticePair,
) -> Result<ResidualReport> {
    ResidualEvaluator::new(lattice, params, eta.n())?.evaluate(eta, mu, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub amplitude: f64,
    pub l2_norm: f64,
    pub sup_norm: f64,
    pub kernel_l2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingStudy {
    pub rows: Vec<ScalingRow>,
    pub slope_full: f64,
    pub slope_kernel: f64,
    pub truncation_order: usize,
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() < 3 || xs.len() != ys.len() {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::DegenerateFit("non-positive value in log-log fit".into()));
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all amplitudes equal".into()));
    }
    Ok(sxy / sxx)
}

/// Residual of the synthesised second-order wave along the ray `s·(A, B)`.
pub fn scaling_study(
    evaluator: &ResidualEvaluator,
    amplitudes: &[f64],
    direction: AmplitudeState,
    order: usize,
    tables: &ExpansionTables,
) -> Result<ScalingStudy> {
    if amplitudes.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least 3 amplitudes, got {}",
            amplitudes.len()
        )));
    }
    if amplitudes.iter().any(|a| !(a.is_finite() && *a > 0.0)) || amplitudes.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParams(
            "amplitudes must be positive and strictly decreasing".into(),
        ));
    }
    let n = evaluator.sp().n();
    let mut rows = Vec::with_capacity(amplitudes.len());
    for &s in amplitudes {
        let state = AmplitudeState::new(direction.a * s, direction.b * s);
        let (eta, mu) = synthesize_wave(&state, tables, n);
        let rep = evaluator.evaluate(&eta, mu, order)?;
        rows.push(ScalingRow {
            amplitude: s,
            l2_norm: rep.l2_norm,
            sup_norm: rep.sup_norm,
            kernel_l2: rep.kernel_projection_norm,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.amplitude).collect();
    let full: Vec<f64> = rows.iter().map(|r| r.l2_norm).collect();
    let kern: Vec<f64> = rows.iter().map(|r| r.kernel_l2).collect();
    Ok(ScalingStudy {
        slope_full: loglog_slope(&xs, &full)?,
        slope_kernel: loglog_slope(&xs, &kern)?,
        rows,
        truncation_order: order,
    })
}
