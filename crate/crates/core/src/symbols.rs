//! Principal and sub-principal symbols of `H(η)(0,·)` and `M(η)(0,·)`.

use crate::error::{Error, Result};
use crate::lattice_spectral::{CVec2, PhysicalParams, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Surface derivatives at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolPoint {
    pub grad_eta: Vec2,
    /// `(η_xx, η_xy, η_yy)`.
    pub hess_eta: [f64; 3],
    /// `(η_xxx, η_xxy, η_xyy, η_yyy)`, only used by finite-difference checks.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub third: Option<[f64; 4]>,
}

impl SymbolPoint {
    pub fn new(grad_eta: Vec2, hess_eta: [f64; 3]) -> Self {
        Self {
            grad_eta,
            hess_eta,
            third: None,
        }
    }

    pub fn flat() -> Self {
        Self::new(Vec2::new(0.0, 0.0), [0.0; 3])
    }

    fn hess_row(&self, j: usize) -> Vec2 {
        let [xx, xy, yy] = self.hess_eta;
        if j == 0 {
            Vec2::new(xx, xy)
        } else {
            Vec2::new(xy, yy)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymbolValue {
    pub lambda1: Complex64,
    pub lambda0: Complex64,
    pub lambda0_alpha: Complex64,
    pub m1: Complex64,
    pub m0: Complex64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuValue {
    pub nu1: Vec2,
    pub nu0: CVec2,
}

fn nonzero(k: Vec2) -> Result<()> {
    if k.norm_sq() == 0.0 || !k.is_finite() {
        Err(Error::ZeroMode {
            context: "symbol evaluation".into(),
        })
    } else {
        Ok(())
    }
}

/// `λ^{(1)} = √((1+|p|²)|k|² − (k·p)²)` with `p = ∇η`.
pub fn principal(p: Vec2, k: Vec2) -> f64 {
    ((1.0 + p.norm_sq()) * k.norm_sq() - k.dot(p).powi(2)).sqrt()
}

/// `m^{(1)} = (i k·p + λ^{(1)})/(1+|p|²)`.
pub fn principal_m(p: Vec2, k: Vec2) -> Complex64 {
    (I * k.dot(p) + principal(p, k)) / (1.0 + p.norm_sq())
}

pub fn eval_lambda(point: &SymbolPoint, k: Vec2, params: &PhysicalParams) -> Result<SymbolValue> {
    nonzero(k)?;
    let p = point.grad_eta;
    let w = 1.0 + p.norm_sq();
    let s = k.dot(p);
    let k2 = k.norm_sq();
    let l1 = principal(p, k);
    let m1 = (I * s + l1) / w;

    // ∂m^{(1)}/∂p_a
    let dm_dp = |a: usize| -> Complex64 {
        let (pa, ka) = if a == 0 { (p.x, k.x) } else { (p.y, k.y) };
        let dl = (pa * k2 - s * ka) / l1;
        (I * ka + dl) / w - m1 * (2.0 * pa / w)
    };
    let dm = [dm_dp(0), dm_dp(1)];
    // ∂_{x_j} m^{(1)} through the Hessian.
    let grad_m = |j: usize| -> Complex64 {
        let h = point.hess_row(j);
        dm[0] * h.x + dm[1] * h.y
    };
    let gm = [grad_m(0), grad_m(1)];
    let lap = point.hess_eta[0] + point.hess_eta[2];
    let div_mp = gm[0] * p.x + gm[1] * p.y + m1 * lap;
    let dk = (k * w - p * s) * (1.0 / l1);
    let bracket = div_mp + I * (gm[0] * dk.x + gm[1] * dk.y);

    let m0 = bracket / (2.0 * l1);
    let lambda0 = m0 * w;
    let lambda0_alpha = lambda0 + params.alpha * s * k.dot(p.perp()) / k2;
    Ok(SymbolValue {
        lambda1: Complex64::new(l1, 0.0),
        lambda0,
        lambda0_alpha,
        m1,
        m0,
    })
}

pub fn eval_nu(point: &SymbolPoint, k: Vec2, g: Vec2, params: &PhysicalParams) -> Result<NuValue> {
    nonzero(k)?;
    let (ex, ey) = (point.grad_eta.x, point.grad_eta.y);
    let [exx, exy, eyy] = point.hess_eta;
    let (k1, k2) = (k.x, k.y);
    let l = principal(point.grad_eta, k);
    let kg = k.dot(g.perp());
    let curv = k1 * k1 * eyy - 2.0 * k1 * k2 * exy + k2 * k2 * exx;
    let pre = I / (2.0 * l.powi(5)) * curv;
    let a = params.alpha / (l * l);

    let z1 = pre
        * (k1 * k1 * (-1.0 + 2.0 * ey * ey) * ex - k1 * k2 * ey * (3.0 + 4.0 * ex * ex)
            + 2.0 * k2 * k2 * ex * (1.0 + ex * ex)
            + I * k1 * l)
        + a * (k2 * (1.0 + ex * ex) - k1 * ex * ey);
    let z2 = pre
        * (2.0 * k1 * k1 * ey * (1.0 + ey * ey) - k1 * k2 * ex * (3.0 + 4.0 * ey * ey)
            + k2 * k2 * ey * (-1.0 + 2.0 * ex * ex)
            + I * k2 * l)
        + a * (-k1 * (1.0 + ey * ey) + k2 * ex * ey);

    Ok(NuValue {
        nu1: k * (kg / l),
        nu0: CVec2::new(z1 * kg, z2 * kg),
    })
}
