use crate::error::{Error, Result};
use crate::lattice_spectral::{
    multipliers_c_t_tol, CVec2, LatticePair, Mode, PhysicalParams, SpectralScalarField, SpectralSpace,
    SpectralVectorField, Vec2, RESONANCE_TOL,
};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Argument pair `(γ, Φ)` of `H(η)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HodgeArgument {
    pub gamma: CVec2,
    pub phi: SpectralScalarField,
}

impl HodgeArgument {
    pub fn new(gamma: CVec2, phi: SpectralScalarField) -> Self {
        Self { gamma, phi }
    }

    pub fn potential(phi: SpectralScalarField) -> Self {
        Self {
            gamma: CVec2::ZERO,
            phi,
        }
    }
}

/// Argument pair `(γ, g)` of `M(η)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorArgument {
    pub gamma: CVec2,
    pub g: SpectralVectorField,
}

impl VectorArgument {
    pub fn new(gamma: CVec2, g: SpectralVectorField) -> Self {
        Self { gamma, g }
    }

    pub fn field(g: SpectralVectorField) -> Self {
        Self { gamma: CVec2::ZERO, g }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LKind {
    L,
    L1,
    L2,
}

/// The flat-surface operators, with `c(|k|)` and `t(|k|)` tabulated over the truncation box.
#[derive(Clone, Debug)]
pub struct LinearOps {
    space: SpectralSpace,
    params: PhysicalParams,
    ct: Vec<Option<(f64, f64)>>,
}

impl LinearOps {
    pub fn new(space: SpectralSpace, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        let n = space.n();
        let tab = SpectralScalarField::zeros(n);
        let ct = tab
            .iter()
            .map(|(m, _)| {
                if m.is_zero() {
                    return Some((0.0, 0.0));
                }
                let s = space.wavevector(m).norm();
                multipliers_c_t_tol(s, params.alpha, params.depth, RESONANCE_TOL).ok()
            })
            .collect();
        Ok(Self { space, params, ct })
    }

    pub fn space(&self) -> &SpectralSpace {
        &self.space
    }

    pub fn params(&self) -> &PhysicalParams {
        &self.params
    }

    pub fn lattice(&self) -> &LatticePair {
        self.space.lattice()
    }

    pub fn alpha(&self) -> f64 {
        self.params.alpha
    }

    fn index(&self, m: Mode) -> usize {
        let n = self.space.n() as i32;
        ((m.m1 + n) as usize) * (2 * self.space.n() + 1) + (m.m2 + n) as usize
    }

    /// `(c(|k|), t(|k|))` at a mode of the box.
    pub fn ct(&self, m: Mode) -> Result<(f64, f64)> {
        self.ct[self.index(m)].ok_or_else(|| Error::Resonance {
            radius: self.space.wavevector(m).norm(),
            detail: format!("mode {:?} is resonant", m),
        })
    }

    fn scalar_multiplier(
        &self,
        f: &SpectralScalarField,
        mult: impl Fn(Vec2, f64, f64) -> f64,
    ) -> Result<SpectralScalarField> {
        let mut out = SpectralScalarField::zeros(f.n());
        for (m, c) in f.iter_nonzero() {
            if m.is_zero() {
                continue;
            }
            let (cc, tt) = self.ct(m)?;
            out.set(m, c * mult(self.space.wavevector(m), cc, tt));
        }
        Ok(out)
    }

    /// `H₀Φ = D² t(D) Φ`.
    pub fn h0(&self, phi: &SpectralScalarField) -> Result<SpectralScalarField> {
        self.scalar_multiplier(phi, |k, _, t| k.norm_sq() * t)
    }

    /// `H₀⁻¹` on zero-mean fields.
    pub fn h0_inverse(&self, f: &SpectralScalarField) -> Result<SpectralScalarField> {
        self.scalar_multiplier(f, |k, c, _| c / k.norm_sq())
    }

    /// Applies `V(k) (k·ĝ^⊥)/|k|²` mode by mode, with `V` one of the three vector symbols.
    pub fn l_apply(&self, g: &SpectralVectorField, which: LKind) -> Result<SpectralVectorField> {
        let alpha = self.params.alpha;
        let n = g.n();
        let mut out = SpectralVectorField::zeros(n);
        for (m, gx) in g.x.iter() {
            let gy = g.y.get(m);
            if m.is_zero() || (gx == ZERO && gy == ZERO) {
                continue;
            }
            let (c, _) = self.ct(m)?;
            let k = self.space.wavevector(m);
            let kp = k.perp();
            let s = (gy * k.x - gx * k.y) / k.norm_sq();
            let v = match which {
                LKind::L1 => kp * alpha + k * c,
                LKind::L2 => k * (-alpha) + kp * c,
                LKind::L => k * (alpha * alpha - k.norm_sq()) - kp * (alpha * c),
            };
            out.x.set(m, s * v.x);
            out.y.set(m, s * v.y);
        }
        Ok(out)
    }

    /// `M₀(γ, g) = −γ + L₁g`.
    pub fn m0(&self, arg: &VectorArgument) -> Result<SpectralVectorField> {
        let l1 = self.l_apply(&arg.g, LKind::L1)?;
        let n = arg.g.n();
        Ok(&l1 - &SpectralVectorField::constant(n, arg.gamma))
    }

    /// `K₀ = γ + ∇Φ − α∇^⊥Δ⁻¹H₀Φ`.
    pub fn k0(&self, arg: &HodgeArgument, h0: &SpectralScalarField) -> SpectralVectorField {
        let sp = &self.space;
        let mut k = sp.grad(&arg.phi);
        k -= &sp.perp_grad(&sp.inv_laplacian(h0)).scale_re(self.params.alpha);
        k += &SpectralVectorField::constant(arg.phi.n(), arg.gamma);
        k
    }
}
