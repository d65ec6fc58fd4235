//! Differentials of `H(η)` and `M(η)` with respect to the surface profile.

use crate::error::{Error, Result};
use crate::expansion_ops::{Expansion, HodgeArgument, LinearOps, VectorArgument};
use crate::lattice_spectral::{SpectralScalarField, SpectralSpace, SpectralVectorField};

/// `H(η)` and `M(η)` replaced by their Taylor partial sums through order `K`.
pub struct TruncatedOperator<'a> {
    expansion: Expansion<'a>,
    order: usize,
}

impl<'a> TruncatedOperator<'a> {
    pub fn new(ops: &'a LinearOps, eta: &SpectralScalarField, order: usize) -> Result<Self> {
        Ok(Self {
            expansion: Expansion::new(ops, eta)?,
            order,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn eta(&self) -> &SpectralScalarField {
        self.expansion.eta()
    }

    pub fn ops(&self) -> &LinearOps {
        self.expansion.ops()
    }

    fn sp(&self) -> &SpectralSpace {
        self.ops().space()
    }

    /// `Σ_{k≤K} H_k(η)(γ,Φ)`.
    pub fn apply_h(&self, arg: &HodgeArgument) -> Result<SpectralScalarField> {
        Ok(self.expansion.taylor_h(arg, self.order)?.partial_sum())
    }

    /// `Σ_{k≤K} M_k(η)(γ,g)`.
    pub fn apply_m(&self, arg: &VectorArgument) -> Result<SpectralVectorField> {
        Ok(self.expansion.taylor_m(arg, self.order)?.partial_sum())
    }

    /// `f / (1 + |∇η|²)` formed on the grid.
    fn over_metric(&self, f: &SpectralScalarField) -> SpectralScalarField {
        let sp = self.sp();
        let ge = self.expansion.grad_eta();
        let gx = sp.to_grid(&ge.x);
        let gy = sp.to_grid(&ge.y);
        let w = gx.zip(&gy, |a, b| 1.0 + a * a + b * b);
        sp.from_grid(&sp.to_grid(f).zip(&w, |a, b| a / b))
    }

    fn check(&self, delta_eta: &SpectralScalarField) -> Result<()> {
        if self.order == 0 {
            return Err(Error::OrderMismatch {
                needed: 1,
                available: 0,
            });
        }
        delta_eta.check_compatible(self.eta())
    }
}

/// `dH[η](δη)(γ,Φ)`.
pub fn dh_apply(
    op: &TruncatedOperator,
    delta_eta: &SpectralScalarField,
    arg: &HodgeArgument,
) -> Result<SpectralScalarField> {
    op.check(delta_eta)?;
    let sp = op.sp();
    let alpha = op.ops().alpha();
    let ge = op.expansion.grad_eta();

    let h = op.apply_h(arg)?;
    let k = &(&SpectralVectorField::constant(sp.n(), arg.gamma) + &sp.grad(&arg.phi))
        - &sp.perp_grad(&sp.inv_laplacian(&h)).scale_re(alpha);
    let u = op.over_metric(&(&sp.dot(&k, ge) + &h));
    let w = &k - &sp.product_sv(&u, ge);
    let wd = sp.product_sv(delta_eta, &w.perp());
    let ud = sp.product(&u, delta_eta);

    let inner = HodgeArgument::new(
        wd.mean() * (-alpha),
        &(&sp.inv_laplacian(&sp.div(&wd)) * (-alpha)) - &ud.zero_mean(),
    );
    Ok(&op.apply_h(&inner)? - &sp.div(&sp.product_sv(delta_eta, &w)))
}

/// `dM[η](δη)(γ,g)`.
pub fn dm_apply(
    op: &TruncatedOperator,
    delta_eta: &SpectralScalarField,
    arg: &VectorArgument,
) -> Result<SpectralVectorField> {
    op.check(delta_eta)?;
    let sp = op.sp();
    let alpha = op.ops().alpha();
    let ge = op.expansion.grad_eta();

    let m = op.apply_m(arg)?;
    let u = op.over_metric(&(&sp.div_perp(&arg.g) - &sp.dot(&m, ge)));
    let v = &m + &sp.product_sv(&u, ge);
    let vd = sp.product_sv(delta_eta, &v.perp());

    let inner = VectorArgument::new(vd.mean() * alpha, vd.clone());
    let mut out = op.apply_m(&inner)?;
    out -= &sp.grad(&sp.product(&u, delta_eta));
    out += &(&vd * alpha);
    Ok(out)
}
