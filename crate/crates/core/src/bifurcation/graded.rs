//! Homogeneous parts `J_n` of `J(η, 0)` and the multilinear forms they polarise to.

use crate::error::Result;
use crate::expansion_ops::{Expansion, LinearOps};
use crate::lattice_spectral::{
    LatticePair, Mode, PhysicalParams, SpectralScalarField, SpectralSpace, SpectralVectorField,
};
use num_complex::Complex64;

/// Graded expansion of `J` about `η = 0`, valid for complex `η`.
pub struct GradedFunctional {
    ops: LinearOps,
}

fn binom_neg_half(j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (-0.5 - i as f64) / (i + 1) as f64)
}

impl GradedFunctional {
    pub fn new(lattice: &LatticePair, params: &PhysicalParams, n: usize) -> Result<Self> {
        Ok(Self {
            ops: LinearOps::new(SpectralSpace::new(*lattice, n), *params)?,
        })
    }

    pub fn n(&self) -> usize {
        self.ops.space().n()
    }

    /// `J₀(η) … J_D(η)`, with `J₀ = 0`.
    pub fn graded(&self, eta: &SpectralScalarField, degree: usize) -> Result<Vec<SpectralScalarField>> {
        let sp = self.ops.space();
        let params = self.ops.params();
        let alpha = params.alpha;
        let c0 = params.c0;
        let zero = sp.zeros();
        let ex = Expansion::new(&self.ops, eta)?;
        let t = ex.taylor_t(c0, degree)?.into_terms();
        let s = ex.expand_s(c0, degree);
        let ge = ex.grad_eta().clone();
        let p = sp.dot(&ge, &ge);

        // Q = −u*·N + T·∇η
        let q: Vec<SpectralScalarField> = (0..=degree)
            .map(|k| {
                let mut v = if k == 0 { zero.clone() } else { -sp.div_perp(s.term(k)) };
                if k >= 2 {
                    v += &sp.dot(&t[k - 1], &ge);
                }
                v
            })
            .collect();
        // 1/(1+P) and (1+P)^{-1/2}, graded by degree.
        let mut ppow = vec![SpectralScalarField::real_constant(sp.n(), 1.0)];
        while 2 * ppow.len() <= degree {
            let next = sp.product(ppow.last().unwrap(), &p);
            ppow.push(next);
        }
        let recip = |d: usize| -> SpectralScalarField {
            if d % 2 == 1 {
                zero.clone()
            } else if (d / 2).is_multiple_of(2) {
                ppow[d / 2].clone()
            } else {
                -&ppow[d / 2]
            }
        };
        // u*_h graded: cos(αη)c₀ + sin(αη)c₀⊥.
        let mut eta_pow = vec![SpectralScalarField::real_constant(sp.n(), 1.0)];
        for _ in 0..degree {
            let next = sp.product(eta_pow.last().unwrap(), eta);
            eta_pow.push(next);
        }
        let mut fact = 1.0;
        let uh: Vec<SpectralVectorField> = (0..=degree)
            .map(|j| {
                if j > 0 {
                    fact *= j as f64;
                }
                let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let dir = if j % 2 == 0 { c0 } else { c0.perp() };
                SpectralVectorField::from_scalar(&eta_pow[j], dir * (sign * alpha.powi(j as i32) / fact))
            })
            .collect();

        let mut q2 = vec![zero.clone(); degree + 1];
        for i in 1..=degree {
            for j in 1..=degree - i {
                q2[i + j] += &sp.product(&q[i], &q[j]);
            }
        }

        let mut out = vec![zero.clone(); degree + 1];
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            let mut v = zero.clone();
            for i in 1..n {
                v += &(&sp.dot(&t[i], &t[n - i]) * 0.5);
            }
            for (i, qi) in q2.iter().enumerate().take(n + 1).skip(2) {
                if qi.is_zero() {
                    continue;
                }
                let r = recip(n - i);
                if !r.is_zero() {
                    v -= &(&sp.product(qi, &r) * 0.5);
                }
            }
            for i in 1..=n {
                v += &sp.dot(&t[i], &uh[n - i]);
            }
            if n == 1 {
                v += &(eta * params.gravity);
            }
            if params.beta != 0.0 && n % 2 == 1 {
                let j = (n - 1) / 2;
                let w = &ppow[j] * binom_neg_half(j);
                v -= &(&sp.div(&sp.product_sv(&w, &ge)) * params.beta);
            }
            *slot = v;
        }
        Ok(out)
    }

    fn deg(&self, eta: &SpectralScalarField, d: usize) -> Result<SpectralScalarField> {
        Ok(self.graded(eta, d)?.swap_remove(d))
    }

    /// `J₂₀(a, b)` by polarisation of `J₂`.
    pub fn j20(&self, a: &SpectralScalarField, b: &SpectralScalarField) -> Result<SpectralScalarField> {
        let ab = self.deg(&(a + b), 2)?;
        Ok(&(&(&ab - &self.deg(a, 2)?) - &self.deg(b, 2)?) * 0.5)
    }

    /// `J₃₀(a, b, c)` by polarisation of `J₃`.
    pub fn j30(
        &self,
        a: &SpectralScalarField,
        b: &SpectralScalarField,
        c: &SpectralScalarField,
    ) -> Result<SpectralScalarField> {
        let mut v = self.deg(&(&(a + b) + c), 3)?;
        v -= &self.deg(&(a + b), 3)?;
        v -= &self.deg(&(a + c), 3)?;
        v -= &self.deg(&(b + c), 3)?;
        v += &self.deg(a, 3)?;
        v += &self.deg(b, 3)?;
        v += &self.deg(c, 3)?;
        Ok(&v * (1.0 / 6.0))
    }

    fn mode(&self, m: Mode) -> SpectralScalarField {
        SpectralScalarField::single_mode(self.n(), m, Complex64::new(1.0, 0.0))
    }

    /// Coefficient of `e^{i(k+ℓ)·x}` in `J₂₀(e^{ik·x}, e^{iℓ·x})`.
    pub fn p20_2(&self, k: Mode, l: Mode) -> Result<Complex64> {
        Ok(self.j20(&self.mode(k), &self.mode(l))?.get(k + l))
    }

    /// Mean of `J₂₀(e^{ik·x}, e^{−ik·x})`.
    pub fn p20_1(&self, k: Mode) -> Result<Complex64> {
        Ok(self.j20(&self.mode(k), &self.mode(-k))?.get(Mode::ZERO))
    }

    /// Coefficient of `e^{ik·x}` in `J₃₀(e^{ik·x}, e^{ik·x}, e^{−ik·x})`.
    pub fn p30_1(&self, k: Mode) -> Result<Complex64> {
        let e = self.mode(k);
        Ok(self.j30(&e, &e, &self.mode(-k))?.get(k))
    }

    /// Coefficient of `e^{ik·x}` in `J₃₀(e^{ik·x}, e^{iℓ·x}, e^{−iℓ·x})`.
    pub fn p30_2(&self, k: Mode, l: Mode) -> Result<Complex64> {
        Ok(self.j30(&self.mode(k), &self.mode(l), &self.mode(-l))?.get(k))
    }
}
