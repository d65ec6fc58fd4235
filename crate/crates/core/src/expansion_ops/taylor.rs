use super::operators::{HodgeArgument, LinearOps, VectorArgument};
use crate::error::{Error, Result};
use crate::lattice_spectral::{SpectralScalarField, SpectralSpace, SpectralVectorField, Vec2};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::cell::RefCell;

/// Homogeneous terms `term[k]` of degree `k` in `η`, for `k = 0..=K`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorSeries<F> {
    terms: Vec<F>,
}

pub trait Arity {
    const ARITY: &'static str;
    fn zeros_like(&self) -> Self;
    fn accumulate(&mut self, other: &Self);
}

impl Arity for SpectralScalarField {
    const ARITY: &'static str = "scalar";
    fn zeros_like(&self) -> Self {
        SpectralScalarField::zeros(self.n())
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

impl Arity for SpectralVectorField {
    const ARITY: &'static str = "vector";
    fn zeros_like(&self) -> Self {
        SpectralVectorField::zeros(self.n())
    }
    fn accumulate(&mut self, other: &Self) {
        *self += other;
    }
}

impl<F: Arity> TaylorSeries<F> {
    pub fn from_terms(terms: Vec<F>) -> Self {
        assert!(!terms.is_empty(), "a Taylor series needs at least the order-0 term");
        Self { terms }
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, k: usize) -> &F {
        &self.terms[k]
    }

    pub fn terms(&self) -> &[F] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<F> {
        self.terms
    }

    pub fn arity(&self) -> &'static str {
        F::ARITY
    }

    /// `Σ_{k≤K} term[k]`.
    pub fn partial_sum(&self) -> F {
        self.partial_sum_to(self.order())
    }

    pub fn partial_sum_to(&self, k: usize) -> F {
        let mut acc = self.terms[0].zeros_like();
        for t in &self.terms[..=k.min(self.order())] {
            acc.accumulate(t);
        }
        acc
    }
}

impl<F: Arity + Serialize> Serialize for TaylorSeries<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Tagged<'a, F> {
            order: usize,
            arity: &'static str,
            field: &'a F,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, f) in self.terms.iter().enumerate() {
            seq.serialize_element(&Tagged {
                order: k,
                arity: F::ARITY,
                field: f,
            })?;
        }
        seq.end()
    }
}

/// Taylor expansions of `H(η)`, `M(η)`, `S(η)` and `T(η)` about the flat surface, at a fixed `η`.
///
/// `η` may be complex-valued; every term is complex-multilinear in `η` and linear in the argument.
pub struct Expansion<'a> {
    ops: &'a LinearOps,
    eta: SpectralScalarField,
    grad_eta: SpectralVectorField,
    grad_sq_pows: RefCell<Vec<SpectralScalarField>>,
}

impl<'a> Expansion<'a> {
    pub fn new(ops: &'a LinearOps, eta: &SpectralScalarField) -> Result<Self> {
        let sp = ops.space();
        if eta.n() != sp.n() {
            return Err(Error::IncompatibleFields {
                left: eta.n(),
                right: sp.n(),
            });
        }
        let grad_eta = sp.grad(eta);
        let one = SpectralScalarField::real_constant(sp.n(), 1.0);
        let g2 = sp.dot(&grad_eta, &grad_eta);
        Ok(Self {
            ops,
            eta: eta.clone(),
            grad_eta,
            grad_sq_pows: RefCell::new(vec![one, g2]),
        })
    }

    pub fn ops(&self) -> &LinearOps {
        self.ops
    }

    pub fn eta(&self) -> &SpectralScalarField {
        &self.eta
    }

    pub fn grad_eta(&self) -> &SpectralVectorField {
        &self.grad_eta
    }

    fn sp(&self) -> &SpectralSpace {
        self.ops.space()
    }

    /// `|∇η|^{2j}`.
    fn grad_sq_pow(&self, j: usize) -> SpectralScalarField {
        let mut pows = self.grad_sq_pows.borrow_mut();
        while pows.len() <= j {
            let next = self.sp().product(&pows[pows.len() - 1], &pows[1]);
            pows.push(next);
        }
        pows[j].clone()
    }

    /// `f · |∇η|^{2j} · (−1)^j`.
    fn with_grad_weight(&self, f: &SpectralScalarField, j: usize) -> SpectralScalarField {
        let w = if j == 0 {
            f.clone()
        } else {
            self.sp().product(f, &self.grad_sq_pow(j))
        };
        if j % 2 == 1 {
            -w
        } else {
            w
        }
    }

    fn check_arg_n(&self, n: usize) -> Result<()> {
        if n == self.sp().n() {
            Ok(())
        } else {
            Err(Error::IncompatibleFields {
                left: n,
                right: self.sp().n(),
            })
        }
    }

    /// `H₀, …, H_K` applied to `arg`.
    pub fn taylor_h(&self, arg: &HodgeArgument, order: usize) -> Result<TaylorSeries<SpectralScalarField>> {
        self.check_arg_n(arg.phi.n())?;
        Ok(TaylorSeries::from_terms(self.h_series(arg, order)?.0))
    }

    /// `H₀..H_K` together with `K₀..K_K` and `u₀..u_K`.
    pub fn expand_k_u_h(
        &self,
        arg: &HodgeArgument,
        order: usize,
    ) -> Result<(
        TaylorSeries<SpectralScalarField>,
        TaylorSeries<SpectralVectorField>,
        TaylorSeries<SpectralScalarField>,
    )> {
        self.check_arg_n(arg.phi.n())?;
        let (h, k, u) = self.h_series(arg, order)?;
        Ok((
            TaylorSeries::from_terms(h),
            TaylorSeries::from_terms(k),
            TaylorSeries::from_terms(u),
        ))
    }

    #[allow(clippy::type_complexity)]
    fn h_series(
        &self,
        arg: &HodgeArgument,
        order: usize,
    ) -> Result<(
        Vec<SpectralScalarField>,
        Vec<SpectralVectorField>,
        Vec<SpectralScalarField>,
    )> {
        let sp = self.sp();
        let alpha = self.ops.alpha();
        let eta = &self.eta;
        let h0 = self.ops.h0(&arg.phi)?;
        let k0 = self.ops.k0(arg, &h0);
        let mut hs = vec![h0.clone()];
        let mut kdots = vec![sp.dot(&k0, &self.grad_eta)];
        let mut ks = vec![k0];
        let mut us = vec![h0];
        let mut subs: Vec<Vec<SpectralScalarField>> = Vec::with_capacity(order);
        for m in 0..order {
            let w = if m == 0 {
                ks[0].clone()
            } else {
                &ks[m] - &sp.product_sv(&us[m - 1], &self.grad_eta)
            };
            let wp_eta = sp.product_sv(eta, &w.perp());
            let u_eta = sp.product(&us[m], eta).zero_mean();
            let phi_m = &sp.inv_laplacian(&sp.div(&wp_eta)).scale_re(-alpha) - &u_eta;
            let arg_m = HodgeArgument::new(wp_eta.mean() * (-alpha), phi_m);
            subs.push(self.h_series(&arg_m, order - 1 - m)?.0);

            let n = m + 1;
            let mut acc = -sp.div(&sp.product_sv(eta, &w));
            for j in 0..=m {
                acc += &subs[m - j][j];
            }
            let hn = acc.scale_re(1.0 / n as f64);
            let kn = sp.perp_grad(&sp.inv_laplacian(&hn)).scale_re(-alpha);
            kdots.push(sp.dot(&kn, &self.grad_eta));
            hs.push(hn);
            ks.push(kn);

            let mut un = if n % 2 == 0 {
                self.with_grad_weight(&hs[0], n / 2)
            } else {
                sp.zeros()
            };
            for i in 1..=n {
                if (n - i) % 2 == 0 {
                    let base = &kdots[i - 1] + &hs[i];
                    un += &self.with_grad_weight(&base, (n - i) / 2);
                }
            }
            us.push(un);
        }
        Ok((hs, ks, us))
    }

    /// `M₀, …, M_K` applied to `arg`.
    pub fn taylor_m(&self, arg: &VectorArgument, order: usize) -> Result<TaylorSeries<SpectralVectorField>> {
        self.check_arg_n(arg.g.n())?;
        Ok(TaylorSeries::from_terms(self.m_series(arg, order)?))
    }

    fn m_series(&self, arg: &VectorArgument, order: usize) -> Result<Vec<SpectralVectorField>> {
        let sp = self.sp();
        let alpha = self.ops.alpha();
        let eta = &self.eta;
        let m0 = self.ops.m0(arg)?;
        if order == 0 {
            return Ok(vec![m0]);
        }
        let u0 = sp.div_perp(&arg.g);
        let mut mdots = vec![sp.dot(&m0, &self.grad_eta)];
        let mut ms = vec![m0];
        let mut us = vec![u0];
        let mut subs: Vec<Vec<SpectralVectorField>> = Vec::with_capacity(order);
        for m in 0..order {
            let v = if m == 0 {
                ms[0].clone()
            } else {
                &ms[m] + &sp.product_sv(&us[m - 1], &self.grad_eta)
            };
            let vp_eta = sp.product_sv(eta, &v.perp());
            let arg_m = VectorArgument::new(vp_eta.mean() * alpha, vp_eta.clone());
            subs.push(self.m_series(&arg_m, order - 1 - m)?);

            let n = m + 1;
            let mut acc = vp_eta.scale_re(alpha);
            acc -= &sp.grad(&sp.product(&us[m], eta));
            for j in 0..=m {
                acc += &subs[m - j][j];
            }
            let mn = acc.scale_re(1.0 / n as f64);
            if n < order {
                mdots.push(sp.dot(&mn, &self.grad_eta));
            }
            ms.push(mn);

            if n < order {
                let mut un = if n % 2 == 0 {
                    self.with_grad_weight(&us[0], n / 2)
                } else {
                    sp.zeros()
                };
                for (i, md) in mdots.iter().enumerate().take(n) {
                    if (n - 1 - i) % 2 == 0 {
                        un -= &self.with_grad_weight(md, (n - 1 - i) / 2);
                    }
                }
                us.push(un);
            }
        }
        Ok(ms)
    }

    /// `S₁..S_K` (with `term[0] = 0`) of `S(η)` for velocity `c`.
    pub fn expand_s(&self, c: Vec2, order: usize) -> TaylorSeries<SpectralVectorField> {
        let sp = self.sp();
        let alpha = self.ops.alpha();
        let mut terms = vec![sp.vzeros()];
        let mut eta_pow = self.eta.clone();
        let mut coef = 1.0;
        for k in 1..=order {
            if k > 1 {
                eta_pow = sp.product(&eta_pow, &self.eta);
                coef *= alpha / k as f64;
            }
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let dir = if k % 2 == 0 { c } else { c.perp() };
            terms.push(SpectralVectorField::from_scalar(&eta_pow, dir * (sign * coef)));
        }
        TaylorSeries::from_terms(terms)
    }

    /// `T₀..T_K` of `T(η) = M(η)(0, S(η))`.
    pub fn taylor_t(&self, c: Vec2, order: usize) -> Result<TaylorSeries<SpectralVectorField>> {
        let s = self.expand_s(c, order);
        let mut terms = vec![self.sp().vzeros(); order + 1];
        for j in 1..=order {
            let ms = self.m_series(&VectorArgument::field(s.term(j).clone()), order - j)?;
            for (i, mi) in ms.iter().enumerate() {
                terms[i + j] += mi;
            }
        }
        Ok(TaylorSeries::from_terms(terms))
    }
}
