//! Closed-form Fourier-multiplier building blocks of the quadratic and cubic interaction coefficients.

use crate::dispersion::{j10_multiplier, rho, root_scale, DispersionQuery, ROOT_TOL};
use crate::error::{Error, Result};
use crate::lattice_spectral::{multipliers_c_t, PhysicalParams, Vec2};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TKind {
    T10,
    T20_1,
    T20_2,
    T30_1,
    T30_2,
    R1,
    R2,
    R3,
}

impl TKind {
    pub fn needs_second(self) -> bool {
        matches!(self, TKind::T20_2 | TKind::T30_2 | TKind::R3)
    }
}

struct Ctx<'a> {
    p: &'a PhysicalParams,
}

impl Ctx<'_> {
    fn alpha(&self) -> f64 {
        self.p.alpha
    }

    fn c0(&self) -> Vec2 {
        self.p.c0
    }

    fn c(&self, k: Vec2) -> Result<f64> {
        Ok(multipliers_c_t(k.norm(), self.p)?.0)
    }

    /// `(c₀·k)/|k|²`, taken as 0 at `k = 0`.
    fn ratio(&self, k: Vec2) -> f64 {
        let n = k.norm_sq();
        if n == 0.0 {
            0.0
        } else {
            self.c0().dot(k) / n
        }
    }

    fn ratio_perp(&self, k: Vec2) -> f64 {
        let n = k.norm_sq();
        if n == 0.0 {
            0.0
        } else {
            self.c0().perp().dot(k) / n
        }
    }

    fn r1(&self, k: Vec2) -> Result<Vec2> {
        Ok(k.perp() * self.alpha() + k * self.c(k)?)
    }

    fn r2(&self, k: Vec2) -> Result<Vec2> {
        let a = self.alpha();
        Ok(k * (a * a - k.norm_sq()) - k.perp() * (a * self.c(k)?))
    }

    fn r3(&self, k: Vec2, l: Vec2) -> Result<Vec2> {
        Ok(self.r1(k)? * self.ratio(k) + self.r1(l)? * self.ratio(l))
    }

    fn t10(&self, k: Vec2) -> Result<Vec2> {
        Ok(self.r1(k)? * (-self.ratio(k)))
    }

    fn t20_1(&self, k: Vec2) -> Result<Vec2> {
        let a = self.alpha();
        Ok((k * a - k.perp() * self.c(k)?) * a)
    }

    fn t20_2(&self, k: Vec2, l: Vec2) -> Result<Vec2> {
        let a = self.alpha();
        let c0 = self.c0();
        let s = k + l;
        let s2 = nonzero(s, "k+l")?;
        let (rk, rl) = (self.ratio(k), self.ratio(l));
        let pref = self.r1(s)? * (1.0 / (2.0 * s2));
        let bracket =
            a * s.dot(c0) + a * k.dot(l.perp()) * (rl - rk) + s.dot(l * (rl * self.c(l)?) + k * (rk * self.c(k)?));
        Ok(pref * bracket + self.r2(l)? * (rl / 2.0) + self.r2(k)? * (rk / 2.0)
            - k * (0.5 * c0.dot(l))
            - l * (0.5 * c0.dot(k)))
    }

    fn t30_1(&self, k: Vec2) -> Result<Vec2> {
        let a = self.alpha();
        let c0 = self.c0();
        nonzero(k, "k")?;
        let rk = self.ratio(k);
        let rpk = self.ratio_perp(k);
        let ck = self.c(k)?;
        let c2k = self.c(k * 2.0)?;
        let r1 = self.r1(k)?;
        let r2 = self.r2(k)?;
        let r1_2 = self.r1(k * 2.0)?;
        let r2_2 = self.r2(k * 2.0)?;
        Ok(r1 * (-rk * ck * c2k / 3.0)
            - r2_2 * (rk * ck / 12.0)
            - k * (c0.dot(k) * ck / 6.0)
            - r1 * ((a * a - k.norm_sq()) * rk / 2.0)
            + r2.perp() * (a * rk / 3.0)
            + r1_2.perp() * (a * rk * ck / 12.0)
            + r2.perp() * (a * rk / 6.0)
            + r1 * (a * rpk * ck / 6.0)
            + r2_2 * (a * rpk / 12.0)
            + k * (a * c0.perp().dot(k) / 6.0)
            + r1 * (a * a * rk / 6.0))
    }

    fn t30_2(&self, k: Vec2, l: Vec2) -> Result<Vec2> {
        let a = self.alpha();
        let c0 = self.c0();
        let k2 = nonzero(k, "k")?;
        nonzero(l, "l")?;
        let d = k - l;
        let s = k + l;
        let d2 = nonzero(d, "k-l")?;
        let s2 = nonzero(s, "k+l")?;
        let r3 = self.r3(k, l)?;
        let pi_d = d.dot(r3) / d2;
        let pi_s = s.dot(r3) / s2;
        let (rk, rl) = (self.ratio(k), self.ratio(l));
        let r1k = self.r1(k)?;
        let r1l = self.r1(l)?;
        let r2k = self.r2(k)?;
        let r2l = self.r2(l)?;
        let r1d = self.r1(d)?;
        let r1s = self.r1(s)?;
        let r2d = self.r2(d)?;
        let r2s = self.r2(s)?;
        let kk = k * (1.0 / k2);

        let mut out = r1k * (-kk.dot(r1d * pi_d + r1s * pi_s) / 6.0);
        out = out - r2d * (pi_d / 12.0) - r2s * (pi_s / 12.0);
        out = out - l * (l.dot(r3) / 6.0);
        out = out - r1k * (kk.dot(r2l * (2.0 * rl) + r2k * rk) / 6.0);
        out += k * (k.dot(r1l) * rl / 6.0);
        out += r2l.perp() * (a * rl / 6.0);
        out += (r1d.perp() * pi_d + r2l.perp() * rl + r2k.perp() * rk) * (a / 12.0);
        out += (r1s.perp() * pi_s + r2k.perp() * (rk / k2) + r2l.perp() * rl) * (a / 12.0);
        out += r1k * (a / 6.0 * kk.dot(r1d * (c0.perp().dot(d) / d2) + r1s * (c0.perp().dot(s) / s2)));
        out = out + r2d * (a / 6.0 * c0.dot(d) / d2) + r2s * (a / 6.0 * c0.dot(s) / s2);
        out = out + l * (a / 3.0 * c0.perp().dot(l)) + r1k * (a * a / 6.0 * rk);
        out = out - r1k * (a / 6.0 * kk.dot(r1l.perp()) * rl) - r1l * (a * a / 6.0 * rl);
        Ok(out)
    }
}

fn nonzero(k: Vec2, name: &str) -> Result<f64> {
    let n = k.norm_sq();
    if n == 0.0 {
        Err(Error::ZeroDenominator {
            combination: name.to_string(),
        })
    } else {
        Ok(n)
    }
}

/// Vector-valued multipliers `T₁₀ … T₃₀,₂` and `r₁ … r₃`.
pub fn t_multipliers(k: Vec2, l: Option<Vec2>, which: TKind, params: &PhysicalParams) -> Result<Vec2> {
    let cx = Ctx { p: params };
    let second = || l.ok_or_else(|| Error::InvalidParams(format!("{which:?} needs a second wave vector")));
    match which {
        TKind::T10 => {
            nonzero(k, "k")?;
            cx.t10(k)
        }
        TKind::T20_1 => cx.t20_1(k),
        TKind::T20_2 => cx.t20_2(k, second()?),
        TKind::T30_1 => cx.t30_1(k),
        TKind::T30_2 => cx.t30_2(k, second()?),
        TKind::R1 => cx.r1(k),
        TKind::R2 => cx.r2(k),
        TKind::R3 => cx.r3(k, second()?),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoeffs {
    pub p20_2: f64,
    pub p20_1_of_k: f64,
    pub q20_2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicCoeffs {
    pub p30_1_of_k: f64,
    pub p30_2: f64,
}

/// `p₂₀,₂(k,ℓ)`; either argument may be zero.
pub fn p20_2(k: Vec2, l: Vec2, params: &PhysicalParams) -> Result<f64> {
    let cx = Ctx { p: params };
    let a = cx.alpha();
    let c0 = cx.c0();
    let tk = cx.t10(k)?;
    let tl = cx.t10(l)?;
    Ok(0.5 * tk.dot(tl) + 0.5 * k.dot(c0) * l.dot(c0) + cx.t20_2(k, l)?.dot(c0) + a / 2.0 * (tk + tl).dot(c0.perp()))
}

pub fn p20_1(k: Vec2, params: &PhysicalParams) -> Result<f64> {
    let cx = Ctx { p: params };
    let a = cx.alpha();
    let c0 = cx.c0();
    nonzero(k, "k")?;
    let t = cx.t10(k)?;
    Ok(0.5 * t.norm_sq() - 0.5 * k.dot(c0).powi(2) + cx.t20_1(k)?.dot(c0) + a * t.dot(c0.perp()))
}

/// `q = p / (J₁₀ multiplier at k+ℓ)`, refusing near-roots of `ρ(k+ℓ)`.
pub fn q_from_p(k: Vec2, l: Vec2, p: f64, params: &PhysicalParams) -> Result<f64> {
    let s = k + l;
    nonzero(s, "k+l")?;
    let r = rho(&DispersionQuery::new(s, params.c0, params.beta), params)?;
    if r.abs() < ROOT_TOL * root_scale(s, params)? {
        return Err(Error::SecondHarmonicResonance {
            monomial: format!("k+l = ({}, {})", s.x, s.y),
            rho: r,
        });
    }
    Ok(p / j10_multiplier(s, params)?)
}

pub fn quadratic_coeffs(k: Vec2, l: Vec2, params: &PhysicalParams) -> Result<QuadraticCoeffs> {
    nonzero(k, "k")?;
    nonzero(l, "l")?;
    let p = p20_2(k, l, params)?;
    Ok(QuadraticCoeffs {
        p20_2: p,
        p20_1_of_k: p20_1(k, params)?,
        q20_2: q_from_p(k, l, p, params)?,
    })
}

pub fn p30_1(k: Vec2, params: &PhysicalParams) -> Result<f64> {
    let cx = Ctx { p: params };
    let a = cx.alpha();
    let c0 = cx.c0();
    let t10 = cx.t10(k)?;
    let t21 = cx.t20_1(k)?;
    let t22 = cx.t20_2(k, k)?;
    Ok(2.0 / 3.0 * t10.dot(t21) + t10.dot(t22) / 3.0
        - a / 3.0 * c0.dot(k) * c0.perp().dot(k)
        - c0.dot(k) * t10.dot(k) / 3.0
        - a * a / 2.0 * t10.dot(c0)
        + a / 3.0 * (2.0 * c0.perp().dot(t21) + c0.perp().dot(t22))
        + cx.t30_1(k)?.dot(c0)
        - params.beta / 2.0 * k.norm_sq().powi(2))
}

pub fn p30_2(k: Vec2, l: Vec2, params: &PhysicalParams) -> Result<f64> {
    let cx = Ctx { p: params };
    let a = cx.alpha();
    let c0 = cx.c0();
    let t10k = cx.t10(k)?;
    let t10l = cx.t10(l)?;
    let t21k = cx.t20_1(k)?;
    let t21l = cx.t20_1(l)?;
    let tm = cx.t20_2(k, -l)?;
    let tp = cx.t20_2(k, l)?;
    Ok((t10k.dot(t21k) + t10l.dot(tm) + t10l.dot(tp)) / 3.0
        - a / 3.0 * c0.dot(l) * c0.perp().dot(l)
        - c0.dot(l) * t10k.dot(l) / 3.0
        - a * a / 6.0 * (t10k.dot(c0) + 2.0 * t10l.dot(c0))
        + a / 3.0 * (c0.perp().dot(t21l) + c0.perp().dot(tm) + c0.perp().dot(tp))
        + cx.t30_2(k, l)?.dot(c0)
        - params.beta / 6.0 * (k.norm_sq() * l.norm_sq() + 2.0 * k.dot(l).powi(2)))
}

pub fn cubic_coeffs(k: Vec2, l: Vec2, params: &PhysicalParams) -> Result<CubicCoeffs> {
    Ok(CubicCoeffs {
        p30_1_of_k: p30_1(k, params)?,
        p30_2: p30_2(k, l, params)?,
    })
}
