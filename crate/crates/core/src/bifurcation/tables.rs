//! η₂ table, reduced-equation coefficients and second-order wave synthesis.

use super::closed_form;
use super::graded::GradedFunctional;
use crate::dispersion::{grad_c_rho, j10_multiplier, rho, root_scale, DispersionQuery, ROOT_TOL};
use crate::error::{Error, Result};
use crate::lattice_spectral::{multipliers_c_t, LatticePair, Mode, PhysicalParams, SpectralScalarField, Vec2};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Exponents of `A^i B^j Ā^k B̄^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialKey {
    pub i: u8,
    pub j: u8,
    pub kk: u8,
    pub l: u8,
}

impl MonomialKey {
    pub const fn new(i: u8, j: u8, kk: u8, l: u8) -> Self {
        Self { i, j, kk, l }
    }

    pub fn degree(self) -> u32 {
        (self.i + self.j + self.kk + self.l) as u32
    }

    pub fn conj(self) -> Self {
        Self::new(self.kk, self.l, self.i, self.j)
    }

    /// Fourier mode carried by the monomial, in generator indices.
    pub fn mode(self) -> Mode {
        Mode::new(self.i as i32 - self.kk as i32, self.j as i32 - self.l as i32)
    }

    pub fn eval(self, a: Complex64, b: Complex64) -> Complex64 {
        a.powu(self.i as u32) * b.powu(self.j as u32) * a.conj().powu(self.kk as u32) * b.conj().powu(self.l as u32)
    }
}

impl fmt::Display for MonomialKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}{}", self.i, self.j, self.kk, self.l)
    }
}

impl FromStr for MonomialKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let d: Vec<u8> = s.chars().filter_map(|c| c.to_digit(10).map(|v| v as u8)).collect();
        if d.len() != 4 || s.len() != 4 {
            return Err(Error::InvalidParams(format!("bad monomial key '{s}'")));
        }
        Ok(Self::new(d[0], d[1], d[2], d[3]))
    }
}

impl Serialize for MonomialKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MonomialKey {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Wave amplitudes `(A, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeState {
    pub a: Complex64,
    pub b: Complex64,
}

impl AmplitudeState {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    pub fn real(a: f64, b: f64) -> Self {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    /// `(|A|², |B|²)`.
    pub fn intensities(&self) -> (f64, f64) {
        (self.a.norm_sqr(), self.b.norm_sqr())
    }

    pub fn within(&self, radius: f64) -> bool {
        self.a.norm() <= radius && self.b.norm() <= radius
    }
}

/// How the quadratic and cubic interaction coefficients are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRoute {
    /// The displayed Fourier-multiplier formulas.
    ClosedForm,
    /// Polarisation of the graded Taylor expansion of `J`.
    #[default]
    Spectral,
}

/// Source of `p₂₀,₁`, `p₂₀,₂`, `p₃₀,₁`, `p₃₀,₂` at lattice modes.
pub struct Coefficients<'a> {
    lattice: &'a LatticePair,
    params: &'a PhysicalParams,
    graded: Option<GradedFunctional>,
}

/// Box large enough for every product of three kernel-range modes.
const GRADED_BOX: usize = 7;

impl<'a> Coefficients<'a> {
    pub fn new(lattice: &'a LatticePair, params: &'a PhysicalParams, route: CoefficientRoute) -> Result<Self> {
        let graded = match route {
            CoefficientRoute::ClosedForm => None,
            CoefficientRoute::Spectral => Some(GradedFunctional::new(lattice, params, GRADED_BOX)?),
        };
        Ok(Self {
            lattice,
            params,
            graded,
        })
    }

    fn k(&self, m: Mode) -> Vec2 {
        self.lattice.wavevector(m)
    }

    pub fn p20_2(&self, k: Mode, l: Mode) -> Result<f64> {
        match &self.graded {
            Some(g) => Ok(g.p20_2(k, l)?.re),
            None => closed_form::p20_2(self.k(k), self.k(l), self.params),
        }
    }

    pub fn p20_1(&self, k: Mode) -> Result<f64> {
        match &self.graded {
            Some(g) => Ok(g.p20_1(k)?.re),
            None => closed_form::p20_1(self.k(k), self.params),
        }
    }

    pub fn p30_1(&self, k: Mode) -> Result<f64> {
        match &self.graded {
            Some(g) => Ok(g.p30_1(k)?.re),
            None => closed_form::p30_1(self.k(k), self.params),
        }
    }

    pub fn p30_2(&self, k: Mode, l: Mode) -> Result<f64> {
        match &self.graded {
            Some(g) => Ok(g.p30_2(k, l)?.re),
            None => closed_form::p30_2(self.k(k), self.k(l), self.params),
        }
    }

    /// `q₂₀,₂(k,ℓ)`, with the monomial named in resonance errors.
    pub fn q20_2(&self, k: Mode, l: Mode, monomial: &str) -> Result<f64> {
        let s = self.k(k + l);
        if s.norm_sq() == 0.0 {
            return Err(Error::ZeroDenominator {
                combination: "k+l".into(),
            });
        }
        let r = rho(&DispersionQuery::new(s, self.params.c0, self.params.beta), self.params)?;
        if r.abs() < ROOT_TOL * root_scale(s, self.params)? {
            return Err(Error::SecondHarmonicResonance {
                monomial: monomial.to_string(),
                rho: r,
            });
        }
        Ok(self.p20_2(k, l)? / j10_multiplier(s, self.params)?)
    }
}

const K1: Mode = Mode::new(1, 0);
const K2: Mode = Mode::new(0, 1);

/// Degree-2 correction fields, conjugates included.
pub fn eta2_table_with(coeffs: &Coefficients, n: usize) -> Result<BTreeMap<MonomialKey, SpectralScalarField>> {
    let g = coeffs.params.gravity;
    let one = Complex64::new(1.0, 0.0);
    let mut t = BTreeMap::new();
    let wave = |m: Mode, a: f64| SpectralScalarField::single_mode(n, m, one * a);
    t.insert(
        MonomialKey::new(2, 0, 0, 0),
        wave(K1 + K1, -coeffs.q20_2(K1, K1, "2000")?),
    );
    t.insert(
        MonomialKey::new(1, 1, 0, 0),
        wave(K1 + K2, -2.0 * coeffs.q20_2(K1, K2, "1100")?),
    );
    t.insert(
        MonomialKey::new(1, 0, 1, 0),
        SpectralScalarField::real_constant(n, -2.0 / g * coeffs.p20_1(K1)?),
    );
    t.insert(
        MonomialKey::new(1, 0, 0, 1),
        wave(K1 - K2, -2.0 * coeffs.q20_2(K1, -K2, "1001")?),
    );
    t.insert(
        MonomialKey::new(0, 2, 0, 0),
        wave(K2 + K2, -coeffs.q20_2(K2, K2, "0200")?),
    );
    t.insert(
        MonomialKey::new(0, 1, 0, 1),
        SpectralScalarField::real_constant(n, -2.0 / g * coeffs.p20_1(K2)?),
    );
    let keys: Vec<MonomialKey> = t.keys().copied().collect();
    for key in keys {
        let c = key.conj();
        if c != key {
            let f = t[&key].conj_field();
            t.insert(c, f);
        }
    }
    Ok(t)
}

pub fn eta2_table(
    params: &PhysicalParams,
    lattice: &LatticePair,
    route: CoefficientRoute,
    n: usize,
) -> Result<BTreeMap<MonomialKey, SpectralScalarField>> {
    eta2_table_with(&Coefficients::new(lattice, params, route)?, n)
}

/// Rows `(a₁..a₄)` and `(b₁..b₄)` of the reduced equations.
pub fn ab_coeffs_with(coeffs: &Coefficients) -> Result<[[f64; 4]; 2]> {
    let (lat, p) = (coeffs.lattice, coeffs.params);
    let g = p.gravity;
    let lin = |k: Vec2| -> Result<Vec2> {
        let (c, _) = multipliers_c_t(k.norm(), p)?;
        Ok(grad_c_rho(&DispersionQuery::new(k, p.c0, p.beta), p)? * (c / k.norm_sq()))
    };
    let ga = lin(lat.k1)?;
    let gb = lin(lat.k2)?;
    let z = Mode::ZERO;

    let q11 = coeffs.q20_2(K1, K1, "2000")?;
    let q22 = coeffs.q20_2(K2, K2, "0200")?;
    let q12 = coeffs.q20_2(K1, K2, "1100")?;
    let q1m2 = coeffs.q20_2(K1, -K2, "1001")?;
    let qm12 = coeffs.q20_2(-K1, K2, "0110")?;
    let p1 = coeffs.p20_1(K1)?;
    let p2 = coeffs.p20_1(K2)?;

    let a3 = -4.0 / g * p1 * coeffs.p20_2(K1, z)? - 2.0 * q11 * coeffs.p20_2(-K1, K1 + K1)? + 3.0 * coeffs.p30_1(K1)?;
    let a4 = -4.0 / g * p2 * coeffs.p20_2(K1, z)?
        - 4.0 * q1m2 * coeffs.p20_2(K2, K1 - K2)?
        - 4.0 * q12 * coeffs.p20_2(-K2, K1 + K2)?
        + 6.0 * coeffs.p30_2(K1, K2)?;
    let b3 = -4.0 / g * p1 * coeffs.p20_2(K2, z)?
        - 4.0 * qm12 * coeffs.p20_2(K1, K2 - K1)?
        - 4.0 * q12 * coeffs.p20_2(-K1, K1 + K2)?
        + 6.0 * coeffs.p30_2(K2, K1)?;
    let b4 = -4.0 / g * p2 * coeffs.p20_2(K2, z)? - 2.0 * q22 * coeffs.p20_2(-K2, K2 + K2)? + 3.0 * coeffs.p30_1(K2)?;

    let out = [[ga.x, ga.y, a3, a4], [gb.x, gb.y, b3, b4]];
    let det = out[0][0] * out[1][1] - out[1][0] * out[0][1];
    if det.abs() <= ROOT_TOL * (out[0][0].hypot(out[0][1]) * out[1][0].hypot(out[1][1])) {
        return Err(Error::TransversalityFailure { det });
    }
    Ok(out)
}

pub fn ab_coeffs(params: &PhysicalParams, lattice: &LatticePair, route: CoefficientRoute) -> Result<[[f64; 4]; 2]> {
    ab_coeffs_with(&Coefficients::new(lattice, params, route)?)
}

/// Coefficients of `|A|²` and `|B|²` in a first-order `μᵢ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MuCoeffs {
    #[serde(rename = "abs_a_sq")]
    pub a: f64,
    #[serde(rename = "abs_b_sq")]
    pub b: f64,
}

impl MuCoeffs {
    pub fn eval(&self, a2: f64, b2: f64) -> f64 {
        self.a * a2 + self.b * b2
    }
}

/// First-order `μ₁, μ₂` from the reduced-equation rows.
pub fn mu_from_ab(ab: &[[f64; 4]; 2]) -> Result<(MuCoeffs, MuCoeffs)> {
    let [[a1, a2, a3, a4], [b1, b2, b3, b4]] = *ab;
    let det = a1 * b2 - b1 * a2;
    if det == 0.0 || !det.is_finite() {
        return Err(Error::TransversalityFailure { det });
    }
    Ok((
        MuCoeffs {
            a: -(a3 * b2 - a2 * b3) / det,
            b: -(a4 * b2 - a2 * b4) / det,
        },
        MuCoeffs {
            a: -(a1 * b3 - a3 * b1) / det,
            b: -(a1 * b4 - a4 * b1) / det,
        },
    ))
}

pub fn mu_linear(
    params: &PhysicalParams,
    lattice: &LatticePair,
    route: CoefficientRoute,
) -> Result<(MuCoeffs, MuCoeffs)> {
    mu_from_ab(&ab_coeffs(params, lattice, route)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTables {
    pub ab: [[f64; 4]; 2],
    pub mu1: MuCoeffs,
    pub mu2: MuCoeffs,
    pub eta2: BTreeMap<MonomialKey, SpectralScalarField>,
    pub route: CoefficientRoute,
    /// `β = 0`: the series is a formal approximate solution only.
    pub formal: bool,
}

impl ExpansionTables {
    pub fn compute(params: &PhysicalParams, lattice: &LatticePair, route: CoefficientRoute) -> Result<Self> {
        let coeffs = Coefficients::new(lattice, params, route)?;
        let ab = ab_coeffs_with(&coeffs)?;
        let (mu1, mu2) = mu_from_ab(&ab)?;
        Ok(Self {
            ab,
            mu1,
            mu2,
            eta2: eta2_table_with(&coeffs, 2)?,
            route,
            formal: params.beta == 0.0,
        })
    }
}

/// Second-order wave `η` on the box `n ≥ 2` and its velocity detuning `μ`.
pub fn synthesize_wave(state: &AmplitudeState, tables: &ExpansionTables, n: usize) -> (SpectralScalarField, Vec2) {
    let (a, b) = (state.a, state.b);
    let mut eta = SpectralScalarField::zeros(n);
    eta.add_at(K1, a);
    eta.add_at(-K1, a.conj());
    eta.add_at(K2, b);
    eta.add_at(-K2, b.conj());
    for (key, f) in &tables.eta2 {
        let w = key.eval(a, b);
        for (m, v) in f.iter_nonzero() {
            eta.add_at(m, v * w);
        }
    }
    let (a2, b2) = state.intensities();
    (eta, Vec2::new(tables.mu1.eval(a2, b2), tables.mu2.eval(a2, b2)))
}
