use super::lattice::{LatticePair, Mode};
use super::vec2::{CVec2, Vec2};
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fourier coefficients of a doubly periodic scalar function on the box `[−N,N]²` of dual indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralScalarField {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl SpectralScalarField {
    pub fn zeros(n: usize) -> Self {
        let side = 2 * n + 1;
        Self {
            n,
            coeffs: vec![ZERO; side * side],
        }
    }

    pub fn constant(n: usize, value: Complex64) -> Self {
        let mut f = Self::zeros(n);
        f.set(Mode::ZERO, value);
        f
    }

    pub fn real_constant(n: usize, value: f64) -> Self {
        Self::constant(n, Complex64::new(value, 0.0))
    }

    /// `value · e^{ik·x}` for the mode `m`.
    pub fn single_mode(n: usize, m: Mode, value: Complex64) -> Self {
        let mut f = Self::zeros(n);
        f.set(m, value);
        f
    }

    /// `a e^{ik·x} + conj(a) e^{−ik·x}`.
    pub fn real_mode(n: usize, m: Mode, a: Complex64) -> Self {
        let mut f = Self::zeros(n);
        f.add_at(m, a);
        f.add_at(-m, a.conj());
        f
    }

    pub fn from_modes<I: IntoIterator<Item = (Mode, Complex64)>>(n: usize, modes: I) -> Self {
        let mut f = Self::zeros(n);
        for (m, c) in modes {
            if f.contains(m) {
                f.add_at(m, c);
            }
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        2 * self.n + 1
    }

    pub fn contains(&self, m: Mode) -> bool {
        m.extent() <= self.n
    }

    fn index(&self, m: Mode) -> Option<usize> {
        if !self.contains(m) {
            return None;
        }
        let n = self.n as i32;
        Some(((m.m1 + n) as usize) * self.side() + (m.m2 + n) as usize)
    }

    pub(crate) fn mode_at(&self, idx: usize) -> Mode {
        let n = self.n as i32;
        let side = self.side();
        Mode::new((idx / side) as i32 - n, (idx % side) as i32 - n)
    }

    /// Coefficient of mode `m`; zero outside the box.
    pub fn get(&self, m: Mode) -> Complex64 {
        self.index(m).map_or(ZERO, |i| self.coeffs[i])
    }

    /// Sets the coefficient of mode `m`. Panics if `m` lies outside the box.
    pub fn set(&mut self, m: Mode, value: Complex64) {
        let i = self
            .index(m)
            .unwrap_or_else(|| panic!("mode {m:?} outside truncation box N = {}", self.n));
        self.coeffs[i] = value;
    }

    pub fn add_at(&mut self, m: Mode, value: Complex64) {
        let v = self.get(m) + value;
        self.set(m, v);
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (Mode, Complex64)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, &c)| (self.mode_at(i), c))
    }

    pub fn iter_nonzero(&self) -> impl Iterator<Item = (Mode, Complex64)> + '_ {
        self.iter().filter(|(_, c)| *c != ZERO)
    }

    pub fn mean(&self) -> Complex64 {
        self.get(Mode::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn map(&self, f: impl Fn(Mode, Complex64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| f(self.mode_at(i), c))
            .collect();
        Self { n: self.n, coeffs }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|_, c| c * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.map(|_, c| c * s)
    }

    /// Copy with the mean removed.
    pub fn zero_mean(&self) -> Self {
        let mut f = self.clone();
        f.set(Mode::ZERO, ZERO);
        f
    }

    /// Truncates to, or zero-pads into, the box of size `n`.
    pub fn resized(&self, n: usize) -> Self {
        let mut f = Self::zeros(n);
        for (m, c) in self.iter() {
            if f.contains(m) {
                f.set(m, c);
            }
        }
        f
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::IncompatibleFields {
                left: self.n,
                right: other.n,
            })
        }
    }

    /// Coefficients of the pointwise complex conjugate: `m ↦ conj(f(−m))`.
    pub fn conj_field(&self) -> Self {
        self.map(|m, _| self.get(-m).conj())
    }

    /// Coefficients of `x ↦ f(−x)`.
    pub fn reflect(&self) -> Self {
        self.map(|m, _| self.get(-m))
    }

    /// Coefficients of `x ↦ f(x + v)`.
    pub fn translate(&self, lattice: &LatticePair, v: Vec2) -> Self {
        self.map(|m, c| c * Complex64::from_polar(1.0, lattice.wavevector(m).dot(v)))
    }

    /// Largest `|f(m) − conj(f(−m))|`; zero exactly for real-valued fields.
    pub fn hermitian_defect(&self) -> f64 {
        self.iter()
            .map(|(m, c)| (c - self.get(-m).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Projects onto real-valued fields: `(f + conj f)/2`.
    pub fn real_part(&self) -> Self {
        self.map(|m, c| (c + self.get(-m).conj()) * 0.5)
    }

    /// `L²` norm normalised by the cell area, i.e. `sqrt(Σ|f̂_m|²)`.
    pub fn l2_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let n = self.n.max(other.n);
        let a = self.resized(n);
        let b = other.resized(n);
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖₂ / max(‖other‖₂, floor)`.
    pub fn rel_l2_diff(&self, other: &Self, floor: f64) -> f64 {
        let n = self.n.max(other.n);
        let d = (&self.resized(n) - &other.resized(n)).l2_norm();
        d / other.l2_norm().max(floor)
    }
}

fn zip_fields(
    a: &SpectralScalarField,
    b: &SpectralScalarField,
    f: impl Fn(Complex64, Complex64) -> Complex64,
) -> SpectralScalarField {
    assert_eq!(a.n, b.n, "truncation mismatch in field arithmetic");
    SpectralScalarField {
        n: a.n,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| f(*x, *y)).collect(),
    }
}

impl Add for &SpectralScalarField {
    type Output = SpectralScalarField;
    fn add(self, o: &SpectralScalarField) -> SpectralScalarField {
        zip_fields(self, o, |x, y| x + y)
    }
}

impl Sub for &SpectralScalarField {
    type Output = SpectralScalarField;
    fn sub(self, o: &SpectralScalarField) -> SpectralScalarField {
        zip_fields(self, o, |x, y| x - y)
    }
}

impl Add for SpectralScalarField {
    type Output = SpectralScalarField;
    fn add(self, o: SpectralScalarField) -> SpectralScalarField {
        &self + &o
    }
}

impl Sub for SpectralScalarField {
    type Output = SpectralScalarField;
    fn sub(self, o: SpectralScalarField) -> SpectralScalarField {
        &self - &o
    }
}

impl AddAssign<&SpectralScalarField> for SpectralScalarField {
    fn add_assign(&mut self, o: &SpectralScalarField) {
        assert_eq!(self.n, o.n, "truncation mismatch in field arithmetic");
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x += y;
        }
    }
}

impl SubAssign<&SpectralScalarField> for SpectralScalarField {
    fn sub_assign(&mut self, o: &SpectralScalarField) {
        assert_eq!(self.n, o.n, "truncation mismatch in field arithmetic");
        for (x, y) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *x -= y;
        }
    }
}

impl Neg for &SpectralScalarField {
    type Output = SpectralScalarField;
    fn neg(self) -> SpectralScalarField {
        self.scale_re(-1.0)
    }
}

impl Neg for SpectralScalarField {
    type Output = SpectralScalarField;
    fn neg(self) -> SpectralScalarField {
        self.scale_re(-1.0)
    }
}

impl Mul<f64> for &SpectralScalarField {
    type Output = SpectralScalarField;
    fn mul(self, s: f64) -> SpectralScalarField {
        self.scale_re(s)
    }
}

impl Mul<f64> for SpectralScalarField {
    type Output = SpectralScalarField;
    fn mul(self, s: f64) -> SpectralScalarField {
        self.scale_re(s)
    }
}

impl Mul<Complex64> for &SpectralScalarField {
    type Output = SpectralScalarField;
    fn mul(self, s: Complex64) -> SpectralScalarField {
        self.scale(s)
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarFieldRepr {
    #[serde(rename = "N")]
    n: usize,
    coeffs: Vec<(i32, i32, f64, f64)>,
}

impl Serialize for SpectralScalarField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.iter_nonzero().map(|(m, c)| (m.m1, m.m2, c.re, c.im)).collect();
        ScalarFieldRepr { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpectralScalarField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ScalarFieldRepr::deserialize(d)?;
        let mut f = SpectralScalarField::zeros(r.n);
        for (m1, m2, re, im) in r.coeffs {
            let m = Mode::new(m1, m2);
            if !f.contains(m) {
                return Err(serde::de::Error::custom(format!(
                    "mode ({m1}, {m2}) outside truncation N = {}",
                    r.n
                )));
            }
            f.add_at(m, Complex64::new(re, im));
        }
        Ok(f)
    }
}

/// A pair of scalar fields sharing the truncation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralVectorField {
    pub x: SpectralScalarField,
    pub y: SpectralScalarField,
}

impl SpectralVectorField {
    pub fn new(x: SpectralScalarField, y: SpectralScalarField) -> Result<Self> {
        x.check_compatible(&y)?;
        Ok(Self { x, y })
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            x: SpectralScalarField::zeros(n),
            y: SpectralScalarField::zeros(n),
        }
    }

    pub fn constant(n: usize, v: CVec2) -> Self {
        Self {
            x: SpectralScalarField::constant(n, v.x),
            y: SpectralScalarField::constant(n, v.y),
        }
    }

    /// The scalar field `f` times the constant vector `v`.
    pub fn from_scalar(f: &SpectralScalarField, v: Vec2) -> Self {
        Self { x: f * v.x, y: f * v.y }
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    pub fn mean(&self) -> CVec2 {
        CVec2::new(self.x.mean(), self.y.mean())
    }

    /// `(f₁, f₂)^⊥ = (f₂, −f₁)`.
    pub fn perp(&self) -> Self {
        Self {
            x: self.y.clone(),
            y: -&self.x,
        }
    }

    /// Pointwise dot product with a constant vector.
    pub fn dot_const(&self, v: CVec2) -> SpectralScalarField {
        &(&self.x * v.x) + &(&self.y * v.y)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            x: self.x.scale(s),
            y: self.y.scale(s),
        }
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self {
            x: self.x.scale_re(s),
            y: self.y.scale_re(s),
        }
    }

    pub fn resized(&self, n: usize) -> Self {
        Self {
            x: self.x.resized(n),
            y: self.y.resized(n),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn map_components(&self, f: impl Fn(&SpectralScalarField) -> SpectralScalarField) -> Self {
        Self {
            x: f(&self.x),
            y: f(&self.y),
        }
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.x.hermitian_defect().max(self.y.hermitian_defect())
    }

    pub fn l2_norm(&self) -> f64 {
        self.x.l2_norm().hypot(self.y.l2_norm())
    }

    pub fn max_abs_diff(&self, o: &Self) -> f64 {
        self.x.max_abs_diff(&o.x).max(self.y.max_abs_diff(&o.y))
    }

    pub fn rel_l2_diff(&self, other: &Self, floor: f64) -> f64 {
        let d = (self - other).l2_norm();
        d / other.l2_norm().max(floor)
    }

    /// Coefficient pair at mode `m`.
    pub fn get(&self, m: Mode) -> CVec2 {
        CVec2::new(self.x.get(m), self.y.get(m))
    }
}

impl Add for &SpectralVectorField {
    type Output = SpectralVectorField;
    fn add(self, o: &SpectralVectorField) -> SpectralVectorField {
        SpectralVectorField {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
        }
    }
}

impl Sub for &SpectralVectorField {
    type Output = SpectralVectorField;
    fn sub(self, o: &SpectralVectorField) -> SpectralVectorField {
        SpectralVectorField {
            x: &self.x - &o.x,
            y: &self.y - &o.y,
        }
    }
}

impl Add for SpectralVectorField {
    type Output = SpectralVectorField;
    fn add(self, o: SpectralVectorField) -> SpectralVectorField {
        &self + &o
    }
}

impl Sub for SpectralVectorField {
    type Output = SpectralVectorField;
    fn sub(self, o: SpectralVectorField) -> SpectralVectorField {
        &self - &o
    }
}

impl AddAssign<&SpectralVectorField> for SpectralVectorField {
    fn add_assign(&mut self, o: &SpectralVectorField) {
        self.x += &o.x;
        self.y += &o.y;
    }
}

impl SubAssign<&SpectralVectorField> for SpectralVectorField {
    fn sub_assign(&mut self, o: &SpectralVectorField) {
        self.x -= &o.x;
        self.y -= &o.y;
    }
}

impl Neg for &SpectralVectorField {
    type Output = SpectralVectorField;
    fn neg(self) -> SpectralVectorField {
        self.scale_re(-1.0)
    }
}

impl Mul<f64> for &SpectralVectorField {
    type Output = SpectralVectorField;
    fn mul(self, s: f64) -> SpectralVectorField {
        self.scale_re(s)
    }
}

/// A field of either arity, for operations that accept both.
#[derive(Clone, Debug, PartialEq)]
pub enum Field {
    Scalar(SpectralScalarField),
    Vector(SpectralVectorField),
}

impl Field {
    pub fn arity(&self) -> &'static str {
        match self {
            Field::Scalar(_) => "scalar",
            Field::Vector(_) => "vector",
        }
    }
}
