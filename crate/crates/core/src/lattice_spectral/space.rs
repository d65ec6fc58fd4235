use super::field::{Field, SpectralScalarField, SpectralVectorField};
use super::lattice::{LatticePair, Mode};
use super::vec2::Vec2;
use crate::error::{Error, Result};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::fmt;
use std::sync::Arc;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default ratio between the physical grid size and the box width `2N+1`.
pub const DEFAULT_PADDING: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CalculusKind {
    Grad,
    PerpGrad,
    Div,
    PerpDiv,
}

/// Samples of a field on the `M×M` physical grid `x_ij = (i/M)λ1 + (j/M)λ2`, row-major in `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalGrid {
    m: usize,
    data: Vec<Complex64>,
}

impl PhysicalGrid {
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[Complex64] {
        &self.data
    }

    /// A grid of the same size holding `data`.
    pub fn with_values(&self, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), self.m * self.m, "grid data length mismatch");
        Self { m: self.m, data }
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.m + j]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            m: self.m,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip(&self, o: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!(self.m, o.m, "grid size mismatch");
        Self {
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// FFT plans and spectral calculus for one lattice and truncation.
#[derive(Clone)]
pub struct SpectralSpace {
    lattice: LatticePair,
    n: usize,
    grid: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralSpace")
            .field("lattice", &self.lattice)
            .field("n", &self.n)
            .field("grid", &self.grid)
            .finish()
    }
}

/// Smallest integer `≥ min` whose only prime factors are 2, 3 and 5.
pub fn fft_friendly_size(min: usize) -> usize {
    let mut m = min.max(1);
    loop {
        let mut r = m;
        for p in [2, 3, 5] {
            while r.is_multiple_of(p) {
                r /= p;
            }
        }
        if r == 1 {
            return m;
        }
        m += 1;
    }
}

impl SpectralSpace {
    pub fn new(lattice: LatticePair, n: usize) -> Self {
        Self::with_padding(lattice, n, DEFAULT_PADDING)
    }

    /// `padding` below 2 is raised to 2, which keeps single products alias-free on the box.
    pub fn with_padding(lattice: LatticePair, n: usize, padding: f64) -> Self {
        let pad = if padding.is_finite() {
            padding.max(DEFAULT_PADDING)
        } else {
            DEFAULT_PADDING
        };
        let grid = fft_friendly_size((pad * (2 * n + 1) as f64).ceil() as usize);
        Self::with_grid(lattice, n, grid)
    }

    fn with_grid(lattice: LatticePair, n: usize, grid: usize) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(grid);
        let inv = planner.plan_fft_inverse(grid);
        Self {
            lattice,
            n,
            grid,
            fwd,
            inv,
        }
    }

    pub fn lattice(&self) -> &LatticePair {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid_size(&self) -> usize {
        self.grid
    }

    pub fn wavevector(&self, m: Mode) -> Vec2 {
        self.lattice.wavevector(m)
    }

    pub fn zeros(&self) -> SpectralScalarField {
        SpectralScalarField::zeros(self.n)
    }

    pub fn vzeros(&self) -> SpectralVectorField {
        SpectralVectorField::zeros(self.n)
    }

    fn fft2(&self, data: &mut [Complex64], inverse: bool) {
        let m = self.grid;
        let plan = if inverse { &self.inv } else { &self.fwd };
        plan.process(data);
        transpose(data, m);
        plan.process(data);
        transpose(data, m);
    }

    /// Samples `f` on the physical grid.
    pub fn to_grid(&self, f: &SpectralScalarField) -> PhysicalGrid {
        let m = self.grid;
        assert!(2 * f.n() < m, "field truncation exceeds grid");
        let mut data = vec![ZERO; m * m];
        for (mode, c) in f.iter_nonzero() {
            let i = mode.m1.rem_euclid(m as i32) as usize;
            let j = mode.m2.rem_euclid(m as i32) as usize;
            data[i * m + j] = c;
        }
        self.fft2(&mut data, true);
        if f.hermitian_defect() == 0.0 {
            for v in &mut data {
                v.im = 0.0;
            }
        }
        PhysicalGrid { m, data }
    }

    /// Fourier coefficients of grid samples, truncated to the space's box.
    pub fn from_grid(&self, g: &PhysicalGrid) -> SpectralScalarField {
        self.from_grid_n(g, self.n)
    }

    pub fn from_grid_n(&self, g: &PhysicalGrid, n: usize) -> SpectralScalarField {
        let m = self.grid;
        assert_eq!(g.m, m, "grid size mismatch");
        let real = g.data.iter().all(|v| v.im == 0.0);
        let mut data = g.data.clone();
        self.fft2(&mut data, false);
        let scale = 1.0 / (m * m) as f64;
        let mut f = SpectralScalarField::zeros(n);
        let nn = n as i32;
        for m1 in -nn..=nn {
            for m2 in -nn..=nn {
                let i = m1.rem_euclid(m as i32) as usize;
                let j = m2.rem_euclid(m as i32) as usize;
                f.set(Mode::new(m1, m2), data[i * m + j] * scale);
            }
        }
        if real {
            f = f.real_part();
        }
        f
    }

    /// Applies a pointwise function on the physical grid and truncates.
    pub fn pointwise(&self, f: &SpectralScalarField, func: impl Fn(Complex64) -> Complex64) -> SpectralScalarField {
        self.from_grid(&self.to_grid(f).map(func))
    }

    pub fn product(&self, f: &SpectralScalarField, g: &SpectralScalarField) -> SpectralScalarField {
        let a = self.to_grid(f);
        let b = self.to_grid(g);
        self.from_grid(&a.zip(&b, |x, y| x * y))
    }

    /// Scalar times vector.
    pub fn product_sv(&self, f: &SpectralScalarField, v: &SpectralVectorField) -> SpectralVectorField {
        let a = self.to_grid(f);
        let bx = self.to_grid(&v.x);
        let by = self.to_grid(&v.y);
        SpectralVectorField {
            x: self.from_grid(&a.zip(&bx, |x, y| x * y)),
            y: self.from_grid(&a.zip(&by, |x, y| x * y)),
        }
    }

    /// Pointwise dot product of two vector fields.
    pub fn dot(&self, u: &SpectralVectorField, v: &SpectralVectorField) -> SpectralScalarField {
        let ux = self.to_grid(&u.x);
        let uy = self.to_grid(&u.y);
        let vx = self.to_grid(&v.x);
        let vy = self.to_grid(&v.y);
        let a = ux.zip(&vx, |x, y| x * y);
        let b = uy.zip(&vy, |x, y| x * y);
        self.from_grid(&a.zip(&b, |x, y| x + y))
    }

    /// Generic product of two fields of any arity (scalar·scalar, scalar·vector, vector·vector as dot).
    pub fn product_fields(&self, a: &Field, b: &Field) -> Field {
        match (a, b) {
            (Field::Scalar(f), Field::Scalar(g)) => Field::Scalar(self.product(f, g)),
            (Field::Scalar(f), Field::Vector(v)) | (Field::Vector(v), Field::Scalar(f)) => {
                Field::Vector(self.product_sv(f, v))
            }
            (Field::Vector(u), Field::Vector(v)) => Field::Scalar(self.dot(u, v)),
        }
    }

    /// Fourier multiplier `m(k)` applied mode by mode.
    pub fn apply_multiplier(
        &self,
        f: &SpectralScalarField,
        mult: impl Fn(Mode, Vec2) -> Complex64,
    ) -> SpectralScalarField {
        f.map(|m, c| {
            if c == ZERO {
                ZERO
            } else {
                c * mult(m, self.wavevector(m))
            }
        })
    }

    pub fn grad(&self, f: &SpectralScalarField) -> SpectralVectorField {
        SpectralVectorField {
            x: self.apply_multiplier(f, |_, k| I * k.x),
            y: self.apply_multiplier(f, |_, k| I * k.y),
        }
    }

    /// `∇^⊥ f = (∂_y f, −∂_x f)`.
    pub fn perp_grad(&self, f: &SpectralScalarField) -> SpectralVectorField {
        SpectralVectorField {
            x: self.apply_multiplier(f, |_, k| I * k.y),
            y: self.apply_multiplier(f, |_, k| -I * k.x),
        }
    }

    pub fn div(&self, v: &SpectralVectorField) -> SpectralScalarField {
        let a = self.apply_multiplier(&v.x, |_, k| I * k.x);
        let b = self.apply_multiplier(&v.y, |_, k| I * k.y);
        &a + &b
    }

    /// `∇^⊥ · v = ∂_y v₁ − ∂_x v₂`.
    pub fn perp_div(&self, v: &SpectralVectorField) -> SpectralScalarField {
        let a = self.apply_multiplier(&v.x, |_, k| I * k.y);
        let b = self.apply_multiplier(&v.y, |_, k| I * k.x);
        &a - &b
    }

    /// `∇ · v^⊥ = ∂_x v₂ − ∂_y v₁`.
    pub fn div_perp(&self, v: &SpectralVectorField) -> SpectralScalarField {
        -self.perp_div(v)
    }

    pub fn laplacian(&self, f: &SpectralScalarField) -> SpectralScalarField {
        self.apply_multiplier(f, |_, k| Complex64::new(-k.norm_sq(), 0.0))
    }

    /// Periodic inverse Laplacian: mode `k ≠ 0` times `−1/|k|²`, mean set to zero.
    pub fn inv_laplacian(&self, f: &SpectralScalarField) -> SpectralScalarField {
        self.apply_multiplier(f, |m, k| {
            if m.is_zero() {
                ZERO
            } else {
                Complex64::new(-1.0 / k.norm_sq(), 0.0)
            }
        })
    }

    pub fn calculus(&self, f: &Field, kind: CalculusKind) -> Result<Field> {
        match (kind, f) {
            (CalculusKind::Grad, Field::Scalar(s)) => Ok(Field::Vector(self.grad(s))),
            (CalculusKind::PerpGrad, Field::Scalar(s)) => Ok(Field::Vector(self.perp_grad(s))),
            (CalculusKind::Div, Field::Vector(v)) => Ok(Field::Scalar(self.div(v))),
            (CalculusKind::PerpDiv, Field::Vector(v)) => Ok(Field::Scalar(self.perp_div(v))),
            (CalculusKind::Grad | CalculusKind::PerpGrad, _) => Err(Error::ArityMismatch {
                op: if kind == CalculusKind::Grad {
                    "grad"
                } else {
                    "perp_grad"
                },
                expected: "scalar",
            }),
            (CalculusKind::Div | CalculusKind::PerpDiv, _) => Err(Error::ArityMismatch {
                op: if kind == CalculusKind::Div { "div" } else { "perp_div" },
                expected: "vector",
            }),
        }
    }
}

fn transpose(data: &mut [Complex64], m: usize) {
    for i in 0..m {
        for j in (i + 1)..m {
            data.swap(i * m + j, j * m + i);
        }
    }
}
