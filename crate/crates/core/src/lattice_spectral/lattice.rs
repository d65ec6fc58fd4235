use super::vec2::Vec2;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

/// Dual-lattice index `(m1, m2)`, standing for the wave vector `m1·k1 + m2·k2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i32; 2]", into = "[i32; 2]")]
pub struct Mode {
    pub m1: i32,
    pub m2: i32,
}

impl Mode {
    pub const ZERO: Mode = Mode { m1: 0, m2: 0 };

    pub const fn new(m1: i32, m2: i32) -> Self {
        Self { m1, m2 }
    }

    pub fn is_zero(self) -> bool {
        self.m1 == 0 && self.m2 == 0
    }

    /// Largest absolute index, i.e. the smallest box truncation containing the mode.
    pub fn extent(self) -> usize {
        self.m1.unsigned_abs().max(self.m2.unsigned_abs()) as usize
    }
}

impl From<[i32; 2]> for Mode {
    fn from(a: [i32; 2]) -> Self {
        Mode::new(a[0], a[1])
    }
}

impl From<Mode> for [i32; 2] {
    fn from(m: Mode) -> Self {
        [m.m1, m.m2]
    }
}

impl Add for Mode {
    type Output = Mode;
    fn add(self, o: Mode) -> Mode {
        Mode::new(self.m1 + o.m1, self.m2 + o.m2)
    }
}

impl Sub for Mode {
    type Output = Mode;
    fn sub(self, o: Mode) -> Mode {
        Mode::new(self.m1 - o.m1, self.m2 - o.m2)
    }
}

impl Neg for Mode {
    type Output = Mode;
    fn neg(self) -> Mode {
        Mode::new(-self.m1, -self.m2)
    }
}

/// Physical periods and the dual generators with `k_i·λ_j = 2π δ_ij`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticePair {
    pub lambda1: Vec2,
    pub lambda2: Vec2,
    pub k1: Vec2,
    pub k2: Vec2,
    pub cell_area: f64,
}

pub fn build_lattice(lambda1: Vec2, lambda2: Vec2) -> Result<LatticePair> {
    let det = lambda1.x * lambda2.y - lambda1.y * lambda2.x;
    if !det.is_finite() || det.abs() <= 1e-12 {
        return Err(Error::DegenerateLattice { det });
    }
    let s = 2.0 * PI / det;
    let k1 = Vec2::new(lambda2.y, -lambda2.x) * s;
    let k2 = Vec2::new(-lambda1.y, lambda1.x) * s;
    Ok(LatticePair {
        lambda1,
        lambda2,
        k1,
        k2,
        cell_area: det.abs(),
    })
}

impl LatticePair {
    pub fn new(lambda1: Vec2, lambda2: Vec2) -> Result<Self> {
        build_lattice(lambda1, lambda2)
    }

    /// Square lattice with period `2π` in both directions, so that `k1 = (1,0)`, `k2 = (0,1)`.
    pub fn unit_dual() -> Self {
        build_lattice(Vec2::new(2.0 * PI, 0.0), Vec2::new(0.0, 2.0 * PI)).expect("non-degenerate")
    }

    pub fn wavevector(&self, m: Mode) -> Vec2 {
        self.k1 * f64::from(m.m1) + self.k2 * f64::from(m.m2)
    }

    /// Physical point `(i/M)λ1 + (j/M)λ2` of an `M×M` grid.
    pub fn grid_point(&self, i: usize, j: usize, m: usize) -> Vec2 {
        let (a, b) = (i as f64 / m as f64, j as f64 / m as f64);
        self.lambda1 * a + self.lambda2 * b
    }

    /// Lattice-coordinate phase of a translation: `(k1·v, k2·v)`.
    pub fn phases(&self, v: Vec2) -> (f64, f64) {
        (self.k1.dot(v), self.k2.dot(v))
    }
}

/// Physical constants of the steady wave problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub alpha: f64,
    pub gravity: f64,
    pub beta: f64,
    pub depth: f64,
    pub c0: Vec2,
}

impl PhysicalParams {
    pub fn new(alpha: f64, gravity: f64, beta: f64, depth: f64, c0: Vec2) -> Result<Self> {
        let p = Self {
            alpha,
            gravity,
            beta,
            depth,
            c0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParams(s.to_string()));
        if !self.alpha.is_finite() {
            return bad("alpha must be finite");
        }
        if !(self.gravity.is_finite() && self.gravity > 0.0) {
            return bad("gravity must be positive");
        }
        if !(self.beta.is_finite() && self.beta >= 0.0) {
            return bad("beta must be non-negative");
        }
        if !(self.depth.is_finite() && self.depth > 0.0) {
            return bad("depth must be positive");
        }
        if !self.c0.is_finite() {
            return bad("c0 must be finite");
        }
        Ok(())
    }

    pub fn with_c0(mut self, c0: Vec2) -> Self {
        self.c0 = c0;
        self
    }

    pub fn with_depth(mut self, depth: f64) -> Self {
        self.depth = depth;
        self
    }
}
