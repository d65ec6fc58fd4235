#![allow(dead_code)]

use beltrami::lattice_spectral::{LatticePair, Mode, PhysicalParams, SpectralScalarField, SpectralVectorField, Vec2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real random field supported on modes of extent ≤ `band`, coefficients of size ≈ `amp`.
pub fn random_real_field(
    rng: &mut ChaCha8Rng,
    n: usize,
    band: usize,
    amp: f64,
    zero_mean: bool,
) -> SpectralScalarField {
    let mut f = SpectralScalarField::zeros(n);
    let b = band as i32;
    for m1 in 0..=b {
        for m2 in -b..=b {
            let m = Mode::new(m1, m2);
            if m1 == 0 && m2 < 0 {
                continue;
            }
            if m.is_zero() {
                if !zero_mean {
                    f.set(m, Complex64::new(amp * rng.gen_range(-1.0..1.0), 0.0));
                }
                continue;
            }
            let decay = 1.0 / (1.0 + (m1 * m1 + m2 * m2) as f64);
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * (amp * decay);
            f.set(m, c);
            f.set(-m, c.conj());
        }
    }
    f
}

/// Complex random field (no symmetry).
pub fn random_complex_field(rng: &mut ChaCha8Rng, n: usize, band: usize, amp: f64) -> SpectralScalarField {
    let mut f = SpectralScalarField::zeros(n);
    let b = band as i32;
    for m1 in -b..=b {
        for m2 in -b..=b {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * amp;
            f.set(Mode::new(m1, m2), c);
        }
    }
    f
}

pub fn random_real_vector(rng: &mut ChaCha8Rng, n: usize, band: usize, amp: f64) -> SpectralVectorField {
    SpectralVectorField {
        x: random_real_field(rng, n, band, amp, false),
        y: random_real_field(rng, n, band, amp, false),
    }
}

pub fn square() -> LatticePair {
    LatticePair::unit_dual()
}

/// Irrotational gravity-capillary configuration on the unit dual lattice with `c₀` on the diagonal.
pub fn irrotational_params(beta: f64) -> PhysicalParams {
    let g = 1.0;
    let a = ((g + beta) * 1f64.tanh()).sqrt();
    PhysicalParams::new(0.0, g, beta, 1.0, Vec2::new(a, a)).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

pub fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// Gravity-capillary configuration with vorticity on the unit dual lattice, `c₀` solved from the guess on the diagonal.
pub fn rotational_params(alpha: f64, beta: f64) -> PhysicalParams {
    use beltrami::dispersion::{solve_c0, JacobianKind};
    let base = PhysicalParams::new(alpha, 1.0, beta, 1.0, Vec2::ZERO).unwrap();
    let a = ((1.0 + beta) * 1f64.tanh()).sqrt();
    let out = solve_c0(&square(), &base, beta, Vec2::new(a, a), JacobianKind::Analytic).unwrap();
    base.with_c0(out.c0)
}

/// Single real mode of amplitude `e`; the zero mode becomes the constant `e`.
pub fn real_wave(n: usize, m: Mode, e: f64) -> SpectralScalarField {
    if m.is_zero() {
        SpectralScalarField::real_constant(n, e)
    } else {
        SpectralScalarField::real_mode(n, m, Complex64::new(e, 0.0))
    }
}

/// Richardson-extrapolated mixed second derivative of the `k+ℓ` residual coefficient.
pub fn fd_mixed(params: &PhysicalParams, k: Mode, l: Mode, n: usize, step: f64) -> Complex64 {
    use beltrami::residual::ResidualEvaluator;
    let ev = ResidualEvaluator::new(&square(), params, n).unwrap();
    let j = |e1: f64, e2: f64| {
        let eta = &real_wave(n, k, e1) + &real_wave(n, l, e2);
        ev.evaluate(&eta, Vec2::ZERO, 4).unwrap().residual_field.get(k + l)
    };
    let d = |h: f64| (j(h, h) - j(h, -h) - j(-h, h) + j(-h, -h)) / (4.0 * h * h);
    (d(step / 2.0) * 4.0 - d(step)) / 3.0
}
