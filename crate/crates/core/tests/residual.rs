mod common;

use beltrami::bifurcation::{AmplitudeState, CoefficientRoute, ExpansionTables};
use beltrami::dispersion::j10_multiplier;
use beltrami::expansion_ops::Expansion;
use beltrami::lattice_spectral::*;
use beltrami::residual::*;
use beltrami::Error;
use common::*;
use num_complex::Complex64;
use rand::Rng;

#[test]
fn flat_surface_has_zero_residual() {
    let p = rotational_params(0.5, 1.0);
    let eta = SpectralScalarField::zeros(6);
    let rep = evaluate_j(&eta, Vec2::ZERO, DEFAULT_ORDER, &p, &square()).unwrap();
    assert!(rep.residual_field.l2_norm() < 1e-15);
    assert_eq!(rep.truncation_order, 4);

    let ev = ResidualEvaluator::new(&square(), &p, 6).unwrap();
    let (uh, un) = ev.ustar_surface(&eta, p.c0);
    assert!(un.is_zero());
    assert!((uh.mean().re() - p.c0).norm() < 1e-15);
    assert!(matches!(
        ev.evaluate(&eta, Vec2::ZERO, 0),
        Err(Error::OrderMismatch { .. })
    ));
}

#[test]
fn irrotational_surface_velocity() {
    let p = irrotational_params(1.0);
    let n = 6;
    let ev = ResidualEvaluator::new(&square(), &p, n).unwrap();
    let eta = random_real_field(&mut rng(2), n, 3, 0.2, false);
    let c = Vec2::new(0.3, -1.2);
    let (uh, un) = ev.ustar_surface(&eta, c);
    let sp = ev.ops().space();
    let want = -&sp.dot(&SpectralVectorField::constant(n, CVec2::from(c)), &sp.grad(&eta));
    assert!(un.max_abs_diff(&want) < 1e-13);
    assert!(uh.max_abs_diff(&SpectralVectorField::constant(n, CVec2::from(c))) < 1e-15);
}

#[test]
fn surface_flux_matches_series() {
    let p = rotational_params(0.8, 1.0);
    let n = 6;
    let ev = ResidualEvaluator::new(&square(), &p, n).unwrap();
    let base = random_real_field(&mut rng(3), n, 2, 1.0, false);
    let order = 3;
    let err = |eps: f64| {
        let eta = base.scale_re(eps);
        let (_, un) = ev.ustar_surface(&eta, p.c0);
        let s = Expansion::new(ev.ops(), &eta)
            .unwrap()
            .expand_s(p.c0, order)
            .partial_sum();
        (&un - &ev.ops().space().div_perp(&s)).l2_norm()
    };
    let ratio = err(4e-2) / err(2e-2);
    let want = 2f64.powi(order as i32 + 1);
    assert!((0.75 * want..=1.25 * want).contains(&ratio), "ratio {ratio}");
}

#[test]
fn linearisation_is_j10() {
    let p = rotational_params(0.5, 1.0);
    let lat = square();
    let n = 8;
    let ev = ResidualEvaluator::new(&lat, &p, n).unwrap();
    let eps = 1e-5;
    let modes = [
        (2, 0),
        (1, 1),
        (1, -1),
        (0, 2),
        (2, 1),
        (-1, 2),
        (3, 0),
        (2, -2),
        (0, 3),
        (3, 1),
    ];
    for (a, b) in modes {
        let m = Mode::new(a, b);
        let eta = SpectralScalarField::real_mode(n, m, Complex64::new(eps, 0.0));
        let got = ev.evaluate(&eta, Vec2::ZERO, 4).unwrap().residual_field.get(m) / eps;
        let want = j10_multiplier(lat.wavevector(m), &p).unwrap();
        assert!(crel(got, Complex64::new(want, 0.0)) < 1e-6, "{m:?}: {got} vs {want}");
    }
}

#[test]
fn gravity_only() {
    let p = PhysicalParams::new(0.7, 2.5, 0.0, 1.0, Vec2::ZERO).unwrap();
    let n = 5;
    let eta = random_real_field(&mut rng(4), n, 3, 0.3, false);
    let rep = evaluate_j(&eta, Vec2::ZERO, 4, &p, &square()).unwrap();
    assert!(rep.residual_field.max_abs_diff(&eta.scale_re(2.5)) < 1e-15);
}

#[test]
fn residual_is_real_and_norms_are_consistent() {
    let p = rotational_params(0.5, 1.0);
    let n = 6;
    let ev = ResidualEvaluator::new(&square(), &p, n).unwrap();
    let mut r = rng(6);
    for _ in 0..3 {
        let eta = random_real_field(&mut r, n, 3, 0.05, false);
        let mu = Vec2::new(r.gen_range(-0.1..0.1), r.gen_range(-0.1..0.1));
        let rep = ev.evaluate(&eta, mu, 4).unwrap();
        assert_eq!(rep.residual_field.hermitian_defect(), 0.0);
        assert!(rel(rep.l2_norm, rep.residual_field.l2_norm()) < 1e-12);
        let sup = ev.ops().space().to_grid(&rep.residual_field).max_abs();
        assert!(rel(rep.sup_norm, sup) < 1e-12);
        let kern: f64 = [Mode::new(1, 0), Mode::new(-1, 0), Mode::new(0, 1), Mode::new(0, -1)]
            .iter()
            .map(|&m| rep.residual_field.get(m).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((rep.kernel_projection_norm - kern).abs() <= 1e-12 * kern.max(1e-300));
    }
}

#[test]
fn equivariance() {
    let p = rotational_params(0.5, 1.0);
    let lat = square();
    let n = 6;
    let ev = ResidualEvaluator::new(&lat, &p, n).unwrap();
    let mut r = rng(7);
    for _ in 0..4 {
        let eta = random_real_field(&mut r, n, 3, 0.1, false);
        let mu = Vec2::new(r.gen_range(-0.1..0.1), r.gen_range(-0.1..0.1));
        let j = ev.evaluate(&eta, mu, 4).unwrap().residual_field;

        let js = ev.evaluate(&eta.reflect(), mu, 4).unwrap().residual_field;
        assert!(js.max_abs_diff(&j.reflect()) < 1e-11);

        let m = ev.ops().space().grid_size();
        let v = lat.grid_point(r.gen_range(0..m), r.gen_range(0..m), m);
        let jt = ev.evaluate(&eta.translate(&lat, v), mu, 4).unwrap().residual_field;
        assert!(jt.max_abs_diff(&j.translate(&lat, v)) < 1e-11);
    }
}

#[test]
fn off_grid_translation_is_equivariant_up_to_aliasing() {
    let p = rotational_params(0.5, 1.0);
    let lat = square();
    let n = 6;
    let ev = ResidualEvaluator::new(&lat, &p, n).unwrap();
    let eta = random_real_field(&mut rng(8), n, 3, 0.1, false);
    let j = ev.evaluate(&eta, Vec2::ZERO, 4).unwrap().residual_field;
    let v = Vec2::new(0.123, 4.567);
    let jt = ev
        .evaluate(&eta.translate(&lat, v), Vec2::ZERO, 4)
        .unwrap()
        .residual_field;
    assert!(jt.max_abs_diff(&j.translate(&lat, v)) < 1e-6 * j.l2_norm());
}

#[test]
fn slope_fit() {
    let xs = [1.0, 0.5, 0.25, 0.125];
    let ys: Vec<f64> = xs.iter().map(|x: &f64| 7.0 * x.powi(3)).collect();
    assert!((loglog_slope(&xs, &ys).unwrap() - 3.0).abs() < 1e-12);
    assert!(matches!(loglog_slope(&xs[..2], &ys[..2]), Err(Error::DegenerateFit(_))));
    assert!(matches!(
        loglog_slope(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]),
        Err(Error::DegenerateFit(_))
    ));
    assert!(loglog_slope(&[1.0, 0.5, 0.25], &[1.0, 0.0, 1.0]).is_err());
}

#[test]
fn scaling_study_rejects_bad_amplitudes() {
    let p = irrotational_params(1.0);
    let tables = ExpansionTables::compute(&p, &square(), CoefficientRoute::Spectral).unwrap();
    let ev = ResidualEvaluator::new(&square(), &p, 6).unwrap();
    let dir = AmplitudeState::real(1.0, 1.0);
    assert!(matches!(
        scaling_study(&ev, &[1e-2, 5e-3], dir, 4, &tables),
        Err(Error::DegenerateFit(_))
    ));
    assert!(scaling_study(&ev, &[1e-3, 5e-3, 1e-2], dir, 4, &tables).is_err());
    assert!(scaling_study(&ev, &[1e-2, -5e-3, -1e-2], dir, 4, &tables).is_err());
}

#[test]
fn second_order_wave_residual_is_cubic() {
    let amps = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
    for p in [irrotational_params(1.0), rotational_params(0.5, 1.0)] {
        let lat = square();
        let tables = ExpansionTables::compute(&p, &lat, CoefficientRoute::Spectral).unwrap();
        let ev = ResidualEvaluator::new(&lat, &p, 8).unwrap();
        let dir = AmplitudeState::new(Complex64::new(1.0, 0.0), Complex64::new(0.6, 0.8));
        let k4 = scaling_study(&ev, &amps, dir, 4, &tables).unwrap();
        let k5 = scaling_study(&ev, &amps, dir, 5, &tables).unwrap();
        assert!((2.7..=3.5).contains(&k4.slope_full), "{k4:?}");
        assert!(k4.slope_kernel >= 4.5, "{k4:?}");
        assert!((k4.slope_full - k5.slope_full).abs() <= 0.05);
        assert!((k4.slope_kernel - k5.slope_kernel).abs() <= 0.05);
    }
}
