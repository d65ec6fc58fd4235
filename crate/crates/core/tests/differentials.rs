mod common;

use beltrami::differentials::{dh_apply, dm_apply, TruncatedOperator};
use beltrami::expansion_ops::{Expansion, HodgeArgument, LinearOps, VectorArgument};
use beltrami::lattice_spectral::{CVec2, PhysicalParams, SpectralScalarField, SpectralSpace, Vec2};
use common::*;
use num_complex::Complex64;

const N: usize = 16;

fn ops(alpha: f64) -> LinearOps {
    let params = PhysicalParams::new(alpha, 1.0, 0.0, 1.0, Vec2::new(0.7, -0.4)).unwrap();
    LinearOps::new(SpectralSpace::new(square(), N), params).unwrap()
}

fn hodge(r: &mut rand_chacha::ChaCha8Rng) -> HodgeArgument {
    HodgeArgument::new(
        CVec2::new(Complex64::new(0.3, 0.0), Complex64::new(-0.2, 0.0)),
        random_real_field(r, N, 3, 1.0, true),
    )
}

fn vector(r: &mut rand_chacha::ChaCha8Rng) -> VectorArgument {
    VectorArgument::new(
        CVec2::new(Complex64::new(0.1, 0.0), Complex64::new(0.4, 0.0)),
        random_real_vector(r, N, 3, 1.0),
    )
}

#[test]
fn flat_surface_differentials_are_first_order_terms() {
    for alpha in [0.0, 0.7] {
        let ops = ops(alpha);
        let mut r = rng(11);
        let de = random_real_field(&mut r, N, 3, 0.3, false);
        let zero = SpectralScalarField::zeros(N);
        let op = TruncatedOperator::new(&ops, &zero, 3).unwrap();
        let ex = Expansion::new(&ops, &de).unwrap();

        let a = hodge(&mut r);
        let dh = dh_apply(&op, &de, &a).unwrap();
        let h1 = ex.taylor_h(&a, 1).unwrap();
        assert!(dh.rel_l2_diff(h1.term(1), 1e-300) < 1e-12);

        let b = vector(&mut r);
        let dm = dm_apply(&op, &de, &b).unwrap();
        let m1 = ex.taylor_m(&b, 1).unwrap();
        assert!(dm.rel_l2_diff(m1.term(1), 1e-300) < 1e-12);
    }
}

#[test]
fn zero_variation_gives_zero() {
    let ops = ops(0.7);
    let mut r = rng(12);
    let eta = random_real_field(&mut r, N, 3, 0.2, false);
    let op = TruncatedOperator::new(&ops, &eta, 3).unwrap();
    let zero = SpectralScalarField::zeros(N);
    assert!(dh_apply(&op, &zero, &hodge(&mut r)).unwrap().is_zero());
    assert!(dm_apply(&op, &zero, &vector(&mut r)).unwrap().is_zero());
}

#[test]
fn order_zero_truncation_is_rejected() {
    let ops = ops(0.7);
    let zero = SpectralScalarField::zeros(N);
    let op = TruncatedOperator::new(&ops, &zero, 0).unwrap();
    assert!(dh_apply(&op, &zero, &HodgeArgument::potential(zero.clone())).is_err());
}

#[test]
fn differentials_are_linear() {
    let ops = ops(0.7);
    let mut r = rng(13);
    let eta = random_real_field(&mut r, N, 3, 0.2, false);
    let op = TruncatedOperator::new(&ops, &eta, 3).unwrap();
    let d1 = random_real_field(&mut r, N, 3, 0.2, false);
    let d2 = random_real_field(&mut r, N, 3, 0.2, false);
    let dsum = &(&d1 * 2.0) + &(&d2 * -0.5);
    let a = hodge(&mut r);
    let lhs = dh_apply(&op, &dsum, &a).unwrap();
    let rhs = &(&dh_apply(&op, &d1, &a).unwrap() * 2.0) + &(&dh_apply(&op, &d2, &a).unwrap() * -0.5);
    assert!(lhs.rel_l2_diff(&rhs, 1e-300) < 1e-12);
    let b = vector(&mut r);
    let lhs = dm_apply(&op, &dsum, &b).unwrap();
    let rhs = &(&dm_apply(&op, &d1, &b).unwrap() * 2.0) + &(&dm_apply(&op, &d2, &b).unwrap() * -0.5);
    assert!(lhs.rel_l2_diff(&rhs, 1e-300) < 1e-12);

    let a2 = hodge(&mut r);
    let sum = HodgeArgument::new(a.gamma + a2.gamma * 3.0, &a.phi + &(&a2.phi * 3.0));
    let lhs = dh_apply(&op, &d1, &sum).unwrap();
    let rhs = &dh_apply(&op, &d1, &a).unwrap() + &(&dh_apply(&op, &d1, &a2).unwrap() * 3.0);
    assert!(lhs.rel_l2_diff(&rhs, 1e-300) < 1e-12);
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

#[test]
fn euler_identity_holds_order_by_order() {
    const K: usize = 4;
    let eps: Vec<f64> = (4..=8).map(|p| 2f64.powi(-p)).collect();
    for alpha in [0.0, 0.7] {
        let ops = ops(alpha);
        let mut r = rng(14);
        let eta = random_real_field(&mut r, N, 3, 0.4, false);
        let ex = Expansion::new(&ops, &eta).unwrap();
        let a = hodge(&mut r);
        let b = vector(&mut r);
        let hs = ex.taylor_h(&a, K).unwrap();
        let ms = ex.taylor_m(&b, K).unwrap();
        let (mut eh, mut em) = (vec![], vec![]);
        for &e in &eps {
            let op = TruncatedOperator::new(&ops, &(&eta * e), K).unwrap();
            let mut series_h = SpectralScalarField::zeros(N);
            let mut series_m = beltrami::lattice_spectral::SpectralVectorField::zeros(N);
            for k in 1..=K {
                let w = k as f64 * e.powi(k as i32 - 1);
                series_h += &(hs.term(k) * w);
                series_m += &(ms.term(k) * w);
            }
            let dh = dh_apply(&op, &eta, &a).unwrap();
            let dm = dm_apply(&op, &eta, &b).unwrap();
            eh.push(dh.rel_l2_diff(&series_h, 1e-300));
            em.push(dm.rel_l2_diff(&series_m, 1e-300));
        }
        // Leading mismatch is O(ε^K).
        let (sh, sm) = (slope(&eps, &eh), slope(&eps, &em));
        assert!((sh - K as f64).abs() < 0.3, "alpha {alpha}: H slope {sh}, {eh:?}");
        assert!((sm - K as f64).abs() < 0.3, "alpha {alpha}: M slope {sm}, {em:?}");
    }
}
