use crate::config::{C0Source, Setup};
use crate::error::{core_kind, CliError, CliResult, ExitKind};
use crate::output::{clean, Sink};
use beltrami::bifurcation::{synthesize_wave, AmplitudeState, ExpansionTables};
use beltrami::dispersion::{
    check_transversality, grad_c_rho, is_kernel_mode, rho, root_scale, DispersionQuery, JacobianKind,
    TransversalityReport, ROOT_TOL,
};
use beltrami::lattice_spectral::{
    check_nonresonance_tol, Mode, NonresonanceReport, SpectralScalarField, SpectralSpace, Vec2,
};
use beltrami::residual::{scaling_study, ResidualEvaluator, ScalingRow};
use beltrami::symbols::{eval_lambda, eval_nu, SymbolPoint};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;

fn arr(v: Vec2) -> [f64; 2] {
    [v.x, v.y]
}

fn cplx(z: [f64; 2]) -> Complex64 {
    Complex64::new(z[0], z[1])
}

#[derive(Serialize)]
struct NonresonanceOut {
    pass: bool,
    #[serde(flatten)]
    report: NonresonanceReport,
}

#[derive(Serialize)]
struct ValidateOut {
    c0: [f64; 2],
    c0_source: C0Source,
    nonresonance: NonresonanceOut,
    transversality: Option<TransversalityReport>,
    pass: bool,
}

pub fn validate(setup: &Setup, sink: &mut Sink) -> CliResult<()> {
    let cfg = &setup.config;
    let nr = check_nonresonance_tol(&setup.lattice, &setup.base, cfg.truncation, cfg.tolerances.resonance);
    let nr_pass = nr.is_clear();
    let (params, source) = if nr_pass {
        setup.params()?
    } else {
        (setup.base, C0Source::Config)
    };
    let tr = if nr_pass {
        Some(check_transversality(&setup.lattice, &params, cfg.truncation)?)
    } else {
        None
    };
    let tr_pass = tr.as_ref().is_some_and(|t| t.pass);
    let failed = nr.resonant_modes.len();
    sink.json(
        "validate.json",
        &ValidateOut {
            c0: arr(params.c0),
            c0_source: source,
            nonresonance: NonresonanceOut {
                pass: nr_pass,
                report: nr,
            },
            transversality: tr,
            pass: nr_pass && tr_pass,
        },
    )?;
    if !nr_pass {
        return Err(CliError::new(
            ExitKind::Resonance,
            format!("non-resonance check failed at {failed} mode(s)"),
        ));
    }
    if !tr_pass {
        return Err(CliError::new(ExitKind::Transversality, "transversality check failed"));
    }
    Ok(())
}

#[derive(Serialize)]
struct DispersionEvalOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
    k: [f64; 2],
    c: [f64; 2],
    beta: f64,
    rho: f64,
    grad_c_rho: [f64; 2],
    root_scale: f64,
    relative_rho: f64,
    is_root: bool,
}

pub fn dispersion_eval(
    setup: &Setup,
    sink: &mut Sink,
    mode: Option<[i32; 2]>,
    k: Option<[f64; 2]>,
    c: Option<[f64; 2]>,
    beta: Option<f64>,
) -> CliResult<()> {
    let (mode, k) = match (mode, k) {
        (Some([m1, m2]), None) => {
            let m = Mode::new(m1, m2);
            (Some(m), setup.lattice.wavevector(m))
        }
        (None, Some(k)) => (None, Vec2::from(k)),
        _ => return Err(CliError::new(ExitKind::Usage, "give exactly one of --mode or --k")),
    };
    let c = match c {
        Some(c) => Vec2::from(c),
        None => setup.params()?.0.c0,
    };
    let beta = beta.unwrap_or(setup.base.beta);
    let q = DispersionQuery::new(k, c, beta);
    let params = &setup.base;
    let r = rho(&q, params)?;
    let scale = root_scale(k, params)?;
    sink.json(
        "dispersion_eval.json",
        &DispersionEvalOut {
            mode,
            k: arr(k),
            c: arr(c),
            beta,
            rho: r,
            grad_c_rho: arr(grad_c_rho(&q, params)?),
            root_scale: scale,
            relative_rho: r.abs() / scale,
            is_root: r.abs() < ROOT_TOL * scale,
        },
    )
}

#[derive(Serialize)]
struct ScanRow {
    m1: i32,
    m2: i32,
    kx: f64,
    ky: f64,
    abs_k: f64,
    rho: f64,
    relative_rho: f64,
    is_root: bool,
    kernel: bool,
}

pub fn dispersion_scan(setup: &Setup, sink: &mut Sink) -> CliResult<()> {
    let (params, _) = setup.params()?;
    let n = setup.config.truncation as i32;
    let mut rows = Vec::new();
    for m1 in -n..=n {
        for m2 in -n..=n {
            let m = Mode::new(m1, m2);
            if m.is_zero() {
                continue;
            }
            let k = setup.lattice.wavevector(m);
            let r = rho(&DispersionQuery::new(k, params.c0, params.beta), &params)?;
            let scale = root_scale(k, &params)?;
            rows.push(ScanRow {
                m1,
                m2,
                kx: clean(k.x),
                ky: clean(k.y),
                abs_k: k.norm(),
                rho: r,
                relative_rho: r.abs() / scale,
                is_root: r.abs() < ROOT_TOL * scale,
                kernel: is_kernel_mode(m),
            });
        }
    }
    sink.csv("dispersion_scan.csv", rows)
}

#[derive(Serialize)]
struct SolveOut {
    c0: [f64; 2],
    iterations: usize,
    residual: f64,
    guess: [f64; 2],
    jacobian: JacobianKind,
    rho_k1: f64,
    rho_k2: f64,
}

pub fn solve_c0(setup: &Setup, sink: &mut Sink, guess: Option<[f64; 2]>, jacobian: JacobianKind) -> CliResult<()> {
    let guess = match guess.or(setup.config.c0_guess) {
        Some(g) => Vec2::from(g),
        None => setup.default_guess()?,
    };
    let out = setup.solve(Some(guess), jacobian)?;
    let p = setup.base.with_c0(out.c0);
    let at = |k: Vec2| rho(&DispersionQuery::new(k, out.c0, p.beta), &p);
    sink.json(
        "solve_c0.json",
        &SolveOut {
            c0: arr(out.c0),
            iterations: out.iterations,
            residual: out.residual,
            guess: arr(guess),
            jacobian,
            rho_k1: at(setup.lattice.k1)?,
            rho_k2: at(setup.lattice.k2)?,
        },
    )
}

fn tables(setup: &Setup) -> CliResult<(ExpansionTables, [f64; 2])> {
    let (params, _) = setup.params()?;
    Ok((
        ExpansionTables::compute(&params, &setup.lattice, setup.config.route)?,
        arr(params.c0),
    ))
}

#[derive(Serialize)]
struct ExpandOut<'a> {
    c0: [f64; 2],
    #[serde(flatten)]
    tables: &'a ExpansionTables,
}

pub fn expand(setup: &Setup, sink: &mut Sink) -> CliResult<()> {
    let (t, c0) = tables(setup)?;
    sink.json("expansion.json", &ExpandOut { c0, tables: &t })
}

#[derive(Serialize)]
struct SurfaceRow {
    x: f64,
    y: f64,
    eta: f64,
}

#[derive(Serialize)]
struct SurfaceOut {
    c0: [f64; 2],
    a: [f64; 2],
    b: [f64; 2],
    mu: [f64; 2],
    grid_size: usize,
    field: SpectralScalarField,
}

pub fn synthesize(setup: &Setup, sink: &mut Sink, a: [f64; 2], b: [f64; 2]) -> CliResult<()> {
    let (t, c0) = tables(setup)?;
    let n = setup.config.truncation;
    let (eta, mu) = synthesize_wave(&AmplitudeState::new(cplx(a), cplx(b)), &t, n);
    let space = SpectralSpace::new(setup.lattice, n);
    let grid = space.to_grid(&eta);
    let m = grid.size();
    let rows = (0..m).flat_map(|i| {
        let lat = &setup.lattice;
        let grid = &grid;
        (0..m).map(move |j| {
            let p = lat.grid_point(i, j, m);
            SurfaceRow {
                x: clean(p.x),
                y: clean(p.y),
                eta: clean(grid.at(i, j).re),
            }
        })
    });
    sink.csv("surface.csv", rows)?;
    sink.json(
        "surface.json",
        &SurfaceOut {
            c0,
            a,
            b,
            mu: [clean(mu.x), clean(mu.y)],
            grid_size: m,
            field: eta,
        },
    )
}

#[derive(Serialize)]
struct ScalingOut {
    c0: [f64; 2],
    direction_a: [f64; 2],
    direction_b: [f64; 2],
    truncation: usize,
    truncation_order: usize,
    slope_full: f64,
    slope_kernel: f64,
    rows: Vec<ScalingRow>,
}

#[derive(Serialize)]
struct ScalingCsvRow {
    amplitude: f64,
    l2: f64,
    sup: f64,
    kernel_l2: f64,
}

pub fn residual(
    setup: &Setup,
    sink: &mut Sink,
    amplitudes: &[f64],
    a: [f64; 2],
    b: [f64; 2],
    order: Option<usize>,
) -> CliResult<()> {
    let (t, c0) = tables(setup)?;
    let (params, _) = setup.params()?;
    let n = setup.config.truncation;
    let order = order.unwrap_or(setup.config.taylor_order);
    let ev = ResidualEvaluator::new(&setup.lattice, &params, n)?;
    let study = scaling_study(&ev, amplitudes, AmplitudeState::new(cplx(a), cplx(b)), order, &t)?;
    sink.csv(
        "scaling.csv",
        study.rows.iter().map(|r| ScalingCsvRow {
            amplitude: r.amplitude,
            l2: r.l2_norm,
            sup: r.sup_norm,
            kernel_l2: r.kernel_l2,
        }),
    )?;
    sink.json(
        "scaling.json",
        &ScalingOut {
            c0,
            direction_a: a,
            direction_b: b,
            truncation: n,
            truncation_order: study.truncation_order,
            slope_full: study.slope_full,
            slope_kernel: study.slope_kernel,
            rows: study.rows,
        },
    )
}

/// One sample point of the batch symbol evaluation.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SymbolInput {
    pub eta_x: f64,
    pub eta_y: f64,
    pub eta_xx: f64,
    pub eta_xy: f64,
    pub eta_yy: f64,
    pub k1: f64,
    pub k2: f64,
    #[serde(default)]
    pub g1: Option<f64>,
    #[serde(default)]
    pub g2: Option<f64>,
}

#[derive(Serialize)]
struct SymbolRow {
    eta_x: f64,
    eta_y: f64,
    eta_xx: f64,
    eta_xy: f64,
    eta_yy: f64,
    k1: f64,
    k2: f64,
    g1: Option<f64>,
    g2: Option<f64>,
    lambda1: f64,
    lambda0_re: f64,
    lambda0_im: f64,
    lambda0_alpha_re: f64,
    lambda0_alpha_im: f64,
    m1_re: f64,
    m1_im: f64,
    m0_re: f64,
    m0_im: f64,
    nu1_x: Option<f64>,
    nu1_y: Option<f64>,
    nu0_x_re: Option<f64>,
    nu0_x_im: Option<f64>,
    nu0_y_re: Option<f64>,
    nu0_y_im: Option<f64>,
}

fn read_symbol_inputs(path: &Path) -> CliResult<Vec<SymbolInput>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::input(format!("symbols input {}: {e}", path.display())))?;
    rdr.deserialize()
        .enumerate()
        .map(|(i, r)| r.map_err(|e| CliError::input(format!("symbols input row {}: {e}", i + 1))))
        .collect()
}

fn random_symbol_inputs(count: usize, seed: u64) -> Vec<SymbolInput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut u = |r: f64| rng.gen_range(-r..r);
            let (eta_x, eta_y, eta_xx, eta_xy, eta_yy) = (u(1.0), u(1.0), u(2.0), u(2.0), u(2.0));
            let (mut k1, mut k2) = (0.0, 0.0);
            while k1 * k1 + k2 * k2 < 0.01 {
                k1 = u(4.0);
                k2 = u(4.0);
            }
            SymbolInput {
                eta_x,
                eta_y,
                eta_xx,
                eta_xy,
                eta_yy,
                k1,
                k2,
                g1: Some(u(1.0)),
                g2: Some(u(1.0)),
            }
        })
        .collect()
}

pub fn symbols_eval(
    setup: &Setup,
    sink: &mut Sink,
    input: Option<&Path>,
    random: Option<usize>,
    seed: u64,
) -> CliResult<()> {
    let inputs = match (input, random) {
        (Some(p), None) => read_symbol_inputs(p)?,
        (None, Some(n)) => random_symbol_inputs(n, seed),
        _ => {
            return Err(CliError::new(
                ExitKind::Usage,
                "give exactly one of --input or --random",
            ))
        }
    };
    let params = &setup.base;
    let row_err = |i: usize, e: beltrami::Error| CliError::new(core_kind(&e), format!("symbols row {}: {e}", i + 1));
    let mut rows = Vec::with_capacity(inputs.len());
    for (i, s) in inputs.into_iter().enumerate() {
        let point = SymbolPoint::new(Vec2::new(s.eta_x, s.eta_y), [s.eta_xx, s.eta_xy, s.eta_yy]);
        let k = Vec2::new(s.k1, s.k2);
        let v = eval_lambda(&point, k, params).map_err(|e| row_err(i, e))?;
        let nu = match (s.g1, s.g2) {
            (Some(g1), Some(g2)) => Some(eval_nu(&point, k, Vec2::new(g1, g2), params).map_err(|e| row_err(i, e))?),
            (None, None) => None,
            _ => {
                return Err(CliError::input(format!(
                    "symbols row {}: give both g1 and g2 or neither",
                    i + 1
                )))
            }
        };
        rows.push(SymbolRow {
            eta_x: s.eta_x,
            eta_y: s.eta_y,
            eta_xx: s.eta_xx,
            eta_xy: s.eta_xy,
            eta_yy: s.eta_yy,
            k1: s.k1,
            k2: s.k2,
            g1: s.g1,
            g2: s.g2,
            lambda1: v.lambda1.re,
            lambda0_re: v.lambda0.re,
            lambda0_im: v.lambda0.im,
            lambda0_alpha_re: v.lambda0_alpha.re,
            lambda0_alpha_im: v.lambda0_alpha.im,
            m1_re: v.m1.re,
            m1_im: v.m1.im,
            m0_re: v.m0.re,
            m0_im: v.m0.im,
            nu1_x: nu.map(|n| n.nu1.x),
            nu1_y: nu.map(|n| n.nu1.y),
            nu0_x_re: nu.map(|n| n.nu0.x.re),
            nu0_x_im: nu.map(|n| n.nu0.x.im),
            nu0_y_re: nu.map(|n| n.nu0.y.re),
            nu0_y_im: nu.map(|n| n.nu0.y.im),
        });
    }
    sink.csv("symbols.csv", rows)
}
