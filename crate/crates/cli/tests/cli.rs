use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const SQUARE: &str = include_str!("../configs/square_irrotational.json");
const ROTATIONAL: &str = include_str!("../configs/square_rotational.json");

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_beltrami"))
}

fn write_config(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn edit(text: &str, f: impl FnOnce(&mut Value)) -> String {
    let mut v: Value = serde_json::from_str(text).unwrap();
    f(&mut v);
    v.to_string()
}

fn run(config: &Path, out: &Path, args: &[&str]) -> Output {
    bin()
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .arg("--json-errors")
        .args(args)
        .output()
        .unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn error_json(o: &Output) -> Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stderr).trim()).unwrap()
}

/// Data rows of an emitted CSV, skipping the `#` header lines.
fn csv_rows(p: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = std::fs::read_to_string(p).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn validate_passes_on_irrotational_square() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", SQUARE);
    let o = run(&cfg, d.path(), &["validate"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&d.path().join("validate.json"));
    assert_eq!(v["pass"], true);
    assert_eq!(v["nonresonance"]["pass"], true);
    assert_eq!(v["transversality"]["pass"], true);
    assert_eq!(v["c0_source"], "solved");
    let a = (2.0 * 1f64.tanh()).sqrt();
    for i in 0..2 {
        assert!((v["c0"][i].as_f64().unwrap() - a).abs() < 1e-12);
    }
    assert_eq!(v["transversality"]["roots_found"].as_array().unwrap().len(), 4);
}

#[test]
fn every_artifact_carries_hash_and_version() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", SQUARE);
    let o = run(&cfg, d.path(), &["synthesize", "--A", "0.01,0", "--B", "0,0.01"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let summary: Value = serde_json::from_slice(&o.stdout).unwrap();
    let hash = summary["config_hash"].as_str().unwrap().to_string();
    assert_eq!(hash.len(), 64);
    let j = read_json(&d.path().join("surface.json"));
    assert_eq!(j["config_hash"], hash.as_str());
    assert!(j["artifact_version"].as_str().unwrap().starts_with("beltrami-cli/"));
    let csv = std::fs::read_to_string(d.path().join("surface.csv")).unwrap();
    assert!(csv.contains(&format!("# config_hash={hash}")));
    assert!(csv.contains("# artifact_version=beltrami-cli/"));
}

#[test]
fn hash_ignores_formatting_but_not_content() {
    let d = TempDir::new().unwrap();
    let a = write_config(d.path(), "a.json", SQUARE);
    let b = write_config(d.path(), "b.json", &edit(SQUARE, |_| {}));
    let c = write_config(d.path(), "c.json", &edit(SQUARE, |v| v["beta"] = 2.0.into()));
    let hash = |cfg: &Path| {
        let o = run(cfg, d.path(), &["solve-c0"]);
        assert!(o.status.success());
        serde_json::from_slice::<Value>(&o.stdout).unwrap()["config_hash"].clone()
    };
    assert_eq!(hash(&a), hash(&b));
    assert_ne!(hash(&a), hash(&c));
}

#[test]
fn expand_is_byte_identical_across_runs() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", ROTATIONAL);
    let (o1, o2) = (d.path().join("r1"), d.path().join("r2"));
    assert!(run(&cfg, &o1, &["expand"]).status.success());
    assert!(run(&cfg, &o2, &["expand"]).status.success());
    let b1 = std::fs::read(o1.join("expansion.json")).unwrap();
    let b2 = std::fs::read(o2.join("expansion.json")).unwrap();
    assert_eq!(b1, b2);

    let v: Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(v["ab"].as_array().unwrap().len(), 2);
    assert_eq!(v["ab"][0].as_array().unwrap().len(), 4);
    for key in ["mu1", "mu2"] {
        assert!(v[key]["abs_a_sq"].is_f64() && v[key]["abs_b_sq"].is_f64());
    }
    let eta2 = v["eta2"].as_object().unwrap();
    assert!(eta2.contains_key("2000") && eta2.contains_key("1010"));
    assert!(v.get("note").is_none());
    assert_eq!(v["formal"], false);
}

#[test]
fn synthesize_zero_amplitudes_gives_flat_surface() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", SQUARE);
    let o = run(&cfg, d.path(), &["synthesize", "--A", "0,0", "--B", "0,0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&d.path().join("surface.csv"));
    assert_eq!(header, ["x", "y", "eta"]);
    let m = read_json(&d.path().join("surface.json"))["grid_size"].as_u64().unwrap() as usize;
    assert!(m >= 34);
    assert_eq!(rows.len(), m * m);
    for r in &rows {
        assert_eq!(r[2].parse::<f64>().unwrap(), 0.0);
        assert!(!r[2].starts_with('-'));
    }
}

#[test]
fn synthesized_surface_matches_field() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", ROTATIONAL);
    let o = run(
        &cfg,
        d.path(),
        &["synthesize", "--A", "0.02,-0.01", "--B", "-0.01,0.005"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j = read_json(&d.path().join("surface.json"));
    let coeffs = j["field"]["coeffs"].as_array().unwrap();
    let (_, rows) = csv_rows(&d.path().join("surface.csv"));
    for r in rows.iter().step_by(97) {
        let (x, y, eta): (f64, f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap(), r[2].parse().unwrap());
        let direct: f64 = coeffs
            .iter()
            .map(|c| {
                let (m1, m2) = (c[0].as_f64().unwrap(), c[1].as_f64().unwrap());
                let (re, im) = (c[2].as_f64().unwrap(), c[3].as_f64().unwrap());
                let ph = m1 * x + m2 * y;
                re * ph.cos() - im * ph.sin()
            })
            .sum();
        assert!((eta - direct).abs() < 1e-14, "{eta} vs {direct}");
    }
}

#[test]
fn residual_reports_cubic_decay() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", SQUARE);
    let o = run(
        &cfg,
        d.path(),
        &["residual", "--amplitudes", "1e-2,5e-3,2.5e-3", "--B", "0.6,0.8"],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&d.path().join("scaling.csv"));
    assert_eq!(header, ["amplitude", "l2", "sup", "kernel_l2"]);
    assert_eq!(rows.len(), 3);
    let j = read_json(&d.path().join("scaling.json"));
    let slope = j["slope_full"].as_f64().unwrap();
    assert!((2.7..=3.5).contains(&slope), "{slope}");
    assert!(j["slope_kernel"].as_f64().unwrap() >= 4.5);
}

#[test]
fn formal_tag_at_zero_surface_tension() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", &edit(SQUARE, |v| v["beta"] = 0.0.into()));
    assert!(run(&cfg, d.path(), &["expand"]).status.success());
    let v = read_json(&d.path().join("expansion.json"));
    assert_eq!(v["note"], "formal approximate solution");
    assert_eq!(v["formal"], true);
    assert!(run(&cfg, d.path(), &["synthesize", "--A", "0.01,0", "--B", "0.01,0"])
        .status
        .success());
    let csv = std::fs::read_to_string(d.path().join("surface.csv")).unwrap();
    assert!(csv.contains("# note=formal approximate solution"));
}

#[test]
fn dispersion_commands() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", ROTATIONAL);
    let o = run(&cfg, d.path(), &["dispersion", "eval", "--mode", "1,0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&d.path().join("dispersion_eval.json"));
    assert_eq!(v["is_root"], true);
    assert!(v["relative_rho"].as_f64().unwrap() < 1e-10);

    assert!(run(
        &cfg,
        d.path(),
        &["dispersion", "eval", "--k", "-1,1", "--c", "0,0", "--beta", "0"]
    )
    .status
    .success());
    let v = read_json(&d.path().join("dispersion_eval.json"));
    // c = 0 leaves ρ = g|k|²t(|k|).
    let p = beltrami::lattice_spectral::PhysicalParams::new(0.5, 1.0, 1.0, 1.0, beltrami::lattice_spectral::Vec2::ZERO)
        .unwrap();
    let t = beltrami::lattice_spectral::multipliers_c_t(2f64.sqrt(), &p).unwrap().1;
    assert!((v["rho"].as_f64().unwrap() - 2.0 * t).abs() < 1e-12);

    assert!(run(&cfg, d.path(), &["dispersion", "scan"]).status.success());
    let (header, rows) = csv_rows(&d.path().join("dispersion_scan.csv"));
    assert_eq!(header[..2], ["m1", "m2"]);
    assert_eq!(rows.len(), 17 * 17 - 1);
    let roots: Vec<_> = rows.iter().filter(|r| r[7] == "true").collect();
    assert_eq!(roots.len(), 4);
    assert!(roots.iter().all(|r| r[8] == "true"));
}

#[test]
fn solve_c0_jacobians_agree() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", ROTATIONAL);
    let get = |j: &str| {
        let o = run(&cfg, d.path(), &["solve-c0", "--jacobian", j]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        read_json(&d.path().join("solve_c0.json"))
    };
    let (a, f) = (get("analytic"), get("fd"));
    for i in 0..2 {
        let (x, y) = (a["c0"][i].as_f64().unwrap(), f["c0"][i].as_f64().unwrap());
        assert!((x - y).abs() < 1e-10);
    }
    assert!((a["c0"][0].as_f64().unwrap() - 1.48989).abs() < 1e-4);
    assert!((a["c0"][1].as_f64().unwrap() - 1.00518).abs() < 1e-4);
    assert!(a["residual"].as_f64().unwrap() < 1e-12);
}

#[test]
fn symbols_batch_from_file_and_seeded_random() {
    let d = TempDir::new().unwrap();
    let cfg = write_config(d.path(), "c.json", ROTATIONAL);
    let input = d.path().join("in.csv");
    std::fs::write(
        &input,
        "eta_x,eta_y,eta_xx,eta_xy,eta_yy,k1,k2\n0,0,0,0,0,3,4\n0.1,-0.2,0.3,0,0.5,1,1\n",
    )
    .unwrap();
    let o = run(&cfg, d.path(), &["symbols", "eval", "--input", input.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let (header, rows) = csv_rows(&d.path().join("symbols.csv"));
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0][col("lambda1")].parse::<f64>().unwrap(), 5.0);
    assert_eq!(rows[0][col("nu1_x")], "");

    let random = |seed: &str, out: &Path| {
        let o = bin()
            .args([
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
                "--seed",
                seed,
            ])
            .args(["symbols", "eval", "--random", "25"])
            .output()
            .unwrap();
        assert!(o.status.success());
        std::fs::read(out.join("symbols.csv")).unwrap()
    };
    let a = random("7", &d.path().join("a"));
    let b = random("7", &d.path().join("b"));
    let c = random("8", &d.path().join("c"));
    assert_eq!(a, b);
    assert_ne!(a, c);
    let (header, rows) = csv_rows(&d.path().join("a").join("symbols.csv"));
    assert_eq!(rows.len(), 25);
    assert!(rows
        .iter()
        .all(|r| !r[header.iter().position(|h| h == "nu0_y_im").unwrap()].is_empty()));
}

#[test]
fn exit_codes_are_distinct() {
    let d = TempDir::new().unwrap();

    let bad = write_config(d.path(), "bad.json", &edit(SQUARE, |v| v["depth"] = (-1.0).into()));
    let o = run(&bad, d.path(), &["validate"]);
    assert_eq!(o.status.code(), Some(3));
    let e = error_json(&o);
    assert_eq!(e["error"]["kind"], "config");
    assert_eq!(e["error"]["exit_code"], 3);

    let unknown = write_config(d.path(), "u.json", &edit(SQUARE, |v| v["colour"] = "blue".into()));
    assert_eq!(run(&unknown, d.path(), &["validate"]).status.code(), Some(3));
    let degenerate = write_config(
        d.path(),
        "g.json",
        &edit(SQUARE, |v| v["lattice"]["lambda2"] = serde_json::json!([1.0, 0.0])),
    );
    assert_eq!(run(&degenerate, d.path(), &["validate"]).status.code(), Some(3));

    // |k1| = α: the critical radius sits on the lattice.
    let res = write_config(d.path(), "r.json", &edit(ROTATIONAL, |v| v["alpha"] = 1.0.into()));
    let o = run(&res, d.path(), &["validate"]);
    assert_eq!(o.status.code(), Some(4));
    assert_eq!(error_json(&o)["error"]["kind"], "resonance");
    let v = read_json(&d.path().join("validate.json"));
    assert_eq!(v["pass"], false);
    assert!(v["nonresonance"]["resonant_modes"].as_array().unwrap().len() >= 4);

    // A velocity that is not a root of the dispersion pair.
    let off = write_config(
        d.path(),
        "t.json",
        &edit(SQUARE, |v| v["c0"] = serde_json::json!([0.3, 0.1])),
    );
    let o = run(&off, d.path(), &["validate"]);
    assert_eq!(o.status.code(), Some(5));
    assert_eq!(error_json(&o)["error"]["kind"], "transversality");

    let cfg = write_config(d.path(), "c.json", SQUARE);
    let o = run(&cfg, d.path(), &["residual", "--amplitudes", "1e-2,5e-3"]);
    assert_eq!(o.status.code(), Some(6));
    assert_eq!(error_json(&o)["error"]["kind"], "degeneracy");

    let input = d.path().join("in.csv");
    std::fs::write(&input, "eta_x,eta_y\n1,2\n").unwrap();
    let o = run(&cfg, d.path(), &["symbols", "eval", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(7));

    let o = run(&cfg, d.path(), &["synthesize", "--A", "zero", "--B", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_json(&o)["error"]["kind"], "usage");

    let o = bin().args(["validate"]).output().unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}
