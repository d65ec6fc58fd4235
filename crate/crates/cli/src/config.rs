use crate::error::{CliError, CliResult};
use beltrami::bifurcation::CoefficientRoute;
use beltrami::dispersion::{solve_c0, JacobianKind, NewtonOutcome};
use beltrami::lattice_spectral::{build_lattice, multipliers_c_t, LatticePair, PhysicalParams, Vec2, RESONANCE_TOL};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

pub const SCHEMA_VERSION: u32 = 1;
pub const FORMAL_NOTE: &str = "formal approximate solution";
const MAX_TRUNCATION: usize = 64;
const MAX_ORDER: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub lambda1: [f64; 2],
    pub lambda2: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Distance below which a lattice radius counts as resonant.
    #[serde(default = "default_resonance")]
    pub resonance: f64,
}

fn default_resonance() -> f64 {
    RESONANCE_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            resonance: RESONANCE_TOL,
        }
    }
}

fn default_order() -> usize {
    beltrami::residual::DEFAULT_ORDER
}

/// One run: lattice, physical constants, truncation and tolerances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: u32,
    pub lattice: LatticeSpec,
    pub alpha: f64,
    pub gravity: f64,
    pub beta: f64,
    pub depth: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0: Option<[f64; 2]>,
    /// Starting point for the reference-velocity solve when `c0` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c0_guess: Option<[f64; 2]>,
    pub truncation: usize,
    #[serde(default = "default_order")]
    pub taylor_order: usize,
    #[serde(default)]
    pub route: CoefficientRoute,
    #[serde(default)]
    pub tolerances: Tolerances,
}

impl RunConfig {
    pub fn from_json(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.version != SCHEMA_VERSION {
            return Err(CliError::config(format!(
                "config: unsupported version {} (expected {SCHEMA_VERSION})",
                self.version
            )));
        }
        self.lattice()?;
        self.base_params()?;
        if let Some(g) = self.c0_guess {
            if !Vec2::from(g).is_finite() {
                return Err(CliError::config("config: c0_guess must be finite"));
            }
        }
        if !(2..=MAX_TRUNCATION).contains(&self.truncation) {
            return Err(CliError::config(format!(
                "config: truncation must lie in 2..={MAX_TRUNCATION}"
            )));
        }
        if !(1..=MAX_ORDER).contains(&self.taylor_order) {
            return Err(CliError::config(format!(
                "config: taylor_order must lie in 1..={MAX_ORDER}"
            )));
        }
        let tol = self.tolerances.resonance;
        if !(tol.is_finite() && tol > 0.0) {
            return Err(CliError::config("config: tolerances.resonance must be positive"));
        }
        Ok(())
    }

    pub fn lattice(&self) -> CliResult<LatticePair> {
        Ok(build_lattice(self.lattice.lambda1.into(), self.lattice.lambda2.into())?)
    }

    /// Parameters with `c0` taken from the config, or zero when it is to be solved for.
    pub fn base_params(&self) -> CliResult<PhysicalParams> {
        let c0 = self.c0.map(Vec2::from).unwrap_or(Vec2::ZERO);
        Ok(PhysicalParams::new(
            self.alpha,
            self.gravity,
            self.beta,
            self.depth,
            c0,
        )?)
    }

    /// SHA-256 of the canonical serialisation.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("config serialises");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum C0Source {
    Config,
    Solved,
}

/// A loaded config with its derived objects.
pub struct Setup {
    pub config: RunConfig,
    pub hash: String,
    pub lattice: LatticePair,
    pub base: PhysicalParams,
}

impl Setup {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("config: cannot read {}: {e}", path.display())))?;
        Self::from_config(RunConfig::from_json(&text)?)
    }

    pub fn from_config(config: RunConfig) -> CliResult<Self> {
        config.validate()?;
        Ok(Self {
            hash: config.hash(),
            lattice: config.lattice()?,
            base: config.base_params()?,
            config,
        })
    }

    pub fn note(&self) -> Option<&'static str> {
        (self.config.beta == 0.0).then_some(FORMAL_NOTE)
    }

    /// Phase speeds of the generators matched to the irrotational dispersion relation.
    pub fn default_guess(&self) -> CliResult<Vec2> {
        let p = &self.base;
        let speed = |k: Vec2| -> CliResult<f64> {
            let s = k.norm();
            let (_, t) = multipliers_c_t(s, p)?;
            Ok(((p.gravity + p.beta * s * s) * s * s * t).abs().sqrt())
        };
        let (k1, k2) = (self.lattice.k1, self.lattice.k2);
        let (s1, s2) = (speed(k1)?, speed(k2)?);
        let det = k1.x * k2.y - k1.y * k2.x;
        Ok(Vec2::new((s1 * k2.y - s2 * k1.y) / det, (k1.x * s2 - k2.x * s1) / det))
    }

    pub fn solve(&self, guess: Option<Vec2>, jacobian: JacobianKind) -> CliResult<NewtonOutcome> {
        let guess = match guess.or(self.config.c0_guess.map(Vec2::from)) {
            Some(g) => g,
            None => self.default_guess()?,
        };
        Ok(solve_c0(&self.lattice, &self.base, self.base.beta, guess, jacobian)?)
    }

    /// Parameters with `c0` resolved, solving the dispersion pair when the config omits it.
    pub fn params(&self) -> CliResult<(PhysicalParams, C0Source)> {
        match self.config.c0 {
            Some(_) => Ok((self.base, C0Source::Config)),
            None => {
                let out = self.solve(None, JacobianKind::Analytic)?;
                Ok((self.base.with_c0(out.c0), C0Source::Solved))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"version":1,"lattice":{"lambda1":[6.283185307179586,0],"lambda2":[0,6.283185307179586]},
        "alpha":0,"gravity":1,"beta":1,"depth":1,"truncation":6}"#;

    #[test]
    fn defaults_fill_in() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        assert_eq!(c.taylor_order, 4);
        assert_eq!(c.route, CoefficientRoute::Spectral);
        assert_eq!(c.tolerances.resonance, RESONANCE_TOL);
        assert!(c.c0.is_none());
    }

    #[test]
    fn canonical_round_trip_keeps_hash() {
        let c = RunConfig::from_json(MINIMAL).unwrap();
        let again = RunConfig::from_json(&serde_json::to_string_pretty(&c).unwrap()).unwrap();
        assert_eq!(c, again);
        assert_eq!(c.hash(), again.hash());
    }

    #[test]
    fn rejects_bad_values() {
        for (k, v) in [
            ("version", "2"),
            ("truncation", "1"),
            ("gravity", "0"),
            ("beta", "-1"),
            ("extra", "0"),
        ] {
            let mut val: serde_json::Value = serde_json::from_str(MINIMAL).unwrap();
            val[k] = serde_json::from_str(v).unwrap();
            let err = RunConfig::from_json(&val.to_string()).unwrap_err();
            assert_eq!(err.kind, crate::error::ExitKind::Config, "{k}");
        }
    }

    #[test]
    fn default_guess_solves_irrotational_pair() {
        let s = Setup::from_config(RunConfig::from_json(MINIMAL).unwrap()).unwrap();
        let g = s.default_guess().unwrap();
        let a = (2.0 * 1f64.tanh()).sqrt();
        assert!((g.x - a).abs() < 1e-14 && (g.y - a).abs() < 1e-14);
        let (p, src) = s.params().unwrap();
        assert_eq!(src, C0Source::Solved);
        assert!((p.c0.x - a).abs() < 1e-12);
    }
}
