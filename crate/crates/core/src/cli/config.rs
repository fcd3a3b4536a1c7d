//! Run configuration: a flat JSON file overlaid by command-line flags.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dynamics::{Method, DEFAULT_DT};
use crate::error::{Error, Result};
use crate::models::{ModelId, ModelParams};

/// Keys accepted in a config file.
pub const CONFIG_KEYS: [&str; 12] = [
    "model",
    "omega0",
    "omega1",
    "alpha",
    "beta",
    "phi",
    "t_max",
    "t_steps",
    "phi_steps",
    "method",
    "dt",
    "out",
];

/// Every field optional; the layer type for file and flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PartialConfig {
    pub model: Option<ModelId>,
    pub omega0: Option<f64>,
    pub omega1: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub phi: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<u64>,
    pub phi_steps: Option<u64>,
    pub method: Option<Method>,
    pub dt: Option<f64>,
    pub out: Option<PathBuf>,
}

impl PartialConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| Error::input(format!("config is not valid JSON: {e}")))?;
        let object = value
            .as_object()
            .ok_or_else(|| Error::input("config must be a flat JSON object"))?;
        let unknown: Vec<&str> = object
            .keys()
            .map(String::as_str)
            .filter(|k| !CONFIG_KEYS.contains(k))
            .collect();
        if !unknown.is_empty() {
            return Err(Error::input(format!(
                "unknown config keys: {}",
                unknown.join(", ")
            )));
        }
        serde_json::from_value(value).map_err(|e| Error::input(format!("bad config value: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: PartialConfig) -> PartialConfig {
        PartialConfig {
            model: top.model.or(self.model),
            omega0: top.omega0.or(self.omega0),
            omega1: top.omega1.or(self.omega1),
            alpha: top.alpha.or(self.alpha),
            beta: top.beta.or(self.beta),
            phi: top.phi.or(self.phi),
            t_max: top.t_max.or(self.t_max),
            t_steps: top.t_steps.or(self.t_steps),
            phi_steps: top.phi_steps.or(self.phi_steps),
            method: top.method.or(self.method),
            dt: top.dt.or(self.dt),
            out: top.out.or(self.out),
        }
    }

    fn require<T: Copy>(field: Option<T>, name: &str) -> Result<T> {
        field.ok_or_else(|| Error::input(format!("missing required parameter `{name}`")))
    }
}

/// Loads `file` (if any) and lays `flags` over it.
pub fn load(file: Option<&Path>, flags: PartialConfig) -> Result<PartialConfig> {
    let base = match file {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    Ok(base.overlay(flags))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimeGrid {
    pub t_max: f64,
    pub t_steps: u64,
}

impl TimeGrid {
    pub fn new(t_max: f64, t_steps: u64) -> Result<Self> {
        if !t_max.is_finite() || t_max < 0.0 {
            return Err(Error::input(format!(
                "t_max must be finite and non-negative, got {t_max}"
            )));
        }
        if t_steps == 0 {
            return Err(Error::input("t_steps must be at least 1"));
        }
        Ok(Self { t_max, t_steps })
    }

    /// `t_steps + 1` points on `[0, t_max]`, or just `{0}` when `t_max = 0`.
    pub fn points(&self) -> Vec<f64> {
        if self.t_max == 0.0 {
            return vec![0.0];
        }
        let n = self.t_steps;
        (0..=n)
            .map(|k| {
                if k == n {
                    self.t_max
                } else {
                    self.t_max * k as f64 / n as f64
                }
            })
            .collect()
    }
}

/// `steps` points on `[0, 2π)`.
pub fn phi_points(steps: u64) -> Vec<f64> {
    (0..steps).map(|k| TAU * k as f64 / steps as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub params: ModelParams,
    pub grid: TimeGrid,
    /// 0 means "use `params.phi` only".
    pub phi_steps: u64,
    pub method: Method,
    pub dt: f64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_partial(p: &PartialConfig) -> Result<Self> {
        let model = PartialConfig::require(p.model, "model")?;
        let params = ModelParams::new(
            model,
            PartialConfig::require(p.omega0, "omega0")?,
            PartialConfig::require(p.omega1, "omega1")?,
            PartialConfig::require(p.alpha, "alpha")?,
            PartialConfig::require(p.beta, "beta")?,
            p.phi.unwrap_or(0.0),
        )?;
        let grid = TimeGrid::new(
            PartialConfig::require(p.t_max, "t_max")?,
            PartialConfig::require(p.t_steps, "t_steps")?,
        )?;
        let dt = p.dt.unwrap_or(DEFAULT_DT);
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::input(format!("dt must be positive, got {dt}")));
        }
        Ok(Self {
            params,
            grid,
            phi_steps: p.phi_steps.unwrap_or(0),
            method: p.method.unwrap_or(Method::Spectral),
            dt,
            out: p.out.clone(),
        })
    }

    pub fn phis(&self) -> Vec<f64> {
        if self.phi_steps == 0 {
            vec![self.params.phi]
        } else {
            phi_points(self.phi_steps)
        }
    }
}

/// Parameters of `decompose`: the fit builds its own initial states.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecomposeConfig {
    pub model: ModelId,
    pub omega0: f64,
    pub omega1: f64,
    pub grid: TimeGrid,
    pub out: Option<PathBuf>,
}

impl DecomposeConfig {
    pub fn from_partial(p: &PartialConfig) -> Result<Self> {
        let model = PartialConfig::require(p.model, "model")?;
        let omega0 = PartialConfig::require(p.omega0, "omega0")?;
        let omega1 = PartialConfig::require(p.omega1, "omega1")?;
        ModelParams::new(model, omega0, omega1, 1.0, 0.0, 0.0)?;
        let grid = TimeGrid::new(
            PartialConfig::require(p.t_max, "t_max")?,
            PartialConfig::require(p.t_steps, "t_steps")?,
        )?;
        Ok(Self {
            model,
            omega0,
            omega1,
            grid,
            out: p.out.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenConfig {
    pub model: ModelId,
    pub omega0: f64,
    pub omega1: f64,
    pub out: Option<PathBuf>,
}

impl EigenConfig {
    /// Unlike a run, ω₀ = 0 is allowed: the spectrum is still well defined.
    pub fn from_partial(p: &PartialConfig) -> Result<Self> {
        let model = PartialConfig::require(p.model, "model")?;
        let omega0 = PartialConfig::require(p.omega0, "omega0")?;
        let omega1 = PartialConfig::require(p.omega1, "omega1")?;
        if !(omega0.is_finite() && omega0 >= 0.0) {
            return Err(Error::input(format!(
                "omega0 must be non-negative, got {omega0}"
            )));
        }
        if !(omega1.is_finite() && omega1 >= 0.0) {
            return Err(Error::input(format!(
                "omega1 must be non-negative, got {omega1}"
            )));
        }
        Ok(Self {
            model,
            omega0,
            omega1,
            out: p.out.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig5_flags() -> PartialConfig {
        PartialConfig {
            model: Some(ModelId::A),
            omega0: Some(1.0),
            omega1: Some(1.0),
            alpha: Some(std::f64::consts::FRAC_1_SQRT_2),
            beta: Some(std::f64::consts::FRAC_1_SQRT_2),
            phi: Some(0.0),
            t_max: Some(20.0),
            t_steps: Some(200),
            ..Default::default()
        }
    }

    #[test]
    fn defaults_filled() {
        let c = RunConfig::from_partial(&fig5_flags()).unwrap();
        assert_eq!(c.method, Method::Spectral);
        assert_eq!(c.dt, 1e-3);
        assert_eq!(c.phi_steps, 0);
        assert_eq!(c.grid.points().len(), 201);
        assert_eq!(c.grid.points()[200], 20.0);
    }

    #[test]
    fn empty_input_needs_model() {
        let err = RunConfig::from_partial(&PartialConfig::default()).unwrap_err();
        assert!(err.to_string().contains("model"));
    }

    #[test]
    fn unnormalized_rejected() {
        let p = PartialConfig {
            alpha: Some(1.0),
            beta: Some(1.0),
            ..fig5_flags()
        };
        assert!(RunConfig::from_partial(&p).is_err());
    }

    #[test]
    fn unknown_keys_listed() {
        let err =
            PartialConfig::from_json_str(r#"{"model":"A","omega2":1,"gamma":0}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("omega2") && msg.contains("gamma"), "{msg}");
    }

    #[test]
    fn flags_override_file() {
        let file =
            PartialConfig::from_json_str(r#"{"model":"B","omega0":3,"method":"rk4"}"#).unwrap();
        let merged = file.overlay(PartialConfig {
            omega0: Some(1.0),
            ..Default::default()
        });
        assert_eq!(merged.model, Some(ModelId::B));
        assert_eq!(merged.omega0, Some(1.0));
        assert_eq!(merged.method, Some(Method::Rk4));
    }

    #[test]
    fn time_grid_edges() {
        assert_eq!(TimeGrid::new(0.0, 1).unwrap().points(), vec![0.0]);
        assert!(TimeGrid::new(-1.0, 1).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
        assert_eq!(
            TimeGrid::new(1.0, 4).unwrap().points(),
            vec![0.0, 0.25, 0.5, 0.75, 1.0]
        );
    }

    #[test]
    fn phi_grid_half_open() {
        let g = phi_points(4);
        assert_eq!(g.len(), 4);
        assert!(g.iter().all(|&p| (0.0..TAU).contains(&p)));
    }
}
