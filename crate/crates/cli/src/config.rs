// SPDX-License-Identifier: Apache-2.0

//! Run configuration read from the sectioned text format.
//!
//! ```text
//! [cavity]
//! frequency_ghz = 5.5
//!
//! [qubit]            # defaults for qubit.1 .. qubit.3
//! e_c_ghz = 0.3
//! e_j_max_ghz = 15
//! coupling_ghz = 0.1 # at zero flux
//! flux_bias = 0
//!
//! [loop]
//! alpha = 6
//! beta = 0.9
//! steps = 4096
//!
//! [sweep]
//! alpha_min = 1
//! alpha_max = 8
//! alpha_count = 29
//! beta_values = 0, 0.5, 1
//!
//! [dynamics]
//! omega0_tau = 25, 50, 100, 200
//! steps_per_unit = 200
//!
//! [output]
//! dir = results
//! ```

use std::path::PathBuf;
use std::str::FromStr;

use holonomy_core::holonomy::DEFAULT_STEPS;
use thiserror::Error;

use crate::ini::{self, Ini};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error(transparent)]
    Syntax(#[from] ini::ParseError),
    #[error("missing section [{0}]")]
    MissingSection(String),
    #[error("missing key `{key}` in [{section}]")]
    MissingKey { section: String, key: String },
    #[error("[{section}] {key} = {value:?}: {reason}")]
    BadValue { section: String, key: String, value: String, reason: String },
}

impl ConfigError {
    fn bad(section: &str, key: &str, value: &str, reason: impl Into<String>) -> Self {
        Self::BadValue { section: section.into(), key: key.into(), value: value.into(), reason: reason.into() }
    }
}

pub type Result<T> = std::result::Result<T, ConfigError>;

const DEFAULT_ALPHA: GridSpec = GridSpec::Range { min: 1.0, max: 8.0, count: 29 };
const DEFAULT_BETA: GridSpec = GridSpec::Range { min: 0.0, max: 1.0, count: 21 };
const DEFAULT_STEPS_PER_UNIT: f64 = 200.0;
const MAX_GRID_POINTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitConfig {
    pub e_c_ghz: f64,
    pub e_j_max_ghz: f64,
    /// Coupling at zero flux.
    pub coupling_ghz: f64,
    pub flux_bias: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviceConfig {
    pub cavity_ghz: f64,
    pub qubits: [QubitConfig; 3],
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopConfig {
    pub alpha: f64,
    pub beta: f64,
    pub steps: usize,
    pub omega0_tau: Option<f64>,
}

impl Default for LoopConfig {
    fn default() -> Self {
        Self { alpha: 6.0, beta: 0.9, steps: DEFAULT_STEPS, omega0_tau: None }
    }
}

/// An explicit value list or `count` evenly spaced points on `[min, max]`.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Values(Vec<f64>),
    Range { min: f64, max: f64, count: usize },
}

impl GridSpec {
    pub fn points(&self) -> Vec<f64> {
        match self {
            GridSpec::Values(v) => v.clone(),
            GridSpec::Range { min, count: 1, .. } => vec![*min],
            GridSpec::Range { min, max, count } => {
                let n = (*count - 1) as f64;
                (0..*count).map(|k| if k + 1 == *count { *max } else { min + (max - min) * k as f64 / n }).collect()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub alphas: GridSpec,
    pub betas: GridSpec,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsConfig {
    pub omega0_tau: Vec<f64>,
    pub alpha: f64,
    pub beta: f64,
    pub steps_per_unit: f64,
    /// Steps of the reference holonomy.
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub device: Option<DeviceConfig>,
    pub loop_: LoopConfig,
    pub sweep: Option<SweepConfig>,
    pub dynamics: Option<DynamicsConfig>,
    pub output_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Self::from_ini(&ini::parse(text)?)
    }

    pub fn parse_bytes(data: &[u8]) -> Result<Self> {
        Self::from_ini(&ini::parse_bytes(data)?)
    }

    pub fn from_ini(ini: &Ini) -> Result<Self> {
        let loop_ = parse_loop(ini)?;
        Ok(Self {
            device: parse_device(ini)?,
            loop_,
            sweep: parse_sweep(ini, &loop_)?,
            dynamics: parse_dynamics(ini, &loop_)?,
            output_dir: ini.get("output", "dir").filter(|d| !d.is_empty()).map(PathBuf::from),
        })
    }

    pub fn require_device(&self) -> Result<&DeviceConfig> {
        self.device.as_ref().ok_or_else(|| ConfigError::MissingSection("cavity".into()))
    }

    pub fn require_sweep(&self) -> Result<&SweepConfig> {
        self.sweep.as_ref().ok_or_else(|| ConfigError::MissingSection("sweep".into()))
    }

    pub fn require_dynamics(&self) -> Result<&DynamicsConfig> {
        self.dynamics.as_ref().ok_or_else(|| ConfigError::MissingSection("dynamics".into()))
    }
}

fn value<T: FromStr>(ini: &Ini, section: &str, key: &str) -> Result<Option<T>> {
    match ini.get(section, key) {
        None => Ok(None),
        Some(v) => v.parse().map(Some).map_err(|_| ConfigError::bad(section, key, v, "not a valid number")),
    }
}

fn finite(ini: &Ini, section: &str, key: &str) -> Result<Option<f64>> {
    let v: Option<f64> = value(ini, section, key)?;
    match v {
        Some(x) if !x.is_finite() => Err(ConfigError::bad(section, key, &x.to_string(), "must be finite")),
        _ => Ok(v),
    }
}

fn required(ini: &Ini, section: &str, key: &str) -> Result<f64> {
    finite(ini, section, key)?.ok_or_else(|| ConfigError::MissingKey { section: section.into(), key: key.into() })
}

fn list(ini: &Ini, section: &str, key: &str) -> Result<Option<Vec<f64>>> {
    let Some(raw) = ini.get(section, key) else { return Ok(None) };
    raw.split(',')
        .map(|s| match s.trim().parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(ConfigError::bad(section, key, raw, "expected a comma-separated list of numbers")),
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

fn check_increasing(section: &str, key: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() || v.iter().any(|x| !x.is_finite()) || v.windows(2).any(|w| w[1] <= w[0]) {
        let mut shown = v.iter().take(8).map(f64::to_string).collect::<Vec<_>>().join(", ");
        if v.len() > 8 {
            shown.push_str(", ...");
        }
        return Err(ConfigError::bad(section, key, &shown, "values must be finite and strictly increasing"));
    }
    Ok(())
}

fn steps(ini: &Ini, section: &str, key: &str) -> Result<Option<usize>> {
    let v: Option<usize> = value(ini, section, key)?;
    match v {
        Some(n) if n < 2 => Err(ConfigError::bad(section, key, &n.to_string(), "at least 2 steps are needed")),
        _ => Ok(v),
    }
}

fn check_shape(section: &str, alpha: f64, beta: f64) -> Result<()> {
    if alpha <= 0.0 {
        return Err(ConfigError::bad(section, "alpha", &alpha.to_string(), "must be positive"));
    }
    if !(0.0..=2.0).contains(&beta) {
        return Err(ConfigError::bad(section, "beta", &beta.to_string(), "must lie in [0, 2]"));
    }
    Ok(())
}

fn parse_qubit(ini: &Ini, k: usize) -> Result<QubitConfig> {
    let own = format!("qubit.{k}");
    let field = |key: &str| -> Result<f64> {
        if let Some(v) = finite(ini, &own, key)? {
            return Ok(v);
        }
        finite(ini, "qubit", key)?.ok_or_else(|| ConfigError::MissingKey { section: own.clone(), key: key.into() })
    };
    let q = QubitConfig {
        e_c_ghz: field("e_c_ghz")?,
        e_j_max_ghz: field("e_j_max_ghz")?,
        coupling_ghz: field("coupling_ghz")?,
        flux_bias: field("flux_bias")?,
    };
    for (key, v) in [("e_c_ghz", q.e_c_ghz), ("e_j_max_ghz", q.e_j_max_ghz)] {
        if v <= 0.0 {
            return Err(ConfigError::bad(&own, key, &v.to_string(), "must be positive"));
        }
    }
    if q.coupling_ghz < 0.0 {
        return Err(ConfigError::bad(&own, "coupling_ghz", &q.coupling_ghz.to_string(), "must be non-negative"));
    }
    Ok(q)
}

fn parse_device(ini: &Ini) -> Result<Option<DeviceConfig>> {
    let any_qubit = ini.sections().any(|s| s == "qubit" || s.starts_with("qubit."));
    if !ini.has_section("cavity") && !any_qubit {
        return Ok(None);
    }
    if !ini.has_section("cavity") {
        return Err(ConfigError::MissingSection("cavity".into()));
    }
    let cavity_ghz = required(ini, "cavity", "frequency_ghz")?;
    if cavity_ghz <= 0.0 {
        return Err(ConfigError::bad("cavity", "frequency_ghz", &cavity_ghz.to_string(), "must be positive"));
    }
    let qubits = [parse_qubit(ini, 1)?, parse_qubit(ini, 2)?, parse_qubit(ini, 3)?];
    Ok(Some(DeviceConfig { cavity_ghz, qubits }))
}

fn parse_loop(ini: &Ini) -> Result<LoopConfig> {
    let d = LoopConfig::default();
    let l = LoopConfig {
        alpha: finite(ini, "loop", "alpha")?.unwrap_or(d.alpha),
        beta: finite(ini, "loop", "beta")?.unwrap_or(d.beta),
        steps: steps(ini, "loop", "steps")?.unwrap_or(d.steps),
        omega0_tau: finite(ini, "loop", "omega0_tau")?,
    };
    check_shape("loop", l.alpha, l.beta)?;
    if let Some(w) = l.omega0_tau {
        if w <= 0.0 {
            return Err(ConfigError::bad("loop", "omega0_tau", &w.to_string(), "must be positive"));
        }
    }
    Ok(l)
}

fn parse_grid(ini: &Ini, name: &str, default: GridSpec) -> Result<GridSpec> {
    let values_key = format!("{name}_values");
    let keys = [format!("{name}_min"), format!("{name}_max"), format!("{name}_count")];
    let has_range = keys.iter().any(|k| ini.get("sweep", k).is_some());
    if let Some(v) = list(ini, "sweep", &values_key)? {
        if has_range {
            return Err(ConfigError::bad("sweep", &values_key, "", "give either a value list or a range, not both"));
        }
        check_increasing("sweep", &values_key, &v)?;
        if v.len() > MAX_GRID_POINTS {
            return Err(ConfigError::bad("sweep", &values_key, "", format!("at most {MAX_GRID_POINTS} values")));
        }
        return Ok(GridSpec::Values(v));
    }
    if !has_range {
        return Ok(default);
    }
    let min = required(ini, "sweep", &keys[0])?;
    let count: usize = value(ini, "sweep", &keys[2])?
        .ok_or_else(|| ConfigError::MissingKey { section: "sweep".into(), key: keys[2].clone() })?;
    if count == 0 || count > MAX_GRID_POINTS {
        return Err(ConfigError::bad(
            "sweep",
            &keys[2],
            &count.to_string(),
            format!("must lie in 1..={MAX_GRID_POINTS}"),
        ));
    }
    let max = match finite(ini, "sweep", &keys[1])? {
        Some(m) => m,
        None if count == 1 => min,
        None => return Err(ConfigError::MissingKey { section: "sweep".into(), key: keys[1].clone() }),
    };
    if count == 1 && max != min {
        return Err(ConfigError::bad("sweep", &keys[1], &max.to_string(), "a single-point grid needs max = min"));
    }
    if count > 1 && max <= min {
        return Err(ConfigError::bad("sweep", &keys[1], &max.to_string(), "must exceed the minimum"));
    }
    let grid = GridSpec::Range { min, max, count };
    check_increasing("sweep", &keys[1], &grid.points())?;
    Ok(grid)
}

fn parse_sweep(ini: &Ini, loop_: &LoopConfig) -> Result<Option<SweepConfig>> {
    if !ini.has_section("sweep") {
        return Ok(None);
    }
    let alphas = parse_grid(ini, "alpha", DEFAULT_ALPHA)?;
    let betas = parse_grid(ini, "beta", DEFAULT_BETA)?;
    for a in alphas.points() {
        for b in [betas.points()[0], *betas.points().last().unwrap()] {
            check_shape("sweep", a, b)?;
        }
    }
    let steps = steps(ini, "sweep", "steps")?.unwrap_or(loop_.steps);
    Ok(Some(SweepConfig { alphas, betas, steps }))
}

fn parse_dynamics(ini: &Ini, loop_: &LoopConfig) -> Result<Option<DynamicsConfig>> {
    if !ini.has_section("dynamics") {
        return Ok(None);
    }
    let omega0_tau = match (list(ini, "dynamics", "omega0_tau")?, loop_.omega0_tau) {
        (Some(v), _) => v,
        (None, Some(w)) => vec![w],
        (None, None) => {
            return Err(ConfigError::MissingKey { section: "dynamics".into(), key: "omega0_tau".into() });
        }
    };
    check_increasing("dynamics", "omega0_tau", &omega0_tau)?;
    if omega0_tau[0] <= 0.0 {
        return Err(ConfigError::bad("dynamics", "omega0_tau", &omega0_tau[0].to_string(), "must be positive"));
    }
    let alpha = finite(ini, "dynamics", "alpha")?.unwrap_or(loop_.alpha);
    let beta = finite(ini, "dynamics", "beta")?.unwrap_or(loop_.beta);
    check_shape("dynamics", alpha, beta)?;
    let steps_per_unit = finite(ini, "dynamics", "steps_per_unit")?.unwrap_or(DEFAULT_STEPS_PER_UNIT);
    if steps_per_unit <= 0.0 {
        return Err(ConfigError::bad("dynamics", "steps_per_unit", &steps_per_unit.to_string(), "must be positive"));
    }
    Ok(Some(DynamicsConfig { omega0_tau, alpha, beta, steps_per_unit, steps: loop_.steps }))
}
