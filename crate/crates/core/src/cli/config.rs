// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! JSON run configuration.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bath::{BathMode, BathSpec, CouplingKind, DiscreteBath};
use crate::dynamics::SystemSpec;
use crate::error::{Error, Result};
use crate::quad::QuadratureSpec;
use crate::wigner::DEFAULT_K_MAX;
use crate::witnesses::DEFAULT_PSD_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Eta,
    Evolve,
    Correlation,
    Witness,
    Wigner,
    Figure1,
    Figure2,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Eta,
        Command::Evolve,
        Command::Correlation,
        Command::Witness,
        Command::Wigner,
        Command::Figure1,
        Command::Figure2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Eta => "eta",
            Command::Evolve => "evolve",
            Command::Correlation => "correlation",
            Command::Witness => "witness",
            Command::Wigner => "wigner",
            Command::Figure1 => "figure1",
            Command::Figure2 => "figure2",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected csv or json)")),
        }
    }
}

/// How a continuum bath is evaluated.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    /// Closed form when the coupling has one, quadrature otherwise.
    #[default]
    Auto,
    ClosedForm,
    Quadrature,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum BathConfig {
    Continuum {
        temperature: f64,
        spectral_exponent: f64,
        coupling: CouplingKind,
        #[serde(default)]
        evaluation: Evaluation,
    },
    Discrete {
        temperature: f64,
        modes: Vec<BathMode>,
    },
    /// η(t) = (-γ + iω) t.
    SyntheticLinear { gamma: f64, frequency: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub n_points: usize,
}

impl TimeGrid {
    pub fn points(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        let last = self.n_points - 1;
        (0..self.n_points)
            .map(|i| if i == last { self.t_end } else { self.t_start + span * i as f64 / last as f64 })
            .collect()
    }
}

/// Initial system state in the Fock basis. Complex numbers are [re, im].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialState {
    /// Pure state from (unnormalized) amplitudes.
    Pure { amplitudes: Vec<[f64; 2]> },
    /// Full density matrix, row by row.
    Matrix { rows: Vec<Vec<[f64; 2]>> },
    Fock { n: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvolveBlock {
    pub initial_state: InitialState,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrelationBlock {
    pub initial_state: InitialState,
    pub taus: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WitnessBlock {
    pub n: usize,
    pub psd_tol: f64,
}

impl Default for WitnessBlock {
    fn default() -> Self {
        Self {
            n: 2,
            psd_tol: DEFAULT_PSD_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub r_max: f64,
    pub n_radial: usize,
    pub n_angular: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            r_max: 5.0,
            n_radial: 400,
            n_angular: 256,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WignerBlock {
    pub alpha: f64,
    pub k_max: usize,
    /// Frequency in the phase e^{-i2kωt} of the cat series.
    pub sys_omega: f64,
    pub grid: GridConfig,
}

impl Default for WignerBlock {
    fn default() -> Self {
        Self {
            alpha: 1.5,
            k_max: DEFAULT_K_MAX,
            sys_omega: 1.0,
            grid: GridConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Figure1Block {
    pub spectral_exponents: Vec<f64>,
    pub temperatures: Vec<f64>,
    pub lambda: f64,
    pub omega0: f64,
    pub sigma: f64,
}

impl Default for Figure1Block {
    fn default() -> Self {
        Self {
            spectral_exponents: vec![0.0, 1.0, 2.0],
            temperatures: vec![0.2, 0.4, 0.6, 0.8, 1.0],
            lambda: 1.0,
            omega0: 1.0,
            sigma: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Figure2Block {
    pub spectral_exponents: Vec<f64>,
    pub alpha: f64,
    pub f: f64,
    pub temperature: f64,
    pub k_max: usize,
    pub sys_omega: f64,
    pub grid: GridConfig,
}

impl Default for Figure2Block {
    fn default() -> Self {
        Self {
            spectral_exponents: vec![0.0, 1.0, 2.0],
            alpha: 1.5,
            f: 1.0,
            temperature: 1.0,
            k_max: DEFAULT_K_MAX,
            sys_omega: 1.0,
            grid: GridConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bath: Option<BathConfig>,
    #[serde(default)]
    pub quadrature: QuadratureSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evolve: Option<EvolveBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wigner: Option<WignerBlock>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure1: Option<Figure1Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub figure2: Option<Figure2Block>,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Parses and validates a JSON document, filling command defaults.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut config: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::config(if path == "." { String::new() } else { path }, e.into_inner().to_string())
    })?;
    config.fill_defaults();
    config.validate()?;
    Ok(config)
}

/// [`parse_config`] for a document that may omit `command`; `command` is
/// inserted and must agree with any value already present.
pub fn parse_config_for(text: &str, command: Command) -> Result<RunConfig> {
    let mut value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::config("", e.to_string()))?;
    let object = value
        .as_object_mut()
        .ok_or_else(|| Error::config("", "config must be a JSON object"))?;
    match object.get("command") {
        Some(existing) if existing != command.name() => {
            return Err(Error::config(
                "command",
                format!("document says {existing} but `{command}` was requested"),
            ));
        }
        _ => {
            object.insert("command".into(), command.name().into());
        }
    }
    parse_config(&value.to_string())
}

fn check(ok: bool, path: &str, message: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(path, message()))
    }
}

fn positive(v: f64) -> bool {
    v > 0.0 && v.is_finite()
}

fn relabel(path: &str, result: Result<()>) -> Result<()> {
    result.map_err(|e| Error::config(path, e.to_string()))
}

impl RunConfig {
    fn fill_defaults(&mut self) {
        match self.command {
            Command::Witness if self.witness.is_none() => self.witness = Some(WitnessBlock::default()),
            Command::Wigner if self.wigner.is_none() => self.wigner = Some(WignerBlock::default()),
            Command::Figure1 => {
                self.figure1.get_or_insert_with(Figure1Block::default);
                self.time.get_or_insert(TimeGrid {
                    t_start: 0.0,
                    t_end: 60.0,
                    n_points: 601,
                });
            }
            Command::Figure2 => {
                self.figure2.get_or_insert_with(Figure2Block::default);
                self.time.get_or_insert(TimeGrid {
                    t_start: 0.0,
                    t_end: 5.0,
                    n_points: 51,
                });
            }
            _ => {}
        }
    }

    pub fn time_grid(&self) -> Result<&TimeGrid> {
        self.time.as_ref().ok_or_else(|| Error::config("time", "missing time grid"))
    }

    pub fn validate(&self) -> Result<()> {
        relabel("quadrature", self.quadrature.validate())?;
        if let Some(bath) = &self.bath {
            validate_bath(bath)?;
        }
        if let Some(system) = &self.system {
            check(system.dim >= 2, "system.dim", || format!("dimension {} must be >= 2", system.dim))?;
            check(system.omega_s.is_finite(), "system.omega_s", || "must be finite".into())?;
        }
        if let Some(time) = &self.time {
            check(time.t_start >= 0.0 && time.t_start.is_finite(), "time.t_start", || {
                format!("{} must be >= 0", time.t_start)
            })?;
            check(time.t_end >= time.t_start && time.t_end.is_finite(), "time.t_end", || {
                format!("{} must be >= t_start", time.t_end)
            })?;
            check(time.n_points >= 2, "time.n_points", || format!("{} must be >= 2", time.n_points))?;
        }
        let require = |present: bool, path: &str| check(present, path, || format!("`{}` needs this block", self.command));
        match self.command {
            Command::Eta => {
                require(self.bath.is_some(), "bath")?;
                require(self.time.is_some(), "time")?;
            }
            Command::Evolve | Command::Correlation => {
                require(self.bath.is_some(), "bath")?;
                require(self.system.is_some(), "system")?;
                require(self.time.is_some(), "time")?;
                let dim = self.system.map(|s| s.dim).unwrap_or(0);
                if self.command == Command::Evolve {
                    let block = self.evolve.as_ref();
                    require(block.is_some(), "evolve")?;
                    validate_state(&block.unwrap().initial_state, dim, "evolve.initial_state")?;
                } else {
                    let block = self.correlation.as_ref();
                    require(block.is_some(), "correlation")?;
                    let block = block.unwrap();
                    validate_state(&block.initial_state, dim, "correlation.initial_state")?;
                    check(!block.taus.is_empty(), "correlation.taus", || "needs at least one tau".into())?;
                    for (i, tau) in block.taus.iter().enumerate() {
                        check(*tau >= 0.0 && tau.is_finite(), &format!("correlation.taus[{i}]"), || {
                            format!("{tau} must be >= 0")
                        })?;
                    }
                }
            }
            Command::Witness => {
                require(self.bath.is_some(), "bath")?;
                require(self.time.is_some(), "time")?;
                let w = self.witness.expect("filled by defaults");
                check(w.n >= 2, "witness.n", || format!("{} must be >= 2", w.n))?;
                check(w.psd_tol >= 0.0 && w.psd_tol.is_finite(), "witness.psd_tol", || {
                    format!("{} must be >= 0", w.psd_tol)
                })?;
            }
            Command::Wigner => {
                require(self.bath.is_some(), "bath")?;
                require(self.time.is_some(), "time")?;
                let w = self.wigner.expect("filled by defaults");
                validate_cat("wigner", w.alpha, w.k_max, w.sys_omega, &w.grid)?;
                check(self.time.unwrap().t_start == 0.0, "time.t_start", || "the quantumness scan starts at 0".into())?;
            }
            Command::Figure1 => {
                let f = self.figure1.as_ref().expect("filled by defaults");
                check(!f.spectral_exponents.is_empty(), "figure1.spectral_exponents", || "empty".into())?;
                check(!f.temperatures.is_empty(), "figure1.temperatures", || "empty".into())?;
                for (i, s) in f.spectral_exponents.iter().enumerate() {
                    check(*s > -1.0 && s.is_finite(), &format!("figure1.spectral_exponents[{i}]"), || {
                        format!("{s} must be > -1")
                    })?;
                }
                for (i, t) in f.temperatures.iter().enumerate() {
                    check(positive(*t), &format!("figure1.temperatures[{i}]"), || format!("{t} must be > 0"))?;
                }
                check(positive(f.lambda), "figure1.lambda", || "must be > 0".into())?;
                check(positive(f.omega0), "figure1.omega0", || "must be > 0".into())?;
                check(positive(f.sigma), "figure1.sigma", || "must be > 0".into())?;
            }
            Command::Figure2 => {
                let f = self.figure2.as_ref().expect("filled by defaults");
                validate_cat("figure2", f.alpha, f.k_max, f.sys_omega, &f.grid)?;
                check(!f.spectral_exponents.is_empty(), "figure2.spectral_exponents", || "empty".into())?;
                for (i, s) in f.spectral_exponents.iter().enumerate() {
                    check(*s > -1.0 && s.is_finite(), &format!("figure2.spectral_exponents[{i}]"), || {
                        format!("{s} must be > -1")
                    })?;
                }
                check(positive(f.f), "figure2.f", || "must be > 0".into())?;
                check(positive(f.temperature), "figure2.temperature", || "must be > 0".into())?;
                check(self.time.unwrap().t_start == 0.0, "time.t_start", || "the quantumness scan starts at 0".into())?;
            }
        }
        Ok(())
    }
}

fn validate_bath(bath: &BathConfig) -> Result<()> {
    match bath {
        BathConfig::Continuum {
            temperature,
            spectral_exponent,
            coupling,
            evaluation,
        } => {
            check(positive(*temperature), "bath.temperature", || format!("{temperature} must be > 0"))?;
            check(*spectral_exponent > -1.0 && spectral_exponent.is_finite(), "bath.spectral_exponent", || {
                format!("{spectral_exponent} must be > -1")
            })?;
            relabel("bath.coupling", coupling.validate())?;
            check(
                !(*evaluation == Evaluation::ClosedForm && matches!(coupling, CouplingKind::Lorentzian { .. })),
                "bath.evaluation",
                || "Lorentzian coupling has no closed form".into(),
            )?;
            relabel("bath", BathSpec::new(*temperature, *spectral_exponent, *coupling).map(|_| ()))
        }
        BathConfig::Discrete { temperature, modes } => {
            check(positive(*temperature), "bath.temperature", || format!("{temperature} must be > 0"))?;
            relabel("bath.modes", DiscreteBath::new(modes.clone()).map(|_| ()))
        }
        BathConfig::SyntheticLinear { gamma, frequency } => {
            check(*gamma >= 0.0 && gamma.is_finite(), "bath.gamma", || format!("{gamma} must be >= 0"))?;
            check(frequency.is_finite(), "bath.frequency", || "must be finite".into())
        }
    }
}

fn validate_state(state: &InitialState, dim: usize, path: &str) -> Result<()> {
    let size = match state {
        InitialState::Pure { amplitudes } => amplitudes.len(),
        InitialState::Matrix { rows } => rows.len(),
        InitialState::Fock { n } => {
            return check(*n < dim, path, || format!("level {n} outside dimension {dim}"));
        }
    };
    check(size == dim, path, || format!("state has dimension {size}, system has {dim}"))?;
    relabel(path, state.to_density_matrix(dim).map(|_| ()))
}

fn validate_cat(block: &str, alpha: f64, k_max: usize, sys_omega: f64, grid: &GridConfig) -> Result<()> {
    check(alpha >= 0.0 && alpha.is_finite(), &format!("{block}.alpha"), || format!("{alpha} must be >= 0"))?;
    check(k_max >= 1, &format!("{block}.k_max"), || "must be >= 1".into())?;
    check(sys_omega.is_finite(), &format!("{block}.sys_omega"), || "must be finite".into())?;
    check(positive(grid.r_max), &format!("{block}.grid.r_max"), || "must be > 0".into())?;
    check(grid.n_radial >= 1, &format!("{block}.grid.n_radial"), || "must be >= 1".into())?;
    check(grid.n_angular >= 2, &format!("{block}.grid.n_angular"), || "must be >= 2".into())
}

impl InitialState {
    pub fn to_density_matrix(&self, dim: usize) -> Result<crate::dynamics::DensityMatrix> {
        use crate::dynamics::DensityMatrix;
        use nalgebra::DMatrix;
        use num_complex::Complex64;
        let c = |p: &[f64; 2]| Complex64::new(p[0], p[1]);
        match self {
            InitialState::Pure { amplitudes } => {
                DensityMatrix::pure(&amplitudes.iter().map(c).collect::<Vec<_>>())
            }
            InitialState::Matrix { rows } => {
                if rows.iter().any(|r| r.len() != rows.len()) {
                    return Err(Error::invalid("density matrix", "rows must form a square matrix"));
                }
                DensityMatrix::new(DMatrix::from_fn(rows.len(), rows.len(), |i, j| c(&rows[i][j])))
            }
            InitialState::Fock { n } => DensityMatrix::fock(dim, *n),
        }
    }
}
