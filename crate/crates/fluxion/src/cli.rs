// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration and command implementations behind the `fluxion`
//! binary.
//!
//! A run is described by one flat JSON document: the eighteen physical
//! parameters plus optional run plumbing (initial state, grids, probe
//! frequency, output path, free-text comment). Unknown keys are rejected.
//! Command output is CSV with a single header row, LF line endings and
//! every number printed with 12 significant digits, so identical configs
//! produce byte-identical files.

use serde::Deserialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use thiserror::Error;

use crate::adiabatic::{self, AdiabaticError};
use crate::dynamics::{self, DynamicsError, StateVector};
use crate::model::{ModelError, SystemParams};
use crate::spectrum::{self, SpectrumError};

/// Flux grid size used when a sweep does not specify one.
pub const DEFAULT_FLUX_POINTS: usize = 629;
/// Time grid defaults for `simulate`.
pub const DEFAULT_T_END: f64 = 1.0;
pub const DEFAULT_SAMPLES: usize = 1001;
/// Frequency window default: [ω_ag − 50, ω_ag + 150] with 2001 points.
pub const DEFAULT_OMEGA_POINTS: usize = 2001;
pub const DEFAULT_OMEGA_LO_OFFSET: f64 = -50.0;
pub const DEFAULT_OMEGA_HI_OFFSET: f64 = 150.0;
/// Isolation values are capped at this in CSV output and flagged.
pub const ISOLATION_CAP: f64 = 1e12;
/// Adiabaticity ratio above which the text report carries a warning.
pub const VALIDITY_WARN: f64 = 0.1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("invalid parameters: {0}")]
    Model(#[from] ModelError),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl CliError {
    /// Process exit code: 2 config/validation, 3 numerical, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 4,
            CliError::Parse(_) | CliError::Config(_) | CliError::Model(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<DynamicsError> for CliError {
    fn from(e: DynamicsError) -> Self {
        match e {
            DynamicsError::Model(m) => CliError::Model(m),
            DynamicsError::UnsortedTimes => CliError::Config(e.to_string()),
            DynamicsError::StepTooLarge { .. } => CliError::Config(e.to_string()),
            DynamicsError::Linalg(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Model(m) => CliError::Model(m),
            SpectrumError::UnsortedGrid => CliError::Config(e.to_string()),
            SpectrumError::Dynamics(d) => d.into(),
            SpectrumError::Linalg(_)
            | SpectrumError::NotConverged { .. }
            | SpectrumError::QuadratureNotSettled => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<AdiabaticError> for CliError {
    fn from(e: AdiabaticError) -> Self {
        match e {
            AdiabaticError::Model(m) => CliError::Model(m),
            AdiabaticError::ZeroRabiProduct => CliError::Config(e.to_string()),
        }
    }
}

/// Initial level for runs prepared in a single bare state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum InitialLevel {
    A,
    B,
}

/// One flat run description; see the preset files for complete examples.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    // physical parameters (all required, units of γ_ref)
    pub omega_ca: f64,
    pub omega_cb: f64,
    pub omega_da: f64,
    pub omega_db: f64,
    pub phi_ca: f64,
    pub phi_cb: f64,
    pub phi_da: f64,
    pub phi_db: f64,
    pub delta_c: f64,
    pub delta_d: f64,
    pub gamma_a: f64,
    pub gamma_b: f64,
    pub gamma_c: f64,
    pub gamma_d: f64,
    pub omega_ag: f64,
    pub omega_bg: f64,
    pub omega_cg: f64,
    pub omega_dg: f64,
    // run plumbing (all optional)
    #[serde(default)]
    pub comment: Option<String>,
    #[serde(default)]
    pub initial: Option<InitialLevel>,
    /// Explicit initial amplitudes as [re, im] pairs for A, B, C̃, D̃;
    /// takes precedence over `initial`.
    #[serde(default)]
    pub initial_amplitudes: Option<[[f64; 2]; 4]>,
    #[serde(default)]
    pub times: Option<Vec<f64>>,
    #[serde(default)]
    pub t_end: Option<f64>,
    #[serde(default)]
    pub samples: Option<usize>,
    /// Evaluation time for flux sweeps; defaults to the adiabatic peak time.
    #[serde(default)]
    pub sweep_time: Option<f64>,
    #[serde(default)]
    pub flux_points: Option<usize>,
    #[serde(default)]
    pub omega_lo: Option<f64>,
    #[serde(default)]
    pub omega_hi: Option<f64>,
    #[serde(default)]
    pub omega_points: Option<usize>,
    /// Probe frequency ω_k for `spectrum-flux`; defaults to ω_bg.
    #[serde(default)]
    pub probe_omega: Option<f64>,
    #[serde(default)]
    pub out: Option<String>,
}

/// Flag-level overrides; every set field wins over the config file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    /// Replaces the loop flux (gauge-fixed onto the a–c link).
    pub phi: Option<f64>,
    pub t_end: Option<f64>,
    pub samples: Option<usize>,
    pub flux_points: Option<usize>,
    pub omega_lo: Option<f64>,
    pub omega_hi: Option<f64>,
    pub omega_points: Option<usize>,
    pub initial: Option<InitialLevel>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Apply flag overrides (flag > file > default precedence).
    pub fn apply(mut self, ov: &Overrides) -> Self {
        if let Some(phi) = ov.phi {
            self.phi_ca = phi;
            self.phi_cb = 0.0;
            self.phi_da = 0.0;
            self.phi_db = 0.0;
        }
        if ov.t_end.is_some() {
            self.t_end = ov.t_end;
            self.times = None;
        }
        if ov.samples.is_some() {
            self.samples = ov.samples;
            self.times = None;
        }
        if ov.flux_points.is_some() {
            self.flux_points = ov.flux_points;
        }
        if ov.omega_lo.is_some() {
            self.omega_lo = ov.omega_lo;
        }
        if ov.omega_hi.is_some() {
            self.omega_hi = ov.omega_hi;
        }
        if ov.omega_points.is_some() {
            self.omega_points = ov.omega_points;
        }
        if ov.initial.is_some() {
            self.initial = ov.initial;
            self.initial_amplitudes = None;
        }
        self
    }

    pub fn system_params(&self) -> SystemParams {
        SystemParams {
            omega_ca: self.omega_ca,
            omega_cb: self.omega_cb,
            omega_da: self.omega_da,
            omega_db: self.omega_db,
            phi_ca: self.phi_ca,
            phi_cb: self.phi_cb,
            phi_da: self.phi_da,
            phi_db: self.phi_db,
            delta_c: self.delta_c,
            delta_d: self.delta_d,
            gamma_a: self.gamma_a,
            gamma_b: self.gamma_b,
            gamma_c: self.gamma_c,
            gamma_d: self.gamma_d,
            omega_ag: self.omega_ag,
            omega_bg: self.omega_bg,
            omega_cg: self.omega_cg,
            omega_dg: self.omega_dg,
        }
    }

    pub fn initial_state(&self) -> Result<StateVector, CliError> {
        if let Some(amps) = self.initial_amplitudes {
            let c = |p: [f64; 2]| num_complex::Complex64::new(p[0], p[1]);
            let state = StateVector::new(c(amps[0]), c(amps[1]), c(amps[2]), c(amps[3]));
            if !state.is_finite() {
                return Err(CliError::Config(
                    "initial_amplitudes must be finite".into(),
                ));
            }
            return Ok(state);
        }
        Ok(match self.initial.unwrap_or(InitialLevel::A) {
            InitialLevel::A => StateVector::level_a(),
            InitialLevel::B => StateVector::level_b(),
        })
    }

    pub fn time_grid(&self) -> Result<Vec<f64>, CliError> {
        if let Some(times) = &self.times {
            if times.is_empty() {
                return Err(CliError::Config("times must be nonempty".into()));
            }
            return Ok(times.clone());
        }
        let t_end = self.t_end.unwrap_or(DEFAULT_T_END);
        let samples = self.samples.unwrap_or(DEFAULT_SAMPLES);
        if samples == 0 {
            return Err(CliError::Config("samples must be at least 1".into()));
        }
        if t_end.is_nan() || t_end < 0.0 {
            return Err(CliError::Config("t_end must be nonnegative".into()));
        }
        Ok(linspace(0.0, t_end, samples))
    }

    /// Grid of `flux_points` values covering (−π, π].
    pub fn flux_grid(&self) -> Result<Vec<f64>, CliError> {
        let n = self.flux_points.unwrap_or(DEFAULT_FLUX_POINTS);
        if n == 0 {
            return Err(CliError::Config("flux_points must be at least 1".into()));
        }
        Ok((0..n)
            .map(|k| -PI + 2.0 * PI * (k + 1) as f64 / n as f64)
            .collect())
    }

    pub fn omega_grid(&self) -> Result<Vec<f64>, CliError> {
        let lo = self
            .omega_lo
            .unwrap_or(self.omega_ag + DEFAULT_OMEGA_LO_OFFSET);
        let hi = self
            .omega_hi
            .unwrap_or(self.omega_ag + DEFAULT_OMEGA_HI_OFFSET);
        if lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(CliError::Config(format!(
                "omega window must satisfy lo < hi (got {lo} ≥ {hi})"
            )));
        }
        let n = self.omega_points.unwrap_or(DEFAULT_OMEGA_POINTS);
        if n < 2 {
            return Err(CliError::Config("omega_points must be at least 2".into()));
        }
        Ok(linspace(lo, hi, n))
    }

    pub fn probe(&self) -> f64 {
        self.probe_omega.unwrap_or(self.omega_bg)
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Fixed 12-significant-digit scientific formatting; the determinism anchor
/// for all CSV output.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.11e}")
}

/// Populations and total norm over the configured time grid.
/// Columns: t, pop_a, pop_b, pop_c, pop_d, norm.
pub fn cmd_simulate(config: &RunConfig) -> Result<String, CliError> {
    let params = config.system_params().validated()?;
    let initial = config.initial_state()?;
    let times = config.time_grid()?;
    let traj = dynamics::evolve(&params, &initial, &times)?;
    let mut out = String::from("t,pop_a,pop_b,pop_c,pop_d,norm\n");
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let p = s.populations();
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_num(*t),
            fmt_num(p[0]),
            fmt_num(p[1]),
            fmt_num(p[2]),
            fmt_num(p[3]),
            fmt_num(s.norm_sq())
        )
        .expect("string write");
    }
    Ok(out)
}

/// Directional transition probabilities across the flux grid at a fixed
/// time (default: adiabatic peak time). Columns: phi, t_ab, t_ba,
/// isolation, capped. Isolation is clamped to [`ISOLATION_CAP`] with the
/// `capped` column flagging clamped rows.
pub fn cmd_sweep_flux(config: &RunConfig) -> Result<String, CliError> {
    let params = config.system_params().validated()?;
    let t = match config.sweep_time {
        Some(t) if t >= 0.0 => t,
        Some(t) => {
            return Err(CliError::Config(format!(
                "sweep_time must be nonnegative (got {t})"
            )))
        }
        None => adiabatic::peak_transition(&params)?.t_m_ba,
    };
    let phis = config.flux_grid()?;
    let records = dynamics::sweep_flux(&params, &phis, t)?;
    let mut out = String::from("phi,t_ab,t_ba,isolation,capped\n");
    for (phi, rec) in phis.iter().zip(&records) {
        let capped = !rec.isolation.is_finite() || rec.isolation > ISOLATION_CAP;
        let shown = if capped { ISOLATION_CAP } else { rec.isolation };
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_num(*phi),
            fmt_num(rec.t_ab),
            fmt_num(rec.t_ba),
            fmt_num(shown),
            u8::from(capped)
        )
        .expect("string write");
    }
    Ok(out)
}

/// Emission spectrum over the configured frequency window.
/// Columns: omega_k, omega_k_minus_omega_ag, s_value.
pub fn cmd_spectrum(config: &RunConfig) -> Result<String, CliError> {
    let params = config.system_params().validated()?;
    let initial = config.initial_state()?;
    let omegas = config.omega_grid()?;
    let spec = spectrum::emission_spectrum(&params, &initial, &omegas)?;
    let mut out = String::from("omega_k,omega_k_minus_omega_ag,s_value\n");
    for (w, v) in spec.omegas.iter().zip(&spec.values) {
        writeln!(
            out,
            "{},{},{}",
            fmt_num(*w),
            fmt_num(w - params.omega_ag),
            fmt_num(*v)
        )
        .expect("string write");
    }
    Ok(out)
}

/// Spectrum at the probe frequency across the flux grid.
/// Columns: phi, s_value.
pub fn cmd_spectrum_flux(config: &RunConfig) -> Result<String, CliError> {
    let params = config.system_params().validated()?;
    let initial = config.initial_state()?;
    let phis = config.flux_grid()?;
    let sweep = spectrum::spectrum_flux_sweep(&params, &initial, config.probe(), &phis)?;
    let mut out = String::from("phi,s_value\n");
    for (phi, value) in sweep {
        writeln!(out, "{},{}", fmt_num(phi), fmt_num(value)).expect("string write");
    }
    Ok(out)
}

/// Human-readable adiabatic report.
pub fn cmd_adiabatic(config: &RunConfig) -> Result<String, CliError> {
    let params = config.system_params().validated()?;
    let r = adiabatic::adiabatic_report(&params)?;
    let peaks = adiabatic::peak_transition(&params)?;
    let mut out = String::new();
    writeln!(out, "adiabatic report (units of gamma_ref)").unwrap();
    writeln!(out, "  gamma_a_eff = {:.3}", r.gamma_a_eff).unwrap();
    writeln!(out, "  gamma_b_eff = {:.3}", r.gamma_b_eff).unwrap();
    writeln!(out, "  delta_a_eff = {:.3}", r.delta_a_eff).unwrap();
    writeln!(out, "  delta_b_eff = {:.3}", r.delta_b_eff).unwrap();
    writeln!(
        out,
        "  |J_ab| = {:.3}  arg = {:.3} rad",
        r.j_ab.norm(),
        r.j_ab.arg()
    )
    .unwrap();
    writeln!(
        out,
        "  |J_ba| = {:.3}  arg = {:.3} rad",
        r.j_ba.norm(),
        r.j_ba.arg()
    )
    .unwrap();
    writeln!(out, "  t_M = {:.3}", r.t_m).unwrap();
    writeln!(
        out,
        "  peak T_ab(t={:.3}) = {:.3}",
        peaks.t_m_ab, peaks.t_ab_peak
    )
    .unwrap();
    writeln!(
        out,
        "  peak T_ba(t={:.3}) = {:.3}",
        peaks.t_m_ba, peaks.t_ba_peak
    )
    .unwrap();
    if r.optimal_phis.is_empty() {
        writeln!(out, "  optimal flux: none").unwrap();
    } else {
        let list = r
            .optimal_phis
            .iter()
            .map(|p| format!("{p:.3}"))
            .collect::<Vec<_>>()
            .join(", ");
        writeln!(out, "  optimal flux: {list}").unwrap();
    }
    writeln!(out, "  validity ratio = {:.3}", r.validity).unwrap();
    if r.validity > VALIDITY_WARN {
        writeln!(
            out,
            "  warning: validity ratio {:.3} exceeds {VALIDITY_WARN}; adiabatic forms unreliable",
            r.validity
        )
        .unwrap();
    }
    Ok(out)
}
