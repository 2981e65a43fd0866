// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Rotating-frame amplitude dynamics of the driven four-level cycle.
//!
//! The amplitudes Ψ(t) = [A, B, C̃, D̃]ᵀ obey i dΨ/dt = H·Ψ with the
//! non-Hermitian generator built in [`build_h_eff`]; decay enters as
//! −iγ/2 on the diagonal, so the total norm only ever shrinks. The primary
//! propagation path is the exact matrix exponential U(t) = exp(−iHt) — the
//! system is linear, so this is exact up to linear-algebra error. Two
//! fixed-step RK4 integrators ([`integrate_rotating`] in the constant-
//! coefficient frame, [`integrate_lab`] with the explicit time-dependent
//! drive phases) exist solely as independent cross-checks of that path.
//!
//! Transition probabilities use the source-on-the-right index convention
//! T_ba = |U₂₁|² (a→b) and T_ab = |U₁₂|² (b→a), i.e. T_{target,source}.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{expm, ComplexMatrix4, ComplexVector4, LinalgError};
use crate::model::{ModelError, SystemParams};

const NEG_I: Complex64 = Complex64::new(0.0, -1.0);

/// Largest allowed value of dt·max|H entry| for the fixed-step integrators.
pub const MAX_STEP_FRACTION: f64 = 0.1;

/// Isolation is reported as +∞ once the reverse probability drops below this.
pub const ISOLATION_FLOOR: f64 = 1e-300;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("sample times must be strictly increasing and nonnegative")]
    UnsortedTimes,
    #[error("step dt={dt:.3e} too large for generator scale {scale:.3e} (dt·scale must be ≤ {MAX_STEP_FRACTION})")]
    StepTooLarge { dt: f64, scale: f64 },
}

/// Rotating-frame amplitudes of the four upper levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    pub a: Complex64,
    pub b: Complex64,
    pub c_tilde: Complex64,
    pub d_tilde: Complex64,
}

impl StateVector {
    pub fn new(a: Complex64, b: Complex64, c_tilde: Complex64, d_tilde: Complex64) -> Self {
        Self { a, b, c_tilde, d_tilde }
    }

    /// Unit population in |a⟩.
    pub fn level_a() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    /// Unit population in |b⟩.
    pub fn level_b() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn to_vector(self) -> ComplexVector4 {
        ComplexVector4::from_entries([self.a, self.b, self.c_tilde, self.d_tilde])
    }

    pub fn from_vector(v: ComplexVector4) -> Self {
        let e = *v.entries();
        Self::new(e[0], e[1], e[2], e[3])
    }

    /// Occupation probabilities [|A|², |B|², |C̃|², |D̃|²].
    pub fn populations(&self) -> [f64; 4] {
        [
            self.a.norm_sqr(),
            self.b.norm_sqr(),
            self.c_tilde.norm_sqr(),
            self.d_tilde.norm_sqr(),
        ]
    }

    /// Total remaining excited-state norm |A|²+|B|²+|C̃|²+|D̃|².
    pub fn norm_sq(&self) -> f64 {
        self.populations().iter().sum()
    }

    pub fn is_finite(&self) -> bool {
        self.to_vector().is_finite()
    }
}

/// Sampled time evolution; `times` and `states` have equal length and
/// strictly increasing times.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Directional transition probabilities at one instant.
///
/// `t_ab` is the probability of arriving in |a⟩ from |b⟩, `t_ba` that of
/// arriving in |b⟩ from |a⟩; `isolation` is their ratio t_ab/t_ba.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionRecord {
    pub t: f64,
    pub t_ab: f64,
    pub t_ba: f64,
    pub isolation: f64,
}

/// Non-Hermitian generator of the rotating-frame dynamics.
///
/// Diagonal: (−iγ_a/2, −iγ_b/2, Δ_c−iγ_c/2, Δ_d−iγ_d/2). The loop flux Φ
/// sits entirely on the a–c link: entries (1,3)/(3,1) are Ω_ca e^{±iΦ};
/// the a–d, b–c and b–d links carry bare Ω. The a–b and c–d blocks vanish
/// (those levels are not directly driven).
pub fn build_h_eff(params: &SystemParams) -> Result<ComplexMatrix4, ModelError> {
    params.validate()?;
    let phi = params.total_flux().angle();
    let phase = Complex64::new(phi.cos(), phi.sin());
    let re = |x: f64| Complex64::new(x, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    Ok(ComplexMatrix4::from_rows([
        [
            Complex64::new(0.0, -0.5 * params.gamma_a),
            zero,
            params.omega_ca * phase,
            re(params.omega_da),
        ],
        [
            zero,
            Complex64::new(0.0, -0.5 * params.gamma_b),
            re(params.omega_cb),
            re(params.omega_db),
        ],
        [
            params.omega_ca * phase.conj(),
            re(params.omega_cb),
            Complex64::new(params.delta_c, -0.5 * params.gamma_c),
            zero,
        ],
        [
            re(params.omega_da),
            re(params.omega_db),
            zero,
            Complex64::new(params.delta_d, -0.5 * params.gamma_d),
        ],
    ]))
}

/// Exact time-evolution matrix U(t) = exp(−iHt).
pub fn propagator(params: &SystemParams, t: f64) -> Result<ComplexMatrix4, DynamicsError> {
    let h = build_h_eff(params)?;
    let gen = h.scale(NEG_I);
    Ok(expm(&gen, t)?)
}

/// Propagate `initial` through the exact propagator at each requested time.
pub fn evolve(
    params: &SystemParams,
    initial: &StateVector,
    times: &[f64],
) -> Result<Trajectory, DynamicsError> {
    check_times(times)?;
    let h = build_h_eff(params)?;
    let gen = h.scale(NEG_I);
    let init = initial.to_vector();
    let states = times
        .iter()
        .map(|&t| Ok(StateVector::from_vector(expm(&gen, t)?.mul_vec(&init))))
        .collect::<Result<Vec<_>, DynamicsError>>()?;
    Ok(Trajectory {
        times: times.to_vec(),
        states,
    })
}

fn check_times(times: &[f64]) -> Result<(), DynamicsError> {
    if times.is_empty() {
        return Err(DynamicsError::UnsortedTimes);
    }
    if times[0].is_nan() || times[0] < 0.0 {
        return Err(DynamicsError::UnsortedTimes);
    }
    for w in times.windows(2) {
        if !w[1].is_finite() || w[1] <= w[0] {
            return Err(DynamicsError::UnsortedTimes);
        }
    }
    Ok(())
}

/// Classic fixed-step RK4 over `[0, t_end]`, recording every step.
///
/// The state is a fixed-size complex array; `rhs(t, y)` supplies dy/dt.
pub(crate) fn rk4<const N: usize>(
    y0: [Complex64; N],
    t_end: f64,
    dt: f64,
    rhs: impl Fn(f64, &[Complex64; N]) -> [Complex64; N],
    mut on_sample: impl FnMut(f64, &[Complex64; N]),
) {
    on_sample(0.0, &y0);
    let mut y = y0;
    let mut step = 0u64;
    loop {
        let t = step as f64 * dt;
        if t >= t_end {
            break;
        }
        let h = if t + dt >= t_end { t_end - t } else { dt };
        let k1 = rhs(t, &y);
        let mut ys = y;
        for i in 0..N {
            ys[i] = y[i] + 0.5 * h * k1[i];
        }
        let k2 = rhs(t + 0.5 * h, &ys);
        for i in 0..N {
            ys[i] = y[i] + 0.5 * h * k2[i];
        }
        let k3 = rhs(t + 0.5 * h, &ys);
        for i in 0..N {
            ys[i] = y[i] + h * k3[i];
        }
        let k4 = rhs(t + h, &ys);
        for i in 0..N {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let t_next = if t + dt >= t_end { t_end } else { (step + 1) as f64 * dt };
        on_sample(t_next, &y);
        step += 1;
    }
}

pub(crate) fn check_step(dt: f64, h: &ComplexMatrix4) -> Result<(), DynamicsError> {
    let scale = h.max_abs();
    if dt.is_nan() || dt <= 0.0 || dt * scale > MAX_STEP_FRACTION {
        return Err(DynamicsError::StepTooLarge { dt, scale });
    }
    Ok(())
}

/// RK4 integration of the constant-coefficient rotating-frame equations.
/// Cross-check oracle for [`evolve`]; the step must satisfy
/// dt·max|H entry| ≤ 0.1.
pub fn integrate_rotating(
    params: &SystemParams,
    initial: &StateVector,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, DynamicsError> {
    let h = build_h_eff(params)?;
    check_step(dt, &h)?;
    if t_end.is_nan() || t_end < 0.0 {
        return Err(DynamicsError::UnsortedTimes);
    }
    let mut times = Vec::new();
    let mut states = Vec::new();
    rk4(
        *initial.to_vector().entries(),
        t_end,
        dt,
        |_, y| {
            let hy = h.mul_vec(&ComplexVector4::from_entries(*y));
            let e = *hy.entries();
            [NEG_I * e[0], NEG_I * e[1], NEG_I * e[2], NEG_I * e[3]]
        },
        |t, y| {
            times.push(t);
            states.push(StateVector::from_vector(ComplexVector4::from_entries(*y)));
        },
    );
    Ok(Trajectory { times, states })
}

/// RK4 integration of the lab-frame equations with explicit e^{±iΔt}
/// drive phases, state (A, B, C, D). The returned trajectory converts
/// C, D to the rotating frame (C̃ = e^{−iΔ_c t}C, D̃ = e^{−iΔ_d t}D) so it
/// is directly comparable with the other two propagation paths.
pub fn integrate_lab(
    params: &SystemParams,
    initial: &StateVector,
    t_end: f64,
    dt: f64,
) -> Result<Trajectory, DynamicsError> {
    let h = build_h_eff(params)?;
    check_step(dt, &h)?;
    if t_end.is_nan() || t_end < 0.0 {
        return Err(DynamicsError::UnsortedTimes);
    }
    let p = *params;
    let phi = p.total_flux().angle();
    let flux_phase = Complex64::new(phi.cos(), phi.sin());
    let m_i = NEG_I;
    // At t = 0 the frames coincide, so the rotating-frame initial state is
    // also the lab-frame one.
    let mut times = Vec::new();
    let mut states = Vec::new();
    rk4(
        *initial.to_vector().entries(),
        t_end,
        dt,
        |t, y| {
            let (a, b, c, d) = (y[0], y[1], y[2], y[3]);
            let ec = Complex64::from_polar(1.0, p.delta_c * t); // e^{+iΔ_c t}
            let ed = Complex64::from_polar(1.0, p.delta_d * t);
            let da = -0.5 * p.gamma_a * a
                + m_i * p.omega_ca * flux_phase * ec.conj() * c
                + m_i * p.omega_da * ed.conj() * d;
            let db = -0.5 * p.gamma_b * b
                + m_i * p.omega_cb * ec.conj() * c
                + m_i * p.omega_db * ed.conj() * d;
            let dc = -0.5 * p.gamma_c * c
                + m_i * p.omega_ca * flux_phase.conj() * ec * a
                + m_i * p.omega_cb * ec * b;
            let dd = -0.5 * p.gamma_d * d
                + m_i * p.omega_da * ed * a
                + m_i * p.omega_db * ed * b;
            [da, db, dc, dd]
        },
        |t, y| {
            let c_tilde = Complex64::from_polar(1.0, -p.delta_c * t) * y[2];
            let d_tilde = Complex64::from_polar(1.0, -p.delta_d * t) * y[3];
            times.push(t);
            states.push(StateVector::new(y[0], y[1], c_tilde, d_tilde));
        },
    );
    Ok(Trajectory { times, states })
}

/// Directional transition probabilities T_ab = |U₁₂|², T_ba = |U₂₁|² and
/// their ratio at time `t`. A reverse probability below `ISOLATION_FLOOR`
/// reports isolation +∞.
pub fn transition_probabilities(
    params: &SystemParams,
    t: f64,
) -> Result<TransitionRecord, DynamicsError> {
    let u = propagator(params, t)?;
    let t_ab = u[(0, 1)].norm_sqr();
    let t_ba = u[(1, 0)].norm_sqr();
    let isolation = if t_ba < ISOLATION_FLOOR {
        f64::INFINITY
    } else {
        t_ab / t_ba
    };
    Ok(TransitionRecord {
        t,
        t_ab,
        t_ba,
        isolation,
    })
}

/// Transition probabilities at time `t` across a grid of loop fluxes, all
/// other parameters fixed. Grid points are evaluated independently (in
/// parallel) and returned in input order.
pub fn sweep_flux(
    params: &SystemParams,
    phis: &[f64],
    t: f64,
) -> Result<Vec<TransitionRecord>, DynamicsError> {
    params.validate()?;
    phis.par_iter()
        .map(|&phi| transition_probabilities(&params.with_flux(phi), t))
        .collect()
}
