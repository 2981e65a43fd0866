// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Physical parameter set, validation, and gauge reduction of the four
//! per-link drive phases to a single loop flux.
//!
//! Conventions: every rate and frequency is dimensionless in units of a
//! reference decay rate γ_ref, and time is measured in 1/γ_ref. The four
//! upper levels |a⟩, |b⟩, |c⟩, |d⟩ form a driven cycle
//! a → d → b → c → a; each level decays to its own lower level. Drive
//! frequencies are not stored: a drive on link i–j sits at ν_ij = ω_ij − Δ_ij,
//! so only the detunings Δ_c, Δ_d enter the dynamics. The upper-to-lower
//! transition frequencies ω_ig are offsets from an arbitrary common origin;
//! only their differences matter.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("decay rate `{0}` must be strictly positive")]
    NonPositiveDecay(&'static str),
    #[error("Rabi frequency `{0}` must be nonnegative")]
    NegativeRabi(&'static str),
    #[error("field `{0}` is not finite")]
    NonFiniteField(&'static str),
}

/// Full parameter set of the driven four-level cycle, in units of γ_ref.
///
/// Rabi frequencies Ω_ij are the drive amplitudes on the four links,
/// φ_ij the drive phases, Δ_c/Δ_d the shared detunings of the two
/// auxiliary levels, γ_i the decay rates, and ω_ig the upper-to-lower
/// transition frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemParams {
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
}

/// Gauge-invariant loop phase Φ = φ_ca + φ_db + φ_cb + φ_da, canonically
/// reduced to (−π, π].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyntheticFlux {
    phi: f64,
}

impl SyntheticFlux {
    pub fn new(raw: f64) -> Self {
        Self {
            phi: reduce_to_principal(raw),
        }
    }

    /// The reduced flux angle in (−π, π].
    pub fn angle(&self) -> f64 {
        self.phi
    }
}

fn reduce_to_principal(phi: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut r = phi.rem_euclid(two_pi);
    if r > PI {
        r -= two_pi;
    }
    r
}

impl SystemParams {
    /// Symmetric cycle with equal Rabi amplitudes on all four links,
    /// equal decay on a/b and on c/d, and opposite detunings
    /// Δ_c = −Δ_d = `delta`. Phases and level frequencies start at zero.
    pub fn symmetric_cycle(omega: f64, gamma_ab: f64, gamma_cd: f64, delta: f64) -> Self {
        Self {
            omega_ca: omega,
            omega_cb: omega,
            omega_da: omega,
            omega_db: omega,
            phi_ca: 0.0,
            phi_cb: 0.0,
            phi_da: 0.0,
            phi_db: 0.0,
            delta_c: delta,
            delta_d: -delta,
            gamma_a: gamma_ab,
            gamma_b: gamma_ab,
            gamma_c: gamma_cd,
            gamma_d: gamma_cd,
            omega_ag: 0.0,
            omega_bg: 0.0,
            omega_cg: 0.0,
            omega_dg: 0.0,
        }
    }

    /// Copy with the four upper-to-lower transition frequencies replaced.
    pub fn with_level_frequencies(mut self, ag: f64, bg: f64, cg: f64, dg: f64) -> Self {
        self.omega_ag = ag;
        self.omega_bg = bg;
        self.omega_cg = cg;
        self.omega_dg = dg;
        self
    }

    /// Copy with the loop flux set to `phi`, gauge-fixed so the whole
    /// phase sits on the a–c link.
    pub fn with_flux(mut self, phi: f64) -> Self {
        self.phi_ca = phi;
        self.phi_cb = 0.0;
        self.phi_da = 0.0;
        self.phi_db = 0.0;
        self
    }

    fn fields(&self) -> [(&'static str, f64); 18] {
        [
            ("omega_ca", self.omega_ca),
            ("omega_cb", self.omega_cb),
            ("omega_da", self.omega_da),
            ("omega_db", self.omega_db),
            ("phi_ca", self.phi_ca),
            ("phi_cb", self.phi_cb),
            ("phi_da", self.phi_da),
            ("phi_db", self.phi_db),
            ("delta_c", self.delta_c),
            ("delta_d", self.delta_d),
            ("gamma_a", self.gamma_a),
            ("gamma_b", self.gamma_b),
            ("gamma_c", self.gamma_c),
            ("gamma_d", self.gamma_d),
            ("omega_ag", self.omega_ag),
            ("omega_bg", self.omega_bg),
            ("omega_cg", self.omega_cg),
            ("omega_dg", self.omega_dg),
        ]
    }

    /// Check all invariants: finite fields, strictly positive decay rates,
    /// nonnegative Rabi frequencies. Idempotent; names the offending field.
    pub fn validate(&self) -> Result<(), ModelError> {
        for (name, value) in self.fields() {
            if !value.is_finite() {
                return Err(ModelError::NonFiniteField(name));
            }
        }
        for (name, value) in [
            ("gamma_a", self.gamma_a),
            ("gamma_b", self.gamma_b),
            ("gamma_c", self.gamma_c),
            ("gamma_d", self.gamma_d),
        ] {
            if value <= 0.0 {
                return Err(ModelError::NonPositiveDecay(name));
            }
        }
        for (name, value) in [
            ("omega_ca", self.omega_ca),
            ("omega_cb", self.omega_cb),
            ("omega_da", self.omega_da),
            ("omega_db", self.omega_db),
        ] {
            if value < 0.0 {
                return Err(ModelError::NegativeRabi(name));
            }
        }
        Ok(())
    }

    /// Validate and pass the parameter set through unchanged.
    pub fn validated(self) -> Result<Self, ModelError> {
        self.validate()?;
        Ok(self)
    }

    /// Total loop phase Φ = φ_ca + φ_db + φ_cb + φ_da reduced to (−π, π].
    /// This is the only phase combination any downstream quantity consumes.
    pub fn total_flux(&self) -> SyntheticFlux {
        SyntheticFlux::new(self.phi_ca + self.phi_db + self.phi_cb + self.phi_da)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn fig2_params() -> SystemParams {
        SystemParams::symmetric_cycle(10.0, 1.0, 100.0, 50.0)
    }

    #[test]
    fn canonical_set_is_accepted() {
        assert_eq!(fig2_params().validate(), Ok(()));
    }

    #[test]
    fn zero_decay_is_rejected_with_field_name() {
        let mut p = fig2_params();
        p.gamma_c = 0.0;
        assert_eq!(p.validate(), Err(ModelError::NonPositiveDecay("gamma_c")));
    }

    #[test]
    fn negative_rabi_is_rejected_with_field_name() {
        let mut p = fig2_params();
        p.omega_ca = -1.0;
        assert_eq!(p.validate(), Err(ModelError::NegativeRabi("omega_ca")));
    }

    #[test]
    fn non_finite_field_is_rejected() {
        let mut p = fig2_params();
        p.delta_d = f64::NAN;
        assert_eq!(p.validate(), Err(ModelError::NonFiniteField("delta_d")));
        let mut p = fig2_params();
        p.gamma_a = f64::INFINITY;
        assert_eq!(p.validate(), Err(ModelError::NonFiniteField("gamma_a")));
    }

    #[test]
    fn validate_is_idempotent() {
        let p = fig2_params().validated().unwrap().validated().unwrap();
        assert_eq!(p, fig2_params());
    }

    #[test]
    fn flux_of_zero_phases_is_zero() {
        assert_eq!(fig2_params().total_flux().angle(), 0.0);
    }

    #[test]
    fn single_link_phase_is_the_flux() {
        let p = fig2_params().with_flux(PI / 2.0);
        assert_eq!(p.total_flux().angle(), PI / 2.0);
    }

    #[test]
    fn four_pi_reduces_to_zero() {
        let mut p = fig2_params();
        p.phi_ca = PI;
        p.phi_cb = PI;
        p.phi_da = PI;
        p.phi_db = PI;
        assert_eq!(p.total_flux().angle(), 0.0);
    }

    #[test]
    fn minus_pi_maps_to_pi() {
        assert_eq!(SyntheticFlux::new(-PI).angle(), PI);
        assert_eq!(SyntheticFlux::new(PI).angle(), PI);
    }

    proptest! {
        // The flux is invariant under any redistribution of phase among the
        // four links that preserves the sum mod 2π.
        #[test]
        fn flux_gauge_invariance(
            total in -10.0..10.0f64,
            s1 in -5.0..5.0f64,
            s2 in -5.0..5.0f64,
            s3 in -5.0..5.0f64,
            winds in -3i32..4,
        ) {
            let mut p = fig2_params();
            p.phi_ca = s1;
            p.phi_cb = s2;
            p.phi_da = s3;
            p.phi_db = total - s1 - s2 - s3 + 2.0 * PI * winds as f64;
            let q = fig2_params().with_flux(total);
            let diff = (p.total_flux().angle() - q.total_flux().angle()).abs();
            // compare on the circle
            let diff = diff.min((diff - 2.0 * PI).abs());
            prop_assert!(diff < 1e-9);
        }

        #[test]
        fn reduced_flux_is_principal(raw in -100.0..100.0f64) {
            let phi = SyntheticFlux::new(raw).angle();
            prop_assert!(phi > -PI && phi <= PI);
        }
    }
}
