// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Nonreciprocal transitions in a driven cyclic four-level system.
//!
//! Four metastable upper levels |a⟩, |b⟩, |c⟩, |d⟩ are driven around the
//! closed loop a–d–b–c–a by four phase-locked fields while each level
//! decays to its own ground state. The sum of the four drive phases acts
//! as a synthetic magnetic flux Φ through the loop: away from Φ = nπ it
//! breaks time-reversal symmetry and the indirect a↔b transition becomes
//! *directional* — population flows b→a while a→b stays dark (or vice
//! versa). The asymmetry survives into steady-state observables as the
//! elimination of one line of the spontaneous-emission spectrum.
//!
//! The crate provides three independent computational routes and checks
//! them against each other:
//!
//! - [`dynamics`]: exact propagation by the matrix exponential of the
//!   non-Hermitian 4×4 generator, plus rotating-frame and lab-frame RK4
//!   integrators used as cross-check oracles;
//! - [`adiabatic`]: closed forms for the effective two-level model after
//!   eliminating the fast-decaying auxiliary levels — dressed rates,
//!   directional couplings J_ab/J_ba, optimal flux and peak times;
//! - [`spectrum`]: spontaneous-emission spectra from Laplace-domain
//!   linear solves, with a time-domain integration oracle.
//!
//! [`model`] holds the parameter set and unit conventions (everything in
//! units of a reference decay rate), [`linalg`] the fixed-size complex
//! kernels, and [`cli`] the configuration and CSV layer behind the
//! `fluxion` binary. Run `cargo run -p fluxion --example <name>` for
//! worked tours of each capability.

pub mod adiabatic;
pub mod cli;
pub mod dynamics;
pub mod linalg;
pub mod model;
pub mod spectrum;

pub use adiabatic::{adiabatic_report, AdiabaticReport, Direction, TransitionPeaks};
pub use dynamics::{StateVector, Trajectory, TransitionRecord};
pub use linalg::{ComplexMatrix4, ComplexVector4};
pub use model::{SyntheticFlux, SystemParams};
pub use spectrum::{EmissionAmplitudes, LaplacePoint, Spectrum};
