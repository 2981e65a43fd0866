// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! Every tolerance is pinned here; derived expectations were frozen from
//! independent oracle runs (RK4 integrators, time-domain emission
//! integration) before release and act as regression constants.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::{E, PI, TAU};
use std::time::Instant;

use fluxion::adiabatic::{self, Direction};
use fluxion::cli::{self, RunConfig};
use fluxion::dynamics::{self, StateVector, Trajectory};
use fluxion::linalg::ComplexMatrix4;
use fluxion::model::SystemParams;
use fluxion::spectrum;

/// Canonical symmetric working point: Ω = 10, γ_a = γ_b = 1,
/// γ_c = γ_d = 100, Δ_c = −Δ_d = 50 (units of γ_ref).
fn canonical() -> SystemParams {
    SystemParams::symmetric_cycle(10.0, 1.0, 100.0, 50.0)
}

/// Canonical point with the spectral level layout ω_bg − ω_ag = 100,
/// ω_cg − ω_ag = 1000, ω_dg − ω_ag = 2000.
fn canonical_spectral() -> SystemParams {
    canonical().with_level_frequencies(0.0, 100.0, 1000.0, 2000.0)
}

/// Analytic peak transition probability 32/(25e²).
fn closed_form_peak() -> f64 {
    32.0 / (25.0 * E * E)
}

/// Regression constants measured with the time-domain oracle before
/// release (suppression ratios of the eliminated spectral lines).
const FIG4A_SUPPRESSION: f64 = 1984.139540;
const FIG4B_SUPPRESSION: f64 = 1984.257113;

struct Criterion {
    id: u32,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: u32) -> Self {
        Self {
            id,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn conclude(self, detail: &str) {
        if self.failures.is_empty() {
            println!("acceptance criterion {}: PASS — {detail}", self.id);
        } else {
            println!(
                "acceptance criterion {}: FAIL — {}",
                self.id,
                self.failures.join("; ")
            );
            panic!("criterion {} failed: {}", self.id, self.failures.join("; "));
        }
    }
}

#[test]
fn criterion_1_closed_form_golden_numbers() {
    let mut c = Criterion::new(1);
    let plus = adiabatic::adiabatic_report(&canonical().with_flux(PI / 2.0)).unwrap();
    c.check(plus.gamma_a_eff == 5.0, "gamma_a_eff != 5.0 exactly");
    c.check(plus.gamma_b_eff == 5.0, "gamma_b_eff != 5.0 exactly");
    c.check(plus.delta_a_eff == 0.0, "delta_a_eff != 0.0 exactly");
    c.check(plus.delta_b_eff == 0.0, "delta_b_eff != 0.0 exactly");
    c.check(plus.j_ba.norm() <= 1e-12, "|J_ba(π/2)| > 1e-12");
    c.check(
        (plus.j_ab.norm() - 2.0 * 2.0f64.sqrt()).abs() <= 1e-12,
        "|J_ab(π/2)| != 2√2 within 1e-12",
    );
    let minus = adiabatic::adiabatic_report(&canonical().with_flux(-PI / 2.0)).unwrap();
    c.check(minus.j_ab.norm() <= 1e-12, "|J_ab(−π/2)| > 1e-12");
    c.check(
        (minus.j_ba.norm() - 2.0 * 2.0f64.sqrt()).abs() <= 1e-12,
        "|J_ba(−π/2)| != 2√2 within 1e-12",
    );
    c.check(plus.t_m == 0.4, "t_M != 0.4 exactly");
    let peak = adiabatic::analytic_transition(&canonical().with_flux(PI / 2.0), 0.4, Direction::BToA)
        .unwrap();
    let closed = closed_form_peak();
    c.check(
        (peak - closed).abs() <= 1e-6 * closed,
        "analytic peak != 32/(25e²) within 1e-6",
    );
    c.conclude(&format!(
        "γ_eff = 5, Δ_eff = 0, J nulls at ±π/2, t_M = 0.4, peak = {peak:.6}"
    ));
}

#[test]
fn criterion_2_exact_vs_analytic_agreement() {
    let start = Instant::now();
    let mut c = Criterion::new(2);
    let p = canonical().with_flux(PI / 2.0);
    let exact = dynamics::transition_probabilities(&p, 0.4).unwrap().t_ab;
    let closed = closed_form_peak();
    let rel = (exact - closed).abs() / closed;
    c.check(rel <= 0.15, "T_ab(t_M) deviates more than 15% from 32/(25e²)");
    let mut max_tba: f64 = 0.0;
    for k in 0..=800 {
        let t = k as f64 * 2.5e-3;
        max_tba = max_tba.max(dynamics::transition_probabilities(&p, t).unwrap().t_ba);
    }
    c.check(max_tba < 1e-3, "T_ba exceeded 1e-3 somewhere on [0, 2]");
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 1.0, "runtime exceeded 1 s");
    c.conclude(&format!(
        "exact peak {exact:.6} within {:.1}% of closed form, max T_ba {max_tba:.2e}, {elapsed:.2} s",
        rel * 100.0
    ));
}

fn max_amplitude_deviation(a: &Trajectory, b: &Trajectory) -> f64 {
    assert_eq!(a.len(), b.len());
    a.states
        .iter()
        .zip(&b.states)
        .map(|(x, y)| x.to_vector().sub(&y.to_vector()).norm())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_3_three_way_oracle_equivalence() {
    let start = Instant::now();
    let mut c = Criterion::new(3);
    let preset = load_preset("fig2a.json");
    let params = preset.system_params().validated().unwrap();
    let initial = preset.initial_state().unwrap();
    let rot = dynamics::integrate_rotating(&params, &initial, 1.0, 1e-4).unwrap();
    let lab = dynamics::integrate_lab(&params, &initial, 1.0, 1e-4).unwrap();
    let exact = dynamics::evolve(&params, &initial, &rot.times).unwrap();
    let d_rot = max_amplitude_deviation(&rot, &exact);
    let d_lab = max_amplitude_deviation(&lab, &exact);
    let d_cross = max_amplitude_deviation(&rot, &lab);
    c.check(d_rot <= 1e-6, "expm vs rotating-frame RK4 above 1e-6");
    c.check(d_lab <= 1e-6, "expm vs lab-frame RK4 above 1e-6");
    c.check(d_cross <= 1e-6, "rotating vs lab RK4 above 1e-6");
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 5.0, "runtime exceeded 5 s");
    c.conclude(&format!(
        "max deviations: expm/rot {d_rot:.2e}, expm/lab {d_lab:.2e}, rot/lab {d_cross:.2e}, {elapsed:.2} s"
    ));
}

#[test]
fn criterion_4_flux_sweep_structure() {
    let start = Instant::now();
    let mut c = Criterion::new(4);
    let p = canonical();
    let n = 629;
    let grid_step = 2.0 * PI / (n - 1) as f64;
    let phis: Vec<f64> = (0..n).map(|k| -PI + grid_step * k as f64).collect();
    let records = dynamics::sweep_flux(&p, &phis, 0.4).unwrap();
    let argmax = records
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.isolation.partial_cmp(&b.1.isolation).unwrap())
        .unwrap()
        .0;
    c.check(
        (phis[argmax] - PI / 2.0).abs() <= grid_step + 1e-12,
        "isolation argmax further than one grid step from π/2",
    );
    for &phi in &[0.0, PI] {
        let r = dynamics::transition_probabilities(&p.with_flux(phi), 0.4).unwrap();
        c.check(
            (r.t_ab - r.t_ba).abs() <= 1e-12,
            "transitions not reciprocal at Φ ∈ {0, π}",
        );
    }
    let mut max_mirror: f64 = 0.0;
    for k in 0..n {
        let mirror = n - 1 - k; // phis[mirror] = −phis[k]
        max_mirror = max_mirror.max((records[k].t_ab - records[mirror].t_ba).abs());
    }
    c.check(max_mirror <= 1e-12, "T_ab(Φ) != T_ba(−Φ) within 1e-12");
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 2.0, "runtime exceeded 2 s");
    c.conclude(&format!(
        "argmax at Φ = {:.5}, mirror deviation {max_mirror:.2e}, {elapsed:.2} s",
        phis[argmax]
    ));
}

#[test]
fn criterion_5_spectral_line_elimination() {
    let start = Instant::now();
    let mut c = Criterion::new(5);
    let p = canonical_spectral();
    let a = StateVector::level_a();
    let b = StateVector::level_b();
    let ratio_a = spectrum::spectrum_point(&p.with_flux(-PI / 2.0), &a, 100.0).unwrap()
        / spectrum::spectrum_point(&p.with_flux(PI / 2.0), &a, 100.0).unwrap();
    let ratio_b = spectrum::spectrum_point(&p.with_flux(PI / 2.0), &b, 0.0).unwrap()
        / spectrum::spectrum_point(&p.with_flux(-PI / 2.0), &b, 0.0).unwrap();
    c.check(ratio_a >= 10.0, "S(ω_bg) suppression ratio below 10 (init a)");
    c.check(ratio_b >= 10.0, "S(ω_ag) suppression ratio below 10 (init b)");
    c.check(
        (ratio_a - FIG4A_SUPPRESSION).abs() <= 1e-6 * FIG4A_SUPPRESSION,
        "init-a suppression ratio drifted from the frozen regression value",
    );
    c.check(
        (ratio_b - FIG4B_SUPPRESSION).abs() <= 1e-6 * FIG4B_SUPPRESSION,
        "init-b suppression ratio drifted from the frozen regression value",
    );
    let elapsed = start.elapsed().as_secs_f64();
    c.check(elapsed < 2.0, "runtime exceeded 2 s");
    c.conclude(&format!(
        "suppression ratios {ratio_a:.1} (init a) and {ratio_b:.1} (init b), {elapsed:.2} s"
    ));
}

#[test]
fn criterion_6_probability_conservation() {
    let mut c = Criterion::new(6);
    let p = canonical_spectral();
    let cases = [
        ("init a, Φ=+π/2", p.with_flux(PI / 2.0), StateVector::level_a()),
        ("init a, Φ=−π/2", p.with_flux(-PI / 2.0), StateVector::level_a()),
        ("init b, Φ=+π/2", p.with_flux(PI / 2.0), StateVector::level_b()),
        ("init b, Φ=−π/2", p.with_flux(-PI / 2.0), StateVector::level_b()),
    ];
    let mut integrals = Vec::new();
    for (name, params, init) in cases {
        let total = spectrum::conservation_integral(&params, &init).unwrap();
        c.check(
            (total - 1.0).abs() <= 0.02,
            &format!("∫S dω = {total:.4} off unity beyond 2% ({name})"),
        );
        integrals.push(total);
    }
    // Undriven single-line case: conservation plus pointwise agreement with
    // the closed Lorentzian.
    let mut single = p;
    single.omega_ca = 0.0;
    single.omega_cb = 0.0;
    single.omega_da = 0.0;
    single.omega_db = 0.0;
    let total = spectrum::conservation_integral(&single, &StateVector::level_a()).unwrap();
    c.check(
        (total - 1.0).abs() <= 0.02,
        "single-line ∫S dω off unity beyond 2%",
    );
    let mut max_rel: f64 = 0.0;
    for k in 0..=600 {
        let w = -15.0 + 0.05 * k as f64;
        let s = spectrum::spectrum_point(&single, &StateVector::level_a(), w).unwrap();
        let lorentz = single.gamma_a / TAU / (w * w + 0.25 * single.gamma_a * single.gamma_a);
        max_rel = max_rel.max((s - lorentz).abs() / lorentz);
    }
    c.check(
        max_rel <= 1e-6,
        "single-line spectrum deviates from the exact Lorentzian beyond 1e-6",
    );
    c.conclude(&format!(
        "∫S dω = {:.4}/{:.4}/{:.4}/{:.4}, single line {total:.4} with Lorentzian dev {max_rel:.1e}",
        integrals[0], integrals[1], integrals[2], integrals[3]
    ));
}

#[test]
fn criterion_7_laplace_vs_time_domain() {
    let mut c = Criterion::new(7);
    let p = canonical_spectral();
    let presets = [
        ("init a, Φ=−π/2", p.with_flux(-PI / 2.0), StateVector::level_a()),
        ("init b, Φ=+π/2", p.with_flux(PI / 2.0), StateVector::level_b()),
    ];
    let omegas = [-5.0, 0.0, 5.0, 95.0, 100.0];
    let mut worst: f64 = 0.0;
    for (name, params, init) in presets {
        for &w in &omegas {
            let laplace = spectrum::spectrum_point(&params, &init, w).unwrap();
            // t_end = 6 leaves excited norm ~1e-13 < 1e-8 (flagged otherwise)
            let time = spectrum::spectrum_time_domain_oracle(&params, &init, w, 6.0, 5e-5)
                .unwrap_or_else(|e| panic!("oracle failed ({name}, ω={w}): {e}"));
            let rel = (laplace - time).abs() / laplace;
            worst = worst.max(rel);
            c.check(
                rel <= 1e-3,
                &format!("Laplace vs time-domain relative gap {rel:.2e} at ω={w} ({name})"),
            );
        }
    }
    c.conclude(&format!(
        "10 sampled frequencies agree; worst relative gap {worst:.2e}"
    ));
}

#[test]
fn criterion_8_structural_identity() {
    let mut c = Criterion::new(8);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let params = SystemParams {
            omega_ca: rng.gen_range(0.0..15.0),
            omega_cb: rng.gen_range(0.0..15.0),
            omega_da: rng.gen_range(0.0..15.0),
            omega_db: rng.gen_range(0.0..15.0),
            phi_ca: rng.gen_range(-PI..PI),
            phi_cb: rng.gen_range(-PI..PI),
            phi_da: rng.gen_range(-PI..PI),
            phi_db: rng.gen_range(-PI..PI),
            delta_c: rng.gen_range(-100.0..100.0),
            delta_d: rng.gen_range(-100.0..100.0),
            gamma_a: rng.gen_range(0.1..2.0),
            gamma_b: rng.gen_range(0.1..2.0),
            gamma_c: rng.gen_range(1.0..200.0),
            gamma_d: rng.gen_range(1.0..200.0),
            omega_ag: rng.gen_range(-100.0..100.0),
            omega_bg: rng.gen_range(-100.0..2000.0),
            omega_cg: rng.gen_range(-100.0..2000.0),
            omega_dg: rng.gen_range(-100.0..2000.0),
        };
        let s = Complex64::new(rng.gen_range(-50.0..50.0), rng.gen_range(-2000.0..2000.0));
        let m = spectrum::laplace_matrix(&params, s).unwrap();
        let h = dynamics::build_h_eff(&params).unwrap();
        let shifted = ComplexMatrix4::identity()
            .scale(s)
            .add(&h.scale(Complex64::i()));
        let dist = m.fro_dist(&shifted);
        worst = worst.max(dist);
        c.check(dist == 0.0, "M(s) != sI + iH_eff entry-wise exactly");
    }
    c.conclude(&format!(
        "100 random draws: M(s) = sI + iH_eff exactly (max distance {worst:.1e})"
    ));
}

#[test]
fn criterion_9_property_suites() {
    let mut c = Criterion::new(9);

    // Norm monotonicity along the canonical trajectory.
    let p = canonical().with_flux(PI / 2.0);
    let times: Vec<f64> = (0..=400).map(|k| k as f64 * 5e-3).collect();
    let traj = dynamics::evolve(&p, &StateVector::level_a(), &times).unwrap();
    let monotone = traj
        .states
        .windows(2)
        .all(|w| w[1].norm_sq() <= w[0].norm_sq() + 1e-9);
    c.check(monotone, "total norm grew along a trajectory");

    // Propagator composition.
    let mut worst_comp: f64 = 0.0;
    for &(t1, t2) in &[(0.1, 0.3), (0.25, 0.25), (0.7, 0.05), (0.33, 0.91)] {
        let whole = dynamics::propagator(&p, t1 + t2).unwrap();
        let parts = dynamics::propagator(&p, t1)
            .unwrap()
            .matmul(&dynamics::propagator(&p, t2).unwrap());
        worst_comp = worst_comp.max(whole.fro_dist(&parts));
    }
    c.check(worst_comp <= 1e-9, "U(t₁+t₂) != U(t₁)U(t₂) within 1e-9");

    // Spectrum nonnegativity across the default window.
    let sp = canonical_spectral().with_flux(-PI / 2.0);
    let omegas: Vec<f64> = (0..=2000).map(|k| -50.0 + 0.1 * k as f64).collect();
    let spec = spectrum::emission_spectrum(&sp, &StateVector::level_a(), &omegas).unwrap();
    c.check(
        spec.values.iter().all(|&v| v >= 0.0),
        "negative spectrum value",
    );

    // CSV byte determinism on the bundled presets.
    let sim = load_preset("fig2a.json");
    c.check(
        cli::cmd_simulate(&sim).unwrap() == cli::cmd_simulate(&sim).unwrap(),
        "simulate CSV not byte-identical across runs",
    );
    let sweep = load_preset("fig3.json");
    c.check(
        cli::cmd_sweep_flux(&sweep).unwrap() == cli::cmd_sweep_flux(&sweep).unwrap(),
        "sweep-flux CSV not byte-identical across runs",
    );

    c.conclude(&format!(
        "norm monotone, composition within {worst_comp:.1e}, S ≥ 0 on {} points, CSV deterministic",
        spec.values.len()
    ));
}

fn load_preset(name: &str) -> RunConfig {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("presets")
        .join(name);
    RunConfig::load(&path).unwrap_or_else(|e| panic!("preset {name}: {e}"))
}
