// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spectral-line elimination in the spontaneous-emission spectrum.
//!
//! The nonreciprocal transition survives into steady state: with the atom
//! prepared in |a⟩, the emission line at ω_bg is three orders of magnitude
//! weaker at Φ = +π/2 than at Φ = −π/2, because no population ever reaches
//! |b⟩. The total emitted probability stays 1 either way.
//!
//! ```bash
//! cargo run -p fluxion --example emission_spectrum
//! ```

use fluxion::dynamics::StateVector;
use fluxion::model::SystemParams;
use fluxion::spectrum::{conservation_integral, emission_spectrum, spectrum_point};
use std::f64::consts::PI;

fn main() {
    let base = SystemParams::symmetric_cycle(10.0, 1.0, 100.0, 50.0)
        .with_level_frequencies(0.0, 100.0, 1000.0, 2000.0);
    let init = StateVector::level_a();

    let omegas: Vec<f64> = (0..=2000).map(|k| -50.0 + 0.1 * k as f64).collect();
    let plus = emission_spectrum(&base.with_flux(PI / 2.0), &init, &omegas).expect("spectrum");
    let minus = emission_spectrum(&base.with_flux(-PI / 2.0), &init, &omegas).expect("spectrum");

    println!("emission spectrum, initial |a⟩ (window ω − ω_ag ∈ [−50, 150]):");
    println!("  ω−ω_ag    S at Φ=+π/2   S at Φ=−π/2");
    for k in (0..omegas.len()).step_by(125) {
        println!(
            "  {:+7.1}   {:>11.4e}   {:>11.4e}",
            omegas[k], plus.values[k], minus.values[k]
        );
    }

    let s_plus = spectrum_point(&base.with_flux(PI / 2.0), &init, 100.0).expect("point");
    let s_minus = spectrum_point(&base.with_flux(-PI / 2.0), &init, 100.0).expect("point");
    println!();
    println!("line at ω_bg: S = {s_minus:.4e} (Φ=−π/2) vs {s_plus:.4e} (Φ=+π/2)");
    println!("suppression ratio = {:.0}", s_minus / s_plus);

    for (label, phi) in [("+π/2", PI / 2.0), ("−π/2", -PI / 2.0)] {
        let total = conservation_integral(&base.with_flux(phi), &init).expect("integral");
        println!("∫S dω at Φ={label}: {total:.4}");
    }
}
