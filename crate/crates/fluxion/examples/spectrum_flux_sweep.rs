// Copyright 2026 Fluxion Contributors
// SPDX-License-Identifier: Apache-2.0

//! Emission lines as a function of the synthetic flux.
//!
//! Probes S(ω_ag) with the atom prepared in |b⟩ against S(ω_bg) prepared
//! in |a⟩. The two curves cross at Φ = 0 and π and separate in between:
//! for 0 < Φ < π the b→a channel outruns a→b, and the ordering flips on
//! the negative-flux side.
//!
//! ```bash
//! cargo run -p fluxion --example spectrum_flux_sweep
//! ```

use fluxion::dynamics::StateVector;
use fluxion::model::SystemParams;
use fluxion::spectrum::spectrum_flux_sweep;
use std::f64::consts::PI;

fn main() {
    let params = SystemParams::symmetric_cycle(10.0, 1.0, 100.0, 50.0)
        .with_level_frequencies(0.0, 100.0, 1000.0, 2000.0);

    let n = 129;
    let phis: Vec<f64> = (0..n)
        .map(|k| -PI + 2.0 * PI * k as f64 / (n - 1) as f64)
        .collect();

    let from_b = spectrum_flux_sweep(&params, &StateVector::level_b(), 0.0, &phis).expect("sweep");
    let from_a =
        spectrum_flux_sweep(&params, &StateVector::level_a(), 100.0, &phis).expect("sweep");

    println!("      Φ     S(ω_ag | init b)   S(ω_bg | init a)");
    for k in (0..n).step_by(8) {
        println!(
            "  {:+.4}      {:>11.4e}        {:>11.4e}",
            phis[k], from_b[k].1, from_a[k].1
        );
    }

    let ordered = (1..n - 1)
        .filter(|&k| phis[k] > 0.0 && phis[k] < PI)
        .all(|k| from_b[k].1 > from_a[k].1);
    println!();
    println!("S(ω_ag | init b) > S(ω_bg | init a) throughout 0 < Φ < π: {ordered}");
}
