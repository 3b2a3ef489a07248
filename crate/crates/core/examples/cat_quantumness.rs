// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Wigner negativity of a dephasing cat state and its excess over the fully
// dephased baseline. Revivals show up as a rise after a minimum.

use dephaser::bath::{BathSpec, CouplingKind, DephasingEvaluator};
use dephaser::wigner::{quantumness_scan, CatState, WignerGrid, DEFAULT_K_MAX};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let cat = CatState::new(1.5)?;
    let grid = WignerGrid::default();
    let times: Vec<f64> = (0..=50).map(|i| 0.1 * i as f64).collect();
    for s in [0.0, 1.0, 2.0] {
        let eta = DephasingEvaluator::closed_form(BathSpec::new(1.0, s, CouplingKind::Linear { f: 1.0 })?)?;
        let series = quantumness_scan(&cat, 1.0, &eta, &times, &grid, DEFAULT_K_MAX)?;
        let excess = series.excess();
        let minimum = series.interior_minimum.map(|i| format!("minimum at t = {:.1}", times[i]));
        println!(
            "s={s}: delta_c {:.5}  excess(0) {:.5}  excess(5) {:.5}  {}",
            series.delta_c,
            excess[0],
            excess[excess.len() - 1],
            minimum.unwrap_or_else(|| "monotone".into())
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
