// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// A finite set of modes, and the same continuum discretized onto a grid.

use dephaser::bath::{eta_discrete, BathMode, BathSpec, CouplingKind, Dephasing, DephasingEvaluator, DiscreteBath};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let few = DiscreteBath::new(vec![BathMode::new(1.0, 0.7), BathMode::new(2.5, 0.2)])?;
    for t in [1.0, 3.0] {
        println!("two modes, T=0.5, t={t}: eta = {:.12}", eta_discrete(&few, 0.5, t)?);
    }

    let spec = BathSpec::new(1.0, 2.0, CouplingKind::Linear { f: 1.0 })?;
    let cutoff = spec.frequency_cutoff(1e-10);
    let continuum = DephasingEvaluator::closed_form(spec)?;
    for modes in [100, 1000, 4000] {
        let grid = DephasingEvaluator::discrete(DiscreteBath::discretize(&spec, cutoff, modes)?, 1.0)?;
        let diff = (grid.eta(2.0)? - continuum.eta(2.0)?).norm();
        println!("{modes:>5} modes up to {cutoff:.1}: |eta_discrete - eta_continuum| at t=2 is {diff:.2e}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
