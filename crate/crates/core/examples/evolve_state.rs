// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Reduced dynamics of a bosonic system: populations stay put while each
// coherence ρ_mn picks up e^{η((m-n)t)}.

use dephaser::bath::{BathSpec, CouplingKind, DephasingEvaluator};
use dephaser::dynamics::{evolve, DensityMatrix, SystemSpec};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let eta = DephasingEvaluator::closed_form(BathSpec::new(1.0, 1.0, CouplingKind::Linear { f: 0.5 })?)?;
    let system = SystemSpec::new(1.0, 3)?;
    let one = Complex64::new(1.0, 0.0);
    let rho0 = DensityMatrix::pure(&[one, one, one])?;
    for t in [0.0, 0.5, 2.0] {
        let rho = evolve(&rho0, &system, &eta, t)?;
        println!(
            "t={t}: rho_00 {:.6}  |rho_01| {:.6}  |rho_02| {:.6}  min eig {:.2e}",
            rho.entry(0, 0).re,
            rho.entry(0, 1).norm(),
            rho.entry(0, 2).norm(),
            rho.min_eigenvalue()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
