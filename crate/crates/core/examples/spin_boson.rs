// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Coherence decay of a spin coupled through σ_z to a boson bath.

use dephaser::bath::{eta_spin_boson, Dephasing};
use dephaser::dynamics::{spin_evolve, SpinState};
use dephaser::quad::QuadratureSpec;
use num_complex::Complex64;

/// Real η̃(t) for λ̃(ω) = ω e^{-ω}.
struct SpinBath {
    s: f64,
    temperature: f64,
}

impl Dephasing for SpinBath {
    fn eta(&self, t: f64) -> dephaser::Result<Complex64> {
        let coupling = |w: f64| w * (-w).exp();
        let v = eta_spin_boson(self.s, self.temperature, coupling, t.abs(), &QuadratureSpec::default())?;
        Ok(Complex64::new(v, 0.0))
    }
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plus = SpinState::new(
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.5, 0.0),
    )?;
    for s in [0.5, 1.0, 3.0] {
        let bath = SpinBath { s, temperature: 0.5 };
        print!("s={s}:");
        for t in [0.0, 1.0, 4.0, 16.0] {
            print!("  |rho_01({t})| = {:.6}", spin_evolve(&plus, 1.0, &bath, t)?.r01.norm());
        }
        println!();
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
