// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Two-time correlation ⟨b(t) b(t+τ)⟩ against the quantum regression
// formula. A single bath mode keeps memory, so the two disagree.

use dephaser::bath::{BathMode, DephasingEvaluator, DiscreteBath};
use dephaser::dynamics::{correlation_sample, DensityMatrix, SystemSpec};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let eta = DephasingEvaluator::discrete(DiscreteBath::new(vec![BathMode::new(1.0, 0.7)])?, 0.5)?;
    let system = SystemSpec::new(1.0, 3)?;
    let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
    let psi = DensityMatrix::pure(&[one, zero, one])?;
    for (t, tau) in [(0.0, 0.0), (0.5, 0.5), (1.0, 1.0), (2.0, 0.5)] {
        let sample = correlation_sample(&psi, &system, &eta, t, tau)?;
        println!(
            "t={t} tau={tau}: exact {:.8}  regression {:.8}  residual {:.3e}",
            sample.exact, sample.qrf, sample.residual
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
