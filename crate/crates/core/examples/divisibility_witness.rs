// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// CP-divisibility of the dephasing map restricted to the lowest n levels,
// read off the smallest eigenvalue of the decoherence matrix.

use dephaser::bath::{BathSpec, CouplingKind, DephasingEvaluator};
use dephaser::witnesses::{decoherence_matrix, divisibility_scan, nontrivial_block, DEFAULT_PSD_TOL};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let eta = DephasingEvaluator::closed_form(BathSpec::new(1.0, 2.0, CouplingKind::Linear { f: 1.0 })?)?;
    let grid: Vec<f64> = (1..=80).map(|i| 0.05 * i as f64).collect();
    for n in [2, 3, 4] {
        let report = divisibility_scan(n, &eta, &grid, DEFAULT_PSD_TOL)?;
        match report.first_violation {
            Some(t) => println!("n={n}: first violation at t = {t:.2}"),
            None => println!("n={n}: divisible on the whole grid"),
        }
    }
    let d = decoherence_matrix(3, &eta, 1.0)?;
    let block = nontrivial_block(&d, 3, 1.0)?;
    println!("qutrit block at t=1:\n{:.6}", block.block);
    println!("minor test {}  min eigenvalue {:.6}", block.minor_test(DEFAULT_PSD_TOL)?, block.min_eigenvalue());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
