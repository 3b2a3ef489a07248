// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// η(t) for a continuum bath: closed forms against quadrature, and the
// Lorentzian coupling that has no closed form.

use dephaser::bath::{BathSpec, CouplingKind, Dephasing, DephasingEvaluator};
use dephaser::quad::QuadratureSpec;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let quad = QuadratureSpec::default();
    for coupling in [CouplingKind::Constant { c: 1.0 }, CouplingKind::Linear { f: 1.0 }] {
        let spec = BathSpec::new(0.7, 1.0, coupling)?;
        let closed = DephasingEvaluator::closed_form(spec)?;
        let numeric = DephasingEvaluator::quadrature(spec, quad)?;
        for t in [0.5, 2.0, 8.0] {
            let (a, b) = (closed.eta(t)?, numeric.eta(t)?);
            println!("{coupling:?} t={t}: closed {a:.12}  quadrature {b:.12}  |diff| {:.1e}", (a - b).norm());
        }
    }

    let lorentz = DephasingEvaluator::auto(BathSpec::new(0.5, 2.0, CouplingKind::lorentzian_default())?, quad)?;
    println!("Lorentzian bath, strategy {:?}", lorentz.strategy());
    for t in [1.0, 10.0, 40.0] {
        let eta = lorentz.eta(t)?;
        println!("t={t:>4}: eta = {eta:.10}  rate = {:.10}", lorentz.eta_dot(t)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
