// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// Polylogarithm, zeta, gamma and Bessel values used by the closed forms.

use dephaser::specfun::{bessel_i, bessel_j_orders, gamma_fn, polylog, riemann_zeta, SeriesTolerance};
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let tol = SeriesTolerance::default();
    let at_one = polylog(2.0, Complex64::new(1.0, 0.0), &tol)?;
    println!("Li_2(1) = {:.15}  zeta(2) = {:.15}", at_one.re, riemann_zeta(2.0)?);
    let on_circle = polylog(1.0, Complex64::from_polar(1.0, 0.4), &tol)?;
    println!("Li_1(e^0.4i) = {on_circle:.15}");
    println!("Gamma(4.5) = {:.15}", gamma_fn(4.5)?);

    // Jacobi-Anger: J_0 + 2 Σ J_2k = 1.
    let j = bessel_j_orders(60, 7.3)?;
    let sum = j[0] + 2.0 * j.iter().skip(2).step_by(2).sum::<f64>();
    println!("J_0(7.3) + 2 sum J_2k(7.3) = {sum:.15}");
    println!("I_3(2.5) = {:.15}", bessel_i(3, 2.5)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
