// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{c, heisenberg_correlation, random_density};
use dephaser::bath::{eta_spin_boson, BathMode, Dephasing, DephasingEvaluator, DiscreteBath};
use dephaser::dynamics::{
    correlation_exact, correlation_qrf, expectation_b2, spin_evolve, DensityMatrix, SpinState, SystemSpec,
};
use dephaser::quad::QuadratureSpec;
use dephaser::Result;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn correlation_matches_heisenberg_picture() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (omega, lambda, temp) in [(1.0, 0.7, 0.5), (0.6, 1.9, 0.3), (2.0, 0.25, 1.0)] {
        let mode = BathMode::new(omega, lambda);
        let eta = DephasingEvaluator::discrete(DiscreteBath::new(vec![mode]).unwrap(), temp).unwrap();
        let sys = SystemSpec::new(rng.gen_range(-1.5..1.5), 4).unwrap();
        for _ in 0..5 {
            let rho = random_density(&mut rng, 4);
            let (t, tau) = (rng.gen_range(0.0..6.0), rng.gen_range(0.0..6.0));
            let state = DensityMatrix::new(rho.clone()).unwrap();
            let closed = correlation_exact(&state, &sys, &eta, t, tau).unwrap();
            let brute = heisenberg_correlation(&rho, sys.omega_s, mode, temp, t, tau, 30);
            assert!((closed - brute).norm() < 1e-8, "{closed} vs {brute}");
        }
    }
}

#[test]
fn regression_formula_fails_for_a_single_mode() {
    let mode = BathMode::new(1.0, 0.7);
    let eta = DephasingEvaluator::discrete(DiscreteBath::new(vec![mode]).unwrap(), 0.5).unwrap();
    let psi = DensityMatrix::pure(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
    let sys = SystemSpec::new(1.0, 3).unwrap();
    assert!((expectation_b2(&psi) - c(2f64.sqrt() / 2.0, 0.0)).norm() < 1e-15);
    let exact = correlation_exact(&psi, &sys, &eta, 1.0, 1.0).unwrap();
    let qrf = correlation_qrf(&psi, &sys, &eta, 1.0, 1.0).unwrap();
    assert!((exact - qrf).norm() > 1e-6);
}

/// Spin-boson η̃(t) with λ̃(ω) = ω e^{-ω}, which vanishes at ω = 0.
struct SpinBoson {
    s: f64,
    temperature: f64,
}

impl Dephasing for SpinBoson {
    fn eta(&self, t: f64) -> Result<Complex64> {
        let value = eta_spin_boson(self.s, self.temperature, |w| w * (-w).exp(), t.abs(), &QuadratureSpec::default())?;
        Ok(c(value, 0.0))
    }
}

#[test]
fn spin_boson_coherence_factor() {
    let eta = SpinBoson { s: 1.0, temperature: 0.7 };
    let spin = SpinState::new(c(0.4, 0.0), c(0.1, -0.3), c(0.1, 0.3), c(0.6, 0.0)).unwrap();
    for t in [0.0, 0.5, 3.0] {
        let out = spin_evolve(&spin, 1.2, &eta, t).unwrap();
        let tilde = eta.eta(t).unwrap().re;
        assert!(tilde <= 0.0);
        let expected = spin.r01 * (c(0.0, 1.2 * t) + tilde).exp();
        assert!((out.r01 - expected).norm() < 1e-15);
        assert!((out.r10 - expected.conj()).norm() < 1e-15);
        assert_eq!((out.r00, out.r11), (spin.r00, spin.r11));
    }
}
