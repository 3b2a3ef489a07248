// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference computations shared by the integration tests.

#![allow(dead_code)]

use dephaser::bath::BathMode;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Σ_k w_k ln Tr_B[e^{-iλ_k n_k t} ρ_thermal], each trace summed over the
/// first `cutoff` Fock levels.
pub fn fock_trace_eta(modes: &[BathMode], temperature: f64, t: f64, cutoff: usize) -> Complex64 {
    modes
        .iter()
        .map(|m| {
            let q = (-m.omega / temperature).exp();
            let mut acc = c(0.0, 0.0);
            let mut weight = 1.0 - q;
            for n in 0..cutoff {
                acc += Complex64::from_polar(weight, -m.lambda * n as f64 * t);
                weight *= q;
            }
            m.weight * acc.ln()
        })
        .sum()
}

/// Tr[b(t) b(t+τ) ρ_S ⊗ ρ_B] on the product space of a `dim`-level system
/// and one bath mode truncated at `cutoff` levels, with
/// H = ω_S n_S + ω n_B + λ n_S n_B and b(t) = U(t)† (b ⊗ 𝕀) U(t).
pub fn heisenberg_correlation(
    rho_s: &DMatrix<Complex64>,
    omega_s: f64,
    mode: BathMode,
    temperature: f64,
    t: f64,
    tau: f64,
    cutoff: usize,
) -> Complex64 {
    let dim = rho_s.nrows();
    let total = dim * cutoff;
    let index = |m: usize, k: usize| m * cutoff + k;
    let q = (-mode.omega / temperature).exp();
    let z: f64 = (0..cutoff).map(|k| q.powi(k as i32)).sum();
    let mut rho = DMatrix::from_element(total, total, c(0.0, 0.0));
    for m in 0..dim {
        for n in 0..dim {
            for k in 0..cutoff {
                rho[(index(m, k), index(n, k))] = rho_s[(m, n)] * (q.powi(k as i32) / z);
            }
        }
    }
    let mut b = DMatrix::from_element(total, total, c(0.0, 0.0));
    for m in 1..dim {
        for k in 0..cutoff {
            b[(index(m - 1, k), index(m, k))] = c((m as f64).sqrt(), 0.0);
        }
    }
    let propagator = |time: f64| {
        let mut u = DMatrix::from_element(total, total, c(0.0, 0.0));
        for m in 0..dim {
            for k in 0..cutoff {
                let (mf, kf) = (m as f64, k as f64);
                let energy = omega_s * mf + mode.omega * kf + mode.lambda * mf * kf;
                u[(index(m, k), index(m, k))] = Complex64::from_polar(1.0, -energy * time);
            }
        }
        u
    };
    let heisenberg = |time: f64| {
        let u = propagator(time);
        u.adjoint() * &b * u
    };
    (heisenberg(t) * heisenberg(t + tau) * rho).trace()
}

fn coherent_amplitudes(z: Complex64, cutoff: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(cutoff);
    let mut amp = c((-0.5 * z.norm_sqr()).exp(), 0.0);
    for n in 0..cutoff {
        out.push(amp);
        amp = amp * z / ((n + 1) as f64).sqrt();
    }
    out
}

/// W(γ) = (2/π) Σ_{n<cutoff} (-1)^n |⟨n|D(-γ)|cat⟩|² for the even cat state,
/// using D(β)|a⟩ = e^{(βa* - β*a)/2}|a + β⟩.
pub fn cat_wigner_fock(alpha: f64, gamma: Complex64, cutoff: usize) -> f64 {
    let norm = (2.0 * (1.0 + (-2.0 * alpha * alpha).exp())).sqrt();
    let beta = -gamma;
    let shifted = |a: Complex64| {
        let phase = ((beta * a.conj() - beta.conj() * a) * 0.5).exp();
        coherent_amplitudes(a + beta, cutoff).into_iter().map(move |v| v * phase)
    };
    let psi: Vec<Complex64> = shifted(c(alpha, 0.0))
        .zip(shifted(c(-alpha, 0.0)))
        .map(|(p, m)| (p + m) / norm)
        .collect();
    let parity: f64 = psi
        .iter()
        .enumerate()
        .map(|(n, a)| if n % 2 == 0 { a.norm_sqr() } else { -a.norm_sqr() })
        .sum();
    2.0 / std::f64::consts::PI * parity
}

/// Random density matrix A A† / Tr(A A†) with Gaussian-ish entries.
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> DMatrix<Complex64> {
    let a = DMatrix::from_fn(dim, dim, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let rho = &a * a.adjoint();
    let trace = rho.trace();
    rho / trace
}
