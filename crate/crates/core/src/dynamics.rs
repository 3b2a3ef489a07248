// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Exact reduced dynamics of the system mode in the Fock basis.
//!
//! The system Hamiltonian commutes with the coupling, so populations are
//! frozen and each coherence C_mn picks up e^{-i(m-n)ω_S t} e^{η((m-n)t)}.
//! Negative offsets use η(-x) = conj η(x), which also keeps every evolved
//! state exactly Hermitian.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bath::Dephasing;
use crate::error::{Error, Result};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub omega_s: f64,
    pub dim: usize,
}

impl SystemSpec {
    pub fn new(omega_s: f64, dim: usize) -> Result<Self> {
        let spec = Self { omega_s, dim };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::invalid("system", format!("dimension {} must be >= 2", self.dim)));
        }
        if !self.omega_s.is_finite() {
            return Err(Error::invalid("system", "omega_s must be finite"));
        }
        Ok(())
    }
}

/// Hermitian, unit-trace, positive semidefinite Fock-basis state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(DMatrix<Complex64>);

impl DensityMatrix {
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::invalid("density matrix", "must be square and non-empty"));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in i..n {
                let gap = (matrix[(i, j)] - matrix[(j, i)].conj()).norm();
                if gap > HERMITICITY_TOL {
                    return Err(Error::invalid("density matrix", format!("not Hermitian at ({i}, {j}): {gap:e}")));
                }
            }
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::invalid("density matrix", format!("trace {trace} differs from 1")));
        }
        let state = Self(matrix);
        let min = state.min_eigenvalue();
        if min < -PSD_TOL {
            return Err(Error::invalid("density matrix", format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    /// |ψ⟩⟨ψ| for the normalized amplitude vector.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if amplitudes.is_empty() || !(norm > 0.0) {
            return Err(Error::invalid("pure state", "amplitude vector must be non-zero"));
        }
        let n = amplitudes.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| amplitudes[i] * amplitudes[j].conj() / (norm * norm)))
    }

    /// Number state |n⟩⟨n| in a space of dimension `dim`.
    pub fn fock(dim: usize, n: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::invalid("fock state", format!("level {n} outside dimension {dim}")));
        }
        let mut m = DMatrix::zeros(dim, dim);
        m[(n, n)] = Complex64::new(1.0, 0.0);
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn entry(&self, m: usize, n: usize) -> Complex64 {
        self.0[(m, n)]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.0)
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }
}

pub(crate) fn min_hermitian_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    // Symmetrize so rounding in the input cannot break the Hermitian solver.
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

/// Two-level state [[r00, r01], [r10, r11]].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinState {
    pub r00: Complex64,
    pub r01: Complex64,
    pub r10: Complex64,
    pub r11: Complex64,
}

impl SpinState {
    pub fn new(r00: Complex64, r01: Complex64, r10: Complex64, r11: Complex64) -> Result<Self> {
        let state = Self { r00, r01, r10, r11 };
        DensityMatrix::new(state.to_matrix())?;
        Ok(state)
    }

    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(2, 2, &[self.r00, self.r01, self.r10, self.r11])
    }
}

impl TryFrom<&DensityMatrix> for SpinState {
    type Error = Error;

    fn try_from(rho: &DensityMatrix) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::invalid("spin state", format!("needs a 2x2 state, got dimension {}", rho.dim())));
        }
        Ok(Self {
            r00: rho.entry(0, 0),
            r01: rho.entry(0, 1),
            r10: rho.entry(1, 0),
            r11: rho.entry(1, 1),
        })
    }
}

fn nonnegative(function: &'static str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value,
            requirement: "time >= 0",
        })
    }
}

/// e^{-i d ω_S t} e^{η(d t)} for d = 0..dim.
fn coherence_factors<D: Dephasing + ?Sized>(omega_s: f64, eta: &D, t: f64, dim: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::with_capacity(dim);
    out.push(Complex64::new(1.0, 0.0));
    for d in 1..dim {
        let x = d as f64 * t;
        let exponent = eta.eta(x)? - Complex64::new(0.0, omega_s * x);
        out.push(exponent.exp());
    }
    Ok(out)
}

fn apply_factors(x: &DMatrix<Complex64>, factors: &[Complex64]) -> DMatrix<Complex64> {
    DMatrix::from_fn(x.nrows(), x.ncols(), |m, n| {
        if m >= n {
            x[(m, n)] * factors[m - n]
        } else {
            x[(m, n)] * factors[n - m].conj()
        }
    })
}

/// ρ_S(t) from ρ_S(0) under pure dephasing.
pub fn evolve<D: Dephasing + ?Sized>(rho0: &DensityMatrix, sys: &SystemSpec, eta: &D, t: f64) -> Result<DensityMatrix> {
    sys.validate()?;
    nonnegative("evolve", t)?;
    if rho0.dim() != sys.dim {
        return Err(Error::invalid(
            "evolve",
            format!("state dimension {} differs from system dimension {}", rho0.dim(), sys.dim),
        ));
    }
    let factors = coherence_factors(sys.omega_s, eta, t, sys.dim)?;
    Ok(DensityMatrix(apply_factors(rho0.matrix(), &factors)))
}

/// The interval map E(t+τ, t) applied to an arbitrary operator. For this
/// model the map depends only on the interval length τ; `t` is checked but
/// does not enter.
pub fn map_interval<D: Dephasing + ?Sized>(
    x: &DMatrix<Complex64>,
    sys: &SystemSpec,
    eta: &D,
    t: f64,
    tau: f64,
) -> Result<DMatrix<Complex64>> {
    sys.validate()?;
    nonnegative("map_interval", t)?;
    nonnegative("map_interval", tau)?;
    if x.nrows() != x.ncols() {
        return Err(Error::invalid("map_interval", "operator must be square"));
    }
    let factors = coherence_factors(sys.omega_s, eta, tau, x.nrows())?;
    Ok(apply_factors(x, &factors))
}

/// Truncated annihilation operator b with b|n⟩ = √n |n-1⟩.
pub fn annihilation(dim: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(dim, dim, |m, n| {
        if n == m + 1 {
            Complex64::new((n as f64).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// ⟨b²⟩ = Tr[ρ b²] = Σ_n √(n(n-1)) ρ_{n,n-2}.
pub fn expectation_b2(rho: &DensityMatrix) -> Complex64 {
    (2..rho.dim())
        .map(|n| rho.entry(n, n - 2) * ((n * (n - 1)) as f64).sqrt())
        .sum()
}

fn correlation_phase(omega_s: f64, t: f64, tau: f64) -> Complex64 {
    Complex64::from_polar(1.0, -omega_s * (2.0 * t + tau))
}

/// ⟨b(t) b(t+τ)⟩ = e^{-iω_S(2t+τ)} e^{η(2t+τ)} ⟨b²⟩.
pub fn correlation_exact<D: Dephasing + ?Sized>(
    rho0: &DensityMatrix,
    sys: &SystemSpec,
    eta: &D,
    t: f64,
    tau: f64,
) -> Result<Complex64> {
    nonnegative("correlation_exact", t)?;
    nonnegative("correlation_exact", tau)?;
    let dephasing = eta.eta(2.0 * t + tau)?.exp();
    Ok(correlation_phase(sys.omega_s, t, tau) * dephasing * expectation_b2(rho0))
}

/// Quantum-regression prediction e^{-iω_S(2t+τ)} e^{η(2t)+η(τ)} ⟨b²⟩.
pub fn correlation_qrf<D: Dephasing + ?Sized>(
    rho0: &DensityMatrix,
    sys: &SystemSpec,
    eta: &D,
    t: f64,
    tau: f64,
) -> Result<Complex64> {
    nonnegative("correlation_qrf", t)?;
    nonnegative("correlation_qrf", tau)?;
    let dephasing = (eta.eta(2.0 * t)? + eta.eta(tau)?).exp();
    Ok(correlation_phase(sys.omega_s, t, tau) * dephasing * expectation_b2(rho0))
}

/// |e^{η(2t+τ)} - e^{η(2t)+η(τ)}|, zero exactly when the regression formula holds.
pub fn qrf_residual<D: Dephasing + ?Sized>(eta: &D, t: f64, tau: f64) -> Result<f64> {
    nonnegative("qrf_residual", t)?;
    nonnegative("qrf_residual", tau)?;
    let exact = eta.eta(2.0 * t + tau)?.exp();
    let qrf = (eta.eta(2.0 * t)? + eta.eta(tau)?).exp();
    Ok((exact - qrf).norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSample {
    pub t: f64,
    pub tau: f64,
    pub exact: Complex64,
    pub qrf: Complex64,
    pub residual: f64,
}

pub fn correlation_sample<D: Dephasing + ?Sized>(
    rho0: &DensityMatrix,
    sys: &SystemSpec,
    eta: &D,
    t: f64,
    tau: f64,
) -> Result<CorrelationSample> {
    Ok(CorrelationSample {
        t,
        tau,
        exact: correlation_exact(rho0, sys, eta, t, tau)?,
        qrf: correlation_qrf(rho0, sys, eta, t, tau)?,
        residual: qrf_residual(eta, t, tau)?,
    })
}

/// Two-level reduction: r01 → r01 e^{iω_S t + η*(t)}, r10 → r10 e^{-iω_S t + η(t)}.
pub fn spin_evolve<D: Dephasing + ?Sized>(spin0: &SpinState, omega_s: f64, eta: &D, t: f64) -> Result<SpinState> {
    nonnegative("spin_evolve", t)?;
    let lower = (eta.eta(t)? - Complex64::new(0.0, omega_s * t)).exp();
    Ok(SpinState {
        r00: spin0.r00,
        r01: spin0.r01 * lower.conj(),
        r10: spin0.r10 * lower,
        r11: spin0.r11,
    })
}
