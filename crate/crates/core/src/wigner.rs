// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Wigner function of a dephased even cat state and its negativity.
//!
//! With γ = r e^{iθ} and x = 4αr the field is
//!
//! W = 2e^{-2r²}/(π(1+e^{-2α²})) [e^{-2α²}I_0(x) + J_0(x)
//!     + Σ_k (e^{-2α²}I_{2k}(x) + J_{2k}(x)) 2Re e^{η(2kt) - i2k(ωt + θ)}].
//!
//! The quantumness δ is the mass of the negative part of W.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bath::Dephasing;
use crate::error::{Error, Result};
use crate::quad::gauss_legendre;
use crate::specfun::{bessel_i_orders, bessel_j_orders};

pub const TRUNCATION_TOL: f64 = 1e-10;
pub const TAIL_MASS_TOL: f64 = 1e-8;
pub const NEGATIVE_CLAMP: f64 = 1e-9;
pub const DEFAULT_K_MAX: usize = 20;

/// Even cat state (|α⟩ + |-α⟩)/N with real α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatState {
    alpha: f64,
}

impl CatState {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha >= 0.0) || !alpha.is_finite() {
            return Err(Error::invalid("cat state", format!("alpha {alpha} must be finite and >= 0")));
        }
        Ok(Self { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// N = √(2(1 + e^{-2α²})).
    pub fn normalization(&self) -> f64 {
        (2.0 * (1.0 + (-2.0 * self.alpha * self.alpha).exp())).sqrt()
    }

    fn prefactor(&self) -> f64 {
        2.0 / (PI * (1.0 + (-2.0 * self.alpha * self.alpha).exp()))
    }

    /// c_k(r) = prefactor · e^{-2r²} (e^{-2α²}I_{2k}(4αr) + J_{2k}(4αr)), k = 0..=k_max.
    fn radial_coefficients(&self, r: f64, k_max: usize) -> Result<Vec<f64>> {
        let x = 4.0 * self.alpha * r;
        let i = bessel_i_orders(2 * k_max, x)?;
        let j = bessel_j_orders(2 * k_max, x)?;
        let envelope = self.prefactor() * (-2.0 * r * r).exp();
        let damp = (-2.0 * self.alpha * self.alpha).exp();
        Ok((0..=k_max).map(|k| envelope * (damp * i[2 * k] + j[2 * k])).collect())
    }

    /// Upper bound on Σ_{k>k_max} |2 c_k(r)|, using I_n(x) ≤ (x/2)^n I_0(x)/n!
    /// and |J_n(x)| ≤ (x/2)^n/n!.
    pub fn truncation_bound(&self, r: f64, k_max: usize) -> Result<f64> {
        let x = 4.0 * self.alpha * r;
        if x == 0.0 {
            return Ok(0.0);
        }
        let i0 = bessel_i_orders(0, x)?[0];
        let envelope = self.prefactor() * (-2.0 * r * r).exp();
        let scale = 2.0 * envelope * ((-2.0 * self.alpha * self.alpha).exp() * i0 + 1.0);
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut tail = 0.0;
        for k in 1.. {
            term *= q / ((2 * k - 1) * (2 * k)) as f64;
            if k > k_max {
                tail += term;
                if (k as f64) > x && term < 1e-20 * tail {
                    break;
                }
            }
        }
        Ok(scale * tail)
    }
}

/// Polar product rule: Gauss-Legendre in r on [0, R] and the uniform
/// trapezoid rule in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerGrid {
    r_max: f64,
    radii: Vec<f64>,
    angles: Vec<f64>,
    /// Area weight r_i w_i Δθ for every node on ring i.
    ring_weights: Vec<f64>,
}

impl WignerGrid {
    pub fn new(r_max: f64, n_radial: usize, n_angular: usize) -> Result<Self> {
        if !(r_max > 0.0) || !r_max.is_finite() || n_radial == 0 || n_angular < 2 {
            return Err(Error::invalid("Wigner grid", "needs r_max > 0, n_radial >= 1, n_angular >= 2"));
        }
        let (nodes, weights) = gauss_legendre(n_radial);
        let half = 0.5 * r_max;
        let dtheta = 2.0 * PI / n_angular as f64;
        let radii: Vec<f64> = nodes.iter().map(|x| half * (x + 1.0)).collect();
        let ring_weights = radii.iter().zip(&weights).map(|(r, w)| r * w * half * dtheta).collect();
        let angles = (0..n_angular).map(|j| j as f64 * dtheta).collect();
        Ok(Self {
            r_max,
            radii,
            angles,
            ring_weights,
        })
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// Mass of e^{-2(|γ|-α)²}-type envelopes outside the disk.
    pub fn check_tail(&self, alpha: f64) -> Result<()> {
        let gap = (self.r_max - alpha).max(0.0);
        let tail = (-2.0 * gap * gap).exp();
        if tail > TAIL_MASS_TOL {
            return Err(Error::TailMass {
                r_max: self.r_max,
                tail,
            });
        }
        Ok(())
    }

    /// ∫ f d²γ over the disk.
    pub fn integrate(&self, field: &WignerField) -> f64 {
        self.ring_sums(field, |w| w)
    }

    fn ring_sums(&self, field: &WignerField, g: impl Fn(f64) -> f64) -> f64 {
        let n = self.angles.len();
        self.ring_weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * field.values[i * n..(i + 1) * n].iter().map(|&v| g(v)).sum::<f64>())
            .sum()
    }
}

impl Default for WignerGrid {
    fn default() -> Self {
        Self::new(5.0, 400, 256).expect("default grid is valid")
    }
}

/// W sampled on a grid, ring-major: values[i * n_angular + j] = W(r_i, θ_j).
#[derive(Debug, Clone, PartialEq)]
pub struct WignerField {
    pub values: Vec<f64>,
}

fn phase_terms<D: Dephasing + ?Sized>(sys_omega: f64, eta: &D, t: f64, k_max: usize) -> Result<Vec<Complex64>> {
    (1..=k_max)
        .map(|k| {
            let x = 2.0 * k as f64 * t;
            Ok((eta.eta(x)? - Complex64::new(0.0, sys_omega * x)).exp())
        })
        .collect()
}

fn check_k_max(k_max: usize) -> Result<()> {
    if k_max == 0 {
        return Err(Error::invalid("Wigner series", "k_max must be >= 1"));
    }
    Ok(())
}

fn check_truncation(cat: &CatState, radii: &[f64], k_max: usize) -> Result<()> {
    for &r in radii {
        let bound = cat.truncation_bound(r, k_max)?;
        if bound > TRUNCATION_TOL {
            return Err(Error::Truncation { k_max, bound });
        }
    }
    Ok(())
}

/// W(γ, t) for the dephased cat state.
pub fn wigner_cat<D: Dephasing + ?Sized>(
    cat: &CatState,
    gamma: Complex64,
    sys_omega: f64,
    eta: &D,
    t: f64,
    k_max: usize,
) -> Result<f64> {
    check_k_max(k_max)?;
    let r = gamma.norm();
    check_truncation(cat, &[r], k_max)?;
    let coeffs = cat.radial_coefficients(r, k_max)?;
    let phases = phase_terms(sys_omega, eta, t, k_max)?;
    let theta = gamma.arg();
    let series: f64 = phases
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let k = (i + 1) as f64;
            coeffs[i + 1] * 2.0 * (p * Complex64::from_polar(1.0, -2.0 * k * theta)).re
        })
        .sum();
    Ok(coeffs[0] + series)
}

/// Precomputed radial table for evaluating W of one cat state on one grid.
#[derive(Debug, Clone)]
pub struct CatFieldEvaluator {
    cat: CatState,
    k_max: usize,
    n_angular: usize,
    /// rows: rings, columns: k = 0..=k_max.
    coefficients: DMatrix<f64>,
    /// rows: k = 1..=k_max, columns: angles; e^{-i2kθ_j}.
    angular: DMatrix<Complex64>,
}

impl CatFieldEvaluator {
    pub fn new(cat: CatState, grid: &WignerGrid, k_max: usize) -> Result<Self> {
        check_k_max(k_max)?;
        grid.check_tail(cat.alpha())?;
        check_truncation(&cat, grid.radii(), k_max)?;
        let rows = grid
            .radii()
            .par_iter()
            .map(|&r| cat.radial_coefficients(r, k_max))
            .collect::<Result<Vec<_>>>()?;
        let coefficients = DMatrix::from_fn(rows.len(), k_max + 1, |i, k| rows[i][k]);
        let angles = grid.angles();
        let angular = DMatrix::from_fn(k_max, angles.len(), |k, j| {
            Complex64::from_polar(1.0, -2.0 * (k + 1) as f64 * angles[j])
        });
        Ok(Self {
            cat,
            k_max,
            n_angular: angles.len(),
            coefficients,
            angular,
        })
    }

    pub fn cat(&self) -> CatState {
        self.cat
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Field from the phase factors p_k = e^{η(2kt) - i2kωt}.
    fn field_from_phases(&self, phases: &[Complex64]) -> WignerField {
        let mut angular_part = DMatrix::zeros(self.k_max + 1, self.n_angular);
        for j in 0..self.n_angular {
            angular_part[(0, j)] = 1.0;
            for k in 0..self.k_max {
                angular_part[(k + 1, j)] = 2.0 * (phases[k] * self.angular[(k, j)]).re;
            }
        }
        let w = &self.coefficients * angular_part;
        // Row-major flattening: ring i, angle j.
        WignerField {
            values: w.transpose().as_slice().to_vec(),
        }
    }

    pub fn field<D: Dephasing + ?Sized>(&self, sys_omega: f64, eta: &D, t: f64) -> Result<WignerField> {
        Ok(self.field_from_phases(&phase_terms(sys_omega, eta, t, self.k_max)?))
    }

    /// W_c: the time-independent k = 0 part of the series.
    pub fn baseline_field(&self) -> WignerField {
        self.field_from_phases(&vec![Complex64::new(0.0, 0.0); self.k_max])
    }
}

/// δ: the mass of the negative part of W, which equals ½(∫|W| - 1) when
/// ∫W = 1. Values in [-1e-9, 0) are treated as quadrature noise.
pub fn quantumness(field: &WignerField, grid: &WignerGrid) -> Result<f64> {
    if field.values.len() != grid.radii().len() * grid.angles().len() {
        return Err(Error::invalid("Wigner field", "size does not match the grid"));
    }
    if field.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid("Wigner field", "non-finite sample"));
    }
    Ok(grid.ring_sums(field, |w| if w < -NEGATIVE_CLAMP { -w } else { 0.0 }))
}

/// δ_c from the time-independent part W_c of the cat series.
pub fn quantumness_baseline(cat: &CatState, grid: &WignerGrid, k_max: usize) -> Result<f64> {
    let evaluator = CatFieldEvaluator::new(*cat, grid, k_max)?;
    quantumness(&evaluator.baseline_field(), grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumnessSeries {
    pub times: Vec<f64>,
    /// δ(t) at each time.
    pub delta: Vec<f64>,
    pub delta_c: f64,
    pub k_max: usize,
    /// Index of the global minimum of δ when it lies strictly inside the series.
    pub interior_minimum: Option<usize>,
}

impl QuantumnessSeries {
    /// δ(t) - δ_c.
    pub fn excess(&self) -> Vec<f64> {
        self.delta.iter().map(|d| d - self.delta_c).collect()
    }
}

fn interior_minimum(values: &[f64]) -> Option<usize> {
    let (idx, _) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))?;
    (idx > 0 && idx + 1 < values.len() && values[idx] < values[idx - 1] && values[idx] < values[idx + 1]).then_some(idx)
}

/// δ(t) over an ascending time grid starting at 0.
pub fn quantumness_scan<D: Dephasing + ?Sized>(
    cat: &CatState,
    sys_omega: f64,
    eta: &D,
    times: &[f64],
    grid: &WignerGrid,
    k_max: usize,
) -> Result<QuantumnessSeries> {
    if times.first() != Some(&0.0) || times.windows(2).any(|w| !(w[1] > w[0])) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::invalid("quantumness scan", "times must ascend strictly from 0"));
    }
    let evaluator = CatFieldEvaluator::new(*cat, grid, k_max)?;
    let delta_c = quantumness(&evaluator.baseline_field(), grid)?;
    let delta = times
        .par_iter()
        .map(|&t| quantumness(&evaluator.field(sys_omega, eta, t)?, grid))
        .collect::<Result<Vec<f64>>>()?;
    let interior_minimum = interior_minimum(&delta);
    Ok(QuantumnessSeries {
        times: times.to_vec(),
        delta,
        delta_c,
        k_max,
        interior_minimum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::LinearDephasing;

    #[test]
    fn origin_value() {
        let cat = CatState::new(1.5).unwrap();
        let eta = LinearDephasing::new(0.3, 0.0);
        for t in [0.0, 0.5, 2.0] {
            let w = wigner_cat(&cat, Complex64::new(0.0, 0.0), 1.0, &eta, t, 20).unwrap();
            assert!((w - 2.0 / PI).abs() < 1e-15);
        }
    }

    #[test]
    fn normalization_constant() {
        let cat = CatState::new(1.5).unwrap();
        assert!((cat.normalization() - (2.0 * (1.0 + (-4.5f64).exp())).sqrt()).abs() < 1e-15);
        assert!(CatState::new(-0.1).is_err());
    }

    #[test]
    fn vacuum_has_no_negativity() {
        let grid = WignerGrid::default();
        let vacuum = CatState::new(0.0).unwrap();
        let eval = CatFieldEvaluator::new(vacuum, &grid, 5).unwrap();
        let field = eval.baseline_field();
        assert!((grid.integrate(&field) - 1.0).abs() < 1e-12);
        assert_eq!(quantumness(&field, &grid).unwrap(), 0.0);
        assert_eq!(quantumness_baseline(&vacuum, &grid, 5).unwrap(), 0.0);
    }

    #[test]
    fn pointwise_and_grid_agree() {
        let grid = WignerGrid::new(5.0, 40, 16).unwrap();
        let cat = CatState::new(1.5).unwrap();
        let eta = LinearDephasing::new(0.2, 0.7);
        let eval = CatFieldEvaluator::new(cat, &grid, 20).unwrap();
        let field = eval.field(0.9, &eta, 1.3).unwrap();
        for (i, &r) in grid.radii().iter().enumerate().step_by(7) {
            for (j, &theta) in grid.angles().iter().enumerate().step_by(3) {
                let direct = wigner_cat(&cat, Complex64::from_polar(r, theta), 0.9, &eta, 1.3, 20).unwrap();
                assert!((field.values[i * 16 + j] - direct).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn small_disk_and_short_series_rejected() {
        let cat = CatState::new(1.5).unwrap();
        assert!(matches!(
            CatFieldEvaluator::new(cat, &WignerGrid::new(2.5, 40, 16).unwrap(), 20),
            Err(Error::TailMass { .. })
        ));
        assert!(matches!(
            CatFieldEvaluator::new(cat, &WignerGrid::default(), 8),
            Err(Error::Truncation { .. })
        ));
        assert!(CatFieldEvaluator::new(cat, &WignerGrid::default(), DEFAULT_K_MAX).is_ok());
    }

    #[test]
    fn interior_minimum_detection() {
        assert_eq!(interior_minimum(&[3.0, 2.0, 1.0]), None);
        assert_eq!(interior_minimum(&[3.0, 1.0, 2.0]), Some(1));
        assert_eq!(interior_minimum(&[1.0, 1.0, 2.0]), None);
    }

    #[test]
    fn scan_requires_origin() {
        let cat = CatState::new(1.5).unwrap();
        let eta = LinearDephasing::new(0.2, 0.0);
        let grid = WignerGrid::new(5.0, 40, 16).unwrap();
        assert!(quantumness_scan(&cat, 1.0, &eta, &[0.5, 1.0], &grid, 20).is_err());
    }
}
