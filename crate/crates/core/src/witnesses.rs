// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Divisibility witness for the n-level truncation of the dephasing map.
//!
//! The coherence (m, n) evolves with rate d/dt η((m-n)t) = (m-n) η̇((m-n)t).
//! Written in the generalized Gell-Mann basis, the canonical decoherence
//! matrix only couples the diagonal family, so divisibility reduces to
//! positivity of an (n-1)×(n-1) block.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bath::Dephasing;
use crate::dynamics::min_hermitian_eigenvalue;
use crate::error::{Error, Result};

pub const DEFAULT_PSD_TOL: f64 = 1e-9;
pub const STRUCTURE_TOL: f64 = 1e-10;

/// Orthonormal Hermitian basis G_1..G_{n²-1} of traceless n×n matrices.
///
/// Order: diagonal G_l (l = 1..n-1), then symmetric G_jk, then antisymmetric
/// G_jk, with pairs k < j in lexicographic order of (j, k).
#[derive(Debug, Clone, PartialEq)]
pub struct GellMannBasis {
    n: usize,
    operators: Vec<DMatrix<Complex64>>,
}

impl GellMannBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[DMatrix<Complex64>] {
        &self.operators
    }

    /// G_0 = 𝕀/√n.
    pub fn identity_component(&self) -> DMatrix<Complex64> {
        DMatrix::identity(self.n, self.n) * Complex64::new(1.0 / (self.n as f64).sqrt(), 0.0)
    }

    /// Diagonal ⟨j|G_p|j⟩ as a real vector.
    fn diagonal(&self, p: usize) -> Vec<f64> {
        (0..self.n).map(|j| self.operators[p][(j, j)].re).collect()
    }
}

pub fn gellmann_basis(n: usize) -> Result<GellMannBasis> {
    if n < 2 {
        return Err(Error::invalid("Gell-Mann basis", format!("dimension {n} must be >= 2")));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut operators = Vec::with_capacity(n * n - 1);
    for l in 1..n {
        let norm = 1.0 / ((l * (l + 1)) as f64).sqrt();
        let mut g = DMatrix::from_element(n, n, zero);
        for j in 0..l {
            g[(j, j)] = Complex64::new(norm, 0.0);
        }
        g[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        operators.push(g);
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |k| (j, k))).collect();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for &(j, k) in &pairs {
        let mut g = DMatrix::from_element(n, n, zero);
        g[(j, k)] = Complex64::new(h, 0.0);
        g[(k, j)] = Complex64::new(h, 0.0);
        operators.push(g);
    }
    for &(j, k) in &pairs {
        let mut g = DMatrix::from_element(n, n, zero);
        g[(j, k)] = Complex64::new(0.0, h);
        g[(k, j)] = Complex64::new(0.0, -h);
        operators.push(g);
    }
    Ok(GellMannBasis { n, operators })
}

/// Rates D(m) = d/dt η(m t) = m η̇(m t) for m = 0..n.
pub fn coherence_rates<D: Dephasing + ?Sized>(n: usize, eta: &D, t: f64) -> Result<Vec<Complex64>> {
    let mut rates = vec![Complex64::new(0.0, 0.0)];
    for m in 1..n {
        rates.push(eta.eta_dot(m as f64 * t)? * m as f64);
    }
    Ok(rates)
}

/// d_pq = Σ_{j,k} D(j-k) ⟨j|G_p|j⟩⟨k|G_q|k⟩ with D(-m) = conj D(m).
pub fn decoherence_matrix_from_rates(basis: &GellMannBasis, rates: &[Complex64]) -> Result<DMatrix<Complex64>> {
    let n = basis.n();
    if rates.len() != n {
        return Err(Error::invalid("decoherence matrix", format!("expected {n} rates, got {}", rates.len())));
    }
    let rate = |j: usize, k: usize| {
        if j >= k {
            rates[j - k]
        } else {
            rates[k - j].conj()
        }
    };
    let size = n * n - 1;
    let diagonals: Vec<Vec<f64>> = (0..size).map(|p| basis.diagonal(p)).collect();
    let mut d = DMatrix::from_element(size, size, Complex64::new(0.0, 0.0));
    for p in 0..size {
        for q in 0..size {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if diagonals[p][j] == 0.0 {
                    continue;
                }
                for k in 0..n {
                    acc += rate(j, k) * (diagonals[p][j] * diagonals[q][k]);
                }
            }
            d[(p, q)] = acc;
        }
    }
    Ok(d)
}

/// The full (n²-1)×(n²-1) decoherence matrix d_n(t).
pub fn decoherence_matrix<D: Dephasing + ?Sized>(n: usize, eta: &D, t: f64) -> Result<DMatrix<Complex64>> {
    if !(t >= 0.0) {
        return Err(Error::Domain {
            function: "decoherence_matrix",
            value: t,
            requirement: "time >= 0",
        });
    }
    let basis = gellmann_basis(n)?;
    decoherence_matrix_from_rates(&basis, &coherence_rates(n, eta, t)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceBlock {
    pub n: usize,
    pub t: f64,
    pub block: DMatrix<Complex64>,
}

impl DecoherenceBlock {
    pub fn min_eigenvalue(&self) -> f64 {
        min_hermitian_eigenvalue(&self.block)
    }

    /// Sylvester-type test for n = 3: -Re η̇(t) ≥ 0 and det ≥ 0.
    pub fn minor_test(&self, tol: f64) -> Result<bool> {
        if self.n != 3 {
            return Err(Error::invalid("minor test", format!("defined for n = 3, got n = {}", self.n)));
        }
        let a = self.block[(0, 0)].re;
        let det = (self.block[(0, 0)] * self.block[(1, 1)] - self.block[(0, 1)] * self.block[(1, 0)]).re;
        Ok(a >= -tol && det >= -tol)
    }
}

/// Extracts the diagonal-family block, checking that everything else vanishes.
pub fn nontrivial_block(d: &DMatrix<Complex64>, n: usize, t: f64) -> Result<DecoherenceBlock> {
    let size = n * n - 1;
    if n < 2 || d.nrows() != size || d.ncols() != size {
        return Err(Error::invalid("decoherence matrix", format!("expected {size}x{size} for n = {n}")));
    }
    let b = n - 1;
    for row in 0..size {
        for col in 0..size {
            if row < b && col < b {
                continue;
            }
            let magnitude = d[(row, col)].norm();
            if magnitude > STRUCTURE_TOL {
                return Err(Error::Structure { row, col, magnitude });
            }
        }
    }
    Ok(DecoherenceBlock {
        n,
        t,
        block: d.view((0, 0), (b, b)).into_owned(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityReport {
    pub n: usize,
    pub psd_tol: f64,
    pub times: Vec<f64>,
    pub min_eigenvalue: Vec<f64>,
    pub divisible: Vec<bool>,
    pub first_violation: Option<f64>,
}

impl DivisibilityReport {
    pub fn all_divisible(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Minimum block eigenvalue at every grid time; divisible iff ≥ -psd_tol.
pub fn divisibility_scan<D: Dephasing + ?Sized>(
    n: usize,
    eta: &D,
    grid: &[f64],
    psd_tol: f64,
) -> Result<DivisibilityReport> {
    if !(psd_tol >= 0.0) {
        return Err(Error::invalid("divisibility scan", "psd_tol must be >= 0"));
    }
    if grid.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) || grid.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("divisibility scan", "grid must be ascending, finite and nonnegative"));
    }
    let basis = gellmann_basis(n)?;
    let min_eigenvalue = grid
        .par_iter()
        .map(|&t| {
            let d = decoherence_matrix_from_rates(&basis, &coherence_rates(n, eta, t)?)?;
            Ok(nontrivial_block(&d, n, t)?.min_eigenvalue())
        })
        .collect::<Result<Vec<f64>>>()?;
    let divisible: Vec<bool> = min_eigenvalue.iter().map(|&m| m >= -psd_tol).collect();
    let first_violation = divisible.iter().position(|ok| !ok).map(|i| grid[i]);
    Ok(DivisibilityReport {
        n,
        psd_tol,
        times: grid.to_vec(),
        min_eigenvalue,
        divisible,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::{BathSpec, CouplingKind, DephasingEvaluator, LinearDephasing};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_basis_explicit() {
        let b = gellmann_basis(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ops = b.operators();
        assert_eq!(ops.len(), 3);
        let expected = [
            [c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-h, 0.0)],
            [c(0.0, 0.0), c(h, 0.0), c(h, 0.0), c(0.0, 0.0)],
            // i(|1⟩⟨0| - |0⟩⟨1|)/√2
            [c(0.0, 0.0), c(0.0, -h), c(0.0, h), c(0.0, 0.0)],
        ];
        for (op, e) in ops.iter().zip(expected) {
            assert!((op - DMatrix::from_row_slice(2, 2, &e)).norm() < 1e-15);
        }
    }

    #[test]
    fn gram_matrix_is_identity() {
        for n in 2..=6 {
            let b = gellmann_basis(n).unwrap();
            let ops = b.operators();
            assert_eq!(ops.len(), n * n - 1);
            let g0 = b.identity_component();
            for (p, gp) in ops.iter().enumerate() {
                assert!((gp - gp.adjoint()).norm() < 1e-15);
                assert!(gp.trace().norm() < 1e-14);
                assert!(((&g0 * gp).trace()).norm() < 1e-14);
                for (q, gq) in ops.iter().enumerate() {
                    let expected = if p == q { 1.0 } else { 0.0 };
                    assert!(((gp * gq).trace() - c(expected, 0.0)).norm() < 1e-12, "n {n} p {p} q {q}");
                }
            }
        }
        assert!(gellmann_basis(1).is_err());
    }

    #[test]
    fn qubit_block_is_minus_re_rate() {
        let eta = DephasingEvaluator::closed_form(BathSpec::new(1.0, 0.0, CouplingKind::Constant { c: 1.0 }).unwrap()).unwrap();
        let t = 0.7;
        let d = decoherence_matrix(2, &eta, t).unwrap();
        let block = nontrivial_block(&d, 2, t).unwrap();
        assert!((block.block[(0, 0)] - c(-eta.eta_dot(t).unwrap().re, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn linear_eta_gives_gamma() {
        let eta = LinearDephasing::new(0.4, 2.0);
        let d = decoherence_matrix(2, &eta, 1.3).unwrap();
        assert!((d[(0, 0)] - c(0.4, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn qutrit_block_matches_explicit_form() {
        // a = D(1) = η̇(t), b = D(2) = d/dt η(2t).
        let a = c(-0.3, 0.8);
        let b = c(0.25, -0.6);
        let basis = gellmann_basis(3).unwrap();
        let d = decoherence_matrix_from_rates(&basis, &[c(0.0, 0.0), a, b]).unwrap();
        let block = nontrivial_block(&d, 3, 0.0).unwrap().block;
        let s3 = 3f64.sqrt();
        let upper = (-a.re + 2.0 * a.conj() - b.conj()) / s3;
        let lower = (-a.re + 2.0 * a - b) / s3;
        assert!((block[(0, 0)] - c(-a.re, 0.0)).norm() < 1e-14);
        assert!((block[(0, 1)] - upper).norm() < 1e-14);
        assert!((block[(1, 0)] - lower).norm() < 1e-14);
        assert!((block[(1, 1)] - c(-(a.re + 2.0 * b.re) / 3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_rates_zero_block() {
        let basis = gellmann_basis(4).unwrap();
        let d = decoherence_matrix_from_rates(&basis, &[c(0.0, 0.0); 4]).unwrap();
        let block = nontrivial_block(&d, 4, 0.0).unwrap();
        assert_eq!(block.block.norm(), 0.0);
    }

    #[test]
    fn misordered_matrix_rejected() {
        let mut d = DMatrix::from_element(8, 8, c(0.0, 0.0));
        d[(5, 2)] = c(1e-3, 0.0);
        assert!(matches!(nontrivial_block(&d, 3, 0.0), Err(Error::Structure { row: 5, col: 2, .. })));
    }

    #[test]
    fn constant_coupling_violates_in_first_period() {
        let eta = DephasingEvaluator::closed_form(BathSpec::new(1.0, 0.0, CouplingKind::Constant { c: 1.0 }).unwrap()).unwrap();
        let grid: Vec<f64> = (1..100).map(|i| i as f64 * 2.0 * std::f64::consts::PI / 100.0).collect();
        let report = divisibility_scan(2, &eta, &grid, DEFAULT_PSD_TOL).unwrap();
        let t = report.first_violation.expect("violation");
        assert!(t > 0.0 && t < 2.0 * std::f64::consts::PI);
        for (i, &t) in grid.iter().enumerate() {
            let minus_re = -eta.eta_dot(t).unwrap().re;
            assert_eq!(report.divisible[i], minus_re >= -DEFAULT_PSD_TOL);
        }
    }

    #[test]
    fn markovian_eta_always_divisible() {
        let eta = LinearDephasing::new(0.5, -1.2);
        let grid: Vec<f64> = (0..50).map(|i| i as f64 * 0.2).collect();
        for n in 2..=4 {
            assert!(divisibility_scan(n, &eta, &grid, DEFAULT_PSD_TOL).unwrap().all_divisible());
        }
    }

    #[test]
    fn scan_rejects_bad_grid() {
        let eta = LinearDephasing::new(0.5, 0.0);
        assert!(divisibility_scan(2, &eta, &[1.0, 0.5], DEFAULT_PSD_TOL).is_err());
        assert!(divisibility_scan(2, &eta, &[-1.0], DEFAULT_PSD_TOL).is_err());
    }
}
