// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Numerical integration: globally adaptive Gauss–Kronrod (10/21 points) for
//! complex integrands on finite intervals, and Gauss–Legendre rules.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances for the continuum integrals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bound on the integral discarded beyond the frequency cutoff.
    pub tail_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-11,
            rel_tol: 1e-11,
            tail_tol: 1e-13,
            max_subdivisions: 5000,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0 && v.is_finite();
        if !positive(self.abs_tol) || !positive(self.rel_tol) || !positive(self.tail_tol) {
            return Err(Error::invalid("quadrature spec", "tolerances must be positive and finite"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::invalid("quadrature spec", "max_subdivisions must be >= 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOutcome {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_060,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_115,
    0.562_757_134_668_604_683_339_000_099_273,
    0.433_395_394_129_247_190_799_265_943_166,
    0.294_392_862_701_460_198_131_126_603_104,
    0.148_874_338_981_631_210_884_826_001_130,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_245,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_326,
    0.123_491_976_262_065_851_077_208_031_716,
    0.134_709_217_311_473_325_928_054_001_772,
    0.142_775_938_577_060_080_797_094_273_139,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_390,
];

// Gauss weights for the odd-indexed Kronrod abscissae.
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_658,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        values[j] = (lo, hi);
        kronrod += (lo + hi) * WGK[j];
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut resasc = WGK[10] * (f_center - mean).norm();
    let mut resabs = WGK[10] * f_center.norm();
    for j in 0..10 {
        let (lo, hi) = values[j];
        resasc += WGK[j] * ((lo - mean).norm() + (hi - mean).norm());
        resabs += WGK[j] * (lo.norm() + hi.norm());
    }
    let value = kronrod * half;
    resasc *= half.abs();
    resabs *= half.abs();
    let mut error = ((kronrod - gauss) * half).norm();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    Segment { a, b, value, error }
}

/// Integrates `f` over the interval spanned by `breakpoints` (at least two
/// ascending points), bisecting the segment with the largest error estimate
/// until the total estimate meets the tolerance.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<QuadOutcome> {
    if breakpoints.len() < 2 || breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid("integration interval", "breakpoints must be strictly ascending"));
    }
    let mut heap = BinaryHeap::new();
    for w in breakpoints.windows(2) {
        heap.push(kronrod21(&f, w[0], w[1]));
    }
    let mut count = heap.len();
    loop {
        let total: Complex64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        let target = spec.abs_tol.max(spec.rel_tol * total.norm());
        if error <= target {
            return Ok(QuadOutcome {
                value: total,
                error,
                intervals: heap.len(),
            });
        }
        if !error.is_finite() || count >= spec.max_subdivisions {
            return Err(Error::Convergence {
                what: "adaptive quadrature",
                steps: count,
                estimate: error,
            });
        }
        let worst = heap.pop().expect("non-empty segment heap");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::Convergence {
                what: "adaptive quadrature (interval underflow)",
                steps: count,
                estimate: error,
            });
        }
        heap.push(kronrod21(&f, worst.a, mid));
        heap.push(kronrod21(&f, mid, worst.b));
        count += 1;
    }
}

/// Real-valued convenience wrapper around [`integrate`].
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let out = integrate(|x| Complex64::new(f(x), 0.0), breakpoints, spec)?;
    Ok((out.value.re, out.error))
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut derivative = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn_minus = if n == 1 { 1.0 } else { p0 };
            derivative = n as f64 * (x * pn - pn_minus) / (x * x - 1.0);
            let step = pn / derivative;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * derivative * derivative);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_exact_on_polynomials() {
        for degree in 0..=31 {
            let seg = kronrod21(&|x: f64| Complex64::new(x.powi(degree), 0.0), 0.0, 1.0);
            let exact = 1.0 / (degree as f64 + 1.0);
            assert!((seg.value.re - exact).abs() < 1e-14, "degree {degree}");
        }
    }

    #[test]
    fn gauss_part_exact_to_degree_19() {
        // If the embedded Gauss rule is right, the raw |K - G| vanishes.
        let f = |x: f64| Complex64::new(x.powi(19) - 3.0 * x.powi(4), 0.0);
        let center = 0.5;
        let half = 0.5;
        let mut gauss = Complex64::new(0.0, 0.0);
        for j in (1..10).step_by(2) {
            let dx = half * XGK[j];
            gauss += (f(center - dx) + f(center + dx)) * WG[j / 2];
        }
        assert!((gauss.re * half - (0.05 - 0.6)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_log_endpoint() {
        let spec = QuadratureSpec::default();
        let (value, _) = integrate_real(|x| x.ln(), &[0.0, 1.0], &spec).unwrap();
        assert!((value + 1.0).abs() < 1e-10);
    }

    #[test]
    fn adaptive_oscillatory_complex() {
        let spec = QuadratureSpec::default();
        let omega = 40.0;
        let out = integrate(|x| Complex64::from_polar(1.0, omega * x), &[0.0, 3.0], &spec).unwrap();
        let exact = (Complex64::from_polar(1.0, 3.0 * omega) - 1.0) / Complex64::new(0.0, omega);
        assert!((out.value - exact).norm() < 1e-10);
    }

    #[test]
    fn subdivision_budget_reported() {
        let spec = QuadratureSpec {
            max_subdivisions: 3,
            ..QuadratureSpec::default()
        };
        let err = integrate_real(|x| 1.0 / x.sqrt(), &[0.0, 1.0], &spec).unwrap_err();
        assert!(matches!(err, Error::Convergence { estimate, .. } if estimate > 0.0));
    }

    #[test]
    fn bad_breakpoints_rejected() {
        let spec = QuadratureSpec::default();
        assert!(integrate_real(|x| x, &[1.0, 0.0], &spec).is_err());
        assert!(integrate_real(|x| x, &[1.0], &spec).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for degree in 0..(2 * n) {
                let approx: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(degree as i32)).sum();
                let exact = if degree % 2 == 1 { 0.0 } else { 2.0 / (degree as f64 + 1.0) };
                assert!((approx - exact).abs() < 1e-12, "n {n} degree {degree}");
            }
        }
    }
}
