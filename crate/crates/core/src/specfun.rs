// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Special functions used by the closed-form dephasing functions and the
//! cat-state Wigner series.
//!
//! Everything here is a pure function of its arguments. Accuracy targets are
//! double precision over the ranges the rest of the crate needs: Γ on (0, 30],
//! ζ for s > 1, Li_s on the closed unit disk and integer-order J_n, I_n for
//! arguments up to 60.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncation control for the series evaluated in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    abs_tol: f64,
    max_terms: usize,
}

impl SeriesTolerance {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) || !abs_tol.is_finite() {
            return Err(Error::invalid("series tolerance", format!("abs_tol = {abs_tol} must be > 0")));
        }
        if max_terms == 0 {
            return Err(Error::invalid("series tolerance", "max_terms must be >= 1"));
        }
        Ok(Self { abs_tol, max_terms })
    }

    pub fn abs_tol(&self) -> f64 {
        self.abs_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-15,
            max_terms: 10_000,
        }
    }
}

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x + 1)).
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    acc
}

/// Γ(x) for any real x that is not a non-positive integer.
pub(crate) fn gamma_real(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection keeps the Lanczos sum on its accurate half-line.
        return PI / ((PI * x).sin() * gamma_real(1.0 - x));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // Split the power so large arguments do not overflow before e^{-t}.
    let half = t.powf((z + 0.5) / 2.0);
    (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z)
}

/// ln Γ(x) for x > 0.
pub(crate) fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// The Gamma function on the positive half-line.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function: "gamma",
            value: x,
            requirement: "x > 0",
        });
    }
    Ok(gamma_real(x))
}

// B_{2j} / (2j)! for j = 1..=10.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
];

/// ζ(s) for real s ≠ 1, including the analytic continuation to s < 1.
pub(crate) fn zeta_real(s: f64) -> f64 {
    if s == 1.0 {
        return f64::INFINITY;
    }
    if s < 0.0 {
        if s.fract() == 0.0 && (s as i64) % 2 == 0 {
            return 0.0;
        }
        let one_minus = 1.0 - s;
        return 2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma_real(one_minus) * zeta_real(one_minus);
    }
    // Euler–Maclaurin with N = 20 and ten correction terms.
    const N: usize = 20;
    let n = N as f64;
    let mut sum = 0.0;
    for k in (1..N).rev() {
        sum += (k as f64).powf(-s);
    }
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);
    let mut rising = s; // s (s+1) ... (s+2j-2)
    let mut npow = n.powf(-s - 1.0);
    for (j, &b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += b * rising * npow;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        npow /= n * n;
    }
    sum
}

/// The Riemann zeta function for s > 1.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain {
            function: "riemann_zeta",
            value: s,
            requirement: "s > 1",
        });
    }
    Ok(zeta_real(s))
}

/// The polylogarithm Li_s(z) = Σ z^k / k^s on the closed unit disk.
///
/// Points with |z| ≤ 1/2 use the defining series. Elsewhere the expansion in
/// μ = ln z is used, which converges for |μ| < 2π and therefore covers the
/// rest of the disk including the unit circle. At z = 1 the value is ζ(s) and
/// requires s > 1.
pub fn polylog(s: f64, z: Complex64, tol: &SeriesTolerance) -> Result<Complex64> {
    let modulus = z.norm();
    if !s.is_finite() || !modulus.is_finite() {
        return Err(Error::Domain {
            function: "polylog",
            value: s,
            requirement: "finite arguments",
        });
    }
    if modulus > 1.0 + 1e-12 {
        return Err(Error::Domain {
            function: "polylog",
            value: modulus,
            requirement: "|z| <= 1",
        });
    }
    if modulus == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if z == Complex64::new(1.0, 0.0) {
        if s > 1.0 {
            return Ok(Complex64::new(zeta_real(s), 0.0));
        }
        return Err(Error::Convergence {
            what: "polylog at z = 1",
            steps: 0,
            estimate: f64::INFINITY,
        });
    }
    if modulus <= 0.5 || s >= 20.0 {
        polylog_direct(s, z, tol)
    } else {
        polylog_log_series(s, z, tol)
    }
}

fn polylog_direct(s: f64, z: Complex64, tol: &SeriesTolerance) -> Result<Complex64> {
    let modulus = z.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zk = Complex64::new(1.0, 0.0);
    for k in 1..=tol.max_terms {
        zk *= z;
        let kf = k as f64;
        sum += zk * kf.powf(-s);
        // Geometric bound on the remaining terms.
        let next = (kf + 1.0).powf(-s) * modulus.powi(k as i32 + 1);
        let ratio = modulus * ((kf + 2.0) / (kf + 1.0)).powf(-s).max(1.0);
        if ratio < 1.0 {
            let tail = next / (1.0 - ratio);
            if tail < tol.abs_tol {
                return Ok(sum);
            }
        }
    }
    Err(Error::Convergence {
        what: "polylog direct series",
        steps: tol.max_terms,
        estimate: modulus.powi(tol.max_terms as i32),
    })
}

fn harmonic(n: usize) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn polylog_log_series(s: f64, z: Complex64, tol: &SeriesTolerance) -> Result<Complex64> {
    let mu = z.ln();
    let neg_mu = -mu;
    let ratio = mu.norm() / (2.0 * PI);
    debug_assert!(ratio < 1.0);

    let nearest = s.round();
    let integer_order = (s - nearest).abs() < 1e-12 && nearest >= 1.0;
    let pole_index = if integer_order { Some(nearest as usize - 1) } else { None };

    let mut sum = match pole_index {
        Some(m) => {
            let coeff = mu.powu(m as u32) / gamma_real(m as f64 + 1.0);
            coeff * (Complex64::new(harmonic(m), 0.0) - neg_mu.ln())
        }
        None => gamma_real(1.0 - s) * neg_mu.powf(s - 1.0),
    };

    let mut mu_pow = Complex64::new(1.0, 0.0);
    let mut factorial = 1.0;
    let mut previous = f64::INFINITY;
    for k in 0..tol.max_terms {
        if k > 0 {
            mu_pow *= mu;
            factorial *= k as f64;
        }
        let order = if integer_order { nearest - k as f64 } else { s - k as f64 };
        let term = if pole_index == Some(k) {
            Complex64::new(0.0, 0.0)
        } else {
            mu_pow * (zeta_real(order) / factorial)
        };
        sum += term;
        let current = term.norm();
        // Past the turning point the terms decay like (|μ|/2π)^k; two
        // consecutive small terms bound the envelope since sin and cos of the
        // reflection phase cannot vanish together.
        if (k as f64) > s + 1.0 && pole_index != Some(k) && pole_index.is_none_or(|m| k != m + 1) {
            let envelope = previous.max(current) * std::f64::consts::SQRT_2;
            if envelope / (1.0 - ratio) < tol.abs_tol {
                return Ok(sum);
            }
        }
        previous = current;
    }
    Err(Error::Convergence {
        what: "polylog logarithmic series",
        steps: tol.max_terms,
        estimate: previous,
    })
}

fn bessel_domain(function: &'static str, n: i32, x: f64) -> Result<()> {
    if n < 0 {
        return Err(Error::Domain {
            function,
            value: n as f64,
            requirement: "order n >= 0",
        });
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            function,
            value: x,
            requirement: "x >= 0",
        });
    }
    Ok(())
}

/// Ascending series Σ (∓1)^k (x/2)^{2k+n} / (k! (k+n)!).
fn bessel_series(n: usize, x: f64, alternating: bool) -> f64 {
    let half = 0.5 * x;
    let mut term = (n as f64 * half.ln() - ln_gamma(n as f64 + 1.0)).exp();
    let mut sum = term;
    let q = half * half;
    let sign = if alternating { -1.0 } else { 1.0 };
    for k in 1..500 {
        term *= sign * q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

// Below this argument the alternating series loses at most a few ulps.
const J_SERIES_LIMIT: f64 = 5.0;

/// Bessel function of the first kind J_n(x).
pub fn bessel_j(n: i32, x: f64) -> Result<f64> {
    bessel_domain("bessel_j", n, x)?;
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    let n = n as usize;
    if x <= J_SERIES_LIMIT {
        return Ok(bessel_series(n, x, true));
    }
    Ok(miller_j(n, x)[n])
}

/// J_0(x), …, J_{n_max}(x) from a single backward recurrence.
pub fn bessel_j_orders(n_max: usize, x: f64) -> Result<Vec<f64>> {
    bessel_domain("bessel_j", 0, x)?;
    if x == 0.0 {
        let mut out = vec![0.0; n_max + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    Ok(miller_j(n_max, x))
}

fn recurrence_start(n_max: usize, x: f64) -> usize {
    let top = (n_max as f64).max(x.ceil());
    let m = top as usize + 30 + (60.0 * top).sqrt() as usize;
    m + (m % 2)
}

/// Miller's algorithm normalized by J_0 + 2 Σ J_{2k} = 1.
fn miller_j(n_max: usize, x: f64) -> Vec<f64> {
    const BIG: f64 = 1e250;
    let start = recurrence_start(n_max, x);
    let mut out = vec![0.0; n_max + 1];
    let mut above = 0.0;
    let mut current = 1e-300;
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        // current holds J_k, above holds J_{k+1}
        if k <= n_max {
            out[k] = current;
        }
        if k % 2 == 0 {
            norm += 2.0 * current;
        }
        let below = 2.0 * k as f64 / x * current - above;
        above = current;
        current = below;
        if current.abs() > BIG {
            above /= BIG;
            current /= BIG;
            norm /= BIG;
            for v in out.iter_mut() {
                *v /= BIG;
            }
        }
    }
    out[0] = current;
    norm += current;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// Modified Bessel function of the first kind I_n(x).
pub fn bessel_i(n: i32, x: f64) -> Result<f64> {
    bessel_domain("bessel_i", n, x)?;
    if x == 0.0 {
        return Ok(if n == 0 { 1.0 } else { 0.0 });
    }
    Ok(bessel_series(n as usize, x, false))
}

/// I_0(x), …, I_{n_max}(x) by backward recurrence normalized to the series I_0.
pub fn bessel_i_orders(n_max: usize, x: f64) -> Result<Vec<f64>> {
    bessel_domain("bessel_i", 0, x)?;
    let mut out = vec![0.0; n_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    const BIG: f64 = 1e250;
    let start = recurrence_start(n_max, x) + (x as usize);
    let mut above = 0.0;
    let mut current = 1e-300;
    for k in (1..=start).rev() {
        if k <= n_max {
            out[k] = current;
        }
        let below = 2.0 * k as f64 / x * current + above;
        above = current;
        current = below;
        if current > BIG {
            above /= BIG;
            current /= BIG;
            for v in out.iter_mut() {
                *v /= BIG;
            }
        }
    }
    let scale = bessel_series(0, x, false) / current;
    out[0] = current;
    for v in out.iter_mut() {
        *v *= scale;
    }
    Ok(out)
}
