// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Bath spectra and the dephasing function η(t).
//!
//! For a thermal bosonic bath coupled through number operators every mode
//! contributes
//!
//! ```text
//! ln[(1 - e^{-ω/T}) / (1 - e^{-ω/T - iλt})]
//! ```
//!
//! to η(t). A [`DiscreteBath`] sums these terms, a continuum [`BathSpec`]
//! integrates them against the density of states ω^s, and two coupling
//! families admit closed forms (polylogarithm for constant coupling, zeta
//! function for linear coupling).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{self, QuadratureSpec};
use crate::specfun::{gamma_real, polylog, zeta_real, SeriesTolerance};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Coupling strength λ_ω as a function of bath frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CouplingKind {
    /// λ_ω = c.
    Constant { c: f64 },
    /// λ_ω = λ / (1 + (ω - ω0)² / σ²).
    Lorentzian {
        #[serde(default = "default_lorentz_peak")]
        lambda: f64,
        #[serde(default = "default_lorentz_center")]
        omega0: f64,
        #[serde(default = "default_lorentz_width")]
        sigma: f64,
    },
    /// λ_ω = f ω.
    Linear { f: f64 },
}

fn default_lorentz_peak() -> f64 {
    1.0
}
fn default_lorentz_center() -> f64 {
    1.0
}
fn default_lorentz_width() -> f64 {
    0.3
}

impl CouplingKind {
    /// Lorentzian with peak 1 at ω0 = 1 and width 0.3.
    pub fn lorentzian_default() -> Self {
        CouplingKind::Lorentzian {
            lambda: default_lorentz_peak(),
            omega0: default_lorentz_center(),
            sigma: default_lorentz_width(),
        }
    }

    pub fn strength(&self, omega: f64) -> f64 {
        match *self {
            CouplingKind::Constant { c } => c,
            CouplingKind::Lorentzian { lambda, omega0, sigma } => {
                let u = (omega - omega0) / sigma;
                lambda / (1.0 + u * u)
            }
            CouplingKind::Linear { f } => f * omega,
        }
    }

    /// Largest |dλ/dω| over ω > 0.
    fn max_slope(&self) -> f64 {
        match *self {
            CouplingKind::Constant { .. } => 0.0,
            CouplingKind::Lorentzian { lambda, sigma, .. } => 3.0 * 3f64.sqrt() * lambda / (8.0 * sigma),
            CouplingKind::Linear { f } => f,
        }
    }

    /// Largest λ_ω on (0, cutoff].
    fn max_strength(&self, cutoff: f64) -> f64 {
        match *self {
            CouplingKind::Constant { c } => c,
            CouplingKind::Lorentzian { lambda, .. } => lambda,
            CouplingKind::Linear { f } => f * cutoff,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = |v: f64| v > 0.0 && v.is_finite();
        let fine = match *self {
            CouplingKind::Constant { c } => ok(c),
            CouplingKind::Lorentzian { lambda, omega0, sigma } => ok(lambda) && ok(omega0) && ok(sigma),
            CouplingKind::Linear { f } => ok(f),
        };
        if fine {
            Ok(())
        } else {
            Err(Error::invalid("coupling", format!("all parameters must be positive: {self:?}")))
        }
    }
}

/// Thermal continuum bath with density of states ω^s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathSpec {
    pub temperature: f64,
    pub spectral_exponent: f64,
    pub coupling: CouplingKind,
}

impl BathSpec {
    pub fn new(temperature: f64, spectral_exponent: f64, coupling: CouplingKind) -> Result<Self> {
        let spec = Self {
            temperature,
            spectral_exponent,
            coupling,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(Error::invalid("bath", format!("temperature {} must be > 0", self.temperature)));
        }
        if !(self.spectral_exponent > -1.0) || !self.spectral_exponent.is_finite() {
            return Err(Error::invalid(
                "bath",
                format!("spectral exponent {} must be > -1", self.spectral_exponent),
            ));
        }
        self.coupling.validate()
    }

    /// Frequency beyond which the neglected part of the integral is below
    /// `tail_tol`. Uses |integrand| ≤ 4 ω^s e^{-ω/T} for e^{-ω/T} ≤ 1/2 and an
    /// upper bound on the incomplete Gamma function.
    pub fn frequency_cutoff(&self, tail_tol: f64) -> f64 {
        let a = 1.0 + self.spectral_exponent;
        let scale = 4.0 * self.temperature.powf(a);
        let mut x = (2.0 * a).max(2.0);
        loop {
            let bound = if a > 1.0 {
                x.powf(a - 1.0) * (-x).exp() / (1.0 - (a - 1.0) / x)
            } else {
                x.powf(a - 1.0) * (-x).exp()
            };
            if scale * bound < tail_tol || x > 1e4 {
                return x * self.temperature;
            }
            x += 0.5;
        }
    }
}

/// One mode of a discrete bath. `weight` counts degenerate copies and may be
/// fractional when the bath discretizes a continuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BathMode {
    pub omega: f64,
    pub lambda: f64,
    #[serde(default = "unit_weight")]
    pub weight: f64,
}

fn unit_weight() -> f64 {
    1.0
}

impl BathMode {
    pub fn new(omega: f64, lambda: f64) -> Self {
        Self {
            omega,
            lambda,
            weight: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscreteBath {
    pub modes: Vec<BathMode>,
}

impl DiscreteBath {
    pub fn new(modes: Vec<BathMode>) -> Result<Self> {
        let bath = Self { modes };
        bath.validate()?;
        Ok(bath)
    }

    /// Midpoint discretization of a continuum bath on (0, cutoff] with
    /// weights ∫ ω^s dω over each cell.
    pub fn discretize(spec: &BathSpec, cutoff: f64, modes: usize) -> Result<Self> {
        spec.validate()?;
        if modes == 0 || !(cutoff > 0.0) {
            return Err(Error::invalid("discretization", "need at least one mode and a positive cutoff"));
        }
        let width = cutoff / modes as f64;
        let a = 1.0 + spec.spectral_exponent;
        let list = (0..modes)
            .map(|k| {
                let lo = k as f64 * width;
                let hi = lo + width;
                let omega = lo + 0.5 * width;
                BathMode {
                    omega,
                    lambda: spec.coupling.strength(omega),
                    weight: (hi.powf(a) - lo.powf(a)) / a,
                }
            })
            .collect();
        Self::new(list)
    }

    pub fn validate(&self) -> Result<()> {
        if self.modes.is_empty() {
            return Err(Error::invalid("discrete bath", "mode list is empty"));
        }
        for (k, m) in self.modes.iter().enumerate() {
            if !(m.omega > 0.0) || !m.omega.is_finite() {
                return Err(Error::invalid("discrete bath", format!("mode {k}: omega {} must be > 0", m.omega)));
            }
            if !m.lambda.is_finite() || !(m.weight >= 0.0) || !m.weight.is_finite() {
                return Err(Error::invalid("discrete bath", format!("mode {k}: non-finite coupling or weight")));
            }
        }
        Ok(())
    }

    fn max_coupling(&self) -> f64 {
        self.modes.iter().map(|m| m.lambda.abs()).fold(0.0, f64::max)
    }
}

/// ln[(1 - e^{-x}) / (1 - e^{-x - iφ})] for x > 0, evaluated without
/// cancellation both for small x (q → 1) and large x (q → 0).
///
/// Both numerator and denominator have positive real part, so the principal
/// logarithm is continuous in φ and its imaginary part lies in (-π/2, π/2).
pub(crate) fn thermal_log_ratio(x: f64, phi: f64) -> Complex64 {
    let q = (-x).exp();
    let (sin_phi, cos_phi) = phi.sin_cos();
    let im_d = q * sin_phi;
    let (ln_num, ln_den_mod, re_d) = if q < 0.5 {
        let re_d = 1.0 - q * cos_phi;
        (
            (-q).ln_1p(),
            0.5 * (q * q - 2.0 * q * cos_phi).ln_1p(),
            re_d,
        )
    } else {
        let one_minus_q = -(-x).exp_m1();
        let half_sin = (0.5 * phi).sin();
        let re_d = one_minus_q + 2.0 * q * half_sin * half_sin;
        (one_minus_q.ln(), re_d.hypot(im_d).ln(), re_d)
    };
    Complex64::new(ln_num - ln_den_mod, -im_d.atan2(re_d))
}

/// ∂/∂t of [`thermal_log_ratio`] with φ = λt: -iλ q e^{-iφ} / (1 - q e^{-iφ}).
fn thermal_log_ratio_rate(x: f64, lambda: f64, t: f64) -> Complex64 {
    let phi = lambda * t;
    let q = (-x).exp();
    let (sin_phi, cos_phi) = phi.sin_cos();
    let re_d = if q < 0.5 {
        1.0 - q * cos_phi
    } else {
        let half_sin = (0.5 * phi).sin();
        -(-x).exp_m1() + 2.0 * q * half_sin * half_sin
    };
    let den = Complex64::new(re_d, q * sin_phi);
    let num = Complex64::new(q * cos_phi, -q * sin_phi);
    -I * lambda * num / den
}

/// η(t) of a discrete thermal bath, summed term by term with principal logs.
pub fn eta_discrete(bath: &DiscreteBath, temperature: f64, t: f64) -> Result<Complex64> {
    check_temperature(temperature)?;
    bath.validate()?;
    Ok(bath
        .modes
        .iter()
        .map(|m| m.weight * thermal_log_ratio(m.omega / temperature, m.lambda * t))
        .sum())
}

fn check_temperature(temperature: f64) -> Result<()> {
    if temperature > 0.0 && temperature.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function: "dephasing function",
            value: temperature,
            requirement: "temperature > 0",
        })
    }
}

/// Sets up ∫_0^Ω ω^s F(ω) dω, substituting ω = u^m with m = 2/(1+s) when
/// s < 0 so the endpoint weight becomes smooth.
fn continuum_integral<F: Fn(f64) -> Complex64>(spec: &BathSpec, t: f64, quad: &QuadratureSpec, f: F) -> Result<Complex64> {
    quad.validate()?;
    spec.validate()?;
    let s = spec.spectral_exponent;
    let cutoff = spec.frequency_cutoff(quad.tail_tol);

    let mut breaks = vec![0.0, cutoff];
    for candidate in [spec.temperature, 4.0 * spec.temperature] {
        breaks.push(candidate);
    }
    if let CouplingKind::Lorentzian { omega0, sigma, .. } = spec.coupling {
        for k in -3..=3 {
            breaks.push(omega0 + k as f64 * sigma);
        }
    }
    // At most ~π of phase accumulates across any initial segment.
    let phase_span = t.abs() * spec.coupling.max_slope() * cutoff;
    let pieces = ((phase_span / PI).ceil() as usize).clamp(1, 2000);
    for k in 1..pieces {
        breaks.push(cutoff * k as f64 / pieces as f64);
    }
    breaks.retain(|&w| (0.0..=cutoff).contains(&w));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * cutoff);

    let out = if s < 0.0 {
        let m = 2.0 / (1.0 + s);
        let u_breaks: Vec<f64> = breaks.iter().map(|w| w.powf(1.0 / m)).collect();
        // dω = m u^{m-1} du and ω^s = u^{ms}; the product is m u.
        quad::integrate(|u| f(u.powf(m)) * (m * u), &u_breaks, quad)?
    } else {
        quad::integrate(|w| f(w) * w.powf(s), &breaks, quad)?
    };
    Ok(out.value)
}

/// η(t) of a continuum bath by adaptive quadrature.
pub fn eta_quadrature(spec: &BathSpec, t: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    if t == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let temperature = spec.temperature;
    let coupling = spec.coupling;
    continuum_integral(spec, t, quad, |w| {
        thermal_log_ratio(w / temperature, coupling.strength(w) * t)
    })
}

/// η̇(t) of a continuum bath, integrating the time derivative of the integrand.
pub fn eta_rate_quadrature(spec: &BathSpec, t: f64, quad: &QuadratureSpec) -> Result<Complex64> {
    let temperature = spec.temperature;
    let coupling = spec.coupling;
    continuum_integral(spec, t, quad, |w| {
        thermal_log_ratio_rate(w / temperature, coupling.strength(w), t)
    })
}

fn closed_form_args(s: f64, temperature: f64, strength: f64) -> Result<()> {
    check_temperature(temperature)?;
    if !(s > -1.0) || !s.is_finite() {
        return Err(Error::Domain {
            function: "closed-form dephasing",
            value: s,
            requirement: "s > -1",
        });
    }
    if !(strength > 0.0) || !strength.is_finite() {
        return Err(Error::Domain {
            function: "closed-form dephasing",
            value: strength,
            requirement: "coupling > 0",
        });
    }
    Ok(())
}

/// Closed form for constant coupling λ_ω = c:
/// η(t) = -Γ(1+s) T^{1+s} (Li_{2+s}(1) - Li_{2+s}(e^{-ict})).
pub fn eta_constant_closed(s: f64, temperature: f64, c: f64, t: f64) -> Result<Complex64> {
    closed_form_args(s, temperature, c)?;
    let tol = SeriesTolerance::default();
    let z = Complex64::from_polar(1.0, -c * t);
    let scale = gamma_real(1.0 + s) * temperature.powf(1.0 + s);
    let li = polylog(2.0 + s, z, &tol)?;
    Ok(-scale * (zeta_real(2.0 + s) - li))
}

/// Analytic η̇(t) for constant coupling: -ic Γ(1+s) T^{1+s} Li_{1+s}(e^{-ict}).
pub fn eta_constant_closed_rate(s: f64, temperature: f64, c: f64, t: f64) -> Result<Complex64> {
    closed_form_args(s, temperature, c)?;
    let tol = SeriesTolerance::default();
    let z = Complex64::from_polar(1.0, -c * t);
    let scale = gamma_real(1.0 + s) * temperature.powf(1.0 + s);
    Ok(-I * c * scale * polylog(1.0 + s, z, &tol)?)
}

/// Closed form for linear coupling λ_ω = fω:
/// η(t) = -Γ(1+s) ζ(2+s) T^{1+s} (1 - (1 + ifTt)^{-(1+s)}).
pub fn eta_linear_closed(s: f64, temperature: f64, f: f64, t: f64) -> Result<Complex64> {
    closed_form_args(s, temperature, f)?;
    let scale = gamma_real(1.0 + s) * zeta_real(2.0 + s) * temperature.powf(1.0 + s);
    let base = Complex64::new(1.0, f * temperature * t);
    Ok(-scale * (1.0 - base.powf(-(1.0 + s))))
}

/// Analytic η̇(t) for linear coupling.
pub fn eta_linear_closed_rate(s: f64, temperature: f64, f: f64, t: f64) -> Result<Complex64> {
    closed_form_args(s, temperature, f)?;
    let scale = gamma_real(1.0 + s) * zeta_real(2.0 + s) * temperature.powf(1.0 + s);
    let base = Complex64::new(1.0, f * temperature * t);
    Ok(-scale * (1.0 + s) * I * f * temperature * base.powf(-(2.0 + s)))
}

/// Spin-boson dephasing function
/// η̃(t) = -4 ∫ ω^s |λ̃_ω|² coth(ω/2T) (1 - cos ωt)/ω² dω.
///
/// The upper limit is extended in doubling blocks until a block contributes
/// less than `quad.tail_tol`. For s ≤ 0 and λ̃_0 ≠ 0 the thermal integral
/// diverges at ω → 0 and a domain error is returned.
pub fn eta_spin_boson<C: Fn(f64) -> f64>(
    s: f64,
    temperature: f64,
    coupling: C,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64> {
    check_temperature(temperature)?;
    quad.validate()?;
    if !(s > -1.0) {
        return Err(Error::Domain {
            function: "eta_spin_boson",
            value: s,
            requirement: "s > -1",
        });
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    if s <= 0.0 && coupling(0.0) != 0.0 {
        return Err(Error::Domain {
            function: "eta_spin_boson",
            value: s,
            requirement: "s > 0 when the coupling is nonzero at zero frequency",
        });
    }
    let integrand = |w: f64| -> f64 {
        let lam = coupling(w);
        if w == 0.0 {
            // coth(ω/2T)(1 - cos ωt)/ω² ~ T t² / ω
            return if s > 1.0 {
                0.0
            } else if s == 1.0 {
                temperature * t * t * lam * lam
            } else {
                f64::INFINITY
            };
        }
        let half = (0.5 * w * t).sin();
        let coth = 1.0 / (w / (2.0 * temperature)).tanh();
        w.powf(s) * lam * lam * coth * 2.0 * half * half / (w * w)
    };
    let mut block = 2.0 * temperature.max(1.0);
    let mut lo = 0.0;
    let mut total = 0.0;
    let mut quiet = 0;
    for _ in 0..64 {
        let hi = lo + block;
        let pieces = ((t.abs() * block / PI).ceil() as usize).clamp(1, 4000);
        let breaks: Vec<f64> = (0..=pieces).map(|k| lo + block * k as f64 / pieces as f64).collect();
        let (part, _) = quad::integrate_real(integrand, &breaks, quad)?;
        total += part;
        quiet = if part.abs() < quad.tail_tol { quiet + 1 } else { 0 };
        if quiet >= 2 {
            return Ok(-4.0 * total);
        }
        lo = hi;
        block *= 2.0;
    }
    Err(Error::Convergence {
        what: "spin-boson tail",
        steps: 64,
        estimate: total.abs(),
    })
}

/// Something that produces a dephasing function η(t).
pub trait Dephasing: Send + Sync {
    fn eta(&self, t: f64) -> Result<Complex64>;

    /// Exact η̇(t) when the evaluator has one.
    fn analytic_rate(&self, _t: f64) -> Option<Result<Complex64>> {
        None
    }

    /// Finite-difference step used when no analytic rate exists.
    fn default_step(&self) -> f64 {
        1e-5
    }

    fn eta_dot(&self, t: f64) -> Result<Complex64> {
        eta_derivative(self, t, self.default_step())
    }
}

/// η̇(t): the evaluator's analytic derivative when available, otherwise the
/// central difference (η(t+h) - η(t-h)) / 2h.
pub fn eta_derivative<D: Dephasing + ?Sized>(eval: &D, t: f64, h: f64) -> Result<Complex64> {
    if let Some(rate) = eval.analytic_rate(t) {
        return rate;
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::Domain {
            function: "eta_derivative",
            value: h,
            requirement: "step h > 0",
        });
    }
    Ok((eval.eta(t + h)? - eval.eta(t - h)?) / (2.0 * h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    DiscreteSum,
    Quadrature,
    ConstantClosedForm,
    LinearClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
enum Source {
    Continuum(BathSpec),
    Discrete { bath: DiscreteBath, temperature: f64 },
}

/// A validated (strategy, bath) pair evaluating η(t) and η̇(t).
#[derive(Debug, Clone, PartialEq)]
pub struct DephasingEvaluator {
    strategy: Strategy,
    source: Source,
    quad: QuadratureSpec,
    step: f64,
}

impl DephasingEvaluator {
    pub fn discrete(bath: DiscreteBath, temperature: f64) -> Result<Self> {
        bath.validate()?;
        check_temperature(temperature)?;
        let step = 1e-5 * (2.0 * PI / bath.max_coupling()).max(1.0);
        Ok(Self {
            strategy: Strategy::DiscreteSum,
            source: Source::Discrete { bath, temperature },
            quad: QuadratureSpec::default(),
            step,
        })
    }

    pub fn quadrature(spec: BathSpec, quad: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        quad.validate()?;
        let lambda_max = spec.coupling.max_strength(spec.frequency_cutoff(quad.tail_tol));
        Ok(Self {
            strategy: Strategy::Quadrature,
            source: Source::Continuum(spec),
            quad,
            step: 1e-5 * (2.0 * PI / lambda_max).max(1.0),
        })
    }

    /// Closed form matching the coupling family; Lorentzian coupling has none.
    pub fn closed_form(spec: BathSpec) -> Result<Self> {
        spec.validate()?;
        let (strategy, lambda_max) = match spec.coupling {
            CouplingKind::Constant { c } => (Strategy::ConstantClosedForm, c),
            CouplingKind::Linear { f } => (Strategy::LinearClosedForm, f * spec.frequency_cutoff(1e-13)),
            CouplingKind::Lorentzian { .. } => {
                return Err(Error::invalid("evaluator", "Lorentzian coupling has no closed form"));
            }
        };
        Ok(Self {
            strategy,
            source: Source::Continuum(spec),
            quad: QuadratureSpec::default(),
            step: 1e-5 * (2.0 * PI / lambda_max).max(1.0),
        })
    }

    /// Closed form when one exists, quadrature otherwise.
    pub fn auto(spec: BathSpec, quad: QuadratureSpec) -> Result<Self> {
        match spec.coupling {
            CouplingKind::Lorentzian { .. } => Self::quadrature(spec, quad),
            _ => Self::closed_form(spec),
        }
    }

    pub fn with_step(mut self, h: f64) -> Result<Self> {
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::invalid("evaluator", format!("finite-difference step {h} must be > 0")));
        }
        self.step = h;
        Ok(self)
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn bath_spec(&self) -> Option<&BathSpec> {
        match &self.source {
            Source::Continuum(spec) => Some(spec),
            Source::Discrete { .. } => None,
        }
    }
}

impl Dephasing for DephasingEvaluator {
    fn eta(&self, t: f64) -> Result<Complex64> {
        match (&self.source, self.strategy) {
            (Source::Discrete { bath, temperature }, _) => eta_discrete(bath, *temperature, t),
            (Source::Continuum(spec), Strategy::Quadrature) => eta_quadrature(spec, t, &self.quad),
            (Source::Continuum(spec), Strategy::ConstantClosedForm) => match spec.coupling {
                CouplingKind::Constant { c } => eta_constant_closed(spec.spectral_exponent, spec.temperature, c, t),
                _ => unreachable!("constructor checks the coupling family"),
            },
            (Source::Continuum(spec), Strategy::LinearClosedForm) => match spec.coupling {
                CouplingKind::Linear { f } => eta_linear_closed(spec.spectral_exponent, spec.temperature, f, t),
                _ => unreachable!("constructor checks the coupling family"),
            },
            (Source::Continuum(_), Strategy::DiscreteSum) => unreachable!("discrete strategy needs a discrete bath"),
        }
    }

    fn analytic_rate(&self, t: f64) -> Option<Result<Complex64>> {
        let Source::Continuum(spec) = &self.source else {
            return None;
        };
        let s = spec.spectral_exponent;
        let temp = spec.temperature;
        match (self.strategy, spec.coupling) {
            (Strategy::ConstantClosedForm, CouplingKind::Constant { c }) => Some(eta_constant_closed_rate(s, temp, c, t)),
            (Strategy::LinearClosedForm, CouplingKind::Linear { f }) => Some(eta_linear_closed_rate(s, temp, f, t)),
            (Strategy::Quadrature, _) => Some(eta_rate_quadrature(spec, t, &self.quad)),
            _ => None,
        }
    }

    fn default_step(&self) -> f64 {
        self.step
    }
}

/// Synthetic η(t) = κt for t ≥ 0, extended by η(-t) = conj η(t).
///
/// With Re κ ≤ 0 this is the dephasing function of a Markovian semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearDephasing {
    pub rate: Complex64,
}

impl LinearDephasing {
    /// η(t) = (-γ + iω) t.
    pub fn new(gamma: f64, frequency: f64) -> Self {
        Self {
            rate: Complex64::new(-gamma, frequency),
        }
    }
}

impl Dephasing for LinearDephasing {
    fn eta(&self, t: f64) -> Result<Complex64> {
        let v = self.rate * t.abs();
        Ok(if t >= 0.0 { v } else { v.conj() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn czero() -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    /// Truncated Fock-space trace Tr_B[e^{-iλ n t} ρ_thermal] per mode,
    /// independent of the closed logarithm.
    fn fock_trace_eta(bath: &DiscreteBath, temperature: f64, t: f64, cutoff: usize) -> Complex64 {
        bath.modes
            .iter()
            .map(|m| {
                let q = (-m.omega / temperature).exp();
                let mut acc = czero();
                let mut weight = 1.0 - q;
                for n in 0..cutoff {
                    acc += Complex64::from_polar(weight, -m.lambda * n as f64 * t);
                    weight *= q;
                }
                m.weight * acc.ln()
            })
            .sum()
    }

    #[test]
    fn discrete_vanishes_at_zero() {
        let bath = DiscreteBath::new(vec![BathMode::new(1.0, 1.0), BathMode::new(0.3, -2.0)]).unwrap();
        assert_eq!(eta_discrete(&bath, 0.7, 0.0).unwrap(), czero());
    }

    #[test]
    fn discrete_matches_fock_trace_single_mode() {
        let bath = DiscreteBath::new(vec![BathMode::new(1.0, 1.0)]).unwrap();
        let value = eta_discrete(&bath, 1.0, PI).unwrap();
        let oracle = fock_trace_eta(&bath, 1.0, PI, 200);
        assert!((value - oracle).norm() < 1e-12);
        // At λt = π: ln[(1-q)/(1+q)] with q = e^{-1}.
        let q = (-1.0f64).exp();
        assert!((value.re - ((1.0 - q) / (1.0 + q)).ln()).abs() < 1e-14);
        assert!(value.im.abs() < 1e-14);
    }

    #[test]
    fn discrete_single_mode_periodic() {
        let bath = DiscreteBath::new(vec![BathMode::new(1.0, 1.0)]).unwrap();
        for t in [0.1, 1.7, 4.0, 9.3] {
            let a = eta_discrete(&bath, 1.0, t).unwrap();
            let b = eta_discrete(&bath, 1.0, t + 2.0 * PI).unwrap();
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn single_term_imaginary_part_bounded() {
        for x in [1e-6, 0.01, 0.5, 0.69, 0.7, 3.0, 40.0] {
            for k in 0..200 {
                let phi = -50.0 + 0.5 * k as f64;
                let v = thermal_log_ratio(x, phi);
                assert!(v.im > -PI / 2.0 && v.im < PI / 2.0);
                assert!(v.re <= 1e-15);
            }
        }
    }

    #[test]
    fn log_ratio_branches_agree_at_switch() {
        let x = std::f64::consts::LN_2;
        for phi in [0.0, 0.3, 2.0, -1.1] {
            let direct = ((1.0 - (-x).exp()) / (1.0 - Complex64::from_polar((-x).exp(), -phi))).ln();
            assert!((thermal_log_ratio(x * (1.0 - 1e-12), phi) - direct).norm() < 1e-11);
            assert!((thermal_log_ratio(x * (1.0 + 1e-12), phi) - direct).norm() < 1e-11);
        }
    }

    #[test]
    fn constant_closed_known_values() {
        assert_eq!(eta_constant_closed(0.0, 1.0, 1.0, 0.0).unwrap(), czero());
        let v = eta_constant_closed(0.0, 1.0, 1.0, PI).unwrap();
        assert!((v.re + PI * PI / 4.0).abs() < 1e-13, "{v}");
        assert!(v.im.abs() < 1e-13);
        for t in [0.2, 1.0, 3.3] {
            let a = eta_constant_closed(1.0, 0.6, 2.0, t).unwrap();
            let b = eta_constant_closed(1.0, 0.6, 2.0, t + PI).unwrap();
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn linear_closed_known_values() {
        assert_eq!(eta_linear_closed(1.0, 1.0, 1.0, 0.0).unwrap(), czero());
        let v = eta_linear_closed(1.0, 1.0, 1.0, 1.0).unwrap();
        let z3 = 1.202_056_903_159_594_3;
        // (1+i)^2 = 2i, so 1 - 1/(2i) = 1 + i/2.
        let expected = -z3 * Complex64::new(1.0, 0.5);
        assert!((v - expected).norm() < 1e-12, "{v}");
        let far = eta_linear_closed(0.0, 1.0, 1.0, 1e7).unwrap();
        assert!((far.re + PI * PI / 6.0).abs() < 1e-6);
        assert!(far.im.abs() < 1e-6);
    }

    #[test]
    fn closed_forms_reject_bad_parameters() {
        assert!(eta_constant_closed(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(eta_constant_closed(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(eta_linear_closed(0.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn quadrature_zero_time() {
        let spec = BathSpec::new(1.0, 0.0, CouplingKind::lorentzian_default()).unwrap();
        assert_eq!(eta_quadrature(&spec, 0.0, &QuadratureSpec::default()).unwrap(), czero());
    }

    #[test]
    fn quadrature_matches_constant_closed_form() {
        let spec = BathSpec::new(1.0, 0.0, CouplingKind::Constant { c: 1.0 }).unwrap();
        let quad = eta_quadrature(&spec, 1.0, &QuadratureSpec::default()).unwrap();
        let closed = eta_constant_closed(0.0, 1.0, 1.0, 1.0).unwrap();
        assert!((quad - closed).norm() < 1e-8, "{quad} vs {closed}");
    }

    #[test]
    fn quadrature_negative_exponent_uses_substitution() {
        let spec = BathSpec::new(0.5, -0.5, CouplingKind::Constant { c: 1.3 }).unwrap();
        for t in [0.4, 2.0, 7.0] {
            let quad = eta_quadrature(&spec, t, &QuadratureSpec::default()).unwrap();
            let closed = eta_constant_closed(-0.5, 0.5, 1.3, t).unwrap();
            assert!((quad - closed).norm() < 1e-8, "t {t}: {quad} vs {closed}");
        }
    }

    #[test]
    fn quadrature_rate_matches_closed_rate() {
        let spec = BathSpec::new(0.8, 1.0, CouplingKind::Linear { f: 1.0 }).unwrap();
        for t in [0.3, 2.0, 6.0] {
            let quad = eta_rate_quadrature(&spec, t, &QuadratureSpec::default()).unwrap();
            let closed = eta_linear_closed_rate(1.0, 0.8, 1.0, t).unwrap();
            assert!((quad - closed).norm() < 1e-8);
        }
    }

    #[test]
    fn spin_boson_basic_properties() {
        let quad = QuadratureSpec::default();
        let coupling = |w: f64| (-w / 2.0).exp();
        assert_eq!(eta_spin_boson(1.0, 1.0, coupling, 0.0, &quad).unwrap(), 0.0);
        for t in [0.5, 1.0, 4.0] {
            assert!(eta_spin_boson(1.0, 1.0, coupling, t, &quad).unwrap() <= 0.0);
        }
        assert!(eta_spin_boson(0.0, 1.0, coupling, 1.0, &quad).is_err());
    }

    #[test]
    fn spin_boson_against_simpson_oracle() {
        // Composite Simpson on a fixed fine grid; the integrand is smooth for
        // s = 1 and decays like e^{-ω}.
        let (s, temperature, t) = (1.0, 1.0, 1.0);
        let integrand = |w: f64| -> f64 {
            if w == 0.0 {
                return temperature * t * t;
            }
            let lam2 = (-w).exp();
            let coth = 1.0 / (w / (2.0 * temperature)).tanh();
            w.powf(s) * lam2 * coth * (1.0 - (w * t).cos()) / (w * w)
        };
        let (a, b, n) = (0.0, 60.0, 200_000usize);
        let h = (b - a) / n as f64;
        let mut sum = integrand(a) + integrand(b);
        for k in 1..n {
            let w = a + k as f64 * h;
            sum += integrand(w) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        let oracle = -4.0 * sum * h / 3.0;
        let value = eta_spin_boson(s, temperature, |w| (-w / 2.0).exp(), t, &QuadratureSpec::default()).unwrap();
        assert!((value - oracle).abs() < 1e-6, "{value} vs {oracle}");
    }

    #[test]
    fn derivative_of_linear_function_is_exact() {
        let eta = LinearDephasing {
            rate: Complex64::new(-0.4, 1.5),
        };
        for t in [0.5, 3.0, 10.0] {
            let d = eta_derivative(&eta, t, 1e-3).unwrap();
            assert!((d - eta.rate).norm() < 1e-10);
        }
        assert!(eta_derivative(&eta, 1.0, 0.0).is_err());
    }

    #[test]
    fn linear_closed_rate_against_finite_difference() {
        let analytic = eta_linear_closed_rate(0.0, 1.0, 1.0, 1.0).unwrap();
        let z2 = PI * PI / 6.0;
        let formula = -z2 * I / (Complex64::new(1.0, 1.0) * Complex64::new(1.0, 1.0));
        assert!((analytic - formula).norm() < 1e-13);
        let h = 1e-4;
        let fd = (eta_linear_closed(0.0, 1.0, 1.0, 1.0 + h).unwrap() - eta_linear_closed(0.0, 1.0, 1.0, 1.0 - h).unwrap())
            / (2.0 * h);
        assert!((fd - analytic).norm() < 1e-8);
    }

    #[test]
    fn constant_closed_rate_against_finite_difference() {
        for (s, t) in [(0.0, 1.0), (1.0, 2.5), (2.0, 4.0), (0.5, 5.5)] {
            let analytic = eta_constant_closed_rate(s, 0.7, 1.2, t).unwrap();
            let h = 1e-4;
            let fd = (eta_constant_closed(s, 0.7, 1.2, t + h).unwrap() - eta_constant_closed(s, 0.7, 1.2, t - h).unwrap())
                / (2.0 * h);
            assert!((fd - analytic).norm() < 1e-7, "s {s} t {t}");
        }
    }

    #[test]
    fn discrete_rate_at_zero_is_mean_occupation() {
        let bath = DiscreteBath::new(vec![
            BathMode::new(1.0, 1.0),
            BathMode::new(0.4, 0.7),
            BathMode::new(2.5, -1.3),
        ])
        .unwrap();
        let temperature = 0.9;
        // Term-by-term derivative at t = 0: -iλ q/(1-q) = -iλ n̄.
        let oracle: Complex64 = bath
            .modes
            .iter()
            .map(|m| -I * m.lambda / ((m.omega / temperature).exp() - 1.0))
            .sum();
        let eval = DephasingEvaluator::discrete(bath, temperature).unwrap();
        let d = eval.eta_dot(0.0).unwrap();
        assert!((d - oracle).norm() < 1e-8, "{d} vs {oracle} step {}", eval.step());
        assert!(d.re.abs() < 1e-12);
    }

    #[test]
    fn evaluator_rejects_mismatched_closed_form() {
        let spec = BathSpec::new(1.0, 0.0, CouplingKind::lorentzian_default()).unwrap();
        assert!(DephasingEvaluator::closed_form(spec).is_err());
        assert_eq!(
            DephasingEvaluator::auto(spec, QuadratureSpec::default()).unwrap().strategy(),
            Strategy::Quadrature
        );
    }

    #[test]
    fn bath_validation() {
        assert!(BathSpec::new(-1.0, 0.0, CouplingKind::Constant { c: 1.0 }).is_err());
        assert!(BathSpec::new(1.0, -1.0, CouplingKind::Constant { c: 1.0 }).is_err());
        assert!(BathSpec::new(1.0, 0.0, CouplingKind::Linear { f: 0.0 }).is_err());
        assert!(DiscreteBath::new(vec![]).is_err());
        assert!(DiscreteBath::new(vec![BathMode::new(0.0, 1.0)]).is_err());
    }

    #[test]
    fn cutoff_bounds_the_tail() {
        let spec = BathSpec::new(0.2, 2.0, CouplingKind::Constant { c: 1.0 }).unwrap();
        let cutoff = spec.frequency_cutoff(1e-13);
        // 4 ∫_Ω^∞ ω^2 e^{-ω/T} dω = 4 T e^{-Ω/T}(Ω² + 2ΩT + 2T²).
        let t = spec.temperature;
        let tail = 4.0 * t * (-cutoff / t).exp() * (cutoff * cutoff + 2.0 * cutoff * t + 2.0 * t * t);
        assert!(tail < 1e-13);
    }
}
