// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::config::{BathConfig, Command, Evaluation, RunConfig};
use super::output::{Metadata, OutputTable};
use crate::bath::{BathSpec, CouplingKind, Dephasing, DephasingEvaluator, DiscreteBath, LinearDephasing};
use crate::dynamics::{self, correlation_sample, evolve};
use crate::error::Result;
use crate::wigner::{self, quantumness_scan, CatState, WignerGrid};
use crate::witnesses::divisibility_scan;

/// Builds the η(t) evaluator described by a bath block.
pub fn build_evaluator(bath: &BathConfig, config: &RunConfig) -> Result<Box<dyn Dephasing>> {
    Ok(match bath {
        BathConfig::Continuum {
            temperature,
            spectral_exponent,
            coupling,
            evaluation,
        } => {
            let spec = BathSpec::new(*temperature, *spectral_exponent, *coupling)?;
            Box::new(match evaluation {
                Evaluation::Auto => DephasingEvaluator::auto(spec, config.quadrature)?,
                Evaluation::ClosedForm => DephasingEvaluator::closed_form(spec)?,
                Evaluation::Quadrature => DephasingEvaluator::quadrature(spec, config.quadrature)?,
            })
        }
        BathConfig::Discrete { temperature, modes } => {
            Box::new(DephasingEvaluator::discrete(DiscreteBath::new(modes.clone())?, *temperature)?)
        }
        BathConfig::SyntheticLinear { gamma, frequency } => Box::new(LinearDephasing::new(*gamma, *frequency)),
    })
}

fn tolerances(config: &RunConfig) -> BTreeMap<String, f64> {
    let q = &config.quadrature;
    let mut map = BTreeMap::from([
        ("quadrature.abs_tol".to_string(), q.abs_tol),
        ("quadrature.rel_tol".to_string(), q.rel_tol),
        ("quadrature.tail_tol".to_string(), q.tail_tol),
        ("state.hermiticity".to_string(), dynamics::HERMITICITY_TOL),
        ("state.trace".to_string(), dynamics::TRACE_TOL),
        ("state.psd".to_string(), dynamics::PSD_TOL),
    ]);
    if let Some(w) = &config.witness {
        map.insert("witness.psd_tol".into(), w.psd_tol);
    }
    if matches!(config.command, Command::Wigner | Command::Figure2) {
        map.insert("wigner.truncation".into(), wigner::TRUNCATION_TOL);
        map.insert("wigner.tail_mass".into(), wigner::TAIL_MASS_TOL);
        map.insert("wigner.negative_clamp".into(), wigner::NEGATIVE_CLAMP);
    }
    map
}

fn flag(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Executes a validated configuration.
pub fn run(config: &RunConfig) -> Result<OutputTable> {
    config.validate()?;
    let metadata = Metadata {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        tolerances: tolerances(config),
    };
    let evaluator = match &config.bath {
        Some(bath) if !matches!(config.command, Command::Figure1 | Command::Figure2) => {
            Some(build_evaluator(bath, config)?)
        }
        _ => None,
    };
    let eta = || evaluator.as_deref().expect("validated: bath present");
    let times = || config.time_grid().map(|g| g.points());
    match config.command {
        Command::Eta => {
            let eta = eta();
            let rows = times()?
                .par_iter()
                .map(|&t| {
                    let v = eta.eta(t)?;
                    Ok(vec![t, v.re, v.im])
                })
                .collect::<Result<Vec<_>>>()?;
            OutputTable::new(metadata, &["t", "re_eta", "im_eta"], rows)
        }
        Command::Evolve => {
            let sys = config.system.expect("validated");
            let block = config.evolve.as_ref().expect("validated");
            let rho0 = block.initial_state.to_density_matrix(sys.dim)?;
            let eta = eta();
            let mut columns = vec!["t".to_string()];
            for m in 0..sys.dim {
                for n in 0..sys.dim {
                    columns.push(format!("re_rho_{m}_{n}"));
                    columns.push(format!("im_rho_{m}_{n}"));
                }
            }
            let rows = times()?
                .par_iter()
                .map(|&t| {
                    let rho = evolve(&rho0, &sys, eta, t)?;
                    let mut row = vec![t];
                    for m in 0..sys.dim {
                        for n in 0..sys.dim {
                            let v = rho.entry(m, n);
                            row.extend([v.re, v.im]);
                        }
                    }
                    Ok(row)
                })
                .collect::<Result<Vec<_>>>()?;
            let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
            OutputTable::new(metadata, &columns, rows)
        }
        Command::Correlation => {
            let sys = config.system.expect("validated");
            let block = config.correlation.as_ref().expect("validated");
            let rho0 = block.initial_state.to_density_matrix(sys.dim)?;
            let eta = eta();
            let pairs: Vec<(f64, f64)> = times()?
                .into_iter()
                .flat_map(|t| block.taus.iter().map(move |&tau| (t, tau)))
                .collect();
            let rows = pairs
                .par_iter()
                .map(|&(t, tau)| {
                    let s = correlation_sample(&rho0, &sys, eta, t, tau)?;
                    Ok(vec![t, tau, s.exact.re, s.exact.im, s.qrf.re, s.qrf.im, s.residual])
                })
                .collect::<Result<Vec<_>>>()?;
            OutputTable::new(
                metadata,
                &["t", "tau", "re_exact", "im_exact", "re_qrf", "im_qrf", "residual"],
                rows,
            )
        }
        Command::Witness => {
            let w = config.witness.expect("filled by defaults");
            let report = divisibility_scan(w.n, eta(), &times()?, w.psd_tol)?;
            let rows = (0..report.times.len())
                .map(|i| vec![report.times[i], report.min_eigenvalue[i], flag(report.divisible[i])])
                .collect();
            OutputTable::new(metadata, &["t", "min_eigenvalue", "divisible"], rows)
        }
        Command::Wigner => {
            let w = config.wigner.expect("filled by defaults");
            let grid = WignerGrid::new(w.grid.r_max, w.grid.n_radial, w.grid.n_angular)?;
            let cat = CatState::new(w.alpha)?;
            let series = quantumness_scan(&cat, w.sys_omega, eta(), &times()?, &grid, w.k_max)?;
            let rows = series.times.iter().zip(series.excess()).map(|(&t, d)| vec![t, d]).collect();
            OutputTable::new(metadata, &["t", "delta_minus_delta_c"], rows)
        }
        Command::Figure1 => {
            let f = config.figure1.as_ref().expect("filled by defaults");
            let coupling = CouplingKind::Lorentzian {
                lambda: f.lambda,
                omega0: f.omega0,
                sigma: f.sigma,
            };
            let curves = f
                .spectral_exponents
                .iter()
                .flat_map(|&s| f.temperatures.iter().map(move |&temp| (s, temp)))
                .map(|(s, temp)| {
                    let spec = BathSpec::new(temp, s, coupling)?;
                    Ok((s, temp, DephasingEvaluator::quadrature(spec, config.quadrature)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let times = times()?;
            let points: Vec<(usize, f64)> = (0..curves.len())
                .flat_map(|c| times.iter().map(move |&t| (c, t)))
                .collect();
            let rows = points
                .par_iter()
                .map(|&(c, t)| {
                    let (s, temp, eval) = &curves[c];
                    let v = eval.eta(t)?;
                    Ok(vec![*s, *temp, t, v.re, v.im])
                })
                .collect::<Result<Vec<_>>>()?;
            OutputTable::new(metadata, &["s", "temperature", "t", "re_eta", "im_eta"], rows)
        }
        Command::Figure2 => {
            let f = config.figure2.as_ref().expect("filled by defaults");
            let grid = WignerGrid::new(f.grid.r_max, f.grid.n_radial, f.grid.n_angular)?;
            let cat = CatState::new(f.alpha)?;
            let times = times()?;
            let mut rows = Vec::new();
            for &s in &f.spectral_exponents {
                let spec = BathSpec::new(f.temperature, s, CouplingKind::Linear { f: f.f })?;
                let eval = DephasingEvaluator::closed_form(spec)?;
                let series = quantumness_scan(&cat, f.sys_omega, &eval, &times, &grid, f.k_max)?;
                for (i, (&t, d)) in series.times.iter().zip(series.excess()).enumerate() {
                    rows.push(vec![s, t, d, flag(series.interior_minimum == Some(i))]);
                }
            }
            OutputTable::new(metadata, &["s", "t", "delta_minus_delta_c", "is_minimum"], rows)
        }
    }
}
