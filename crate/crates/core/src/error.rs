// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of a function.
    #[error("{function}: argument {value} outside the domain ({requirement})")]
    Domain {
        function: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A series or iteration did not reach the requested tolerance.
    #[error("{what}: no convergence after {steps} steps (estimated error {estimate:e})")]
    Convergence {
        what: &'static str,
        steps: usize,
        estimate: f64,
    },

    /// Wigner series truncation bound exceeds the tolerance.
    #[error("series truncated at k_max = {k_max} leaves a tail bound of {bound:e}")]
    Truncation { k_max: usize, bound: f64 },

    /// Phase-space grid too small to hold the Gaussian envelope.
    #[error("grid radius {r_max} leaves tail mass {tail:e} outside the disk")]
    TailMass { r_max: f64, tail: f64 },

    /// Unexpected nonzero entry outside the decoherence block.
    #[error("decoherence matrix entry ({row}, {col}) = {magnitude:e} lies outside the diagonal sector")]
    Structure {
        row: usize,
        col: usize,
        magnitude: f64,
    },

    /// A value violates a type invariant.
    #[error("invalid {what}: {reason}")]
    Invalid { what: &'static str, reason: String },

    /// A configuration document is malformed or inconsistent.
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// True for errors caused by the input document rather than the numerics.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config { .. } | Error::Io(_))
    }
}
