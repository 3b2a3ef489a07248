// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

//! Config-driven front end behind the `dephaser` binary.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for numerical
//! failures.

mod config;
mod output;
mod run;

pub use config::{
    parse_config, parse_config_for, BathConfig, Command, CorrelationBlock, Evaluation, EvolveBlock, Figure1Block,
    Figure2Block, Format, GridConfig, InitialState, OutputConfig, RunConfig, TimeGrid, WignerBlock, WitnessBlock,
};
pub use output::{config_echo, Metadata, OutputTable};
pub use run::{build_evaluator, run};

use crate::error::Error;

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub fn exit_code(error: &Error) -> i32 {
    if error.is_config() {
        EXIT_CONFIG
    } else {
        EXIT_NUMERICAL
    }
}
