// Copyright 2026 The dephaser Authors
// SPDX-License-Identifier: Apache-2.0

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod quad;
pub mod specfun;
pub mod wigner;
pub mod witnesses;
pub use error::{Error, Result};
