// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is numerically singular (pivot {pivot:.3e} below threshold {threshold:.3e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("matrix is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("degenerate steady state: {0}")]
    DegenerateSteadyState(String),

    #[error("integration failed at t = {reached:.6e} ns: {message}")]
    IntegrationFailure { reached: f64, message: String },

    #[error("iteration did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("no splitting found: {0}")]
    NoSplitting(String),

    #[error("undefined normalization: {0}")]
    UndefinedNormalization(String),

    #[error("fit failed after budgeted iterations: {message} (best k = {best_k:.6e}, residual = {best_residual:.6e})")]
    FitFailure {
        best_k: f64,
        best_residual: f64,
        message: String,
    },

    #[error("unknown parameter field: {0}")]
    UnknownField(String),
}
