// Copyright 2026 trion-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! Library side of the `trion-sim` command-line tool: configuration
//! parsing and validation, command execution, CSV assembly and the
//! header reader that round-trips emitted files back into configurations.

pub mod commands;
pub mod config;
pub mod output;

/// Process exit codes of the tool.
#[derive(Debug)]
pub enum CliError {
    /// Schema or validation problem (exit 2).
    Config(String),
    /// Numerical failure while computing (exit 3).
    Numerical(String),
    /// Filesystem problem (exit 4).
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) | CliError::Io(m) => m,
        }
    }
}

impl From<trion_sim::SimError> for CliError {
    fn from(e: trion_sim::SimError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
