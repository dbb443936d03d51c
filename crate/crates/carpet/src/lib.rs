//! Threaded engines, validation, report and export formats, and the command
//! line driver for Sierpinski carpet graphs, on top of `carpet-core`.

pub mod cli;
pub mod engine;
pub mod error;
pub mod export;
pub mod report;

pub use engine::{
    make_table, validate, wiener, wiener_both, wiener_formula, wiener_oracle, EngineConfig, Method, Mismatch,
    ValidationMode, ValidationReport, WienerReport,
};
pub use error::{CarpetError, Result};
