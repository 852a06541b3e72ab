//! Exact-arithmetic engine for differential biquivers (free normal bocses)
//! and finite-dimensional quiver algebras.
//!
//! The crate computes path-algebra normal forms, projectives, standard
//! modules and minimal resolutions for quasi-hereditary algebras, transfers
//! A-infinity products onto Ext-algebras, and runs the bocs reduction
//! algorithm (regularisation, minimal edge reduction, relation transport)
//! to termination, extracting Auslander-Reiten quivers of the categories of
//! standardly filtered modules.

pub mod ainfty;
pub mod dbq;
pub mod findim;
pub mod fixtures;
pub mod format;
pub mod matrix;
pub mod pathalg;
pub mod pipelines;
pub mod reduce;
pub mod scalar;

pub use matrix::Matrix;
pub use pathalg::{AlgebraBasis, AlgebraPresentation, Path, PathElement, Quiver};
pub use scalar::{Fp, Rat};

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input data (bad relation, unknown arrow, degree clash, ...).
    BadInput(String),
    /// Basis enumeration did not stabilize within the length cap.
    NotFiniteDimensional { cap: usize },
    /// A resolution or search exceeded its configured cap.
    CapExceeded(String),
    /// A scripted reduction move was inapplicable.
    ScriptMove { step: usize, msg: String },
    /// The enumeration oracle was asked for more than its budget allows.
    SearchSpaceTooLarge(String),
    /// Parse error with position.
    Parse { line: usize, col: usize, msg: String },
    /// Violated internal contract; indicates a bug or a falsified design
    /// assumption (for example a bocs morphism with invertible vertex maps
    /// but no two-sided inverse).
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::BadInput(m) => write!(f, "bad input: {m}"),
            Error::NotFiniteDimensional { cap } => {
                write!(f, "not finite-dimensional within cap {cap}")
            }
            Error::CapExceeded(m) => write!(f, "cap exceeded: {m}"),
            Error::ScriptMove { step, msg } => {
                write!(f, "script move inapplicable at step {step}: {msg}")
            }
            Error::SearchSpaceTooLarge(m) => write!(f, "search space too large: {m}"),
            Error::Parse { line, col, msg } => write!(f, "parse error at {line}:{col}: {msg}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for Error {}
