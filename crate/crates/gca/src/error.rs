//! Error taxonomy shared by the whole crate.

use crate::algebra::{Basis, Element};

/// Every failure the library can report.
///
/// The variants split into two stable classes used by the command-line tool:
/// input errors (malformed text, bad windows, wrong bases) and assertion
/// failures (a replay or extraction that ran fine but refuted its claim).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis mismatch: expected the {expected} basis, found {found}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("invalid window: radius {radius}, interior {interior} (need 1 <= interior <= radius/2)")]
    InvalidWindow { radius: i64, interior: i64 },
    #[error("degree {degree} leaves the window [-{radius}, {radius}]")]
    OutOfWindow { degree: i64, radius: i64 },
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("no derivation attains the prescribed values")]
    InfeasibleWitness,
    #[error("table is missing the anchor point {0}")]
    MissingAnchor(String),
    #[error("residual {residual} at I[0]+J[0] is outside span{{I[0], J[0]}}")]
    NotInSpan { residual: Element },
    #[error("table mismatch at point {point}: table says {expected}, extracted derivation gives {actual}")]
    TableMismatch {
        point: Element,
        expected: Element,
        actual: Element,
    },
    #[error("replay {check} failed: {detail}")]
    ReplayFailed { check: String, detail: String },
    #[error("probe set too small: {0}")]
    ProbeSetTooSmall(String),
    #[error("parse error at byte {offset}: expected {}, found {found}", friendly_list(.expected))]
    Parse {
        offset: usize,
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("mixed bases at byte {offset}: one element may not combine plain and bold generators")]
    BasisMix { offset: usize },
    #[error("schema error at {path}: {detail}")]
    Schema { path: String, detail: String },
}

impl Error {
    /// Stable machine-readable code, used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::BasisMismatch { .. } => "BasisMismatch",
            Error::InvalidWindow { .. } => "InvalidWindow",
            Error::OutOfWindow { .. } => "OutOfWindow",
            Error::WindowTooSmall(_) => "WindowTooSmall",
            Error::InfeasibleWitness => "InfeasibleWitness",
            Error::MissingAnchor(_) => "MissingAnchor",
            Error::NotInSpan { .. } => "NotInSpan",
            Error::TableMismatch { .. } => "TableMismatch",
            Error::ReplayFailed { .. } => "ReplayFailed",
            Error::ProbeSetTooSmall(_) => "ProbeSetTooSmall",
            Error::Parse { .. } => "ParseError",
            Error::BasisMix { .. } => "BasisMixError",
            Error::Schema { .. } => "SchemaError",
        }
    }

    /// Exit-code class: 1 for assertion/replay failures, 2 for input errors.
    pub fn exit_class(&self) -> u8 {
        match self {
            Error::InfeasibleWitness
            | Error::NotInSpan { .. }
            | Error::TableMismatch { .. }
            | Error::ReplayFailed { .. }
            | Error::ProbeSetTooSmall(_) => 1,
            _ => 2,
        }
    }
}

fn friendly_list(expected: &[&'static str]) -> String {
    match expected {
        [] => "nothing".to_string(),
        [one] => (*one).to_string(),
        many => format!("one of [{}]", many.join(", ")),
    }
}
