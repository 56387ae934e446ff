use std::fmt;

use brw_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OUTPUT: i32 = 1;
pub const EXIT_SPEC: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// A run that could not complete, classified by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Malformed or unsupported input.
    Spec(String),
    /// A size cap was exceeded.
    Cap(String),
    /// A computed result failed its certification.
    Verification(String),
    /// Reports could not be written.
    Output(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Spec(_) => EXIT_SPEC,
            Failure::Cap(_) => EXIT_CAP,
            Failure::Verification(_) => EXIT_VERIFY,
            Failure::Output(_) => EXIT_OUTPUT,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Spec(m) => write!(f, "spec error: {m}"),
            Failure::Cap(m) => write!(f, "cap exceeded: {m}"),
            Failure::Verification(m) => write!(f, "verification failure: {m}"),
            Failure::Output(m) => write!(f, "output error: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let m = e.to_string();
        match e {
            Error::TooLarge { .. } => Failure::Cap(m),
            Error::SpecError { .. }
            | Error::UnsupportedModulus(_)
            | Error::InvalidAlgebra(_)
            | Error::NotSplitBasic(_)
            | Error::NotNormal
            | Error::NotInsideRadical
            | Error::DimensionMismatch { .. }
            | Error::FieldMismatch { .. }
            | Error::InvalidConductor(_)
            | Error::PreconditionFailure(_) => Failure::Spec(m),
            _ => Failure::Verification(m),
        }
    }
}
