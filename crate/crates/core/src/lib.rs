//! Exact computations with split basic algebras over prime fields, their
//! unit groups and the characters of those groups.

mod error;

pub mod algebra;
pub mod character;
pub mod corpus;
pub mod exact_math;
pub mod group;
pub mod gutkin;
pub mod local;

pub use error::{Error, Result};

/// Crate version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
