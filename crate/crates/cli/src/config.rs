use std::path::PathBuf;

use brw_core::algebra::SubalgebraBounds;
use brw_core::corpus::corpus_bounds;
use brw_core::group::DEFAULT_MAX_ORDER;
use clap::ValueEnum;
use serde::Serialize;

use crate::failure::Failure;

pub const DEFAULT_CAP_SCAN: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Constructive,
    Brute,
    Both,
}

impl Mode {
    pub fn constructive(self) -> bool {
        self != Mode::Brute
    }

    pub fn brute(self) -> bool {
        self != Mode::Constructive
    }
}

/// Everything a run depends on apart from the spec contents. Serialized into
/// every report; the output directory is left out so that reports do not
/// depend on where they are written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(skip)]
    pub out: Option<PathBuf>,
    pub cap_order: u64,
    pub cap_scan: u64,
    pub seed: u64,
    pub format: Format,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ideal: Option<String>,
}

impl RunConfig {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            inputs: Vec::new(),
            out: None,
            cap_order: DEFAULT_MAX_ORDER,
            cap_scan: DEFAULT_CAP_SCAN,
            seed: 0,
            format: Format::Json,
            mode: None,
            ideal: None,
        }
    }

    pub fn validate(&self) -> Result<(), Failure> {
        if self.cap_order == 0 {
            return Err(Failure::Spec("--cap-order must be positive".into()));
        }
        if self.cap_scan == 0 {
            return Err(Failure::Spec("--cap-scan must be positive".into()));
        }
        Ok(())
    }

    /// Subalgebra enumeration bounds: corpus dimension limits, scan budget from the config.
    pub fn bounds(&self) -> SubalgebraBounds {
        SubalgebraBounds {
            scan_budget: self.cap_scan,
            ..corpus_bounds()
        }
    }

    pub fn require_json(&self) -> Result<(), Failure> {
        match self.format {
            Format::Json => Ok(()),
            Format::Csv => Err(Failure::Spec(format!(
                "`{}` has no CSV output; use --format json",
                self.command
            ))),
        }
    }
}
