use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::config::RunConfig;
use crate::failure::Failure;
use crate::input::LoadedSpec;

pub const REPORT_SCHEMA: &str = "brw.report/1";
pub const TOOL_NAME: &str = "brw";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ToolRecord {
    pub name: &'static str,
    pub version: &'static str,
    pub core_version: &'static str,
}

pub fn tool_record() -> ToolRecord {
    ToolRecord {
        name: TOOL_NAME,
        version: TOOL_VERSION,
        core_version: brw_core::VERSION,
    }
}

/// Envelope shared by every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct Report<'a, T: Serialize> {
    pub schema: &'static str,
    pub tool: ToolRecord,
    pub command: &'a str,
    pub config: &'a RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<&'a LoadedSpec>,
    pub verified: bool,
    pub result: T,
}

/// One output file, or one stdout document when no output directory is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Artifact {
    pub name: String,
    pub content: String,
}

/// What a command produced.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    /// Notes on failed verifications; empty when everything verified.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn verified(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: Outcome) {
        self.artifacts.extend(other.artifacts);
        self.failures.extend(other.failures);
    }
}

pub fn json_artifact<T: Serialize>(
    name: String,
    cfg: &RunConfig,
    input: Option<&LoadedSpec>,
    verified: bool,
    result: T,
) -> Artifact {
    let report = Report {
        schema: REPORT_SCHEMA,
        tool: tool_record(),
        command: &cfg.command,
        config: cfg,
        input,
        verified,
        result,
    };
    let mut content = serde_json::to_string_pretty(&report).expect("reports serialize");
    content.push('\n');
    Artifact { name, content }
}

/// CSV with `#` comment lines carrying the same provenance as the JSON envelope.
pub fn csv_artifact(
    name: String,
    cfg: &RunConfig,
    input: Option<&LoadedSpec>,
    comments: &[String],
    header: &[String],
    rows: &[Vec<String>],
) -> Artifact {
    let mut out = String::new();
    out.push_str(&format!(
        "# {REPORT_SCHEMA} {TOOL_NAME} {TOOL_VERSION} command={}\n",
        cfg.command
    ));
    out.push_str(&format!(
        "# config {}\n",
        serde_json::to_string(cfg).expect("config serializes")
    ));
    if let Some(i) = input {
        out.push_str(&format!("# input {}\n", i.source));
    }
    for c in comments {
        out.push_str(&format!("# {c}\n"));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory CSV");
    for r in rows {
        w.write_record(r).expect("in-memory CSV");
    }
    out.push_str(&String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8"));
    Artifact { name, content: out }
}

/// Writes artifacts into `dir`, or prints them to stdout when `dir` is `None`.
pub fn emit(dir: Option<&Path>, artifacts: &[Artifact]) -> Result<(), Failure> {
    match dir {
        Some(d) => {
            std::fs::create_dir_all(d).map_err(|e| Failure::Output(format!("{}: {e}", d.display())))?;
            for a in artifacts {
                let path = d.join(&a.name);
                std::fs::write(&path, &a.content).map_err(|e| Failure::Output(format!("{}: {e}", path.display())))?;
                eprintln!("wrote {}", path.display());
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for a in artifacts {
                lock.write_all(a.content.as_bytes())
                    .map_err(|e| Failure::Output(e.to_string()))?;
            }
        }
    }
    Ok(())
}
