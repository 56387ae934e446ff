use std::path::Path;
use std::sync::Arc;

use brw_core::algebra::{Algebra, AlgebraSpec};
use brw_core::corpus::{corpus, corpus_entry};
use serde::Serialize;

use crate::failure::Failure;

pub const CORPUS_PREFIX: &str = "corpus:";

/// A spec together with where it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadedSpec {
    /// The argument as given: a file path or `corpus:<id>`.
    pub source: String,
    #[serde(skip)]
    pub stem: String,
    pub spec: AlgebraSpec,
}

impl LoadedSpec {
    pub fn build(&self) -> Result<Arc<Algebra>, Failure> {
        self.spec
            .build()
            .map(Arc::new)
            .map_err(|e| Failure::Spec(format!("{}: {e}", self.source)))
    }
}

/// Reads a JSON spec file, or a built-in spec named `corpus:<id>`.
pub fn load(source: &str) -> Result<LoadedSpec, Failure> {
    if let Some(id) = source.strip_prefix(CORPUS_PREFIX) {
        let entry = corpus_entry(id).ok_or_else(|| {
            let ids: Vec<&str> = corpus().iter().map(|e| e.id).collect();
            Failure::Spec(format!("unknown corpus entry `{id}` (known: {})", ids.join(", ")))
        })?;
        return Ok(LoadedSpec {
            source: source.to_string(),
            stem: id.to_string(),
            spec: entry.spec,
        });
    }
    let path = Path::new(source);
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Spec(format!("{source}: {e}")))?;
    let spec = AlgebraSpec::from_json(&text).map_err(|e| Failure::Spec(format!("{source}: {e}")))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("spec").to_string();
    Ok(LoadedSpec {
        source: source.to_string(),
        stem,
        spec,
    })
}
