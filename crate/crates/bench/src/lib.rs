//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use brw_core::algebra::Algebra;
use brw_core::corpus::corpus_entry;
use brw_core::group::{unit_group, FiniteGroup, DEFAULT_MAX_ORDER};
use brw_core::gutkin::Frame;

/// A corpus algebra by id; panics on unknown ids.
pub fn algebra(id: &str) -> Arc<Algebra> {
    let e = corpus_entry(id).unwrap_or_else(|| panic!("unknown corpus entry {id}"));
    Arc::new(e.spec.build().expect("corpus specs build"))
}

/// A freshly enumerated unit group, so no character table is cached yet.
pub fn fresh_group(id: &str) -> FiniteGroup {
    unit_group(&algebra(id), DEFAULT_MAX_ORDER).expect("corpus groups fit the default cap")
}

pub fn frame(id: &str) -> Frame {
    Frame::new(&algebra(id), DEFAULT_MAX_ORDER).expect("corpus groups fit the default cap")
}
