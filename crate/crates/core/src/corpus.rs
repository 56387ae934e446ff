//! Built-in algebra specs.

use crate::algebra::{AlgebraSpec, SubalgebraBounds};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    /// File stem of the shipped spec.
    pub id: &'static str,
    pub spec: AlgebraSpec,
    /// Left out of default runs; its unit group exceeds the default order cap.
    pub gated: bool,
}

fn entry(id: &'static str, spec: AlgebraSpec, gated: bool) -> CorpusEntry {
    CorpusEntry {
        id,
        spec: spec.named(id),
        gated,
    }
}

/// Every shipped spec, gated ones included.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry("b2_f2", AlgebraSpec::borel(2, 2), false),
        entry("b2_f3", AlgebraSpec::borel(2, 3), false),
        entry("b2_f5", AlgebraSpec::borel(2, 5), false),
        entry("b3_f2", AlgebraSpec::borel(3, 2), false),
        entry("b3_f3", AlgebraSpec::borel(3, 3), false),
        entry("b3_f5", AlgebraSpec::borel(3, 5), true),
        entry("b4_f2", AlgebraSpec::borel(4, 2), false),
        entry("pat_a_f3", AlgebraSpec::pattern(3, 3, &[(1, 2), (1, 3)]), false),
        entry("pat_b_f3", AlgebraSpec::pattern(3, 3, &[(1, 3), (2, 3)]), false),
        entry(
            "pat_c_f2",
            AlgebraSpec::pattern(4, 2, &[(1, 2), (1, 3), (1, 4), (2, 4)]),
            false,
        ),
        entry("diag2_f3", AlgebraSpec::diagonal(2, 3), false),
        entry("diag2_f5", AlgebraSpec::diagonal(2, 5), false),
    ]
}

/// The default corpus: every entry that is not gated.
pub fn default_corpus() -> Vec<CorpusEntry> {
    corpus().into_iter().filter(|e| !e.gated).collect()
}

pub fn corpus_entry(id: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.id == id)
}

/// `F_p<x, y>` modulo all words of length three (dimension 7).
///
/// Not part of the corpus. It has a single idempotent, so the torus is
/// central and every character of `1 + J^2` is invariant under the whole unit
/// group; incidence algebras over odd `p` have no such nontrivial characters.
pub fn truncated_free(p: u32) -> AlgebraSpec {
    let words: [&str; 7] = ["", "x", "y", "xx", "xy", "yx", "yy"];
    let mut sc = vec![vec![vec![0i64; 7]; 7]; 7];
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            let w = format!("{a}{b}");
            if let Some(k) = words.iter().position(|&v| v == w) {
                sc[i][j][k] = 1;
            }
        }
    }
    AlgebraSpec {
        p,
        name: Some(format!("free2_f{p}")),
        dim: Some(7),
        one: Some(vec![1, 0, 0, 0, 0, 0, 0]),
        sc: Some(sc),
        labels: Some(
            words
                .iter()
                .map(|w| if w.is_empty() { "1".to_string() } else { w.to_string() })
                .collect(),
        ),
        pattern: None,
    }
}

/// Enumeration bounds large enough for every corpus algebra.
pub fn corpus_bounds() -> SubalgebraBounds {
    SubalgebraBounds::default()
        .with_max_dim(2, 10)
        .with_max_dim(3, 6)
        .with_max_dim(5, 6)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_specs_build() {
        let dims: Vec<(&str, usize)> = corpus().iter().map(|e| (e.id, e.spec.build().unwrap().dim())).collect();
        assert_eq!(
            dims,
            vec![
                ("b2_f2", 3),
                ("b2_f3", 3),
                ("b2_f5", 3),
                ("b3_f2", 6),
                ("b3_f3", 6),
                ("b3_f5", 6),
                ("b4_f2", 10),
                ("pat_a_f3", 5),
                ("pat_b_f3", 5),
                ("pat_c_f2", 8),
                ("diag2_f3", 2),
                ("diag2_f5", 2),
            ]
        );
        assert_eq!(default_corpus().len(), 11);
        assert!(corpus_entry("b3_f5").unwrap().gated);
        assert!(corpus_entry("nope").is_none());
        let free = truncated_free(3).build().unwrap();
        assert_eq!(free.dim(), 7);
        assert!(crate::algebra::is_split_basic(&free).split_basic);
    }
}
