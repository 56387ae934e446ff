use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::exact_math::PrimeField;

/// JSON ingestion format. Either explicit structure constants (`dim`, `one`,
/// `sc`, optional `labels`) or a `pattern` of upper-triangular positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub p: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub one: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sc: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<PatternSpec>,
}

/// Pattern subalgebra of `B_n(F_p)`: the diagonal plus the listed
/// positions `(i, j)`, 1-indexed with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternSpec {
    pub n: usize,
    pub closed_pairs: Vec<[usize; 2]>,
}

fn spec_err(field: &str, message: impl Into<String>) -> Error {
    Error::SpecError {
        field: field.into(),
        message: message.into(),
    }
}

impl AlgebraSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| spec_err("<root>", e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn pattern(n: usize, p: u32, pairs: &[(usize, usize)]) -> Self {
        Self {
            p,
            name: None,
            dim: None,
            one: None,
            sc: None,
            labels: None,
            pattern: Some(PatternSpec {
                n,
                closed_pairs: pairs.iter().map(|&(i, j)| [i, j]).collect(),
            }),
        }
    }

    /// Upper-triangular matrices `B_n(F_p)`.
    pub fn borel(n: usize, p: u32) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Self::pattern(n, p, &pairs).named(format!("B{n}(F{p})"))
    }

    /// Diagonal matrices, i.e. `F_p^n`.
    pub fn diagonal(n: usize, p: u32) -> Self {
        Self::pattern(n, p, &[]).named(format!("D{n}(F{p})"))
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| match &self.pattern {
            Some(pat) => format!("pattern n={} over F{}", pat.n, self.p),
            None => format!("algebra over F{}", self.p),
        })
    }

    /// Validates and certifies the algebra.
    pub fn build(&self) -> Result<Algebra> {
        PrimeField::supported(self.p).map_err(|_| spec_err("p", format!("unsupported modulus {}", self.p)))?;
        match &self.pattern {
            Some(pat) => {
                if self.sc.is_some() || self.one.is_some() || self.dim.is_some() || self.labels.is_some() {
                    return Err(spec_err(
                        "pattern",
                        "pattern specs must not also give dim/one/sc/labels",
                    ));
                }
                build_pattern(self.p, pat)
            }
            None => self.build_explicit(),
        }
    }

    fn build_explicit(&self) -> Result<Algebra> {
        let p = self.p as i64;
        let dim = self.dim.ok_or_else(|| spec_err("dim", "missing"))?;
        let sc = self.sc.as_ref().ok_or_else(|| spec_err("sc", "missing"))?;
        let one = self.one.as_ref().ok_or_else(|| spec_err("one", "missing"))?;
        if dim == 0 {
            return Err(spec_err("dim", "zero-dimensional algebras have no identity"));
        }
        if sc.len() != dim || sc.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(spec_err("sc", format!("expected a {dim}x{dim}x{dim} tensor")));
        }
        if one.len() != dim {
            return Err(spec_err("one", format!("expected length {dim}")));
        }
        if let Some(l) = &self.labels {
            if l.len() != dim {
                return Err(spec_err("labels", format!("expected {dim} labels")));
            }
        }
        let red = |x: i64| x.rem_euclid(p) as u32;
        let sc: Vec<Vec<Vec<u32>>> = sc
            .iter()
            .map(|r| r.iter().map(|v| v.iter().map(|&x| red(x)).collect()).collect())
            .collect();
        let one = one.iter().map(|&x| red(x)).collect();
        Algebra::new(self.p, sc, one, self.labels.clone())
    }
}

fn build_pattern(p: u32, pat: &PatternSpec) -> Result<Algebra> {
    let n = pat.n;
    if n == 0 {
        return Err(spec_err("pattern.n", "must be positive"));
    }
    let mut set = BTreeSet::new();
    for &[i, j] in &pat.closed_pairs {
        if !(1 <= i && i < j && j <= n) {
            return Err(spec_err(
                "pattern.closed_pairs",
                format!("pair ({i}, {j}) must satisfy 1 <= i < j <= {n}"),
            ));
        }
        set.insert((i, j));
    }
    for &(i, j) in &set {
        for &(j2, k) in &set {
            if j == j2 && !set.contains(&(i, k)) {
                return Err(spec_err(
                    "pattern.closed_pairs",
                    format!("not transitively closed: ({i}, {j}) and ({j}, {k}) present but ({i}, {k}) missing"),
                ));
            }
        }
    }
    let positions: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| i == j || set.contains(&(i, j)))
        .collect();
    let dim = positions.len();
    let index = |pos: (usize, usize)| positions.iter().position(|&q| q == pos);
    let mut sc = vec![vec![vec![0u32; dim]; dim]; dim];
    for (a, &(i, j)) in positions.iter().enumerate() {
        for (b, &(k, l)) in positions.iter().enumerate() {
            if j == k {
                let c = index((i, l)).expect("pattern is closed under products");
                sc[a][b][c] = 1;
            }
        }
    }
    let mut one = vec![0u32; dim];
    for i in 1..=n {
        one[index((i, i)).unwrap()] = 1;
    }
    let labels = positions.iter().map(|&(i, j)| format!("e{i}{j}")).collect();
    Algebra::new(p, sc, one, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_dimensions_and_labels() {
        let a = AlgebraSpec::borel(3, 2).build().unwrap();
        assert_eq!(a.dim(), 6);
        assert_eq!(a.labels(), ["e11", "e12", "e13", "e22", "e23", "e33"]);
        assert_eq!(a.one(), &[1, 0, 0, 1, 0, 1]);
        assert_eq!(AlgebraSpec::borel(4, 2).build().unwrap().dim(), 10);
    }

    #[test]
    fn pattern_validation() {
        assert!(AlgebraSpec::pattern(3, 3, &[(1, 2), (2, 3)]).build().is_err());
        assert!(AlgebraSpec::pattern(3, 3, &[(2, 1)]).build().is_err());
        assert!(AlgebraSpec::pattern(3, 3, &[(1, 4)]).build().is_err());
        let a = AlgebraSpec::pattern(3, 3, &[(1, 2), (1, 3)]).build().unwrap();
        assert_eq!(a.dim(), 5);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"p": 3, "dim": 1, "one": [1], "sc": [[[1]]]}"#;
        let spec = AlgebraSpec::from_json(text).unwrap();
        assert_eq!(spec.build().unwrap().dim(), 1);
        let back = AlgebraSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);

        let pat = r#"{"p": 2, "pattern": {"n": 2, "closed_pairs": [[1, 2]]}}"#;
        assert_eq!(AlgebraSpec::from_json(pat).unwrap().build().unwrap().dim(), 3);
    }

    #[test]
    fn malformed_specs() {
        let cases = [
            r#"{"p": 4, "dim": 1, "one": [1], "sc": [[[1]]]}"#,
            r#"{"p": 3, "dim": 2, "one": [1], "sc": [[[1]]]}"#,
            r#"{"p": 3, "dim": 0, "one": [], "sc": []}"#,
            r#"{"p": 3, "one": [1], "sc": [[[1]]]}"#,
            r#"{"p": 3, "bogus": 1}"#,
            r#"not json"#,
        ];
        for c in cases {
            let r = AlgebraSpec::from_json(c).and_then(|s| s.build());
            assert!(matches!(r, Err(Error::SpecError { .. })), "{c}: {r:?}");
        }
        // Well-formed but not an algebra: certification error, not a spec error.
        let bad = r#"{"p": 3, "dim": 1, "one": [1], "sc": [[[2]]]}"#;
        let r = AlgebraSpec::from_json(bad).unwrap().build();
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
    }
}
