use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::subspace::{close_under_products, Subalgebra, Subspace};
use super::{all_vectors, Algebra};
use crate::error::{Error, Result};

/// Limits for [`enumerate_subalgebras`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubalgebraBounds {
    /// Largest algebra dimension accepted, per prime.
    pub max_dim: Vec<(u32, usize)>,
    /// Maximum number of closure computations.
    pub scan_budget: u64,
}

impl Default for SubalgebraBounds {
    fn default() -> Self {
        Self {
            max_dim: vec![(2, 6), (3, 5), (5, 4), (7, 3)],
            scan_budget: 2_000_000,
        }
    }
}

impl SubalgebraBounds {
    pub fn max_dim_for(&self, p: u32) -> usize {
        self.max_dim.iter().find(|(q, _)| *q == p).map_or(0, |&(_, d)| d)
    }

    pub fn with_max_dim(mut self, p: u32, d: usize) -> Self {
        match self.max_dim.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 = d,
            None => self.max_dim.push((p, d)),
        }
        self
    }
}

/// All unital subalgebras, ordered by dimension then echelon basis.
///
/// Breadth-first walk of the subalgebra lattice: every subalgebra `S` is
/// extended by one representative of each line of `A/S` and closed under
/// products. Every subalgebra arises this way from a chain starting at
/// `span{1}`.
pub fn enumerate_subalgebras(alg: &Algebra, bounds: &SubalgebraBounds) -> Result<Vec<Subalgebra>> {
    let cap = bounds.max_dim_for(alg.p());
    if alg.dim() > cap {
        return Err(Error::TooLarge {
            what: "algebra dimension for subalgebra enumeration",
            size: alg.dim() as u64,
            cap: cap as u64,
        });
    }
    let p = alg.p();
    let start = Subspace::of(alg, &[alg.one().to_vec()]);
    let mut seen: BTreeSet<Subspace> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(start.clone());
    queue.push_back(start);
    let mut scans: u64 = 0;
    while let Some(s) = queue.pop_front() {
        let free = s.complement_units();
        let mut local: BTreeSet<Subspace> = BTreeSet::new();
        for coeffs in all_vectors(p, free.len()) {
            // one normalized representative per line
            match coeffs.iter().find(|&&c| c != 0) {
                Some(&1) => {}
                _ => continue,
            }
            let mut x = alg.zero();
            for (&col, &c) in free.iter().zip(&coeffs) {
                x[col] = c;
            }
            if local.iter().any(|t| t.contains(&x) && t.dim() == s.dim() + 1) {
                // a one-step extension already generated by this line's span
                continue;
            }
            scans += 1;
            if scans > bounds.scan_budget {
                return Err(Error::TooLarge {
                    what: "subalgebra lattice scan",
                    size: scans,
                    cap: bounds.scan_budget,
                });
            }
            let t = close_under_products(alg, s.with_vector(&x));
            local.insert(t.clone());
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    seen.into_iter().map(|s| Subalgebra::certify(alg, s)).collect()
}
