use std::collections::VecDeque;
use std::sync::Arc;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Conjugacy classes, ordered by least element id (so class 0 is `{1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjData {
    pub group_uid: u64,
    pub group_order: usize,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    /// Class of `g^-1` for `g` in each class.
    pub inverse_class: Vec<usize>,
    pub rep_orders: Vec<u64>,
}

impl ConjData {
    pub fn count(&self) -> usize {
        self.reps.len()
    }

    pub fn centralizer_order(&self, class: usize) -> usize {
        self.group_order / self.sizes[class]
    }
}

/// Orbit partition of `G` under conjugation.
pub fn conjugacy_classes(g: &FiniteGroup) -> Result<Arc<ConjData>> {
    if g.order() as u64 > g.max_order() {
        return Err(Error::TooLarge {
            what: "group order",
            size: g.order() as u64,
            cap: g.max_order(),
        });
    }
    Ok(g.conj.get_or_init(|| Arc::new(compute(g))).clone())
}

fn compute(g: &FiniteGroup) -> ConjData {
    let n = g.order();
    let gens = g.generators().to_vec();
    let mut class_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut members = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        class_of[x] = c;
        let mut orbit = vec![x];
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for &s in &gens {
                let z = g.conjugate(s, y);
                if class_of[z] == usize::MAX {
                    class_of[z] = c;
                    orbit.push(z);
                    queue.push_back(z);
                }
            }
        }
        orbit.sort_unstable();
        members.push(orbit);
    }
    let sizes = members.iter().map(Vec::len).collect();
    let inverse_class = reps.iter().map(|&r| class_of[g.inv(r)]).collect();
    let rep_orders = reps.iter().map(|&r| g.element_order(r)).collect();
    ConjData {
        group_uid: g.uid(),
        group_order: n,
        reps,
        sizes,
        class_of,
        members,
        inverse_class,
        rep_orders,
    }
}
