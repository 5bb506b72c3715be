//! Down-sets (initial segments) of a poset, their inclusion lattice, and the
//! antichain-tuple surjection onto down-sets with a prescribed number of
//! complement minimals.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset};

/// A downward-closed subset of one ambient poset. Members are kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownSet {
    pub ambient: Arc<Poset>,
    members: Vec<ElemId>,
}

impl DownSet {
    /// Validates downward closure.
    pub fn new(ambient: Arc<Poset>, mut members: Vec<ElemId>) -> Result<DownSet> {
        members.sort_unstable();
        members.dedup();
        for &y in &members {
            if y >= ambient.len() {
                return Err(Error::UnknownElement(format!("#{y}")));
            }
            for x in ambient.elements() {
                if ambient.le(x, y) && members.binary_search(&x).is_err() {
                    return Err(Error::InvalidArgument(format!(
                        "not downward closed: {} <= {} but {} is missing",
                        ambient.label(x),
                        ambient.label(y),
                        ambient.label(x)
                    )));
                }
            }
        }
        Ok(DownSet { ambient, members })
    }

    /// Down-closure of arbitrary generators.
    pub fn generated_by(ambient: Arc<Poset>, generators: &[ElemId]) -> Result<DownSet> {
        let members = ambient.down_closure(generators)?;
        Ok(DownSet { ambient, members })
    }

    pub fn members(&self) -> &[ElemId] {
        &self.members
    }

    pub fn contains(&self, x: ElemId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Minimal elements of the complement.
    pub fn complement_minimals(&self) -> Vec<ElemId> {
        let complement: Vec<ElemId> = self
            .ambient
            .elements()
            .filter(|&x| !self.contains(x))
            .collect();
        self.ambient.minimals(&complement).expect("ids in range")
    }
}

/// The lattice I(P) of all down-sets of `ambient` under inclusion, with the
/// member list of each lattice element kept aligned with its id.
#[derive(Debug, Clone)]
pub struct DownsetLattice {
    pub ambient: Arc<Poset>,
    pub poset: Poset,
    pub sets: Vec<Vec<ElemId>>,
}

/// Enumerates all down-sets of `p`. Fails with `SizeLimitExceeded` once more
/// than `cap` down-sets (or a dense matrix beyond desk scale) would be
/// needed. The count equals the number of antichains of `p`.
pub fn downset_lattice(p: &Poset, cap: usize) -> Result<DownsetLattice> {
    if p.len() > cap {
        return Err(Error::SizeLimitExceeded {
            needed: p.len(),
            cap,
        });
    }
    let mut sets: Vec<Vec<ElemId>> = Vec::new();
    // Each down-set is the closure of its antichain of maximal elements, so
    // walking antichains enumerates down-sets exactly once.
    let mut stack: Vec<Vec<ElemId>> = vec![Vec::new()];
    while let Some(antichain) = stack.pop() {
        let closure = p.down_closure(&antichain)?;
        sets.push(closure);
        if sets.len() > cap {
            return Err(Error::SizeLimitExceeded {
                needed: sets.len(),
                cap,
            });
        }
        let start = antichain.last().map_or(0, |&x| x + 1);
        for x in start..p.len() {
            if antichain.iter().all(|&y| !p.comparable(x, y)) {
                let mut next = antichain.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    sets.dedup();
    check_dense_budget(sets.len())?;
    let labels = sets.iter().map(|s| set_label(p, s)).collect();
    let poset = Poset::from_leq_fn(labels, |i, j| {
        sets[i].iter().all(|x| sets[j].binary_search(x).is_ok())
    })?;
    Ok(DownsetLattice {
        ambient: Arc::new(p.clone()),
        poset,
        sets,
    })
}

/// Sends an antichain tuple to the down-set of elements dominated by none of
/// its entries. The minimals of the complement are exactly the entries.
pub fn f_map(xs: &[ElemId], ambient: &Arc<Poset>) -> Result<DownSet> {
    for (i, &x) in xs.iter().enumerate() {
        if x >= ambient.len() {
            return Err(Error::UnknownElement(format!("#{x}")));
        }
        for &y in &xs[i + 1..] {
            if ambient.comparable(x, y) {
                return Err(Error::NotAntichain(
                    ambient.label(x).to_string(),
                    ambient.label(y).to_string(),
                ));
            }
        }
    }
    let members: Vec<ElemId> = ambient
        .elements()
        .filter(|&y| !xs.iter().any(|&x| ambient.le(x, y)))
        .collect();
    Ok(DownSet {
        ambient: Arc::clone(ambient),
        members,
    })
}

pub(crate) fn set_label(p: &Poset, s: &[ElemId]) -> String {
    let inner: Vec<&str> = s.iter().map(|&x| p.label(x)).collect();
    format!("{{{}}}", inner.join(","))
}

/// Dense relation matrices above this many elements would not fit desk-scale
/// memory; refuse loudly instead of thrashing.
pub(crate) fn check_dense_budget(n: usize) -> Result<()> {
    const MAX_DENSE: usize = 1 << 15;
    if n > MAX_DENSE {
        return Err(Error::SizeLimitExceeded {
            needed: n,
            cap: MAX_DENSE,
        });
    }
    Ok(())
}
