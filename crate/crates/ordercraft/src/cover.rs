//! Desk-scale coverability for vector addition systems with guards, decided
//! backwards through minimal bases of upward-closed sets over the
//! coordinatewise order, plus a bounded forward oracle for cross-checking.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::minimal_elements;

pub type Marking = Vec<u64>;

/// A guarded transition: enabled at m iff m ≥ guard, moving to m + delta.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transition {
    pub guard: Vec<u64>,
    pub delta: Vec<i64>,
}

/// A vector addition system with guards; subsumes plain Petri nets.
#[derive(Debug, Clone)]
pub struct Vass {
    pub dimension: usize,
    pub transitions: Vec<Transition>,
}

impl Vass {
    pub fn new(dimension: usize, transitions: Vec<Transition>) -> Result<Vass> {
        for t in &transitions {
            if t.guard.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: t.guard.len(),
                });
            }
            if t.delta.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: t.delta.len(),
                });
            }
            for i in 0..dimension {
                if t.guard[i] as i64 + t.delta[i] < 0 {
                    return Err(Error::InvalidArgument(format!(
                        "transition may go negative at coordinate {i}"
                    )));
                }
            }
        }
        Ok(Vass {
            dimension,
            transitions,
        })
    }

    pub fn enabled(&self, t: &Transition, m: &[u64]) -> bool {
        m.iter().zip(&t.guard).all(|(&x, &g)| x >= g)
    }

    pub fn fire(&self, t: &Transition, m: &[u64]) -> Option<Marking> {
        if !self.enabled(t, m) {
            return None;
        }
        Some(
            m.iter()
                .zip(&t.delta)
                .map(|(&x, &d)| (x as i64 + d) as u64)
                .collect(),
        )
    }
}

fn leq(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Minimal basis of an upward-closed set of markings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpwardBasis {
    pub dimension: usize,
    minimals: Vec<Marking>,
}

impl UpwardBasis {
    /// Reduces the given vectors to the antichain of minimal ones.
    pub fn new(dimension: usize, vectors: Vec<Marking>) -> Result<UpwardBasis> {
        for v in &vectors {
            if v.len() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    got: v.len(),
                });
            }
        }
        let refs: Vec<&Marking> = vectors.iter().collect();
        let mut minimals: Vec<Marking> = minimal_elements(&refs, |a, b| leq(a, b))
            .into_iter()
            .cloned()
            .collect();
        minimals.sort();
        Ok(UpwardBasis {
            dimension,
            minimals,
        })
    }

    pub fn minimals(&self) -> &[Marking] {
        &self.minimals
    }

    pub fn member(&self, m: &[u64]) -> bool {
        self.minimals.iter().any(|b| leq(b, m))
    }
}

/// Minimal basis of the markings from which firing `t` lands in the upward
/// closure of `basis`: componentwise max(b − delta, guard).
pub fn pre_basis(basis: &UpwardBasis, t: &Transition) -> Result<UpwardBasis> {
    if t.guard.len() != basis.dimension {
        return Err(Error::DimensionMismatch {
            expected: basis.dimension,
            got: t.guard.len(),
        });
    }
    let vectors = basis
        .minimals
        .iter()
        .map(|b| pre_vector(b, t))
        .collect();
    UpwardBasis::new(basis.dimension, vectors)
}

fn pre_vector(b: &[u64], t: &Transition) -> Marking {
    b.iter()
        .zip(&t.delta)
        .zip(&t.guard)
        .map(|((&bi, &di), &gi)| (bi as i64 - di).max(gi as i64) as u64)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoverVerdict {
    Coverable,
    NotCoverable,
}

/// Result of the backward search: the stabilized basis is the certificate,
/// and coverable instances also carry a replayed firing sequence.
#[derive(Debug, Clone, Serialize)]
pub struct CoverOutcome {
    pub verdict: CoverVerdict,
    pub basis: Vec<Marking>,
    pub firing: Option<Vec<usize>>,
    pub iterations: usize,
}

/// Iterates basis ← reduce(basis ∪ ⋃_t pre(basis, t)) from {target} to the
/// fixpoint, then answers whether some basis element lies below `init`.
/// Termination is guaranteed by the coordinatewise wqo; the cap keeps
/// runaway instances honest.
pub fn backward_cover(
    v: &Vass,
    init: &[u64],
    target: &[u64],
    iteration_cap: usize,
) -> Result<CoverOutcome> {
    for m in [init, target] {
        if m.len() != v.dimension {
            return Err(Error::DimensionMismatch {
                expected: v.dimension,
                got: m.len(),
            });
        }
    }
    // arena keeps every discovered vector with its provenance so a firing
    // sequence can be replayed after the fixpoint
    let mut arena: Vec<(Marking, Option<(usize, usize)>)> = vec![(target.to_vec(), None)];
    let mut basis: Vec<usize> = vec![0];
    let mut iterations = 0;
    loop {
        if iterations >= iteration_cap {
            return Err(Error::IterationCapExceeded(iteration_cap));
        }
        iterations += 1;
        let mut candidates: Vec<(Marking, (usize, usize))> = Vec::new();
        for (ti, t) in v.transitions.iter().enumerate() {
            for &bi in &basis {
                candidates.push((pre_vector(&arena[bi].0, t), (ti, bi)));
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut added = false;
        for (vec, via) in candidates {
            let subsumed = basis.iter().any(|&i| leq(&arena[i].0, &vec));
            if !subsumed {
                arena.push((vec, Some(via)));
                let new_idx = arena.len() - 1;
                basis.retain(|&i| !leq(&arena[new_idx].0, &arena[i].0));
                basis.push(new_idx);
                added = true;
            }
        }
        if !added {
            break;
        }
    }
    let mut basis_vectors: Vec<Marking> = basis.iter().map(|&i| arena[i].0.clone()).collect();
    basis_vectors.sort();
    let start = basis
        .iter()
        .filter(|&&i| leq(&arena[i].0, init))
        .min_by_key(|&&i| arena[i].0.clone());
    match start {
        None => Ok(CoverOutcome {
            verdict: CoverVerdict::NotCoverable,
            basis: basis_vectors,
            firing: None,
            iterations,
        }),
        Some(&i) => {
            let mut firing = Vec::new();
            let mut cursor = i;
            while let Some((t, parent)) = arena[cursor].1 {
                firing.push(t);
                cursor = parent;
            }
            debug_assert!(replay(v, init, &firing)
                .map(|ms| leq(target, ms.last().expect("replay includes init")))
                .unwrap_or(false));
            Ok(CoverOutcome {
                verdict: CoverVerdict::Coverable,
                basis: basis_vectors,
                firing: Some(firing),
                iterations,
            })
        }
    }
}

/// Fires the sequence from `init`, returning every visited marking (the
/// initial one included). Fails if a guard is violated along the way.
pub fn replay(v: &Vass, init: &[u64], firing: &[usize]) -> Result<Vec<Marking>> {
    let mut markings = vec![init.to_vec()];
    for &ti in firing {
        let t = v
            .transitions
            .get(ti)
            .ok_or_else(|| Error::InvalidArgument(format!("no transition #{ti}")))?;
        let next = v
            .fire(t, markings.last().expect("nonempty"))
            .ok_or_else(|| Error::InvalidArgument(format!("transition #{ti} not enabled")))?;
        markings.push(next);
    }
    Ok(markings)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardVerdict {
    Coverable { depth: usize },
    Inconclusive,
}

/// Bounded breadth-first exploration, sound for `Coverable` answers only.
/// Markings with any coordinate above `coord_cap` are not expanded.
pub fn forward_oracle(
    v: &Vass,
    init: &[u64],
    target: &[u64],
    depth_cap: usize,
    coord_cap: u64,
) -> Result<ForwardVerdict> {
    for m in [init, target] {
        if m.len() != v.dimension {
            return Err(Error::DimensionMismatch {
                expected: v.dimension,
                got: m.len(),
            });
        }
    }
    let mut seen: HashSet<Marking> = HashSet::new();
    let mut queue: VecDeque<(Marking, usize)> = VecDeque::new();
    seen.insert(init.to_vec());
    queue.push_back((init.to_vec(), 0));
    while let Some((m, depth)) = queue.pop_front() {
        if leq(target, &m) {
            return Ok(ForwardVerdict::Coverable { depth });
        }
        if depth == depth_cap {
            continue;
        }
        for t in &v.transitions {
            if let Some(next) = v.fire(t, &m) {
                if next.iter().any(|&x| x > coord_cap) || seen.contains(&next) {
                    continue;
                }
                seen.insert(next.clone());
                queue.push_back((next, depth + 1));
            }
        }
    }
    Ok(ForwardVerdict::Inconclusive)
}
