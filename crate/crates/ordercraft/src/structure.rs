//! Structural analysis of FAC posets: antichain rank and the spine/block
//! decomposition with its producer and verifier.

use serde::Serialize;

use crate::construct::lex_sum_labeled;
use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset};
use crate::DEFAULT_CAP;

/// Rank of the reverse-inclusion order on antichains: the longest strictly
/// increasing chain of antichains above the empty one. Walks one-element
/// extensions with a branch-and-bound cut; deliberately a different route
/// than the matching behind [`Poset::width`].
pub fn antichain_rank(p: &Poset, cap: usize) -> Result<usize> {
    if p.len() > cap {
        return Err(Error::SizeLimitExceeded {
            needed: p.len(),
            cap,
        });
    }
    fn dfs(p: &Poset, depth: usize, candidates: &[ElemId], best: &mut usize) {
        *best = (*best).max(depth);
        if depth + candidates.len() <= *best {
            return;
        }
        for (k, &x) in candidates.iter().enumerate() {
            let next: Vec<ElemId> = candidates[k + 1..]
                .iter()
                .copied()
                .filter(|&y| !p.comparable(x, y))
                .collect();
            dfs(p, depth + 1, &next, best);
        }
    }
    let all: Vec<ElemId> = p.elements().collect();
    let mut best = 0;
    dfs(p, 0, &all, &mut best);
    Ok(best)
}

/// A Hausdorff-style decomposition: spine points p_β with convex blocks Z_β
/// partitioning the poset.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub poset: Poset,
    pub spine: Vec<ElemId>,
    pub blocks: Vec<Vec<ElemId>>,
}

/// Builds a decomposition. With `coalesce` off this is the always-valid
/// singleton decomposition; with it on, greedy passes merge blocks into
/// covering blocks whenever the verifier still passes afterwards.
pub fn decompose(p: &Poset, coalesce: bool) -> Decomposition {
    let mut spine: Vec<ElemId> = p.elements().collect();
    let mut blocks: Vec<Vec<ElemId>> = spine.iter().map(|&x| vec![x]).collect();
    if coalesce {
        loop {
            let mut merged_in_pass = false;
            let mut beta = 0;
            while beta < spine.len() {
                let pb = spine[beta];
                let mut merged_here = false;
                for gamma in 0..spine.len() {
                    if gamma == beta || !p.lt(pb, spine[gamma]) {
                        continue;
                    }
                    // only merge into a spine point covering pb within the
                    // current spine
                    if spine
                        .iter()
                        .any(|&q| q != pb && q != spine[gamma] && p.lt(pb, q) && p.lt(q, spine[gamma]))
                    {
                        continue;
                    }
                    let mut trial_spine = spine.clone();
                    let mut trial_blocks = blocks.clone();
                    let absorbed = trial_blocks[beta].clone();
                    trial_blocks[gamma].extend(absorbed);
                    trial_blocks[gamma].sort_unstable();
                    trial_spine.remove(beta);
                    trial_blocks.remove(beta);
                    let trial = Decomposition {
                        poset: p.clone(),
                        spine: trial_spine,
                        blocks: trial_blocks,
                    };
                    if check_decomposition(p, &trial).passed() {
                        spine = trial.spine;
                        blocks = trial.blocks;
                        merged_in_pass = true;
                        merged_here = true;
                        break;
                    }
                }
                // a merge removed the current index; the next spine point
                // slid into it, so only advance when nothing merged
                if !merged_here {
                    beta += 1;
                }
            }
            if !merged_in_pass {
                break;
            }
        }
    }
    Decomposition {
        poset: p.clone(),
        spine,
        blocks,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ClauseStatus {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseReport {
    pub clause: String,
    pub status: ClauseStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub clauses: Vec<ClauseReport>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| matches!(c.status, ClauseStatus::Pass))
    }
}

/// Verifies partition, convexity-with-maximum, and the lex-sum containment
/// (the poset must augment the lexicographic sum of its blocks along the
/// spine order). Violations are report content, not errors.
pub fn check_decomposition(p: &Poset, d: &Decomposition) -> DecompositionReport {
    let mut clauses = Vec::new();

    // partition
    let partition_status = (|| {
        if d.spine.len() != d.blocks.len() {
            return ClauseStatus::Fail {
                witness: format!(
                    "{} spine points vs {} blocks",
                    d.spine.len(),
                    d.blocks.len()
                ),
            };
        }
        let mut owner = vec![usize::MAX; p.len()];
        for (beta, z) in d.blocks.iter().enumerate() {
            for &x in z {
                if x >= p.len() {
                    return ClauseStatus::Fail {
                        witness: format!("#{x} outside the poset"),
                    };
                }
                if owner[x] != usize::MAX {
                    return ClauseStatus::Fail {
                        witness: format!("{} lies in two blocks", p.label(x)),
                    };
                }
                owner[x] = beta;
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return ClauseStatus::Fail {
                witness: format!("{} is uncovered", p.label(x)),
            };
        }
        ClauseStatus::Pass
    })();
    let partition_ok = partition_status == ClauseStatus::Pass;
    clauses.push(ClauseReport {
        clause: "partition".into(),
        status: partition_status,
    });

    // convexity with designated maximum
    let convex_status = (|| {
        for (beta, z) in d.blocks.iter().enumerate() {
            let pb = match d.spine.get(beta) {
                Some(&pb) => pb,
                None => continue,
            };
            if !z.contains(&pb) {
                return ClauseStatus::Fail {
                    witness: format!("spine point {} outside its block", p.label(pb)),
                };
            }
            for &x in z {
                if !p.le(x, pb) {
                    return ClauseStatus::Fail {
                        witness: format!(
                            "{} not below the block maximum {}",
                            p.label(x),
                            p.label(pb)
                        ),
                    };
                }
            }
            // convex iff no outside point sits strictly between two members
            for mid in p.elements() {
                if z.contains(&mid) {
                    continue;
                }
                let below = z.iter().find(|&&x| p.lt(x, mid));
                let above = z.iter().find(|&&y| p.lt(mid, y));
                if let (Some(&x), Some(&y)) = (below, above) {
                    return ClauseStatus::Fail {
                        witness: format!(
                            "({}, {}, {}) breaks convexity",
                            p.label(x),
                            p.label(mid),
                            p.label(y)
                        ),
                    };
                }
            }
        }
        ClauseStatus::Pass
    })();
    let convex_ok = convex_status == ClauseStatus::Pass;
    clauses.push(ClauseReport {
        clause: "convex-with-max".into(),
        status: convex_status,
    });

    // lex-sum containment via augmentation against the assembled sum
    let containment_status = if !(partition_ok && convex_ok) {
        ClauseStatus::Skipped {
            reason: "needs a valid partition of convex blocks".into(),
        }
    } else {
        match containment_via_augmentation(p, d) {
            Ok(true) => ClauseStatus::Pass,
            Ok(false) => {
                let witness = containment_witness(p, d)
                    .map(|(x, y)| format!("({}, {})", p.label(x), p.label(y)))
                    .unwrap_or_else(|| "augmentation failed".into());
                ClauseStatus::Fail { witness }
            }
            Err(e) => ClauseStatus::Fail {
                witness: format!("lex sum not constructible: {e}"),
            },
        }
    };
    clauses.push(ClauseReport {
        clause: "lex-sum-containment".into(),
        status: containment_status,
    });

    DecompositionReport { clauses }
}

fn containment_via_augmentation(p: &Poset, d: &Decomposition) -> Result<bool> {
    // order the spine ascending by id so blocks line up with the index
    let mut order: Vec<usize> = (0..d.spine.len()).collect();
    order.sort_by_key(|&i| d.spine[i]);
    let spine_ids: Vec<ElemId> = order.iter().map(|&i| d.spine[i]).collect();
    let index = p.restrict(&spine_ids)?;
    let parts: Vec<Poset> = order
        .iter()
        .map(|&i| p.restrict(&d.blocks[i]))
        .collect::<Result<_>>()?;
    let sum = lex_sum_labeled(&index, &parts, DEFAULT_CAP, |_, part, x| {
        part.label(x).to_string()
    })?;
    Ok(p.augments(&sum))
}

fn containment_witness(p: &Poset, d: &Decomposition) -> Option<(ElemId, ElemId)> {
    for (beta, zb) in d.blocks.iter().enumerate() {
        for (gamma, zg) in d.blocks.iter().enumerate() {
            if beta == gamma || !p.lt(d.spine[beta], d.spine[gamma]) {
                continue;
            }
            for &x in zb {
                for &y in zg {
                    if !p.lt(x, y) {
                        return Some((x, y));
                    }
                }
            }
        }
    }
    None
}

/// The spine with its induced order. Finite, hence trivially wqo; genuine
/// alpha-wqo certification stays out of finite reach.
pub fn spine_of(d: &Decomposition) -> Result<Poset> {
    d.poset.restrict(&d.spine)
}
