//! Deterministic instance generators for the property suites and tests:
//! random posets, the exhaustive small-poset catalog up to isomorphism,
//! random pointed families and random nets.

use std::sync::Arc;

use rand::Rng;

use crate::cover::{Transition, Vass};
use crate::ds::{DsFamily, Pointed};
use crate::error::Result;
use crate::poset::{BuildMode, ElemId, Poset};

/// Random poset on `n` elements: the strict upper triangle is sampled with
/// the given density and transitively closed, so ids form a linear
/// extension.
pub fn random_poset(rng: &mut impl Rng, n: usize, density: f64) -> Poset {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_pairs(labels, &pairs, BuildMode::Covers).expect("upper triangle is acyclic")
}

/// Every poset on exactly `n` elements, one per isomorphism class.
/// Enumerates transitively closed strict upper triangles (every finite
/// poset admits a linear extension) and dedupes by the minimal relation
/// encoding over all permutations.
pub fn poset_catalog(n: usize) -> Vec<Poset> {
    assert!(n <= 6, "catalog enumeration is exponential");
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << slots.len() {
        let mut rel = vec![false; n * n];
        for (b, &(i, j)) in slots.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rel[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| {
                !rel[i * n + j]
                    || (0..n).all(|k| !rel[j * n + k] || rel[i * n + k])
            })
        });
        if !transitive {
            continue;
        }
        if seen.insert(canonical_key(&rel, n)) {
            let labels = (0..n).map(|i| i.to_string()).collect();
            let pairs: Vec<(ElemId, ElemId)> = slots
                .iter()
                .filter(|&&(i, j)| rel[i * n + j])
                .copied()
                .collect();
            out.push(
                Poset::from_pairs(labels, &pairs, BuildMode::Relation)
                    .expect("closed triangle is a poset"),
            );
        }
    }
    out
}

/// All posets with at most `n_max` elements, up to isomorphism.
pub fn poset_catalog_upto(n_max: usize) -> Vec<Poset> {
    (0..=n_max).flat_map(poset_catalog).collect()
}

fn canonical_key(rel: &[bool], n: usize) -> u64 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permute(&mut perm, 0, &mut |p| {
        let mut key = 0u64;
        for i in 0..n {
            for j in 0..n {
                key <<= 1;
                if rel[p[i] * n + p[j]] {
                    key |= 1;
                }
            }
        }
        best = best.min(key);
    });
    best
}

fn permute(xs: &mut [usize], k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Random pointed poset: a random order with a fresh bottom adjoined, so
/// the zero is the unique minimum. Element 0 is the zero.
pub fn random_pointed(rng: &mut impl Rng, max_extra: usize) -> Pointed {
    let extra = rng.gen_range(0..=max_extra);
    let inner = random_poset(rng, extra, 0.4);
    let labels: Vec<String> = std::iter::once("0".to_string())
        .chain(inner.labels().iter().map(|l| format!("p{l}")))
        .collect();
    let mut pairs: Vec<(ElemId, ElemId)> = (1..=extra).map(|i| (0, i)).collect();
    for (x, y) in inner.strict_pairs() {
        pairs.push((x + 1, y + 1));
    }
    Pointed {
        poset: Poset::from_pairs(labels, &pairs, BuildMode::Covers).expect("bottom keeps it acyclic"),
        zero: 0,
    }
}

/// Random family: index of at most `max_index` elements, every component a
/// pointed poset with at most `max_component` elements.
pub fn random_family(
    rng: &mut impl Rng,
    max_index: usize,
    max_component: usize,
    linear_index: bool,
) -> Result<Arc<DsFamily>> {
    let k = rng.gen_range(1..=max_index);
    let index = if linear_index {
        Poset::chain(k)
    } else {
        random_poset(rng, k, 0.4)
    };
    let components = (0..k)
        .map(|_| random_pointed(rng, max_component.saturating_sub(1)))
        .collect();
    Ok(Arc::new(DsFamily::new(index, components)?))
}

/// Per-coordinate caps keeping the fragment at or below `budget` vectors.
pub fn budgeted_caps(family: &DsFamily, budget: usize) -> Vec<usize> {
    let mut caps = family.full_caps();
    let mut product: usize = caps.iter().product();
    let mut i = 0;
    while product > budget && i < caps.len() * 8 {
        let coord = i % caps.len();
        if caps[coord] > 1 {
            product = product / caps[coord] * (caps[coord] - 1);
            caps[coord] -= 1;
        }
        i += 1;
    }
    caps
}

/// Random guarded net plus an init/target query, with entries bounded by
/// `max_entry`.
pub fn random_vass(
    rng: &mut impl Rng,
    max_dim: usize,
    max_transitions: usize,
    max_entry: u64,
) -> (Vass, Vec<u64>, Vec<u64>) {
    let dim = rng.gen_range(1..=max_dim);
    let n_trans = rng.gen_range(1..=max_transitions);
    let transitions = (0..n_trans)
        .map(|_| {
            let guard: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..=max_entry)).collect();
            let delta: Vec<i64> = guard
                .iter()
                .map(|&g| rng.gen_range(-(g as i64)..=max_entry as i64))
                .collect();
            Transition { guard, delta }
        })
        .collect();
    let v = Vass::new(dim, transitions).expect("deltas bounded below by guards");
    let init = (0..dim).map(|_| rng.gen_range(0..=max_entry)).collect();
    let target = (0..dim).map(|_| rng.gen_range(0..=max_entry)).collect();
    (v, init, target)
}
