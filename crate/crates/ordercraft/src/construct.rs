//! Derived orders: coordinatewise products, lexicographic sums, the Rado
//! truncations and the domination order on subsets.

use crate::downsets::check_dense_budget;
use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset};

/// Coordinatewise product. Element `i * |q| + j` is the pair (i, j), with
/// labels "(x,y)".
pub fn product(p: &Poset, q: &Poset, cap: usize) -> Result<Poset> {
    let needed = p
        .len()
        .checked_mul(q.len())
        .ok_or(Error::SizeLimitExceeded { needed: usize::MAX, cap })?;
    if needed > cap {
        return Err(Error::SizeLimitExceeded { needed, cap });
    }
    check_dense_budget(needed)?;
    let mut labels = Vec::with_capacity(needed);
    for i in p.elements() {
        for j in q.elements() {
            labels.push(format!("({},{})", p.label(i), q.label(j)));
        }
    }
    let qn = q.len();
    Poset::from_leq_fn(labels, |a, b| {
        p.le(a / qn, b / qn) && q.le(a % qn, b % qn)
    })
}

/// Lexicographic sum of `parts` along `index`: (q, x) ≤ (q', x') iff
/// q < q' in the index, or q = q' and x ≤ x' inside the part.
///
/// Labels default to "index.part"; `lex_sum_labeled` lets callers keep the
/// part labels when they are globally unique.
pub fn lex_sum(index: &Poset, parts: &[Poset], cap: usize) -> Result<Poset> {
    lex_sum_labeled(index, parts, cap, |q, part, x| {
        format!("{}.{}", index.label(q), part.label(x))
    })
}

pub fn lex_sum_labeled(
    index: &Poset,
    parts: &[Poset],
    cap: usize,
    label: impl Fn(ElemId, &Poset, ElemId) -> String,
) -> Result<Poset> {
    if parts.len() != index.len() {
        let missing = parts.len().min(index.len());
        return Err(Error::MissingPart(
            index
                .labels()
                .get(missing)
                .cloned()
                .unwrap_or_else(|| format!("#{missing}")),
        ));
    }
    let needed: usize = parts.iter().map(Poset::len).sum();
    if needed > cap {
        return Err(Error::SizeLimitExceeded { needed, cap });
    }
    check_dense_budget(needed)?;
    let mut labels = Vec::with_capacity(needed);
    let mut owner: Vec<(ElemId, ElemId)> = Vec::with_capacity(needed);
    for (q, part) in parts.iter().enumerate() {
        for x in part.elements() {
            labels.push(label(q, part, x));
            owner.push((q, x));
        }
    }
    Poset::from_leq_fn(labels, |a, b| {
        let ((qa, xa), (qb, xb)) = (owner[a], owner[b]);
        index.lt(qa, qb) || (qa == qb && parts[qa].le(xa, xb))
    })
}

/// Rado's order truncated to pairs (a, b) with 0 ≤ a < b ≤ n:
/// (a,b) ≤ (c,d) iff a = c and b ≤ d, or b < c. Labels are "(a,b)".
pub fn rado_truncation(n: u32) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidArgument("rado truncation needs N >= 1".into()));
    }
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..=n {
            pairs.push((a, b));
        }
    }
    let labels = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    Poset::from_leq_fn(labels, |i, j| rado_leq(pairs[i], pairs[j]))
}

pub fn rado_leq((a, b): (u32, u32), (c, d): (u32, u32)) -> bool {
    (a == c && b <= d) || b < c
}

/// The factor poset of the domination order on subsets. Every class is
/// represented by its canonical antichain of maximal elements; the empty
/// antichain is the bottom class.
#[derive(Debug, Clone)]
pub struct DominationOrder {
    pub poset: Poset,
    /// Canonical antichain representative per class id, sorted.
    pub classes: Vec<Vec<ElemId>>,
    ambient: Poset,
}

impl DominationOrder {
    /// Class id of an arbitrary subset.
    pub fn class_of(&self, subset: &[ElemId]) -> Result<ElemId> {
        let mut reps = self.ambient.maximals(subset)?;
        reps.sort_unstable();
        self.classes
            .iter()
            .position(|c| *c == reps)
            .ok_or_else(|| Error::UnknownElement(format!("{subset:?}")))
    }

    /// A ≤* B directly on subsets.
    pub fn dominates(&self, a: &[ElemId], b: &[ElemId]) -> bool {
        dominated(&self.ambient, a, b)
    }
}

pub(crate) fn dominated(p: &Poset, a: &[ElemId], b: &[ElemId]) -> bool {
    a.iter().all(|&x| b.iter().any(|&y| p.le(x, y)))
}

/// Builds the domination order of `p`. Classes are exactly the antichains
/// of `p` (via maximal-element representatives).
pub fn domination_order(p: &Poset, cap: usize) -> Result<DominationOrder> {
    if p.len() > cap {
        return Err(Error::SizeLimitExceeded {
            needed: p.len(),
            cap,
        });
    }
    // enumerate antichains as canonical class representatives
    let mut classes: Vec<Vec<ElemId>> = Vec::new();
    let mut stack: Vec<Vec<ElemId>> = vec![Vec::new()];
    while let Some(a) = stack.pop() {
        classes.push(a.clone());
        if classes.len() > cap {
            return Err(Error::SizeLimitExceeded {
                needed: classes.len(),
                cap,
            });
        }
        let start = a.last().map_or(0, |&x| x + 1);
        for x in start..p.len() {
            if a.iter().all(|&y| !p.comparable(x, y)) {
                let mut next = a.clone();
                next.push(x);
                stack.push(next);
            }
        }
    }
    classes.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    check_dense_budget(classes.len())?;
    let labels = classes
        .iter()
        .map(|c| crate::downsets::set_label(p, c))
        .collect();
    let poset = Poset::from_leq_fn(labels, |i, j| dominated(p, &classes[i], &classes[j]))?;
    Ok(DominationOrder {
        poset,
        classes,
        ambient: p.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{BuildMode, PosetMap};
    use crate::DEFAULT_CAP;

    #[test]
    fn product_of_chains_is_diamond() {
        let c = Poset::chain(2);
        let p = product(&c, &c, DEFAULT_CAP).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.width(), 2);
        // (0,1) and (1,0) are ids 1 and 2
        assert!(!p.comparable(1, 2));
        // bottom (0,0) and top (1,1)
        assert!(p.le(0, 3));
    }

    #[test]
    fn product_with_singleton_is_isomorphic_copy() {
        let d = Poset::build(
            vec!["x".into(), "y".into(), "z".into()],
            &[("x".into(), "y".into())],
            BuildMode::Covers,
        )
        .unwrap();
        let one = Poset::chain(1);
        let p = product(&d, &one, DEFAULT_CAP).unwrap();
        assert_eq!(p.len(), d.len());
        for a in d.elements() {
            for b in d.elements() {
                assert_eq!(p.le(a, b), d.le(a, b));
            }
        }
    }

    #[test]
    fn product_respects_cap() {
        let c = Poset::chain(10);
        assert!(matches!(
            product(&c, &c, 50).unwrap_err(),
            Error::SizeLimitExceeded { needed: 100, cap: 50 }
        ));
    }

    #[test]
    fn lex_sum_over_antichain_is_disjoint_union() {
        let idx = Poset::antichain(2);
        let s = lex_sum(&idx, &[Poset::chain(2), Poset::chain(2)], DEFAULT_CAP).unwrap();
        assert_eq!(s.len(), 4);
        // no relations across the two parts
        for a in 0..2 {
            for b in 2..4 {
                assert!(!s.comparable(a, b));
            }
        }
    }

    #[test]
    fn lex_sum_of_singletons_over_chain_is_chain() {
        let idx = Poset::chain(4);
        let parts: Vec<Poset> = (0..4).map(|_| Poset::chain(1)).collect();
        let s = lex_sum(&idx, &parts, DEFAULT_CAP).unwrap();
        assert_eq!(s.width(), 1);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn lex_sum_stacks_antichains_over_chain() {
        let idx = Poset::chain(2);
        let s = lex_sum(&idx, &[Poset::antichain(2), Poset::antichain(2)], DEFAULT_CAP).unwrap();
        assert_eq!(s.len(), 4);
        for a in 0..2 {
            for b in 2..4 {
                assert!(s.lt(a, b), "every bottom element sits below every top element");
            }
        }
        assert!(!s.comparable(0, 1));
        assert!(!s.comparable(2, 3));
    }

    #[test]
    fn lex_sum_missing_part() {
        let idx = Poset::chain(2);
        assert!(matches!(
            lex_sum(&idx, &[Poset::chain(1)], DEFAULT_CAP).unwrap_err(),
            Error::MissingPart(_)
        ));
    }

    #[test]
    fn rado_golden_comparisons() {
        assert!(rado_leq((0, 1), (0, 2)));
        assert!(rado_leq((1, 3), (4, 7)));
        assert!(!rado_leq((0, 5), (1, 3)));
        assert!(!rado_leq((1, 3), (0, 5)));
        let p = rado_truncation(4).unwrap();
        assert_eq!(p.len(), 10);
    }

    #[test]
    fn rado_rows_are_chains_and_pairwise_rule_holds() {
        let n = 8u32;
        let mut pairs = Vec::new();
        for a in 0..n {
            for b in a + 1..=n {
                pairs.push((a, b));
            }
        }
        let p = rado_truncation(n).unwrap();
        for (i, &x) in pairs.iter().enumerate() {
            for (j, &y) in pairs.iter().enumerate() {
                assert_eq!(p.le(i, j), rado_leq(x, y));
                if x.0 == y.0 {
                    assert!(p.comparable(i, j), "rows are chains");
                } else if x.0 < y.0 {
                    // distinct first coordinates: incomparable iff neither
                    // second coordinate clears the other's first
                    let incomparable = !(x.1 < y.0) && !(y.1 < x.0);
                    assert_eq!(!p.comparable(i, j), incomparable);
                }
            }
        }
    }

    #[test]
    fn domination_of_two_chain_has_three_classes() {
        let c = Poset::chain(2);
        let d = domination_order(&c, DEFAULT_CAP).unwrap();
        assert_eq!(d.poset.len(), 3);
        assert_eq!(
            d.class_of(&[0, 1]).unwrap(),
            d.class_of(&[1]).unwrap(),
            "{{0,1}} and {{1}} share a class"
        );
        let empty = d.class_of(&[]).unwrap();
        for i in d.poset.elements() {
            assert!(d.poset.le(empty, i), "empty class is the bottom");
        }
    }

    #[test]
    fn singleton_classes_embed_the_poset() {
        let p = Poset::build(
            vec!["bot".into(), "a".into(), "b".into(), "top".into()],
            &[
                ("bot".into(), "a".into()),
                ("bot".into(), "b".into()),
                ("a".into(), "top".into()),
                ("b".into(), "top".into()),
            ],
            BuildMode::Covers,
        )
        .unwrap();
        let d = domination_order(&p, DEFAULT_CAP).unwrap();
        let assignment: Vec<ElemId> = p
            .elements()
            .map(|x| d.class_of(&[x]).unwrap())
            .collect();
        let m = PosetMap::new(p, d.poset.clone(), assignment).unwrap();
        assert!(m.is_order_preserving());
        assert!(m.is_order_generating());
    }

    #[test]
    fn domination_respects_maximal_representatives() {
        // brute force on posets of size <= 5: A <=* B iff max(A) <=* max(B)
        for p in [Poset::chain(4), Poset::antichain(4), Poset::chain(5)] {
            let n = p.len();
            let subsets: Vec<Vec<ElemId>> = (0..1u32 << n)
                .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
                .collect();
            for a in &subsets {
                for b in &subsets {
                    let ma = p.maximals(a).unwrap();
                    let mb = p.maximals(b).unwrap();
                    assert_eq!(
                        dominated(&p, a, b),
                        dominated(&p, &ma, &mb),
                        "maximal representatives must preserve domination"
                    );
                }
            }
        }
    }
}
