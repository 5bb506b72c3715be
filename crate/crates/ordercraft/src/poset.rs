//! Finite posets stored as dense transitively-closed relation matrices,
//! plus the order-theoretic primitives the rest of the crate consumes.
//!
//! Elements are stable small integer ids assigned at build time; labels are
//! cosmetic. All values are immutable after construction and all operations
//! are pure, so they can be shared freely across workers.

use crate::bits;
use crate::error::{Error, Result};

/// Stable element id inside one poset.
pub type ElemId = usize;

/// How input pairs are interpreted by [`Poset::build`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMode {
    /// Pairs are cover (or any generating) edges; the closure is computed.
    Covers,
    /// Pairs already describe a relation, which must be antisymmetric.
    Relation,
}

/// A finite partial order. The `le` matrix is kept reflexive, antisymmetric
/// and transitively closed at all times.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    words: usize,
    le: Vec<u64>,
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset({:?}, pairs={:?})", self.labels, self.strict_pairs())
    }
}

impl Poset {
    /// Builds a poset from labelled elements and label pairs.
    ///
    /// The result is the reflexive-transitive closure of the input; inputs
    /// whose closure would break antisymmetry are rejected with
    /// [`Error::CycleDetected`].
    pub fn build(
        labels: Vec<String>,
        pairs: &[(String, String)],
        mode: BuildMode,
    ) -> Result<Poset> {
        let mut seen = std::collections::HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let mut id_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let x = *seen
                .get(a)
                .ok_or_else(|| Error::UnknownElement(a.clone()))?;
            let y = *seen
                .get(b)
                .ok_or_else(|| Error::UnknownElement(b.clone()))?;
            id_pairs.push((x, y));
        }
        Self::from_pairs(labels, &id_pairs, mode)
    }

    /// Id-based variant of [`Poset::build`].
    pub fn from_pairs(
        labels: Vec<String>,
        pairs: &[(ElemId, ElemId)],
        mode: BuildMode,
    ) -> Result<Poset> {
        let n = labels.len();
        let words = bits::words_for(n);
        let mut le = vec![0u64; n * words];
        for i in 0..n {
            bits::set(&mut le[i * words..(i + 1) * words], i);
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::UnknownElement(format!("#{}", x.max(y))));
            }
            if mode == BuildMode::Relation && x != y && bits::get(&le[y * words..], x) {
                return Err(Error::CycleDetected(labels[x].clone(), labels[y].clone()));
            }
            bits::set(&mut le[x * words..(x + 1) * words], y);
        }
        // Warshall closure over bit rows.
        for k in 0..n {
            for i in 0..n {
                if i != k && bits::get(&le[i * words..], k) {
                    let (head, tail) = le.split_at_mut(i.max(k) * words);
                    let (row_i, row_k) = if i < k {
                        (&mut head[i * words..(i + 1) * words], &tail[..words])
                    } else {
                        (&mut tail[..words], &head[k * words..(k + 1) * words])
                    };
                    bits::or_into(row_i, row_k);
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if bits::get(&le[x * words..], y) && bits::get(&le[y * words..], x) {
                    return Err(Error::CycleDetected(labels[x].clone(), labels[y].clone()));
                }
            }
        }
        Ok(Poset { labels, words, le })
    }

    /// Builds directly from a closed relation matrix; validates the partial
    /// order laws.
    pub fn from_leq_fn(labels: Vec<String>, leq: impl Fn(ElemId, ElemId) -> bool) -> Result<Poset> {
        let n = labels.len();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        let p = Self::from_pairs(labels, &pairs, BuildMode::Relation)?;
        // The closure must not have added anything, otherwise the input
        // relation was not transitive.
        for x in 0..n {
            for y in 0..n {
                if p.le(x, y) != (x == y || leq(x, y)) {
                    return Err(Error::InvalidArgument(format!(
                        "relation not transitively closed at ({}, {})",
                        p.label(x),
                        p.label(y)
                    )));
                }
            }
        }
        Ok(p)
    }

    /// Chain 0 < 1 < … < n-1 with decimal labels.
    pub fn chain(n: usize) -> Poset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(labels, &pairs, BuildMode::Covers).expect("chain is acyclic")
    }

    /// Antichain on n elements with decimal labels.
    pub fn antichain(n: usize) -> Poset {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_pairs(labels, &[], BuildMode::Covers).expect("antichain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.len()
    }

    pub fn label(&self, x: ElemId) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Id of the element carrying `label`.
    pub fn id_of(&self, label: &str) -> Result<ElemId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    fn row(&self, x: ElemId) -> &[u64] {
        &self.le[x * self.words..(x + 1) * self.words]
    }

    /// x ≤ y. Ids must be in range.
    pub fn le(&self, x: ElemId, y: ElemId) -> bool {
        bits::get(self.row(x), y)
    }

    /// x ≤ y with id validation.
    pub fn try_le(&self, x: ElemId, y: ElemId) -> Result<bool> {
        self.check_ids(&[x, y])?;
        Ok(self.le(x, y))
    }

    pub fn lt(&self, x: ElemId, y: ElemId) -> bool {
        x != y && self.le(x, y)
    }

    pub fn comparable(&self, x: ElemId, y: ElemId) -> bool {
        self.le(x, y) || self.le(y, x)
    }

    fn check_ids(&self, ids: &[ElemId]) -> Result<()> {
        for &x in ids {
            if x >= self.len() {
                return Err(Error::UnknownElement(format!("#{x}")));
            }
        }
        Ok(())
    }

    /// Minimal elements of the subset `s`: members with no strictly smaller
    /// member of `s`. The result is an antichain and every element of `s`
    /// dominates some returned element.
    pub fn minimals(&self, s: &[ElemId]) -> Result<Vec<ElemId>> {
        self.check_ids(s)?;
        Ok(minimal_elements(s, |x, y| self.le(x, y)))
    }

    /// Maximal elements of the subset `s`.
    pub fn maximals(&self, s: &[ElemId]) -> Result<Vec<ElemId>> {
        self.check_ids(s)?;
        Ok(minimal_elements(s, |x, y| self.le(y, x)))
    }

    /// Splits the poset around `q` into the comparable cone and the
    /// incomparable cone. `q` itself lands in the comparable part.
    pub fn cones(&self, q: ElemId) -> Result<Cones> {
        self.check_ids(&[q])?;
        let (mut parallel, mut perp) = (Vec::new(), Vec::new());
        for r in self.elements() {
            if self.comparable(q, r) {
                parallel.push(r);
            } else {
                perp.push(r);
            }
        }
        Ok(Cones { parallel, perp })
    }

    /// Induced suborder on `s`. New ids follow the ascending order of the
    /// old ids in `s`; labels are preserved.
    pub fn restrict(&self, s: &[ElemId]) -> Result<Poset> {
        self.check_ids(s)?;
        let mut keep: Vec<ElemId> = s.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let words = bits::words_for(keep.len());
        let mut le = vec![0u64; keep.len() * words];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.le(x, y) {
                    bits::set(&mut le[i * words..(i + 1) * words], j);
                }
            }
        }
        Ok(Poset { labels, words, le })
    }

    /// Same elements with the order turned around.
    pub fn reverse(&self) -> Poset {
        let n = self.len();
        let words = self.words;
        let mut le = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                if self.le(y, x) {
                    bits::set(&mut le[x * words..(x + 1) * words], y);
                }
            }
        }
        Poset {
            labels: self.labels.clone(),
            words,
            le,
        }
    }

    /// True iff `self` has the same element set (matched by label) as
    /// `other` and every relation of `other` also holds in `self`.
    pub fn augments(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut map = Vec::with_capacity(other.len());
        for l in other.labels.iter() {
            match self.labels.iter().position(|m| m == l) {
                Some(i) => map.push(i),
                None => return false,
            }
        }
        for x in other.elements() {
            for y in other.elements() {
                if other.le(x, y) && !self.le(map[x], map[y]) {
                    return false;
                }
            }
        }
        true
    }

    /// All strict pairs (x, y) with x < y, in id order.
    pub fn strict_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Cover edges (x, y): x < y with nothing strictly in between.
    pub fn cover_pairs(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y)
                    && !self
                        .elements()
                        .any(|z| z != x && z != y && self.le(x, z) && self.le(z, y))
                {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Down-closure of `s` inside the whole poset.
    pub fn down_closure(&self, s: &[ElemId]) -> Result<Vec<ElemId>> {
        self.check_ids(s)?;
        let mut out: Vec<ElemId> = self
            .elements()
            .filter(|&x| s.iter().any(|&y| self.le(x, y)))
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Size of a maximum antichain, via the chain-cover route: a maximum
    /// bipartite matching on the strict relation yields a minimum chain
    /// cover, whose size equals the width.
    pub fn width(&self) -> usize {
        let n = self.len();
        if n == 0 {
            return 0;
        }
        // match_to[v] = u means chain edge u -> v is in the matching
        let mut match_to: Vec<Option<ElemId>> = vec![None; n];
        let mut match_from: Vec<Option<ElemId>> = vec![None; n];
        fn augment(
            p: &Poset,
            u: ElemId,
            seen: &mut [bool],
            match_to: &mut [Option<ElemId>],
            match_from: &mut [Option<ElemId>],
        ) -> bool {
            for v in p.elements() {
                if p.lt(u, v) && !seen[v] {
                    seen[v] = true;
                    let free = match match_to[v] {
                        None => true,
                        Some(w) => augment(p, w, seen, match_to, match_from),
                    };
                    if free {
                        match_to[v] = Some(u);
                        match_from[u] = Some(v);
                        return true;
                    }
                }
            }
            false
        }
        let mut matched = 0;
        for u in self.elements() {
            let mut seen = vec![false; n];
            if augment(self, u, &mut seen, &mut match_to, &mut match_from) {
                matched += 1;
            }
        }
        n - matched
    }
}

/// The two cones around an element: everything comparable and everything
/// incomparable with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cones {
    pub parallel: Vec<ElemId>,
    pub perp: Vec<ElemId>,
}

/// Generic minimal-element reduction over an arbitrary comparator. This is
/// the one primitive shared by subset minimals, upward-basis reduction and
/// domination classes.
pub fn minimal_elements<T: Copy>(items: &[T], le: impl Fn(T, T) -> bool) -> Vec<T> {
    let mut out: Vec<T> = Vec::new();
    'outer: for (i, &x) in items.iter().enumerate() {
        for (j, &y) in items.iter().enumerate() {
            if i == j {
                continue;
            }
            // y strictly below x, or a duplicate that appeared earlier
            let below = le(y, x) && !le(x, y);
            let dup_earlier = j < i && le(y, x) && le(x, y);
            if below || dup_earlier {
                continue 'outer;
            }
        }
        out.push(x);
    }
    out
}

/// A total assignment from the elements of `source` to elements of `target`.
#[derive(Debug, Clone)]
pub struct PosetMap {
    pub source: Poset,
    pub target: Poset,
    pub assignment: Vec<ElemId>,
}

impl PosetMap {
    pub fn new(source: Poset, target: Poset, assignment: Vec<ElemId>) -> Result<PosetMap> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "assignment covers {} of {} source elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&y| y >= target.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(PosetMap {
            source,
            target,
            assignment,
        })
    }

    pub fn apply(&self, x: ElemId) -> ElemId {
        self.assignment[x]
    }

    /// p ≤ p' implies m(p) ≤ m(p').
    pub fn is_order_preserving(&self) -> bool {
        self.source.elements().all(|p| {
            self.source.elements().all(|q| {
                !self.source.le(p, q) || self.target.le(self.assignment[p], self.assignment[q])
            })
        })
    }

    /// m(p) ≤ m(p') implies p ≤ p'.
    pub fn is_order_generating(&self) -> bool {
        self.source.elements().all(|p| {
            self.source.elements().all(|q| {
                !self.target.le(self.assignment[p], self.assignment[q]) || self.source.le(p, q)
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.assignment {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &y in &self.assignment {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// A finite list of elements of one ambient poset, inspected for good pairs.
#[derive(Debug, Clone)]
pub struct ElementSequence {
    pub ambient: Poset,
    pub items: Vec<ElemId>,
}

impl ElementSequence {
    pub fn new(ambient: Poset, items: Vec<ElemId>) -> Result<ElementSequence> {
        if let Some(&bad) = items.iter().find(|&&x| x >= ambient.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(ElementSequence { ambient, items })
    }

    /// Lexicographically least (i, j) with i < j and s_i ≤ s_j; `None`
    /// exactly when the sequence is bad.
    pub fn find_good_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.items.len() {
            for j in i + 1..self.items.len() {
                if self.ambient.le(self.items[i], self.items[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    /// Diamond ⊥ < a, b < ⊤ with ids 0=⊥, 1=a, 2=b, 3=⊤.
    pub(crate) fn diamond() -> Poset {
        Poset::build(
            labels(&["bot", "a", "b", "top"]),
            &[
                ("bot".into(), "a".into()),
                ("bot".into(), "b".into()),
                ("a".into(), "top".into()),
                ("b".into(), "top".into()),
            ],
            BuildMode::Covers,
        )
        .unwrap()
    }

    #[test]
    fn build_three_chain_closes_transitively() {
        let p = Poset::build(
            labels(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
            BuildMode::Covers,
        )
        .unwrap();
        assert!(p.le(0, 2), "closure must relate the endpoints");
        assert!(p.le(0, 0) && p.le(1, 1) && p.le(2, 2));
        assert!(!p.le(2, 0));
    }

    #[test]
    fn build_singleton() {
        let p = Poset::build(labels(&["a"]), &[], BuildMode::Covers).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.le(0, 0));
    }

    #[test]
    fn build_rejects_two_cycle() {
        let err = Poset::build(
            labels(&["a", "b"]),
            &[("a".into(), "b".into()), ("b".into(), "a".into())],
            BuildMode::Relation,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
    }

    #[test]
    fn build_rejects_longer_cycle_in_covers_mode() {
        let err = Poset::build(
            labels(&["a", "b", "c"]),
            &[
                ("a".into(), "b".into()),
                ("b".into(), "c".into()),
                ("c".into(), "a".into()),
            ],
            BuildMode::Covers,
        )
        .unwrap_err();
        assert!(matches!(err, Error::CycleDetected(..)));
    }

    #[test]
    fn build_rejects_unknown_labels() {
        let err = Poset::build(labels(&["a"]), &[("a".into(), "z".into())], BuildMode::Covers)
            .unwrap_err();
        assert!(matches!(err, Error::UnknownElement(_)));
    }

    #[test]
    fn leq_chain_and_antichain() {
        let c = Poset::chain(3);
        assert!(c.le(0, 2));
        assert!(!c.le(2, 0));
        let a = Poset::antichain(2);
        assert!(!a.le(0, 1));
    }

    #[test]
    fn minimals_examples() {
        let d = diamond();
        // S = {a, b, top} -> {a, b}, derived by enumerating all pairs
        assert_eq!(d.minimals(&[1, 2, 3]).unwrap(), vec![1, 2]);
        assert_eq!(d.minimals(&[]).unwrap(), Vec::<ElemId>::new());
        let c = Poset::chain(4);
        assert_eq!(c.minimals(&[0, 1, 2, 3]).unwrap(), vec![0]);
    }

    #[test]
    fn minimals_is_antichain_and_dominates() {
        let d = diamond();
        let s = vec![0, 1, 2, 3];
        let m = d.minimals(&s).unwrap();
        for &x in &m {
            for &y in &m {
                assert!(x == y || !d.comparable(x, y));
            }
        }
        for &x in &s {
            assert!(m.iter().any(|&l| d.le(l, x)));
        }
    }

    #[test]
    fn cones_examples() {
        let d = diamond();
        let c = d.cones(1).unwrap();
        assert_eq!(c.parallel, vec![0, 1, 3]);
        assert_eq!(c.perp, vec![2]);
        let chain = Poset::chain(3);
        assert!(chain.cones(1).unwrap().perp.is_empty());
        let a3 = Poset::antichain(3);
        assert_eq!(a3.cones(0).unwrap().perp, vec![1, 2]);
    }

    #[test]
    fn restrict_examples() {
        let c = Poset::chain(3);
        let r = c.restrict(&[0, 2]).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.le(0, 1));
        assert!(c.restrict(&[]).unwrap().is_empty());
        let d = diamond();
        let ab = d.restrict(&[1, 2]).unwrap();
        assert!(!ab.le(0, 1) && !ab.le(1, 0), "a and b stay incomparable");
    }

    #[test]
    fn reverse_examples() {
        let c = Poset::chain(3);
        let r = c.reverse();
        assert!(r.le(2, 0));
        assert_eq!(r.reverse(), c, "reverse is an involution");
        let a = Poset::antichain(3);
        assert_eq!(a.reverse(), a);
        let d = diamond();
        let rd = d.reverse();
        assert!(rd.le(3, 0));
        assert_eq!(rd.reverse(), d);
    }

    #[test]
    fn augmentation_examples() {
        let c = Poset::build(
            labels(&["a", "b", "c"]),
            &[("a".into(), "b".into()), ("b".into(), "c".into())],
            BuildMode::Covers,
        )
        .unwrap();
        let a = Poset::build(labels(&["a", "b", "c"]), &[], BuildMode::Covers).unwrap();
        assert!(c.augments(&c));
        assert!(c.augments(&a), "any order augments the antichain");
        assert!(!a.augments(&c));
    }

    #[test]
    fn order_preserving_and_generating() {
        let c = Poset::chain(3);
        let id = PosetMap::new(c.clone(), c.clone(), vec![0, 1, 2]).unwrap();
        assert!(id.is_order_preserving() && id.is_order_generating());

        let constant = PosetMap::new(c.clone(), c.clone(), vec![1, 1, 1]).unwrap();
        assert!(constant.is_order_preserving());
        assert!(!constant.is_order_generating());
    }

    #[test]
    fn order_generating_implies_injective() {
        // a few hand maps plus the bracketed remark: generating => injective
        let d = diamond();
        let maps = [
            vec![0, 1, 2, 3],
            vec![3, 3, 3, 3],
            vec![0, 2, 1, 3],
            vec![0, 1, 1, 3],
        ];
        for a in maps {
            let m = PosetMap::new(d.clone(), d.clone(), a).unwrap();
            if m.is_order_generating() {
                assert!(m.is_injective());
            }
        }
    }

    #[test]
    fn good_pair_examples() {
        let c = Poset::chain(4);
        let bad = ElementSequence::new(c.clone(), vec![3, 2, 1]).unwrap();
        assert_eq!(bad.find_good_pair(), None);
        let constant = ElementSequence::new(c.clone(), vec![2, 2, 2]).unwrap();
        assert_eq!(constant.find_good_pair(), Some((0, 1)));
        let mixed = ElementSequence::new(c, vec![2, 1, 3]).unwrap();
        assert_eq!(mixed.find_good_pair(), Some((0, 2)));
    }

    #[test]
    fn good_pair_matches_exhaustive_scan() {
        let d = diamond();
        let seqs = [vec![3, 1, 2, 0], vec![0, 1, 2, 3], vec![3, 2, 1, 0], vec![1, 2]];
        for items in seqs {
            let s = ElementSequence::new(d.clone(), items.clone()).unwrap();
            let oracle = (0..items.len())
                .flat_map(|i| (i + 1..items.len()).map(move |j| (i, j)))
                .find(|&(i, j)| d.le(items[i], items[j]));
            assert_eq!(s.find_good_pair(), oracle);
        }
    }

    #[test]
    fn width_examples() {
        assert_eq!(Poset::chain(5).width(), 1);
        assert_eq!(Poset::antichain(3).width(), 3);
        assert_eq!(diamond().width(), 2);
        assert_eq!(Poset::antichain(0).width(), 0);
    }

    #[test]
    fn width_agrees_with_reverse() {
        for p in [Poset::chain(4), Poset::antichain(4), diamond()] {
            assert_eq!(p.width(), p.reverse().width());
        }
    }
}
