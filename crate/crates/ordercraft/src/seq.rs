//! Finite sequences over a base poset ordered by embeddability, and the
//! padding maps between bounded-length and fixed-length sequence orders.

use std::sync::Arc;

use crate::downsets::{check_dense_budget, DownSet};
use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset};

/// A finite sequence of elements of one base poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seq {
    pub base: Arc<Poset>,
    entries: Vec<ElemId>,
}

impl Seq {
    pub fn new(base: Arc<Poset>, entries: Vec<ElemId>) -> Result<Seq> {
        if let Some(&bad) = entries.iter().find(|&&x| x >= base.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(Seq { base, entries })
    }

    pub fn entries(&self) -> &[ElemId] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn same_base(&self, other: &Seq) -> Result<()> {
        if self.base == other.base {
            Ok(())
        } else {
            Err(Error::BaseMismatch)
        }
    }
}

/// A strictly increasing assignment of target positions, one per source
/// position, witnessing an embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub positions: Vec<usize>,
}

/// Embeddability s ≤ t: a strictly increasing ρ with s(γ) ≤ t(ρ(γ)) for all
/// γ. Returns the greedy leftmost (lexicographically least) witness, or
/// `None` when no witness exists.
pub fn embeds(s: &Seq, t: &Seq) -> Result<Option<EmbeddingWitness>> {
    s.same_base(t)?;
    Ok(embeds_raw(&s.base, &s.entries, &t.entries).map(|positions| EmbeddingWitness { positions }))
}

/// Greedy leftmost embedding on raw entry slices. Taking the earliest
/// feasible target position at every step is complete: any witness can be
/// shifted left position by position without invalidating later choices.
pub(crate) fn embeds_raw(base: &Poset, s: &[ElemId], t: &[ElemId]) -> Option<Vec<usize>> {
    let mut positions = Vec::with_capacity(s.len());
    let mut next = 0usize;
    for &x in s {
        let found = (next..t.len()).find(|&j| base.le(x, t[j]))?;
        positions.push(found);
        next = found + 1;
    }
    Some(positions)
}

/// The poset of all sequences of length ≤ `max_len` over `base`, ordered by
/// embeddability, with sequence payloads aligned to element ids.
#[derive(Debug, Clone)]
pub struct SeqOrder {
    pub base: Arc<Poset>,
    pub max_len: usize,
    pub poset: Poset,
    pub seqs: Vec<Vec<ElemId>>,
}

impl SeqOrder {
    /// Id of a sequence inside the materialized order.
    pub fn id_of(&self, entries: &[ElemId]) -> Result<ElemId> {
        self.seqs
            .binary_search_by(|probe| {
                (probe.len(), probe.as_slice()).cmp(&(entries.len(), entries))
            })
            .map_err(|_| Error::UnknownElement(format!("sequence {entries:?}")))
    }
}

/// Materializes the bounded-length embeddability order. Antisymmetry of the
/// result is verified during construction rather than assumed, so a base
/// that somehow produced embeddability-equivalent distinct sequences would
/// be rejected.
pub fn seq_embed_order(base: &Arc<Poset>, max_len: usize, cap: usize) -> Result<SeqOrder> {
    let mut total: usize = 0;
    let mut pow: usize = 1;
    for _ in 0..=max_len {
        total = total
            .checked_add(pow)
            .filter(|&t| t <= cap)
            .ok_or(Error::SizeLimitExceeded { needed: usize::MAX, cap })?;
        pow = pow.saturating_mul(base.len().max(1));
        if base.is_empty() {
            break;
        }
    }
    check_dense_budget(total)?;

    let mut seqs: Vec<Vec<ElemId>> = vec![Vec::new()];
    for len in 1..=max_len {
        let start: Vec<usize> = seqs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == len - 1)
            .map(|(i, _)| i)
            .collect();
        for i in start {
            for x in base.elements() {
                let mut next = seqs[i].clone();
                next.push(x);
                seqs.push(next);
            }
        }
    }
    seqs.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    let labels = seqs.iter().map(|s| seq_label(base, s)).collect();
    let poset = Poset::from_leq_fn(labels, |i, j| {
        embeds_raw(base, &seqs[i], &seqs[j]).is_some()
    })?;
    Ok(SeqOrder {
        base: Arc::clone(base),
        max_len,
        poset,
        seqs,
    })
}

pub(crate) fn seq_label(base: &Poset, s: &[ElemId]) -> String {
    let inner: Vec<&str> = s.iter().map(|&x| base.label(x)).collect();
    format!("({})", inner.join(","))
}

/// The least position from which `f` is constantly `a`; equals the length
/// when the final entry already differs from `a`. `a` must be minimal in
/// the base.
pub fn gamma_index(f: &Seq, a: ElemId) -> Result<usize> {
    require_minimal(&f.base, a)?;
    let mut gamma = f.len();
    while gamma > 0 && f.entries[gamma - 1] == a {
        gamma -= 1;
    }
    Ok(gamma)
}

/// Truncates `f` at its gamma index and pads with the minimal element `a`
/// up to total length `n`.
pub fn pad_phi(f: &Seq, n: usize, a: ElemId) -> Result<Seq> {
    if f.len() > n {
        return Err(Error::LengthExceeded {
            len: f.len(),
            requested: n,
        });
    }
    let gamma = gamma_index(f, a)?;
    let mut entries: Vec<ElemId> = f.entries[..gamma].to_vec();
    entries.resize(n, a);
    Ok(Seq {
        base: Arc::clone(&f.base),
        entries,
    })
}

fn require_minimal(base: &Poset, a: ElemId) -> Result<()> {
    if a >= base.len() {
        return Err(Error::UnknownElement(format!("#{a}")));
    }
    let all: Vec<ElemId> = base.elements().collect();
    if base.minimals(&all)?.contains(&a) {
        Ok(())
    } else {
        Err(Error::NotMinimal(base.label(a).to_string()))
    }
}

/// The down-set generated inside `ord` by all prefixes of `f`, the sequence
/// itself included. With `f` present this is the principal down-set of `f`,
/// which is what makes inclusion imply embeddability at finite lengths.
pub fn seq_downset(f: &Seq, ord: &SeqOrder) -> Result<DownSet> {
    if f.base != ord.base || f.len() > ord.max_len {
        return Err(Error::BaseMismatch);
    }
    let prefixes: Vec<ElemId> = (0..=f.len())
        .map(|k| ord.id_of(&f.entries[..k]))
        .collect::<Result<_>>()?;
    DownSet::generated_by(Arc::new(ord.poset.clone()), &prefixes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_CAP;

    fn chain(n: usize) -> Arc<Poset> {
        Arc::new(Poset::chain(n))
    }

    fn seq(base: &Arc<Poset>, entries: &[ElemId]) -> Seq {
        Seq::new(Arc::clone(base), entries.to_vec()).unwrap()
    }

    /// Brute-force embeddability oracle: enumerate all strictly increasing
    /// maps from source positions into target positions.
    pub(crate) fn embeds_oracle(base: &Poset, s: &[ElemId], t: &[ElemId]) -> Option<Vec<usize>> {
        fn go(
            base: &Poset,
            s: &[ElemId],
            t: &[ElemId],
            i: usize,
            from: usize,
            acc: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            if i == s.len() {
                return Some(acc.clone());
            }
            for j in from..t.len() {
                if base.le(s[i], t[j]) {
                    acc.push(j);
                    if let Some(w) = go(base, s, t, i + 1, j + 1, acc) {
                        return Some(w);
                    }
                    acc.pop();
                }
            }
            None
        }
        go(base, s, t, 0, 0, &mut Vec::new())
    }

    #[test]
    fn embeds_identity_and_golden() {
        let b = chain(6);
        let s = seq(&b, &[1, 3]);
        let w = embeds(&s, &s).unwrap().unwrap();
        assert_eq!(w.positions, vec![0, 1]);

        let t = seq(&b, &[0, 1, 5]);
        let w = embeds(&s, &t).unwrap().unwrap();
        assert_eq!(w.positions, vec![1, 2], "greedy leftmost witness");

        let s2 = seq(&b, &[2]);
        let t2 = seq(&b, &[1]);
        assert!(embeds(&s2, &t2).unwrap().is_none());
    }

    #[test]
    fn embeds_rejects_base_mismatch() {
        let s = seq(&chain(2), &[0]);
        let t = seq(&chain(3), &[0]);
        assert_eq!(embeds(&s, &t).unwrap_err(), Error::BaseMismatch);
    }

    #[test]
    fn greedy_agrees_with_bruteforce() {
        let base = Arc::new(Poset::antichain(2));
        let dia = Arc::new(
            Poset::build(
                vec!["bot".into(), "a".into(), "b".into(), "top".into()],
                &[
                    ("bot".into(), "a".into()),
                    ("bot".into(), "b".into()),
                    ("a".into(), "top".into()),
                    ("b".into(), "top".into()),
                ],
                crate::poset::BuildMode::Covers,
            )
            .unwrap(),
        );
        for b in [base, dia] {
            let n = b.len();
            let mut words: Vec<Vec<ElemId>> = vec![vec![]];
            for len in 1..=3 {
                let prev: Vec<Vec<ElemId>> =
                    words.iter().filter(|w| w.len() == len - 1).cloned().collect();
                for w in prev {
                    for x in 0..n {
                        let mut v = w.clone();
                        v.push(x);
                        words.push(v);
                    }
                }
            }
            for s in &words {
                for t in &words {
                    assert_eq!(
                        embeds_raw(&b, s, t).is_some(),
                        embeds_oracle(&b, s, t).is_some(),
                        "disagreement on {s:?} -> {t:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn seq_order_singleton_base_is_chain() {
        let b = Arc::new(Poset::chain(1));
        let ord = seq_embed_order(&b, 2, DEFAULT_CAP).unwrap();
        assert_eq!(ord.poset.len(), 3);
        assert_eq!(ord.poset.width(), 1, "(), (p), (p,p) form a chain");
    }

    #[test]
    fn seq_order_empty_sequence_is_bottom() {
        let b = Arc::new(Poset::antichain(2));
        let ord = seq_embed_order(&b, 2, DEFAULT_CAP).unwrap();
        let empty = ord.id_of(&[]).unwrap();
        for i in ord.poset.elements() {
            assert!(ord.poset.le(empty, i));
        }
    }

    #[test]
    fn seq_order_two_antichain_len_one() {
        let b = Arc::new(Poset::antichain(2));
        let ord = seq_embed_order(&b, 1, DEFAULT_CAP).unwrap();
        assert_eq!(ord.poset.len(), 3);
        let (e, a, bb) = (
            ord.id_of(&[]).unwrap(),
            ord.id_of(&[0]).unwrap(),
            ord.id_of(&[1]).unwrap(),
        );
        assert!(ord.poset.le(e, a) && ord.poset.le(e, bb));
        assert!(!ord.poset.comparable(a, bb));
    }

    #[test]
    fn inclusion_into_longer_lengths_is_order_generating() {
        // the identity inclusion of sequences of length <= 2 into those of
        // length <= 3 generates (and preserves) the order
        let base = Arc::new(Poset::chain(2));
        let small = seq_embed_order(&base, 2, DEFAULT_CAP).unwrap();
        let large = seq_embed_order(&base, 3, DEFAULT_CAP).unwrap();
        let assignment: Vec<ElemId> = small
            .seqs
            .iter()
            .map(|s| large.id_of(s).unwrap())
            .collect();
        let map = crate::poset::PosetMap::new(small.poset.clone(), large.poset.clone(), assignment)
            .unwrap();
        assert!(map.is_order_generating());
        assert!(map.is_order_preserving());
        assert!(map.is_injective());
    }

    #[test]
    fn seq_order_respects_cap() {
        let b = Arc::new(Poset::chain(10));
        assert!(matches!(
            seq_embed_order(&b, 4, 100).unwrap_err(),
            Error::SizeLimitExceeded { .. }
        ));
    }

    #[test]
    fn gamma_examples() {
        let b = chain(3);
        assert_eq!(gamma_index(&seq(&b, &[2, 0, 0]), 0).unwrap(), 1);
        assert_eq!(gamma_index(&seq(&b, &[0, 0, 0]), 0).unwrap(), 0);
        assert_eq!(gamma_index(&seq(&b, &[0, 0, 2]), 0).unwrap(), 3);
        assert!(matches!(
            gamma_index(&seq(&b, &[0]), 1).unwrap_err(),
            Error::NotMinimal(_)
        ));
    }

    #[test]
    fn pad_examples() {
        let b = chain(3);
        let f = seq(&b, &[2, 0, 0]);
        assert_eq!(pad_phi(&f, 5, 0).unwrap().entries(), &[2, 0, 0, 0, 0]);
        let g = seq(&b, &[0, 0]);
        assert_eq!(pad_phi(&g, 4, 0).unwrap().entries(), &[0, 0, 0, 0]);
        let h = seq(&b, &[1, 2]);
        assert_eq!(pad_phi(&h, 2, 0).unwrap().entries(), &[1, 2]);
        assert!(matches!(
            pad_phi(&seq(&b, &[1, 2, 1]), 2, 0).unwrap_err(),
            Error::LengthExceeded { .. }
        ));
    }

    #[test]
    fn pad_phi_is_order_generating_per_stratum() {
        // strata: fixed gamma and fixed length; fixed-length embeddability
        // between equal lengths is the pointwise order
        let b = chain(3);
        let n = 4;
        let mut words: Vec<Vec<ElemId>> = vec![vec![]];
        for _ in 0..3 {
            words = words
                .iter()
                .flat_map(|w| {
                    (0..3).map(move |x| {
                        let mut v = w.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        for f in &words {
            for g in &words {
                let (fs, gs) = (seq(&b, f), seq(&b, g));
                let (gf, gg) = (gamma_index(&fs, 0).unwrap(), gamma_index(&gs, 0).unwrap());
                if gf != gg {
                    continue;
                }
                let (pf, pg) = (pad_phi(&fs, n, 0).unwrap(), pad_phi(&gs, n, 0).unwrap());
                let padded_le = pf
                    .entries()
                    .iter()
                    .zip(pg.entries())
                    .all(|(&x, &y)| b.le(x, y));
                if padded_le {
                    assert!(
                        embeds(&fs, &gs).unwrap().is_some(),
                        "phi({f:?}) <= phi({g:?}) must force {f:?} <= {g:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn seq_downset_examples() {
        let b = chain(3);
        let ord = seq_embed_order(&b, 2, DEFAULT_CAP).unwrap();
        let f = seq(&b, &[1, 2]);
        let d = seq_downset(&f, &ord).unwrap();
        let probe = ord.id_of(&[0, 1]).unwrap();
        assert!(d.contains(probe), "(0,1) embeds into (1,2)");

        let e = seq(&b, &[]);
        let de = seq_downset(&e, &ord).unwrap();
        assert_eq!(de.members().len(), 1);

        let g = seq(&b, &[1, 2]);
        assert_eq!(seq_downset(&g, &ord).unwrap(), d);
    }
}
