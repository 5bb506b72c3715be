//! The Dress-Schiffels finite-support product: sparse vectors over an
//! indexed family of pointed posets, compared by strict increase at every
//! index-maximal coordinate of the difference set.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::construct::lex_sum;
use crate::downsets::check_dense_budget;
use crate::error::{Error, Result};
use crate::poset::{ElemId, Poset, PosetMap};

/// A component poset together with its designated zero, which must be the
/// unique minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pointed {
    pub poset: Poset,
    pub zero: ElemId,
}

/// An indexed family of pointed posets. `components[i]` belongs to index
/// element `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsFamily {
    pub index: Poset,
    pub components: Vec<Pointed>,
}

impl DsFamily {
    pub fn new(index: Poset, components: Vec<Pointed>) -> Result<DsFamily> {
        if components.len() != index.len() {
            let at = components.len().min(index.len());
            return Err(Error::MissingPart(
                index
                    .labels()
                    .get(at)
                    .cloned()
                    .unwrap_or_else(|| format!("#{at}")),
            ));
        }
        for (i, c) in components.iter().enumerate() {
            if c.zero >= c.poset.len()
                || !c.poset.elements().all(|x| c.poset.le(c.zero, x))
            {
                return Err(Error::ComponentNotPointed(index.label(i).to_string()));
            }
        }
        Ok(DsFamily { index, components })
    }

    /// Per-coordinate caps that keep every component whole.
    pub fn full_caps(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.poset.len()).collect()
    }
}

/// A finite-support choice function: only non-zero coordinates are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DsVector {
    pub family: Arc<DsFamily>,
    entries: BTreeMap<usize, ElemId>,
}

impl DsVector {
    pub fn new(family: Arc<DsFamily>, entries: BTreeMap<usize, ElemId>) -> Result<DsVector> {
        for (&i, &x) in &entries {
            if i >= family.index.len() {
                return Err(Error::UnknownElement(format!("index #{i}")));
            }
            let c = &family.components[i];
            if x >= c.poset.len() {
                return Err(Error::UnknownElement(format!("#{x}")));
            }
            if x == c.zero {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {} stores the zero explicitly",
                    family.index.label(i)
                )));
            }
        }
        Ok(DsVector { family, entries })
    }

    pub fn zero(family: Arc<DsFamily>) -> DsVector {
        DsVector {
            family,
            entries: BTreeMap::new(),
        }
    }

    /// Value at coordinate `i`, defaulting to the component zero.
    pub fn value(&self, i: usize) -> ElemId {
        self.entries
            .get(&i)
            .copied()
            .unwrap_or(self.family.components[i].zero)
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.keys().copied().collect()
    }

    fn same_family(&self, other: &DsVector) -> Result<()> {
        if Arc::ptr_eq(&self.family, &other.family) || self.family == other.family {
            Ok(())
        } else {
            Err(Error::FamilyMismatch)
        }
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = (0..self.family.index.len())
            .map(|i| {
                self.family.components[i]
                    .poset
                    .label(self.value(i))
                    .to_string()
            })
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// Δ(f, g): the coordinates where the two vectors differ, in index-id order.
pub fn delta(f: &DsVector, g: &DsVector) -> Result<Vec<usize>> {
    f.same_family(g)?;
    let mut keys: Vec<usize> = f
        .entries
        .keys()
        .chain(g.entries.keys())
        .copied()
        .collect();
    keys.sort_unstable();
    keys.dedup();
    Ok(keys.into_iter().filter(|&i| f.value(i) != g.value(i)).collect())
}

/// f ≤ g iff f(i) < g(i) at every coordinate i that is maximal in Δ(f, g)
/// with respect to the index order. Empty Δ means equality, hence true.
pub fn ds_leq(f: &DsVector, g: &DsVector) -> Result<bool> {
    let d = delta(f, g)?;
    let maxima = f.family.index.maximals(&d)?;
    Ok(maxima
        .into_iter()
        .all(|i| f.family.components[i].poset.lt(f.value(i), g.value(i))))
}

/// A materialized finite fragment of the product, with its vectors aligned
/// to the element ids of the resulting poset.
#[derive(Debug, Clone)]
pub struct DsFragment {
    pub poset: Poset,
    pub vectors: Vec<DsVector>,
}

/// Enumerates every vector whose coordinate `i` stays among the first
/// `coord_caps[i]` elements of component `i`, and orders them by `ds_leq`.
/// The zero of every coordinate must fall inside its cap.
pub fn ds_fragment(family: &Arc<DsFamily>, coord_caps: &[usize], cap: usize) -> Result<DsFragment> {
    let k = family.index.len();
    if coord_caps.len() != k {
        return Err(Error::InvalidArgument(format!(
            "{} caps for {} coordinates",
            coord_caps.len(),
            k
        )));
    }
    let mut needed: usize = 1;
    for (i, &c) in coord_caps.iter().enumerate() {
        let size = c.min(family.components[i].poset.len());
        if size == 0 || family.components[i].zero >= size {
            return Err(Error::InvalidArgument(format!(
                "cap {} at coordinate {} excludes the zero",
                c,
                family.index.label(i)
            )));
        }
        needed = needed
            .checked_mul(size)
            .ok_or(Error::SizeLimitExceeded { needed: usize::MAX, cap })?;
    }
    if needed > cap {
        return Err(Error::SizeLimitExceeded { needed, cap });
    }
    check_dense_budget(needed)?;

    let sizes: Vec<usize> = coord_caps
        .iter()
        .enumerate()
        .map(|(i, &c)| c.min(family.components[i].poset.len()))
        .collect();
    let mut vectors = Vec::with_capacity(needed);
    let mut counter = vec![0usize; k];
    loop {
        let mut entries = BTreeMap::new();
        for (i, &value) in counter.iter().enumerate() {
            if value != family.components[i].zero {
                entries.insert(i, value);
            }
        }
        vectors.push(DsVector {
            family: Arc::clone(family),
            entries,
        });
        // advance mixed-radix counter, last coordinate fastest
        let mut pos = k;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < sizes[pos] {
                break;
            }
            counter[pos] = 0;
        }
        if counter.iter().all(|&c| c == 0) {
            break;
        }
        if k == 0 {
            break;
        }
    }
    let labels = vectors.iter().map(DsVector::label).collect();
    let poset = Poset::from_leq_fn(labels, |a, b| {
        ds_leq(&vectors[a], &vectors[b]).expect("same family")
    })?;
    Ok(DsFragment { poset, vectors })
}

/// Literal antilexicographic comparison over a linear index: walk the index
/// from its top downwards and let the first difference decide.
pub fn antilex_oracle(family: &DsFamily, f: &DsVector, g: &DsVector) -> Result<bool> {
    f.same_family(g)?;
    let mut order: Vec<usize> = family.index.elements().collect();
    for &a in &order {
        for &b in &order {
            if !family.index.comparable(a, b) {
                return Err(Error::IndexNotLinear(
                    family.index.label(a).to_string(),
                    family.index.label(b).to_string(),
                ));
            }
        }
    }
    // descending linear order
    order.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if family.index.le(b, a) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    for i in order {
        let (x, y) = (f.value(i), g.value(i));
        if x != y {
            return Ok(family.components[i].poset.lt(x, y));
        }
    }
    Ok(true)
}

/// The correspondence between singleton-support vectors and the
/// lexicographic sum of the zero-stripped components.
#[derive(Debug)]
pub struct SingletonSumIso {
    /// Map from the singleton-support fragment onto the lexicographic sum.
    pub map: PosetMap,
    /// The singleton-support vector behind each source element.
    pub vectors: Vec<DsVector>,
}

/// Builds the bijection from singleton-support vectors onto
/// `lex_sum(index, components minus zeros)` and checks it is both
/// order-preserving and order-generating. The all-zero vector has empty
/// support and is deliberately excluded: it corresponds to no summand.
pub fn singleton_sum_iso(family: &Arc<DsFamily>, cap: usize) -> Result<SingletonSumIso> {
    let mut vectors = Vec::new();
    let mut assignment = Vec::new();
    let mut parts = Vec::new();
    let mut offsets = Vec::new();
    let mut total = 0usize;
    for (i, c) in family.components.iter().enumerate() {
        offsets.push(total);
        let nonzero: Vec<ElemId> = c.poset.elements().filter(|&x| x != c.zero).collect();
        for (rank, &x) in nonzero.iter().enumerate() {
            let mut entries = BTreeMap::new();
            entries.insert(i, x);
            vectors.push(DsVector {
                family: Arc::clone(family),
                entries,
            });
            assignment.push(total + rank);
        }
        total += nonzero.len();
        parts.push(c.poset.restrict(&nonzero)?);
    }
    if total > cap {
        return Err(Error::SizeLimitExceeded { needed: total, cap });
    }
    let labels = vectors.iter().map(DsVector::label).collect();
    let source = Poset::from_leq_fn(labels, |a, b| {
        ds_leq(&vectors[a], &vectors[b]).expect("same family")
    })?;
    let target = lex_sum(&family.index, &parts, cap)?;
    let map = PosetMap::new(source, target, assignment)?;
    if !map.is_order_preserving() || !map.is_order_generating() {
        return Err(Error::HypothesisViolated(
            "singleton-support correspondence failed to be an isomorphism".into(),
        ));
    }
    Ok(SingletonSumIso { map, vectors })
}
