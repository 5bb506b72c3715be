//! On-disk formats: the JSON poset document, DOT export of Hasse diagrams,
//! barrier and family descriptions, nets, arrays and colourings.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::barrier::{encode_block, BarrierSeq, Block, FiniteBarrier};
use crate::cover::{Transition, Vass};
use crate::ds::{DsFamily, Pointed};
use crate::error::{Error, Result};
use crate::poset::{BuildMode, Poset};

/// The poset text format: elements, label pairs and the pair
/// interpretation mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<String>,
    pub pairs: Vec<(String, String)>,
    pub mode: String,
}

impl PosetDoc {
    pub fn to_poset(&self) -> Result<Poset> {
        let mode = match self.mode.as_str() {
            "covers" => BuildMode::Covers,
            "relation" => BuildMode::Relation,
            other => return Err(Error::Parse(format!("unknown mode {other:?}"))),
        };
        Poset::build(self.elements.clone(), &self.pairs, mode)
    }

    /// Normalized form: full strict relation, mode "relation".
    pub fn from_poset(p: &Poset) -> PosetDoc {
        PosetDoc {
            elements: p.labels().to_vec(),
            pairs: p
                .strict_pairs()
                .into_iter()
                .map(|(x, y)| (p.label(x).to_string(), p.label(y).to_string()))
                .collect(),
            mode: "relation".to_string(),
        }
    }
}

pub fn parse_poset(json: &str) -> Result<Poset> {
    let doc: PosetDoc = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_poset()
}

pub fn poset_to_json(p: &Poset) -> String {
    let mut s = serde_json::to_string_pretty(&PosetDoc::from_poset(p)).expect("doc serializes");
    s.push('\n');
    s
}

/// Hasse diagram in DOT: cover edges only, lower element first, elements
/// emitted in id order.
pub fn poset_to_dot(p: &Poset) -> String {
    let mut out = String::from("digraph poset {\n");
    for x in p.elements() {
        out.push_str(&format!("  \"{}\";\n", p.label(x)));
    }
    for (x, y) in p.cover_pairs() {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(x), p.label(y)));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BarrierDoc {
    pub base: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
}

impl BarrierDoc {
    pub fn to_barrier(&self) -> Result<FiniteBarrier> {
        FiniteBarrier::new(self.base.clone(), self.blocks.clone())
    }

    pub fn from_barrier(b: &FiniteBarrier) -> BarrierDoc {
        BarrierDoc {
            base: b.base().to_vec(),
            blocks: b.blocks().to_vec(),
        }
    }
}

pub fn parse_barrier(json: &str) -> Result<FiniteBarrier> {
    let doc: BarrierDoc = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_barrier()
}

pub fn barrier_to_json(b: &FiniteBarrier) -> String {
    let mut s =
        serde_json::to_string_pretty(&BarrierDoc::from_barrier(b)).expect("doc serializes");
    s.push('\n');
    s
}

/// Parses the canonical sorted comma-joined block encoding, e.g. "3,7,16".
pub fn parse_block(text: &str) -> Result<Block> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<u32>()
                .map_err(|e| Error::Parse(format!("block member {part:?}: {e}")))?,
        );
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentDoc {
    pub poset: PosetDoc,
    pub zero: String,
}

/// Family description: the index poset plus one pointed component per
/// index element, keyed by index label.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDoc {
    pub index: PosetDoc,
    pub components: BTreeMap<String, ComponentDoc>,
}

impl FamilyDoc {
    pub fn to_family(&self) -> Result<Arc<DsFamily>> {
        let index = self.index.to_poset()?;
        let mut components = Vec::with_capacity(index.len());
        for i in index.elements() {
            let doc = self
                .components
                .get(index.label(i))
                .ok_or_else(|| Error::MissingPart(index.label(i).to_string()))?;
            let poset = doc.poset.to_poset()?;
            let zero = poset.id_of(&doc.zero)?;
            components.push(Pointed { poset, zero });
        }
        Ok(Arc::new(DsFamily::new(index, components)?))
    }
}

pub fn parse_family(json: &str) -> Result<Arc<DsFamily>> {
    let doc: FamilyDoc = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_family()
}

/// Barrier array: barrier, target poset and block-to-label values in the
/// canonical block encoding.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BarrierSeqDoc {
    pub barrier: BarrierDoc,
    pub target: PosetDoc,
    pub values: BTreeMap<String, String>,
}

impl BarrierSeqDoc {
    pub fn to_seq(&self) -> Result<BarrierSeq> {
        let barrier = self.barrier.to_barrier()?;
        let target = self.target.to_poset()?;
        let mut values = BTreeMap::new();
        for blk in barrier.blocks() {
            let key = encode_block(blk);
            let label = self
                .values
                .get(&key)
                .ok_or_else(|| Error::BlocksMissing(key.clone()))?;
            values.insert(blk.clone(), target.id_of(label)?);
        }
        BarrierSeq::new(barrier, target, values)
    }
}

pub fn parse_barrier_seq(json: &str) -> Result<BarrierSeq> {
    let doc: BarrierSeqDoc =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_seq()
}

/// Colouring of square blocks, keyed by the canonical block encoding.
pub fn parse_coloring(json: &str) -> Result<BTreeMap<Block, String>> {
    let raw: BTreeMap<String, String> =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    raw.into_iter()
        .map(|(k, v)| Ok((parse_block(&k)?, v)))
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NetDoc {
    pub dimension: usize,
    pub transitions: Vec<Transition>,
}

impl NetDoc {
    pub fn to_vass(&self) -> Result<Vass> {
        Vass::new(self.dimension, self.transitions.clone())
    }
}

pub fn parse_net(json: &str) -> Result<Vass> {
    let doc: NetDoc = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    doc.to_vass()
}

/// Sequences serialize as arrays of element labels over their base poset.
pub fn seq_to_json(seq: &crate::seq::Seq) -> String {
    let labels: Vec<&str> = seq
        .entries()
        .iter()
        .map(|&x| seq.base.label(x))
        .collect();
    let mut s = serde_json::to_string(&labels).expect("labels serialize");
    s.push('\n');
    s
}

pub fn parse_seq(base: &Arc<Poset>, json: &str) -> Result<crate::seq::Seq> {
    let labels: Vec<String> =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let entries = labels
        .iter()
        .map(|l| base.id_of(l))
        .collect::<Result<Vec<_>>>()?;
    crate::seq::Seq::new(Arc::clone(base), entries)
}

/// Parses a comma-separated marking, e.g. "1,0,3".
pub fn parse_marking(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("marking entry {p:?}: {e}")))
        })
        .collect()
}
