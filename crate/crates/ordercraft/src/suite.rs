//! Named property suites behind the `suite` command: each suite replays the
//! module laws on seeded random corpora and reports one outcome per
//! property. Reports are byte-stable for a fixed seed and budget.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::barrier::{
    barrier_square, choice_refine, classify_sequence, dichotomy, make_uniform_barrier,
    split_square_block, BarrierSeq, Block,
};
use crate::construct::lex_sum_labeled;
use crate::corpus::{budgeted_caps, random_family, random_poset, random_vass};
use crate::cover::{backward_cover, forward_oracle, pre_basis, replay, CoverVerdict, ForwardVerdict, UpwardBasis};
use crate::ds::{antilex_oracle, ds_fragment, ds_leq, singleton_sum_iso, DsVector};
use crate::error::{Error, Result};
use crate::poset::{BuildMode, ElementSequence, ElemId, Poset};
use crate::structure::{antichain_rank, check_decomposition, decompose};
use crate::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Core,
    Ds,
    Barriers,
    Structure,
    Cover,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] = [
        SuiteName::Core,
        SuiteName::Ds,
        SuiteName::Barriers,
        SuiteName::Structure,
        SuiteName::Cover,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Core => "core",
            SuiteName::Ds => "ds",
            SuiteName::Barriers => "barriers",
            SuiteName::Structure => "structure",
            SuiteName::Cover => "cover",
        }
    }

    pub fn parse(s: &str) -> Result<Vec<SuiteName>> {
        match s {
            "all" => Ok(Self::ALL.to_vec()),
            "core" => Ok(vec![SuiteName::Core]),
            "ds" => Ok(vec![SuiteName::Ds]),
            "barriers" => Ok(vec![SuiteName::Barriers]),
            "structure" => Ok(vec![SuiteName::Structure]),
            "cover" => Ok(vec![SuiteName::Cover]),
            other => Err(Error::Parse(format!("unknown suite {other:?}"))),
        }
    }
}

/// Deliberately wrong implementation variants used to confirm the suites
/// can fail. Never set by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Makes the good-pair scan use the reversed comparator.
    FlipGoodPairComparator,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub passed: bool,
    pub seed: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub budget: usize,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub struct SuiteConfig {
    pub seed: u64,
    pub budget: usize,
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            budget: 40,
            mutation: None,
        }
    }
}

type Property = (&'static str, fn(&mut ChaCha8Rng, usize, Option<Mutation>) -> std::result::Result<(), String>);

pub fn run_suites(names: &[SuiteName], cfg: &SuiteConfig) -> Report {
    let suites = names
        .iter()
        .map(|&name| run_one(name, cfg))
        .collect();
    Report {
        seed: cfg.seed,
        budget: cfg.budget,
        suites,
    }
}

fn run_one(name: SuiteName, cfg: &SuiteConfig) -> SuiteReport {
    let mut properties: Vec<PropertyOutcome> = props_for(name)
        .iter()
        .map(|&(prop_name, f)| {
            let seed = mix_seed(cfg.seed, prop_name);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let outcome = f(&mut rng, cfg.budget, cfg.mutation);
            PropertyOutcome {
                name: prop_name.to_string(),
                passed: outcome.is_ok(),
                seed,
                counterexample: outcome.err(),
            }
        })
        .collect();
    properties.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        suite: name.as_str().to_string(),
        properties,
    }
}

fn mix_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a over the property name, mixed with the run seed
    let mut h: u64 = 0xcbf29ce484222325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ seed
}

fn props_for(name: SuiteName) -> &'static [Property] {
    match name {
        SuiteName::Core => &[
            ("closure-idempotent", core_closure_idempotent),
            ("find-good-pair-scan", core_good_pair_scan),
            ("minimals-antichain-dominates", core_minimals),
            ("restrict-reverse-commute", core_restrict_reverse),
            ("reverse-involution", core_reverse_involution),
            ("width-bruteforce", core_width_bruteforce),
            ("width-reverse", core_width_reverse),
        ],
        SuiteName::Ds => &[
            ("antichain-index-coordinatewise", ds_antichain_index),
            ("antilex-agreement", ds_antilex),
            ("capped-union-chain", ds_capped_union),
            ("fragment-po-laws", ds_po_laws),
            ("sampled-good-pair", ds_sampled_good_pair),
            ("singleton-sum-iso", ds_singleton_iso),
            ("zero-vector-bottom", ds_zero_bottom),
        ],
        SuiteName::Barriers => &[
            ("choice-refine-postcondition", barriers_choice_refine),
            ("classify-chain-pigeonhole", barriers_pigeonhole),
            ("dichotomy-reproducible", barriers_dichotomy),
            ("split-union-identity", barriers_split_union),
            ("square-restriction-commutes", barriers_square_restriction),
            ("successive-invariants", barriers_successive),
        ],
        SuiteName::Structure => &[
            ("coalesce-not-more-blocks", structure_coalesce),
            ("cones-lexsum-augmentation", structure_cones),
            ("decomposition-sound", structure_sound),
            ("rank-equals-width", structure_rank_width),
        ],
        SuiteName::Cover => &[
            ("backward-forward-agreement", cover_agreement),
            ("basis-antichain", cover_basis_antichain),
            ("fixpoint-order-independent", cover_fixpoint_order),
            ("inductive-negative-certificates", cover_inductive_certificates),
            ("monotone-init", cover_monotone),
            ("replay-certificates", cover_replay),
        ],
    }
}

fn fail(msg: String) -> std::result::Result<(), String> {
    Err(msg)
}

// ---- core ----

fn core_closure_idempotent(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..12);
        let p = random_poset(rng, n, 0.35);
        let rebuilt = Poset::from_pairs(
            p.labels().to_vec(),
            &p.strict_pairs(),
            BuildMode::Relation,
        )
        .map_err(|e| e.to_string())?;
        if rebuilt != p {
            return fail(format!("re-closing changed {p:?}"));
        }
    }
    Ok(())
}

fn core_good_pair_scan(
    rng: &mut ChaCha8Rng,
    budget: usize,
    mutation: Option<Mutation>,
) -> std::result::Result<(), String> {
    let flipped = mutation == Some(Mutation::FlipGoodPairComparator);
    for _ in 0..budget {
        let n = rng.gen_range(1..10);
        let p = random_poset(rng, n, 0.35);
        let items: Vec<ElemId> = (0..rng.gen_range(0..10))
            .map(|_| rng.gen_range(0..p.len()))
            .collect();
        let seq = ElementSequence::new(p.clone(), items.clone()).map_err(|e| e.to_string())?;
        let under_test = if flipped {
            // mutant comparator: scans with the order turned around
            let mut found = None;
            'outer: for i in 0..items.len() {
                for j in i + 1..items.len() {
                    if p.le(items[j], items[i]) {
                        found = Some((i, j));
                        break 'outer;
                    }
                }
            }
            found
        } else {
            seq.find_good_pair()
        };
        let mut oracle = None;
        'oracle: for i in 0..items.len() {
            for j in i + 1..items.len() {
                if p.le(items[i], items[j]) {
                    oracle = Some((i, j));
                    break 'oracle;
                }
            }
        }
        if under_test != oracle {
            return fail(format!(
                "sequence {items:?} over {p:?}: got {under_test:?}, oracle {oracle:?}"
            ));
        }
    }
    Ok(())
}

fn core_minimals(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(1..12);
        let p = random_poset(rng, n, 0.35);
        let subset: Vec<ElemId> = p.elements().filter(|_| rng.gen_bool(0.6)).collect();
        let mins = p.minimals(&subset).map_err(|e| e.to_string())?;
        for &x in &mins {
            for &y in &mins {
                if x != y && p.comparable(x, y) {
                    return fail(format!("minimals of {subset:?} not an antichain in {p:?}"));
                }
            }
        }
        for &s in &subset {
            if !mins.iter().any(|&m| p.le(m, s)) {
                return fail(format!("{s} in {subset:?} undominated in {p:?}"));
            }
        }
    }
    Ok(())
}

fn core_restrict_reverse(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..12);
        let p = random_poset(rng, n, 0.35);
        let subset: Vec<ElemId> = p.elements().filter(|_| rng.gen_bool(0.6)).collect();
        let a = p.reverse().restrict(&subset).map_err(|e| e.to_string())?;
        let b = p.restrict(&subset).map_err(|e| e.to_string())?.reverse();
        if a != b {
            return fail(format!("restrict/reverse disagree on {p:?} at {subset:?}"));
        }
    }
    Ok(())
}

fn core_reverse_involution(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..14);
        let p = random_poset(rng, n, 0.35);
        if p.reverse().reverse() != p {
            return fail(format!("double reverse changed {p:?}"));
        }
    }
    Ok(())
}

fn core_width_bruteforce(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..11);
        let p = random_poset(rng, n, 0.3);
        let n = p.len();
        let mut best = 0usize;
        for mask in 0u32..1 << n {
            let set: Vec<ElemId> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let antichain = set
                .iter()
                .all(|&x| set.iter().all(|&y| x == y || !p.comparable(x, y)));
            if antichain {
                best = best.max(set.len());
            }
        }
        if p.width() != best {
            return fail(format!("width {} vs brute force {best} on {p:?}", p.width()));
        }
    }
    Ok(())
}

fn core_width_reverse(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..14);
        let p = random_poset(rng, n, 0.35);
        if p.width() != p.reverse().width() {
            return fail(format!("width changed under reversal on {p:?}"));
        }
    }
    Ok(())
}

// ---- dress-schiffels ----

fn ds_po_laws(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let fam = random_family(rng, 4, 3, false).map_err(|e| e.to_string())?;
        let caps = budgeted_caps(&fam, 60);
        let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let n = frag.vectors.len();
        let le = |a: usize, b: usize| ds_leq(&frag.vectors[a], &frag.vectors[b]).expect("family");
        for a in 0..n {
            if !le(a, a) {
                return fail(format!("reflexivity fails at {}", frag.vectors[a].label()));
            }
            for b in 0..n {
                if a != b && le(a, b) && le(b, a) {
                    return fail(format!(
                        "antisymmetry fails between {} and {}",
                        frag.vectors[a].label(),
                        frag.vectors[b].label()
                    ));
                }
                for c in 0..n {
                    if le(a, b) && le(b, c) && !le(a, c) {
                        return fail(format!(
                            "transitivity fails at {}, {}, {}",
                            frag.vectors[a].label(),
                            frag.vectors[b].label(),
                            frag.vectors[c].label()
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn ds_antilex(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let fam = random_family(rng, 4, 3, true).map_err(|e| e.to_string())?;
        let caps = budgeted_caps(&fam, 80);
        let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        for f in &frag.vectors {
            for g in &frag.vectors {
                let lhs = ds_leq(f, g).map_err(|e| e.to_string())?;
                let rhs = antilex_oracle(&fam, f, g).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return fail(format!(
                        "antilex disagreement on {} vs {}",
                        f.label(),
                        g.label()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn ds_antichain_index(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let k = rng.gen_range(1..4);
        let index = Poset::antichain(k);
        let components = (0..k)
            .map(|_| crate::corpus::random_pointed(rng, 2))
            .collect();
        let fam = Arc::new(crate::ds::DsFamily::new(index, components).map_err(|e| e.to_string())?);
        let caps = budgeted_caps(&fam, 64);
        let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        for f in &frag.vectors {
            for g in &frag.vectors {
                let coordinatewise = (0..k).all(|i| {
                    fam.components[i].poset.le(f.value(i), g.value(i))
                });
                if ds_leq(f, g).map_err(|e| e.to_string())? != coordinatewise {
                    return fail(format!(
                        "antichain index must degrade to the coordinatewise order: {} vs {}",
                        f.label(),
                        g.label()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn ds_zero_bottom(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let fam = random_family(rng, 4, 3, false).map_err(|e| e.to_string())?;
        let caps = budgeted_caps(&fam, 60);
        let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let zero = DsVector::zero(Arc::clone(&fam));
        for f in &frag.vectors {
            if !ds_leq(&zero, f).map_err(|e| e.to_string())? {
                return fail(format!("zero not below {}", f.label()));
            }
            if f != &zero && ds_leq(f, &zero).map_err(|e| e.to_string())? {
                return fail(format!("{} below zero", f.label()));
            }
        }
    }
    Ok(())
}

fn ds_singleton_iso(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let fam = random_family(rng, 4, 4, false).map_err(|e| e.to_string())?;
        let iso = singleton_sum_iso(&fam, DEFAULT_CAP).map_err(|e| e.to_string())?;
        if !iso.map.is_order_preserving() || !iso.map.is_order_generating() {
            return fail("singleton correspondence lost a direction".to_string());
        }
    }
    Ok(())
}

fn ds_capped_union(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(15) {
        let fam = random_family(rng, 3, 3, false).map_err(|e| e.to_string())?;
        let full_caps = budgeted_caps(&fam, 60);
        let full = ds_fragment(&fam, &full_caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let mut seen = std::collections::BTreeSet::new();
        for step in 1..=3usize {
            let caps: Vec<usize> = full_caps.iter().map(|&c| c.min(step)).collect();
            let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
            for (a, f) in frag.vectors.iter().enumerate() {
                seen.insert(f.label());
                let fa = full.vectors.iter().position(|v| v == f).expect("sub-cap vector");
                for (b, g) in frag.vectors.iter().enumerate() {
                    let fb = full.vectors.iter().position(|v| v == g).expect("sub-cap vector");
                    if frag.poset.le(a, b) != full.poset.le(fa, fb) {
                        return fail(format!(
                            "sub-cap fragment not an induced suborder at {} vs {}",
                            f.label(),
                            g.label()
                        ));
                    }
                }
            }
        }
        if seen.len() != full.vectors.len() {
            return fail("cap chain union misses fragment vectors".to_string());
        }
    }
    Ok(())
}

fn ds_sampled_good_pair(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(20) {
        let fam = random_family(rng, 3, 3, false).map_err(|e| e.to_string())?;
        let caps = budgeted_caps(&fam, 40);
        let frag = ds_fragment(&fam, &caps, DEFAULT_CAP).map_err(|e| e.to_string())?;
        let n = frag.poset.len();
        let items: Vec<ElemId> = (0..=n).map(|_| rng.gen_range(0..n)).collect();
        let seq = ElementSequence::new(frag.poset.clone(), items.clone()).map_err(|e| e.to_string())?;
        if seq.find_good_pair().is_none() {
            return fail(format!(
                "sequence of length {} over a fragment of {} elements must repeat",
                items.len(),
                n
            ));
        }
    }
    Ok(())
}

// ---- barriers ----

fn barriers_square_restriction(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(12) {
        let n = rng.gen_range(3..=7u32);
        let k = rng.gen_range(1..=2usize);
        let b = make_uniform_barrier(n, k).map_err(|e| e.to_string())?;
        let square = barrier_square(&b).map_err(|e| e.to_string())?;
        for mask in 0u32..1 << (n + 1) {
            let keep: Vec<u32> = (0..=n).filter(|&x| mask >> x & 1 == 1).collect();
            let Ok(restricted) = b.restrict(&keep) else { continue };
            if restricted.blocks().is_empty() {
                continue;
            }
            let lhs = barrier_square(&restricted).map_err(|e| e.to_string())?;
            let rhs: Vec<Block> = square
                .blocks()
                .iter()
                .filter(|blk| blk.iter().all(|x| keep.contains(x)))
                .cloned()
                .collect();
            if lhs.blocks() != rhs.as_slice() {
                return fail(format!(
                    "square of restriction differs from restricted square on base {keep:?}"
                ));
            }
        }
    }
    Ok(())
}

fn barriers_split_union(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(12) {
        let n = rng.gen_range(3..=9u32);
        let k = rng.gen_range(1..=2usize);
        let b = make_uniform_barrier(n, k).map_err(|e| e.to_string())?;
        let square = barrier_square(&b).map_err(|e| e.to_string())?;
        for u in square.blocks() {
            let (s, t) = split_square_block(u, &b).map_err(|e| e.to_string())?;
            let mut joined: Block = s.iter().chain(t.iter()).copied().collect();
            joined.sort_unstable();
            joined.dedup();
            if &joined != u {
                return fail(format!("split of {u:?} does not union back"));
            }
        }
    }
    Ok(())
}

fn barriers_successive(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    use crate::barrier::successive_sequence;
    for _ in 0..budget {
        let n = rng.gen_range(6..=14u32);
        let b = make_uniform_barrier(n, 2).map_err(|e| e.to_string())?;
        // four distinct points a < b < c < d give separated pair blocks
        let mut points: Vec<u32> = (0..=n).collect();
        for i in (1..points.len()).rev() {
            points.swap(i, rng.gen_range(0..=i));
        }
        let mut picked: Vec<u32> = points.into_iter().take(4).collect();
        picked.sort_unstable();
        let r = vec![picked[0], picked[1]];
        let s = vec![picked[2], picked[3]];
        let seq = successive_sequence(&b, &r, &s).map_err(|e| e.to_string())?;
        if seq.len() != r.len() + 1 {
            return fail(format!("length {} for r={r:?}", seq.len()));
        }
        let pool: Vec<u32> = r.iter().chain(s.iter()).copied().collect();
        for (i, blk) in seq.iter().enumerate() {
            if i < r.len() && blk[0] != r[i] {
                return fail(format!("block {i} starts at {} not {}", blk[0], r[i]));
            }
            if !blk.iter().all(|q| pool.contains(q)) {
                return fail(format!("block {blk:?} leaves r ∪ s"));
            }
        }
    }
    Ok(())
}

fn barriers_pigeonhole(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(4..=10u32);
        let b = make_uniform_barrier(n, 1).map_err(|e| e.to_string())?;
        // the longest ◁-path in the singleton barrier has n edges; values
        // from a strictly smaller chain force a repeat, hence a good pair
        let chain = Poset::chain(rng.gen_range(1..=n as usize));
        let values: std::collections::BTreeMap<Block, ElemId> = b
            .blocks()
            .iter()
            .map(|blk| (blk.clone(), rng.gen_range(0..chain.len())))
            .collect();
        let f = BarrierSeq::new(b, chain, values).map_err(|e| e.to_string())?;
        if !classify_sequence(&f).is_good() {
            return fail("chain-valued array with few values must be good".to_string());
        }
    }
    Ok(())
}

fn barriers_dichotomy(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(20) {
        let n = rng.gen_range(4..=7u32);
        let b = make_uniform_barrier(n, 1).map_err(|e| e.to_string())?;
        let n = rng.gen_range(1..5);
        let target = random_poset(rng, n, 0.4);
        let values: std::collections::BTreeMap<Block, ElemId> = b
            .blocks()
            .iter()
            .map(|blk| (blk.clone(), rng.gen_range(0..target.len())))
            .collect();
        let f = BarrierSeq::new(b, target, values).map_err(|e| e.to_string())?;
        match dichotomy(&f, 2) {
            Err(Error::BaseTooSmall { .. }) => continue,
            Err(e) => return fail(e.to_string()),
            Ok((sub, tag)) => {
                let g = f.restricted_to(&sub).map_err(|e| e.to_string())?;
                let c = classify_sequence(&g);
                let consistent = match tag {
                    crate::barrier::DichotomyTag::Perfect => c.perfect,
                    crate::barrier::DichotomyTag::Bad => !c.is_good(),
                };
                if !consistent {
                    return fail(format!("tag {tag:?} not confirmed by re-classification"));
                }
            }
        }
    }
    Ok(())
}

fn barriers_choice_refine(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget.min(15) {
        let n = rng.gen_range(5..=12u32);
        let b = make_uniform_barrier(n, 1).map_err(|e| e.to_string())?;
        let square = barrier_square(&b).map_err(|e| e.to_string())?;
        let palette = rng.gen_range(1..=2u32);
        let g: std::collections::BTreeMap<Block, u32> = square
            .blocks()
            .iter()
            .map(|u| (u.clone(), rng.gen_range(0..=palette)))
            .collect();
        let beta: std::collections::BTreeMap<Block, std::collections::BTreeSet<u32>> = b
            .blocks()
            .iter()
            .map(|a| (a.clone(), (0..=palette).collect()))
            .collect();
        match choice_refine(&b, &g, &beta) {
            Err(Error::BaseExhausted(_)) => continue,
            Err(e) => return fail(e.to_string()),
            Ok((c, choice)) => {
                let sq = barrier_square(&c).map_err(|e| e.to_string())?;
                for u in sq.blocks() {
                    let (a, _) = split_square_block(u, &c).map_err(|e| e.to_string())?;
                    if g[u] != choice[&a] {
                        return fail(format!("postcondition fails at {u:?}"));
                    }
                }
            }
        }
    }
    Ok(())
}

// ---- structure ----

fn structure_sound(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..20);
        let p = random_poset(rng, n, 0.3);
        for coalesce in [false, true] {
            let d = decompose(&p, coalesce);
            let report = check_decomposition(&p, &d);
            if !report.passed() {
                return fail(format!("decompose(coalesce={coalesce}) unsound on {p:?}"));
            }
        }
    }
    Ok(())
}

fn structure_rank_width(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..20);
        let p = random_poset(rng, n, 0.3);
        let rank = antichain_rank(&p, DEFAULT_CAP).map_err(|e| e.to_string())?;
        if rank != p.width() {
            return fail(format!("rank {rank} vs width {} on {p:?}", p.width()));
        }
    }
    Ok(())
}

fn structure_coalesce(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(0..16);
        let p = random_poset(rng, n, 0.3);
        let singleton = decompose(&p, false);
        let coalesced = decompose(&p, true);
        if coalesced.blocks.len() > singleton.blocks.len() {
            return fail(format!("coalescing grew the block count on {p:?}"));
        }
    }
    Ok(())
}

fn structure_cones(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let n = rng.gen_range(1..14);
        let p = random_poset(rng, n, 0.3);
        for q in p.elements() {
            let cones = p.cones(q).map_err(|e| e.to_string())?;
            let index = Poset::antichain(2);
            let parts = vec![
                p.restrict(&cones.parallel).map_err(|e| e.to_string())?,
                p.restrict(&cones.perp).map_err(|e| e.to_string())?,
            ];
            let sum = lex_sum_labeled(&index, &parts, DEFAULT_CAP, |_, part, x| {
                part.label(x).to_string()
            })
            .map_err(|e| e.to_string())?;
            if !p.augments(&sum) {
                return fail(format!("cone sum not augmented by {p:?} at {q}"));
            }
        }
    }
    Ok(())
}

// ---- cover ----

fn cover_basis_antichain(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, _, target) = random_vass(rng, 3, 4, 3);
        let mut basis = UpwardBasis::new(v.dimension, vec![target]).map_err(|e| e.to_string())?;
        for _ in 0..4 {
            for t in &v.transitions {
                basis = pre_basis(&basis, t).map_err(|e| e.to_string())?;
                let m = basis.minimals();
                for a in m {
                    for b in m {
                        if a != b && a.iter().zip(b).all(|(x, y)| x <= y) {
                            return fail(format!("basis {m:?} not an antichain"));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn cover_replay(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, init, target) = random_vass(rng, 3, 4, 3);
        let out = backward_cover(&v, &init, &target, 10_000).map_err(|e| e.to_string())?;
        if out.verdict == CoverVerdict::Coverable {
            let firing = out.firing.ok_or("coverable without firing sequence")?;
            let markings = replay(&v, &init, &firing).map_err(|e| e.to_string())?;
            let last = markings.last().expect("replay includes init");
            if !target.iter().zip(last).all(|(t, m)| t <= m) {
                return fail(format!(
                    "firing {firing:?} from {init:?} misses target {target:?}"
                ));
            }
        }
    }
    Ok(())
}

fn cover_agreement(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, init, target) = random_vass(rng, 3, 4, 3);
        let out = backward_cover(&v, &init, &target, 10_000).map_err(|e| e.to_string())?;
        match out.verdict {
            CoverVerdict::Coverable => {
                let firing = out.firing.as_ref().ok_or("coverable without certificate")?;
                let depth = firing.len();
                match forward_oracle(&v, &init, &target, depth, u64::MAX).map_err(|e| e.to_string())? {
                    ForwardVerdict::Coverable { .. } => {}
                    ForwardVerdict::Inconclusive => {
                        return fail(format!(
                            "forward oracle misses certified cover of depth {depth}"
                        ));
                    }
                }
            }
            CoverVerdict::NotCoverable => {
                // bounded exhaustion must not reach the target
                if let ForwardVerdict::Coverable { depth } =
                    forward_oracle(&v, &init, &target, 12, 24).map_err(|e| e.to_string())?
                {
                    return fail(format!(
                        "forward oracle covers at depth {depth} despite NOT COVERABLE"
                    ));
                }
            }
        }
    }
    Ok(())
}

fn cover_inductive_certificates(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, init, target) = random_vass(rng, 3, 4, 3);
        let out = backward_cover(&v, &init, &target, 10_000).map_err(|e| e.to_string())?;
        // the stabilized basis certifies both verdicts without re-running
        // the search: it contains the target, is closed under pre, and
        // membership of init decides coverability
        let basis = UpwardBasis::new(v.dimension, out.basis.clone()).map_err(|e| e.to_string())?;
        if !basis.member(&target) {
            return fail(format!("basis {:?} misses the target {target:?}", out.basis));
        }
        for t in &v.transitions {
            let pre = pre_basis(&basis, t).map_err(|e| e.to_string())?;
            for x in pre.minimals() {
                if !basis.member(x) {
                    return fail(format!("basis {:?} not closed under pre at {x:?}", out.basis));
                }
            }
        }
        let member = basis.member(&init);
        let coverable = out.verdict == CoverVerdict::Coverable;
        if member != coverable {
            return fail(format!(
                "init membership {member} contradicts verdict {:?}",
                out.verdict
            ));
        }
    }
    Ok(())
}

fn cover_monotone(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, init, target) = random_vass(rng, 3, 4, 3);
        let out = backward_cover(&v, &init, &target, 10_000).map_err(|e| e.to_string())?;
        if out.verdict == CoverVerdict::Coverable {
            let bigger: Vec<u64> = init.iter().map(|&x| x + rng.gen_range(0..3)).collect();
            let out2 = backward_cover(&v, &bigger, &target, 10_000).map_err(|e| e.to_string())?;
            if out2.verdict != CoverVerdict::Coverable {
                return fail(format!(
                    "enlarging init {init:?} to {bigger:?} lost coverability"
                ));
            }
        }
    }
    Ok(())
}

fn cover_fixpoint_order(
    rng: &mut ChaCha8Rng,
    budget: usize,
    _m: Option<Mutation>,
) -> std::result::Result<(), String> {
    for _ in 0..budget {
        let (v, init, target) = random_vass(rng, 3, 4, 3);
        let mut shuffled = v.transitions.clone();
        shuffled.reverse();
        let v2 = crate::cover::Vass::new(v.dimension, shuffled).map_err(|e| e.to_string())?;
        let a = backward_cover(&v, &init, &target, 10_000).map_err(|e| e.to_string())?;
        let b = backward_cover(&v2, &init, &target, 10_000).map_err(|e| e.to_string())?;
        if a.basis != b.basis || a.verdict != b.verdict {
            return fail("fixpoint basis depends on transition order".to_string());
        }
    }
    Ok(())
}
