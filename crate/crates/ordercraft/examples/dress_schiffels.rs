//! The Dress-Schiffels finite-support product: comparisons, materialized
//! fragments and the two degenerate shapes (antilex over a linear index,
//! lexicographic sum on singleton supports).
//!
//! Run with: cargo run --example dress_schiffels

use std::collections::BTreeMap;
use std::sync::Arc;

use ordercraft::ds::{
    antilex_oracle, delta, ds_fragment, ds_leq, singleton_sum_iso, DsFamily, DsVector, Pointed,
};
use ordercraft::{Poset, DEFAULT_CAP};

fn main() -> ordercraft::Result<()> {
    // two chain components indexed by a 2-chain
    let family = Arc::new(DsFamily::new(
        Poset::chain(2),
        vec![
            Pointed { poset: Poset::chain(10), zero: 0 },
            Pointed { poset: Poset::chain(10), zero: 0 },
        ],
    )?);

    let vector = |coords: &[(usize, usize)]| -> ordercraft::Result<DsVector> {
        let entries: BTreeMap<usize, usize> =
            coords.iter().copied().filter(|&(_, x)| x != 0).collect();
        DsVector::new(Arc::clone(&family), entries)
    };

    // only the highest differing coordinate matters over a linear index:
    // (5,1) <= (0,2) because 1 < 2 at the top coordinate
    let f = vector(&[(0, 5), (1, 1)])?;
    let g = vector(&[(1, 2)])?;
    println!("delta(f,g) = {:?}", delta(&f, &g)?);
    assert!(ds_leq(&f, &g)?);
    assert!(antilex_oracle(&family, &f, &g)?);

    // over an antichain index every differing coordinate is maximal, so
    // the comparison degrades to the coordinatewise order
    let flat = Arc::new(DsFamily::new(
        Poset::antichain(2),
        vec![
            Pointed { poset: Poset::chain(2), zero: 0 },
            Pointed { poset: Poset::chain(2), zero: 0 },
        ],
    )?);
    let frag = ds_fragment(&flat, &flat.full_caps(), DEFAULT_CAP)?;
    println!(
        "fragment over the 2-antichain: {} vectors, width {}",
        frag.poset.len(),
        frag.poset.width()
    );
    assert_eq!(frag.poset.width(), 2, "the 2x2 coordinatewise order is a diamond");

    // materialized fragments are genuine posets; the zero vector is the
    // unique bottom
    let zero = frag
        .vectors
        .iter()
        .position(|v| v.support().is_empty())
        .expect("zero enumerated");
    assert!(frag.poset.elements().all(|i| frag.poset.le(zero, i)));

    // singleton supports collapse onto the lexicographic sum of the
    // zero-stripped components
    let iso = singleton_sum_iso(&family, DEFAULT_CAP)?;
    println!(
        "singleton-support fragment: {} vectors mapped onto a lex sum of {} elements",
        iso.map.source.len(),
        iso.map.target.len()
    );
    assert!(iso.map.is_order_preserving());
    assert!(iso.map.is_order_generating());
    Ok(())
}
