//! Sequence embeddability, bounded-length sequence orders, down-set
//! lattices and the antichain-to-downset surjection.
//!
//! Run with: cargo run --example sequence_orders

use std::sync::Arc;

use ordercraft::construct::{domination_order, product, rado_truncation};
use ordercraft::downsets::{downset_lattice, f_map};
use ordercraft::seq::{embeds, gamma_index, pad_phi, seq_downset, seq_embed_order, Seq};
use ordercraft::{Poset, DEFAULT_CAP};

fn main() -> ordercraft::Result<()> {
    let base = Arc::new(Poset::chain(6));

    // (1,3) embeds into (0,1,5) via the greedy leftmost witness (1,2)
    let s = Seq::new(Arc::clone(&base), vec![1, 3])?;
    let t = Seq::new(Arc::clone(&base), vec![0, 1, 5])?;
    let witness = embeds(&s, &t)?.expect("embedding exists");
    println!("witness positions: {:?}", witness.positions);

    // the embeddability order on sequences of length <= 2 over a 3-chain
    let small = Arc::new(Poset::chain(3));
    let ord = seq_embed_order(&small, 2, DEFAULT_CAP)?;
    println!(
        "sequences of length <= 2 over a 3-chain: {} elements, width {}",
        ord.poset.len(),
        ord.poset.width()
    );
    let empty = ord.id_of(&[])?;
    assert!(ord.poset.elements().all(|i| ord.poset.le(empty, i)));

    // truncate-and-pad: gamma finds where the minimal tail starts
    let f = Seq::new(Arc::clone(&small), vec![2, 0, 0])?;
    println!("gamma of (2,0,0) at 0: {}", gamma_index(&f, 0)?);
    let padded = pad_phi(&f, 5, 0)?;
    println!("padded to length 5: {:?}", padded.entries());

    // the principal down-set of (1,2) inside the sequence order
    let g = Seq::new(Arc::clone(&small), vec![1, 2])?;
    let below = seq_downset(&g, &ord)?;
    println!(
        "sequences below (1,2): {:?}",
        below
            .members()
            .iter()
            .map(|&i| ord.poset.label(i))
            .collect::<Vec<_>>()
    );

    // down-set lattices count antichains: the diamond has 6
    let diamond = product(&Poset::chain(2), &Poset::chain(2), DEFAULT_CAP)?;
    let lattice = downset_lattice(&diamond, DEFAULT_CAP)?;
    println!("down-sets of the diamond: {}", lattice.poset.len());

    // an antichain tuple maps to the down-set its entries fail to dominate
    let ambient = Arc::new(diamond.clone());
    let d = f_map(&[1, 2], &ambient)?;
    assert_eq!(d.complement_minimals(), vec![1, 2]);

    // domination order of the 2-chain: three classes, {} below all
    let dom = domination_order(&Poset::chain(2), DEFAULT_CAP)?;
    println!("domination classes of the 2-chain: {}", dom.poset.len());
    assert_eq!(dom.class_of(&[0, 1])?, dom.class_of(&[1])?);

    // Rado's truncation: rows are chains, crossing pairs are incomparable
    let rado = rado_truncation(4)?;
    println!("rado truncation at 4: {} pairs", rado.len());
    Ok(())
}
