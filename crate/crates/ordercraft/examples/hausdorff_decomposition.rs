//! Spine/block decompositions of FAC posets: the singleton producer, the
//! greedy coalescer, the clause-by-clause verifier and the antichain rank.
//!
//! Run with: cargo run --example hausdorff_decomposition

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ordercraft::corpus::random_poset;
use ordercraft::structure::{antichain_rank, check_decomposition, decompose, spine_of};
use ordercraft::{Poset, DEFAULT_CAP};

fn main() -> ordercraft::Result<()> {
    // a chain coalesces into one convex block whose maximum is the top
    let chain = Poset::chain(5);
    let d = decompose(&chain, true);
    println!(
        "5-chain: {} block(s), spine {:?}",
        d.blocks.len(),
        d.spine.iter().map(|&x| chain.label(x)).collect::<Vec<_>>()
    );
    assert!(check_decomposition(&chain, &d).passed());

    // random posets: singleton decompositions always verify, coalescing
    // never grows the block count, and the spine keeps the induced order
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..5 {
        let p = random_poset(&mut rng, 16, 0.3);
        let singleton = decompose(&p, false);
        let coalesced = decompose(&p, true);
        let report = check_decomposition(&p, &coalesced);
        println!(
            "n={:>2}: width {} rank {} blocks {} -> {} verifier {}",
            p.len(),
            p.width(),
            antichain_rank(&p, DEFAULT_CAP)?,
            singleton.blocks.len(),
            coalesced.blocks.len(),
            if report.passed() { "pass" } else { "FAIL" }
        );
        assert!(report.passed());
        assert!(coalesced.blocks.len() <= singleton.blocks.len());
        let spine = spine_of(&coalesced)?;
        assert_eq!(spine.len(), coalesced.spine.len());
    }

    // the verifier reports which clause broke, with a witness
    let p = Poset::chain(2);
    let bogus = ordercraft::structure::Decomposition {
        poset: p.clone(),
        spine: vec![0],
        blocks: vec![vec![0, 1]],
    };
    let report = check_decomposition(&p, &bogus);
    for clause in &report.clauses {
        println!("clause {:<20} {:?}", clause.clause, clause.status);
    }
    assert!(!report.passed());
    Ok(())
}
