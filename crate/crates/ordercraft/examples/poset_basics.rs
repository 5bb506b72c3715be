//! Build finite posets, query the order primitives and export a Hasse
//! diagram.
//!
//! Run with: cargo run --example poset_basics

use ordercraft::io::poset_to_dot;
use ordercraft::poset::{BuildMode, ElementSequence, Poset, PosetMap};

fn main() -> ordercraft::Result<()> {
    // the diamond: bot < a, b < top with a and b incomparable
    let diamond = Poset::build(
        vec!["bot".into(), "a".into(), "b".into(), "top".into()],
        &[
            ("bot".into(), "a".into()),
            ("bot".into(), "b".into()),
            ("a".into(), "top".into()),
            ("b".into(), "top".into()),
        ],
        BuildMode::Covers,
    )?;

    let (bot, a, b, top) = (0, 1, 2, 3);
    assert!(diamond.le(bot, top), "closure relates bot to top");
    assert!(!diamond.comparable(a, b));
    println!("diamond width: {}", diamond.width());

    let mins = diamond.minimals(&[a, b, top])?;
    println!(
        "minimals of {{a,b,top}}: {:?}",
        mins.iter().map(|&x| diamond.label(x)).collect::<Vec<_>>()
    );

    let cones = diamond.cones(a)?;
    println!(
        "cones around a: parallel {:?}, perp {:?}",
        cones.parallel.iter().map(|&x| diamond.label(x)).collect::<Vec<_>>(),
        cones.perp.iter().map(|&x| diamond.label(x)).collect::<Vec<_>>()
    );

    // restrictions and reversals, the two closure operations of reasonable
    // classes
    let two_antichain = diamond.restrict(&[a, b])?;
    assert_eq!(two_antichain.width(), 2);
    assert_eq!(diamond.reverse().reverse(), diamond);

    // any order on a fixed domain augments the antichain on that domain
    let discrete = Poset::build(
        vec!["bot".into(), "a".into(), "b".into(), "top".into()],
        &[],
        BuildMode::Covers,
    )?;
    assert!(diamond.augments(&discrete));
    assert!(!discrete.augments(&diamond));

    // order-preserving vs order-generating maps
    let chain = Poset::chain(3);
    let constant = PosetMap::new(chain.clone(), chain.clone(), vec![1, 1, 1])?;
    assert!(constant.is_order_preserving());
    assert!(!constant.is_order_generating());

    // good pairs in element sequences: (2,1,3) has the good pair (0,2)
    let seq = ElementSequence::new(chain, vec![2, 1, 3].into_iter().map(|x| x % 3).collect())?;
    println!("good pair of (2,1,0): {:?}", seq.find_good_pair());

    println!("\nHasse diagram:\n{}", poset_to_dot(&diamond));
    Ok(())
}
