//! Barrier combinatorics: shift-extension, squares, successive sequences,
//! array classification, the Rado bad array and finite Ramsey extraction.
//!
//! Run with: cargo run --example barriers

use std::collections::{BTreeMap, BTreeSet};

use ordercraft::barrier::{
    barrier_square, choice_refine, classify_sequence, constant_on_barrier, dichotomy,
    encode_block, homogeneous_subbarrier, make_uniform_barrier, rado_bad_array,
    split_square_block, successive_sequence, Block, ConstancyVerdict, DichotomyTag,
};
use ordercraft::error::Error;

fn main() -> ordercraft::Result<()> {
    use ordercraft::barrier::shift_extends;
    assert!(shift_extends(&[4], &[7, 34, 45])?);
    assert!(shift_extends(&[4, 7, 34], &[7, 34, 45])?);
    assert!(!shift_extends(&[4, 7], &[7])?);

    // squaring the singleton barrier gives all pairs; squaring again gives
    // all successive triples
    let singletons = make_uniform_barrier(9, 1)?;
    let pairs = barrier_square(&singletons)?;
    println!("square of singletons over {{0..9}}: {} pairs", pairs.blocks().len());
    let triples = barrier_square(&pairs)?;
    println!("the square of the square has {} triples", triples.blocks().len());

    // every square block splits uniquely back into its ◁-pair
    let (s, t) = split_square_block(&[3, 7, 16], &make_uniform_barrier(20, 2)?)?;
    println!("split of {{3,7,16}}: {{{}}} ◁ {{{}}}", encode_block(&s), encode_block(&t));

    // the successive sequence from {3,7} to {16,20}
    let walk = successive_sequence(&make_uniform_barrier(20, 2)?, &[3, 7], &[16, 20])?;
    println!(
        "successive sequence: {}",
        walk.iter()
            .map(|b| format!("{{{}}}", encode_block(b)))
            .collect::<Vec<_>>()
            .join(" ◁ ")
    );

    // the canonical bad array over Rado's order: no ◁-pair ever increases
    let rado = rado_bad_array(8)?;
    let class = classify_sequence(&rado);
    println!(
        "rado array over {{0..8}}: {}",
        if class.is_good() { "good" } else { "bad" }
    );
    assert!(!class.is_good());

    // the dichotomy extracts a sub-barrier on which the array is uniformly
    // bad or uniformly perfect
    let (sub, tag) = dichotomy(&rado, 3)?;
    println!("dichotomy tag {:?} on base {:?}", tag, sub.base());
    assert_eq!(tag, DichotomyTag::Bad);

    // finite Ramsey extraction: base {0..5} always hosts a monochromatic
    // triangle, the pentagon colouring of {0..4} never does
    let base6 = make_uniform_barrier(5, 1)?;
    let coloring: BTreeMap<Block, u8> = barrier_square(&base6)?
        .blocks()
        .iter()
        .map(|u| (u.clone(), u8::from((u[0] + u[1]) % 2 == 0)))
        .collect();
    let homogeneous = homogeneous_subbarrier(&base6, &coloring, 3)?;
    println!("homogeneous sub-barrier base: {:?}", homogeneous.base());

    let base5 = make_uniform_barrier(4, 1)?;
    let pentagon: BTreeMap<Block, u8> = barrier_square(&base5)?
        .blocks()
        .iter()
        .map(|u| {
            let d = (u[1] - u[0]) % 5;
            (u.clone(), u8::from(d == 1 || d == 4))
        })
        .collect();
    match homogeneous_subbarrier(&base5, &pentagon, 3) {
        Err(Error::BaseTooSmall { requested, base }) => {
            println!("pentagon colouring: no homogeneous triple ({requested} of {base})")
        }
        other => panic!("pentagon colouring must exhaust the base, got {other:?}"),
    }

    // the choice-lemma refinement settles g([a,b]) to a value depending on
    // a alone; here g is the parity of the second point
    let b = make_uniform_barrier(20, 1)?;
    let g: BTreeMap<Block, u32> = barrier_square(&b)?
        .blocks()
        .iter()
        .map(|u| (u.clone(), u[1] % 2))
        .collect();
    let beta: BTreeMap<Block, BTreeSet<u32>> = b
        .blocks()
        .iter()
        .map(|a| (a.clone(), BTreeSet::from([0, 1])))
        .collect();
    let (refined, choice) = choice_refine(&b, &g, &beta)?;
    println!(
        "choice refinement keeps base {:?} with constant choice {}",
        refined.base(),
        choice.values().next().expect("choice nonempty")
    );

    // a function agreeing across every ◁-pair is constant wherever the
    // base can connect blocks
    let constant: BTreeMap<Block, u32> = b.blocks().iter().map(|blk| (blk.clone(), 1)).collect();
    assert_eq!(constant_on_barrier(&constant, &b)?, ConstancyVerdict::Constant(1));
    Ok(())
}
