//! Backward coverability on guarded vector addition systems: minimal bases
//! of upward-closed sets, certificates with replayable firing sequences,
//! and the bounded forward oracle.
//!
//! Run with: cargo run --example coverability

use ordercraft::cover::{
    backward_cover, forward_oracle, replay, CoverVerdict, ForwardVerdict, Transition, Vass,
};

fn main() -> ordercraft::Result<()> {
    // a counter that only grows covers any target
    let grow = Vass::new(1, vec![Transition { guard: vec![0], delta: vec![1] }])?;
    let out = backward_cover(&grow, &[0], &[5], 10_000)?;
    assert_eq!(out.verdict, CoverVerdict::Coverable);
    println!(
        "grow-only counter: COVERABLE with {} firings, basis {:?}",
        out.firing.as_ref().map_or(0, Vec::len),
        out.basis
    );

    // a counter that only shrinks can never climb to 5
    let shrink = Vass::new(1, vec![Transition { guard: vec![1], delta: vec![-1] }])?;
    let out = backward_cover(&shrink, &[0], &[5], 10_000)?;
    assert_eq!(out.verdict, CoverVerdict::NotCoverable);
    println!("shrink-only counter: NOT COVERABLE, stabilized basis {:?}", out.basis);

    // token passing between two places
    let net = Vass::new(
        2,
        vec![
            Transition { guard: vec![1, 0], delta: vec![-1, 1] },
            Transition { guard: vec![0, 1], delta: vec![1, -1] },
        ],
    )?;
    let out = backward_cover(&net, &[1, 0], &[0, 1], 10_000)?;
    assert_eq!(out.verdict, CoverVerdict::Coverable);
    let firing = out.firing.expect("coverable instances carry a certificate");
    let markings = replay(&net, &[1, 0], &firing)?;
    println!("token passing: firing {:?} visits {:?}", firing, markings);

    // the forward oracle confirms at depth 1
    match forward_oracle(&net, &[1, 0], &[0, 1], 4, 16)? {
        ForwardVerdict::Coverable { depth } => println!("forward oracle agrees at depth {depth}"),
        ForwardVerdict::Inconclusive => panic!("oracle must find the token"),
    }
    Ok(())
}
