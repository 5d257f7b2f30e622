//! Glue two distributions with a matching pushforward into a single
//! distribution on the fiber product whose marginals recover both
//! inputs exactly.
//!
//! Run with `cargo run --example glue_marginals`.

use simplicial_distributions::dist::glue_pullback;
use simplicial_distributions::{Dist, Scalar, SemiringKind};

fn main() {
    let r = SemiringKind::NonnegRational;
    let q = |n: i64, d: i64| Scalar::ratio(n, d, r).unwrap();

    let p1 = Dist::new(
        r,
        vec![("u", q(1, 2)), ("v", q(1, 4)), ("w", q(1, 4))],
    )
    .unwrap();
    let p2 = Dist::new(r, vec![("s", q(1, 2)), ("t", q(1, 2))]).unwrap();
    // u maps to 0; v, w, t map to 1; s maps to 0
    let f1 = |k: &&str| u32::from(*k != "u");
    let f2 = |k: &&str| u32::from(*k != "s");
    assert_eq!(p1.pushforward(f1), p2.pushforward(f2));

    let glued = glue_pullback(&p1, &p2, f1, f2).unwrap();
    println!("glued distribution on the fiber product:");
    for ((a, b), w) in glued.iter() {
        println!("  ({a}, {b}): {w}");
    }
    assert_eq!(glued.pushforward(|(a, _)| *a), p1);
    assert_eq!(glued.pushforward(|(_, b)| *b), p2);
    println!("both marginals recover the inputs exactly");
}
