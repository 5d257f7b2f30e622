//! The signed distribution (1, 2, 2, -4) on the circle is contextual
//! over the rational field, yet invertible in the distribution monoid
//! with inverse exactly (11/35, 2/7, 2/7, 4/35).
//!
//! Run with `cargo run --example exact_inverse`.

use std::collections::BTreeMap;

use simplicial_distributions::cli::render_box_table;
use simplicial_distributions::polytope::is_noncontextual;
use simplicial_distributions::{
    build_standard, Dist, MonoidContext, Scalar, SemiringKind, SimpDist, StandardSpace, Target,
    Word,
};

fn main() {
    let k = SemiringKind::RealField;
    let s = |n: i64, d: i64| Scalar::ratio(n, d, k).unwrap();
    let circle = build_standard(StandardSpace::Circle);
    let edge = Dist::new(
        k,
        vec![
            (Word::pair(0, 0), s(1, 1)),
            (Word::pair(0, 1), s(2, 1)),
            (Word::pair(1, 0), s(2, 1)),
            (Word::pair(1, 1), s(-4, 1)),
        ],
    )
    .unwrap();
    let p = SimpDist::from_top(
        circle.clone(),
        k,
        Target::DeltaZ(2),
        BTreeMap::new(),
        [("s".to_string(), edge)].into(),
        BTreeMap::new(),
    )
    .unwrap();
    println!("p =\n{}\n", render_box_table(&p, false));
    println!(
        "noncontextual over the rational field: {}",
        is_noncontextual(&p).unwrap().noncontextual
    );

    let ctx = MonoidContext::new(circle, Target::DeltaZ(2), k).unwrap();
    let inv = ctx.inverse(&p).unwrap().expect("p is invertible");
    println!("\np^-1 =\n{}", render_box_table(&inv, false));

    let product = ctx.mult(&p, &inv).unwrap();
    assert_eq!(product, ctx.identity().unwrap());
    println!("\np * p^-1 = identity table:\n{}", render_box_table(&product, false));
}
