//! Shared builders for the runnable examples.
#![allow(dead_code)]

use std::collections::BTreeMap;

use simplicial_distributions::{
    build_standard, Dist, Scalar, SemiringKind, SimpDist, StandardSpace, Target, Word,
};

pub const R: SemiringKind = SemiringKind::NonnegRational;

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d, R).unwrap()
}

/// A CHSH table from four boxes, each `(p00, p01, p10, p11)` as
/// numerator/denominator pairs, in the order s00, s01, s10, s11.
pub fn chsh_table(boxes: [[(i64, i64); 4]; 4]) -> SimpDist {
    let space = build_standard(StandardSpace::ChshCone);
    let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let mut tri_dists = BTreeMap::new();
    for (idx, entries) in boxes.iter().enumerate() {
        let id = format!("s{}{}", idx / 2, idx % 2);
        let dist = Dist::new(
            R,
            entries
                .iter()
                .zip(outcomes)
                .map(|((n, d), (a, b))| (Word::pair(a, b), q(*n, *d))),
        )
        .unwrap();
        tri_dists.insert(id, dist);
    }
    SimpDist::from_top(
        space,
        R,
        Target::Nerve(2),
        tri_dists,
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

pub fn pr_box() -> SimpDist {
    let h = |a: i64| (a, 2);
    chsh_table([
        [h(1), h(0), h(0), h(1)],
        [h(1), h(0), h(0), h(1)],
        [h(1), h(0), h(0), h(1)],
        [h(0), h(1), h(1), h(0)],
    ])
}

pub fn identity_table() -> SimpDist {
    let o = |a: i64| (a, 1);
    chsh_table([
        [o(1), o(0), o(0), o(0)],
        [o(1), o(0), o(0), o(0)],
        [o(1), o(0), o(0), o(0)],
        [o(1), o(0), o(0), o(0)],
    ])
}
