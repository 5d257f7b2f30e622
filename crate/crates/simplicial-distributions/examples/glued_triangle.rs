//! The triangle with glued d1/d2 faces: its distribution polytope has
//! two deterministic vertices and one contextual vertex (0, 1/2, 0, 1/2),
//! and restriction to the d0 circle sends a box (p^ab) to the edge
//! weight 1 - 2 p^01.
//!
//! Run with `cargo run --example glued_triangle`.

use std::collections::BTreeMap;

use simplicial_distributions::polytope::enumerate_vertices;
use simplicial_distributions::simpdist::{is_strongly_contextual, restrict};
use simplicial_distributions::sset::SMap;
use simplicial_distributions::{
    build_standard, Dist, Scalar, SemiringKind, SimpDist, StandardSpace, Target, Word,
};

fn main() {
    let r = SemiringKind::NonnegRational;
    let q = |n: i64, d: i64| Scalar::ratio(n, d, r).unwrap();
    let space = build_standard(StandardSpace::GluedTriangle);

    println!("polytope vertices (p00, p01, p10, p11):");
    for report in enumerate_vertices(&space, Target::Nerve(2), None).unwrap() {
        let dist = report.dist.tri_dist("t").unwrap();
        let entries: Vec<String> = Target::Nerve(2)
            .outcomes(2)
            .iter()
            .map(|w| dist.weight(w).to_string())
            .collect();
        println!(
            "  ({})  deterministic={} strongly_contextual={}",
            entries.join(", "),
            report.is_deterministic,
            report.is_strongly_contextual
        );
    }

    // a generic box with p01 = p11 = 1/4 restricts to weight 1/2 at 0
    let tri = Dist::new(
        r,
        vec![
            (Word::pair(0, 0), q(1, 6)),
            (Word::pair(0, 1), q(1, 4)),
            (Word::pair(1, 0), q(1, 3)),
            (Word::pair(1, 1), q(1, 4)),
        ],
    )
    .unwrap();
    let p = SimpDist::from_top(
        space.clone(),
        r,
        Target::Nerve(2),
        [("t".to_string(), tri)].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap();
    let circle = build_standard(StandardSpace::Circle);
    let inclusion = SMap {
        vertices: [("x".to_string(), "v".to_string())].into(),
        edges: [("s".to_string(), "z".to_string())].into(),
        triangles: BTreeMap::new(),
    };
    let restricted = restrict(&p, &inclusion, &circle).unwrap();
    println!(
        "\nbox with p01 = 1/4 restricts to the circle with weight {} at 0",
        restricted.edge_dist("s").unwrap().weight(&Word::single(0))
    );
    println!(
        "the contextual vertex is strongly contextual: {}",
        is_strongly_contextual(&contextual_vertex()).unwrap()
    );
}

fn contextual_vertex() -> SimpDist {
    let r = SemiringKind::NonnegRational;
    let q = |n: i64, d: i64| Scalar::ratio(n, d, r).unwrap();
    let tri = Dist::new(
        r,
        vec![(Word::pair(0, 1), q(1, 2)), (Word::pair(1, 1), q(1, 2))],
    )
    .unwrap();
    SimpDist::from_top(
        build_standard(StandardSpace::GluedTriangle),
        r,
        Target::Nerve(2),
        [("t".to_string(), tri)].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}
