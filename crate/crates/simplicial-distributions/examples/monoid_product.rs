//! The convex-monoid product of simplicial distributions: the triangle
//! box product, two-sided identity, and the bilinearity of the product
//! against convex mixtures.
//!
//! Run with `cargo run --example monoid_product`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use simplicial_distributions::{
    build_standard, Dist, MonoidContext, Scalar, SemiringKind, SimpDist, StandardSpace, Target,
    Word,
};

const R: SemiringKind = SemiringKind::NonnegRational;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d, R).unwrap()
}

fn triangle_box(entries: [(i64, i64); 4]) -> SimpDist {
    let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
    let dist = Dist::new(
        R,
        entries
            .iter()
            .zip(outcomes)
            .map(|((n, d), (a, b))| (Word::pair(a, b), q(*n, *d))),
    )
    .unwrap();
    SimpDist::from_top(
        build_standard(StandardSpace::Delta2),
        R,
        Target::Nerve(2),
        [("t".to_string(), dist)].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

fn main() {
    let ctx = MonoidContext::new(
        build_standard(StandardSpace::Delta2),
        Target::Nerve(2),
        R,
    )
    .unwrap();
    let p = triangle_box([(1, 6), (1, 3), (1, 4), (1, 4)]);
    let r = triangle_box([(1, 2), (1, 8), (1, 8), (1, 4)]);

    let product = ctx.mult(&p, &r).unwrap();
    println!("p . q box:");
    for w in Target::Nerve(2).outcomes(2) {
        println!(
            "  ({}): {}",
            w.render(2),
            product.tri_dist("t").unwrap().weight(&w)
        );
    }

    let e = ctx.identity().unwrap();
    assert_eq!(ctx.mult(&p, &e).unwrap(), p);
    assert_eq!(ctx.mult(&e, &p).unwrap(), p);
    println!("identity is two-sided");

    // bilinearity: (a p + (1-a) p') . (b q + (1-b) q') expands to the
    // four-term mixture
    let p2 = triangle_box([(0, 1), (0, 1), (1, 3), (2, 3)]);
    let r2 = triangle_box([(1, 1), (0, 1), (0, 1), (0, 1)]);
    let (alpha, beta) = (q(1, 3), q(2, 5));
    let compl = |s: &Scalar| {
        Scalar::from_rational(BigRational::from_integer(1.into()) - s.as_rational().unwrap(), R)
            .unwrap()
    };
    let left = ctx
        .mult(
            &SimpDist::mix(&[(alpha.clone(), &p), (compl(&alpha), &p2)]).unwrap(),
            &SimpDist::mix(&[(beta.clone(), &r), (compl(&beta), &r2)]).unwrap(),
        )
        .unwrap();
    let terms = [
        (alpha.mul(&beta).unwrap(), ctx.mult(&p, &r).unwrap()),
        (alpha.mul(&compl(&beta)).unwrap(), ctx.mult(&p, &r2).unwrap()),
        (compl(&alpha).mul(&beta).unwrap(), ctx.mult(&p2, &r).unwrap()),
        (
            compl(&alpha).mul(&compl(&beta)).unwrap(),
            ctx.mult(&p2, &r2).unwrap(),
        ),
    ];
    let right =
        SimpDist::mix(&terms.iter().map(|(c, x)| (c.clone(), x)).collect::<Vec<_>>()).unwrap();
    assert_eq!(left, right);
    println!("bilinearity verified exactly");
}
