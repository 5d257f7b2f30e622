//! Noncontextuality coincides with weak invertibility in the monoid of
//! simplicial distributions: the two decisions are computed by
//! independently assembled procedures and compared, together with the
//! identity between noncontextual fraction and invertible fraction.
//!
//! Run with `cargo run --example weak_invertibility`.

use simplicial_distributions::polytope::{contextual_fraction, is_noncontextual};
use simplicial_distributions::simpdist::deterministic_embed;
use simplicial_distributions::{
    build_standard, MonoidContext, Scalar, SemiringKind, SimpDist, StandardSpace, Target,
};

mod util;
use util::{identity_table, pr_box, q};

fn main() {
    let r = SemiringKind::NonnegRational;
    let space = build_standard(StandardSpace::ChshCone);
    let ctx = MonoidContext::new(space.clone(), Target::Nerve(2), r).unwrap();
    println!("monoid units: {}", ctx.units().len());

    let cases: Vec<(&str, SimpDist)> = vec![
        ("identity table", identity_table()),
        ("PR box", pr_box()),
        (
            "3/4 identity + 1/4 PR",
            SimpDist::mix(&[(q(3, 4), &identity_table()), (q(1, 4), &pr_box())]).unwrap(),
        ),
        (
            "unit translate of PR",
            ctx.mult(
                &deterministic_embed(&space, &ctx.units()[5], r).unwrap(),
                &pr_box(),
            )
            .unwrap(),
        ),
    ];
    for (name, p) in cases {
        let wi = ctx.is_weakly_invertible(&p).unwrap().is_some();
        let nc = is_noncontextual(&p).unwrap().noncontextual;
        let iff = ctx.invertible_fraction(&p).unwrap();
        let ncf = Scalar::from_rational(
            contextual_fraction(&p).unwrap(),
            SemiringKind::NonnegRational,
        )
        .unwrap();
        println!(
            "{name}: weakly invertible = {wi}, noncontextual = {nc}, IF = {iff}, CF = {ncf}"
        );
        assert_eq!(wi, nc);
    }
}
