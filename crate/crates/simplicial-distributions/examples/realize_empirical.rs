//! Load an empirical model (a presheaf of context distributions) from
//! JSON, realize it as a simplicial distribution on a cone, and decide
//! its contextuality.
//!
//! Run with `cargo run --example realize_empirical`.

use std::collections::BTreeMap;

use simplicial_distributions::cli::render_box_table;
use simplicial_distributions::polytope::{contextual_fraction, is_noncontextual};
use simplicial_distributions::simpdist::realize;
use simplicial_distributions::{Dist, EmpiricalModel, Scalar, SemiringKind, Word};

fn main() {
    let r = SemiringKind::NonnegRational;
    let q = |n: i64, d: i64| Scalar::ratio(n, d, r).unwrap();

    // the PR box as a presheaf over the four CHSH contexts
    let diag = Dist::new(
        r,
        vec![(Word::pair(0, 0), q(1, 2)), (Word::pair(1, 1), q(1, 2))],
    )
    .unwrap();
    let anti = Dist::new(
        r,
        vec![(Word::pair(0, 1), q(1, 2)), (Word::pair(1, 0), q(1, 2))],
    )
    .unwrap();
    let model = EmpiricalModel {
        d: 2,
        semiring: r,
        measurements: vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()],
        contexts: vec![
            vec!["x0".into(), "y0".into()],
            vec!["x0".into(), "y1".into()],
            vec!["x1".into(), "y0".into()],
            vec!["x1".into(), "y1".into()],
        ],
        dists: vec![diag.clone(), diag.clone(), diag, anti],
    };
    let p = realize(&model).expect("realization");
    println!("{}\n", render_box_table(&p, false));
    println!(
        "noncontextual: {}",
        is_noncontextual(&p).unwrap().noncontextual
    );
    println!("contextual fraction: {}", contextual_fraction(&p).unwrap());

    // an independent (product) model realizes noncontextually
    let product: BTreeMap<Word, Scalar> = [
        (Word::pair(0, 0), q(1, 6)),
        (Word::pair(0, 1), q(1, 3)),
        (Word::pair(1, 0), q(1, 6)),
        (Word::pair(1, 1), q(1, 3)),
    ]
    .into();
    let product = Dist::new(r, product).unwrap();
    let independent = EmpiricalModel {
        d: 2,
        semiring: r,
        measurements: vec!["a".into(), "b".into()],
        contexts: vec![vec!["a".into(), "b".into()]],
        dists: vec![product],
    };
    let p = realize(&independent).expect("realization");
    println!(
        "\nsingle-context product model is noncontextual: {}",
        is_noncontextual(&p).unwrap().noncontextual
    );
}
