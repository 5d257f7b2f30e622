//! Two deterministic labelings of a pair of parallel edges that are
//! not simplicially homotopic, yet joined by a unique distribution
//! homotopy on the prism. That homotopy is a PR box: a strongly
//! contextual vertex with contextual fraction one.
//!
//! Run with `cargo run --example homotopy_vertex`.

use simplicial_distributions::cli::render_box_table;
use simplicial_distributions::polytope::{
    contextual_fraction, distribution_homotopy, is_vertex, HomotopyOutcome,
};
use simplicial_distributions::simpdist::is_strongly_contextual;
use simplicial_distributions::sset::homotopy_classes;
use simplicial_distributions::{build_standard, DetMap, StandardSpace, Target};

fn main() {
    let space = build_standard(StandardSpace::TwoEdgeLoop);
    let mk = |x: u32, y: u32| {
        DetMap::new(
            Target::Nerve(2),
            [("x".to_string(), x), ("y".to_string(), y)].into(),
        )
    };
    let phi = mk(0, 0);
    let psi = mk(1, 0);

    let homotopic = homotopy_classes(&phi, &psi, &space).unwrap();
    println!("phi ~ psi as simplicial maps: {homotopic}");

    match distribution_homotopy(&phi, &psi, &space).unwrap() {
        HomotopyOutcome::Unique(f) => {
            println!("unique distribution homotopy found:\n");
            println!("{}\n", render_box_table(&f, false));
            println!(
                "strongly contextual: {}",
                is_strongly_contextual(&f).unwrap()
            );
            println!("vertex of the polytope: {}", is_vertex(&f).unwrap());
            println!("contextual fraction: {}", contextual_fraction(&f).unwrap());
        }
        other => println!("unexpected outcome: {other:?}"),
    }
}
