//! Enumerate every vertex of the CHSH distribution polytope: the
//! sixteen deterministic vertices and the eight PR boxes.
//!
//! Run with `cargo run --example chsh_census`.

use simplicial_distributions::polytope::enumerate_vertices;
use simplicial_distributions::{build_standard, StandardSpace, Target};

fn main() {
    let space = build_standard(StandardSpace::ChshCone);
    let reports = enumerate_vertices(&space, Target::Nerve(2), None).expect("enumeration");

    let deterministic = reports.iter().filter(|r| r.is_deterministic).count();
    let contextual = reports.iter().filter(|r| r.is_strongly_contextual).count();
    println!(
        "{} vertices: {deterministic} deterministic, {contextual} strongly contextual",
        reports.len()
    );
    for (i, r) in reports.iter().enumerate() {
        println!(
            "vertex {i:2}: deterministic={} strongly_contextual={} CF={}",
            r.is_deterministic, r.is_strongly_contextual, r.contextual_fraction
        );
    }
}
