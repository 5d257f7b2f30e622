//! Full analysis of the Popescu-Rohrlich box: contextuality, strong
//! contextuality, contextual fraction, the CHSH inequalities and the
//! restriction to the boundary XOR edges.
//!
//! Run with `cargo run --example pr_box_analysis`.

use simplicial_distributions::cli::render_box_table;
use simplicial_distributions::polytope::{chsh_check, contextual_fraction, is_noncontextual};
use simplicial_distributions::simpdist::{is_strongly_contextual, restrict};
use simplicial_distributions::sset::SMap;
use simplicial_distributions::{build_standard, StandardSpace};

mod util;
use util::pr_box;

fn main() {
    let p = pr_box();
    p.validate().expect("the PR box is a simplicial distribution");
    println!("{}\n", render_box_table(&p, false));

    let nc = is_noncontextual(&p).expect("decision");
    println!("noncontextual: {}", nc.noncontextual);
    println!(
        "strongly contextual: {}",
        is_strongly_contextual(&p).expect("support")
    );
    println!("contextual fraction: {}", contextual_fraction(&p).expect("lp"));

    let report = chsh_check(&p).expect("chsh");
    for ((x, y), c) in &report.correlators {
        println!("<{x},{y}> = {c}");
    }
    for (label, value, _) in report.inequalities.iter().filter(|(_, _, ok)| !ok) {
        println!("violated: {label} (value {value})");
    }

    // restriction to the four boundary edges gives delta distributions
    // at the XOR values (0, 0, 0, 1)
    let boundary = build_standard(StandardSpace::ChshBoundary);
    let mut inclusion = SMap::identity(&boundary);
    inclusion.triangles.clear();
    let restricted = restrict(&p, &inclusion, &boundary).expect("restriction");
    for e in &boundary.edges {
        let dist = restricted.edge_dist(&e.id).unwrap();
        let entries: Vec<String> = dist
            .iter()
            .map(|(w, s)| format!("{}: {s}", w.render(2)))
            .collect();
        println!("boundary {}: {}", e.id, entries.join(", "));
    }
}
