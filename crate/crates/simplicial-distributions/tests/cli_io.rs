//! Command-line driver and file-format checks: verb outputs on the
//! shipped data files, JSON round trips, and exit codes.

use std::path::PathBuf;

use simplicial_distributions::cli::{self, Cli, Command, OutFormat};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
}

fn run(command: Command) -> simplicial_distributions::Result<String> {
    cli::run(&Cli {
        command,
        format: OutFormat::Table,
        out: None,
        float: false,
        semiring: None,
        cap: None,
    })
}

fn run_json(command: Command) -> simplicial_distributions::Result<String> {
    cli::run(&Cli {
        command,
        format: OutFormat::Json,
        out: None,
        float: false,
        semiring: None,
        cap: None,
    })
}

#[test]
fn check_pr_box_is_contextual() {
    let out = run(Command::Check {
        file: data("chsh_pr.json"),
    })
    .unwrap();
    assert_eq!(out, "contextual");
    let out = run(Command::Cf {
        file: data("chsh_pr.json"),
    })
    .unwrap();
    assert_eq!(out, "CF = 1");
}

#[test]
fn inverse_of_circle_model_prints_exact_entries() {
    let out = run(Command::Inverse {
        file: data("circle_1224.json"),
    })
    .unwrap();
    for needle in ["11/35", "2/7", "4/35"] {
        assert!(out.contains(needle), "missing {needle} in {out}");
    }
}

#[test]
fn vertices_of_the_chsh_scenario() {
    let out = run(Command::Vertices {
        file: data("chsh_scenario.json"),
    })
    .unwrap();
    assert!(out.starts_with("24 vertices"));
    assert_eq!(out.matches("deterministic=true").count(), 16);
    assert_eq!(out.matches("strongly_contextual=true").count(), 8);
}

#[test]
fn realize_and_chsh_on_the_empirical_pr_model() {
    let realized = run_json(Command::Realize {
        file: data("chsh_pr_empirical.json"),
    })
    .unwrap();
    let p = cli::model_from_json(&realized).unwrap();
    p.validate().unwrap();
    let report = simplicial_distributions::polytope::chsh_check(&p).unwrap();
    assert!(!report.all_satisfied);
}

#[test]
fn homotopy_verb_reports_unique_vertex() {
    let out = run(Command::Homotopy {
        file: data("two_edge_loop.json"),
        phi: "x=0,y=0".into(),
        psi: "x=1,y=0".into(),
    })
    .unwrap();
    assert!(out.contains("not homotopic"));
    assert!(out.contains("distribution homotopy: unique"));
    assert!(out.contains("vertex: true"));
}

#[test]
fn glue_verb_reports_the_glued_distribution() {
    let out = run(Command::Glue {
        file: data("glue_example.json"),
    })
    .unwrap();
    assert!(out.contains("u,s: 1/2"));
    assert!(out.contains("v,t: 1/4"));
    assert!(out.contains("w,t: 1/4"));
}

#[test]
fn model_json_round_trip() {
    let text = std::fs::read_to_string(data("chsh_pr.json")).unwrap();
    let p = cli::model_from_json(&text).unwrap();
    let rendered = cli::model_json(&p);
    let q = cli::model_from_json(&rendered).unwrap();
    assert_eq!(p, q);
}

#[test]
fn validate_rejects_broken_marginals() {
    // corrupt the PR box: overwrite an edge distribution so a triangle
    // marginal disagrees
    let text = std::fs::read_to_string(data("chsh_pr.json")).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    value["edge_dists"]["z11"] =
        serde_json::json!({"0": "1"});
    let dir = std::env::temp_dir().join("sdist-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("broken.json");
    std::fs::write(&bad, serde_json::to_string(&value).unwrap()).unwrap();
    let err = run(Command::Validate { file: bad }).unwrap_err();
    assert!(err.to_string().contains("marginal"));
    // and the good file validates
    let ok = run(Command::Validate {
        file: data("chsh_pr.json"),
    })
    .unwrap();
    assert_eq!(ok, "ok");
}

#[test]
fn exit_codes_from_the_binary_entry() {
    // analysis completed
    let code = cli::main_from_args([
        "sdist",
        "check",
        data("chsh_pr.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    // missing file: nonzero
    let code = cli::main_from_args(["sdist", "check", "/nonexistent/model.json"]);
    assert_eq!(code, 1);
    // usage error: nonzero
    let code = cli::main_from_args(["sdist", "no-such-verb"]);
    assert_eq!(code, 2);
}

#[test]
fn semiring_override_flag() {
    // reinterpreting the PR box over the rational field makes it
    // expressible as a signed combination, hence noncontextual there
    let out = cli::run(&Cli {
        command: Command::Check {
            file: data("chsh_pr.json"),
        },
        format: OutFormat::Table,
        out: None,
        float: false,
        semiring: Some("real".into()),
        cap: None,
    })
    .unwrap();
    assert!(out.starts_with("noncontextual"));
}
