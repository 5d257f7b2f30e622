//! File formats and the command-line driver behind the `sdist` binary.
//!
//! Model files carry a scenario (space, target, outcome modulus,
//! semiring) plus the stored distributions; empirical-model files
//! carry presheaf data for `realize`. All numbers are exact `p/q`
//! strings; `--float` adds decimal approximations for reading, never
//! for decisions.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dist::{glue_pullback, Dist};
use crate::error::{Error, Result};
use crate::monoid::MonoidContext;
use crate::polytope;
use crate::semiring::{rational_to_f64, Scalar, SemiringKind};
use crate::simpdist::{self, EmpiricalModel, SimpDist};
use crate::sset::{DetMap, Edge, SSet2, Target, Triangle, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "sdist",
    about = "Exact contextuality analysis of simplicial distributions",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: OutFormat,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add decimal approximations next to exact values (display only)
    #[arg(long, global = true)]
    pub float: bool,
    /// Override the semiring declared in the input file
    #[arg(long, global = true)]
    pub semiring: Option<String>,
    /// Variable cap for vertex enumeration
    #[arg(long, global = true)]
    pub cap: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the simplicial identities and marginal invariants of a model
    Validate { file: PathBuf },
    /// Decide contextuality; prints the witness when noncontextual
    Check { file: PathBuf },
    /// Contextual fraction (exact rational)
    Cf { file: PathBuf },
    /// Strong contextuality (empty support)
    Strong { file: PathBuf },
    /// Weak invertibility in the distribution monoid, with witness
    Wi { file: PathBuf },
    /// Invertible fraction (exact rational)
    #[command(name = "if")]
    InvertibleFraction { file: PathBuf },
    /// Invertible-support membership of a deterministic map
    Isupp {
        file: PathBuf,
        /// Labeling such as "x=0,y=1" (edges for nerve targets,
        /// vertices for delta targets)
        #[arg(long)]
        map: String,
    },
    /// Product of two models in the distribution monoid
    Mult { a: PathBuf, b: PathBuf },
    /// Two-sided inverse in the distribution monoid, if one exists
    Inverse { file: PathBuf },
    /// Enumerate the vertices of the distribution polytope
    Vertices { file: PathBuf },
    /// CHSH correlators and the eight inequalities
    Chsh { file: PathBuf },
    /// Realize an empirical model as a simplicial distribution
    Realize { file: PathBuf },
    /// Solve for distribution homotopies between two deterministic maps
    Homotopy {
        file: PathBuf,
        /// Labeling of the bottom end, such as "x=0,y=0"
        #[arg(long)]
        phi: String,
        /// Labeling of the top end
        #[arg(long)]
        psi: String,
    },
    /// Glue two distributions with a shared marginal
    Glue { file: PathBuf },
}

// ---------------------------------------------------------------------------
// file formats

#[derive(Debug, Serialize, Deserialize)]
struct SpaceFile {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    triangles: Vec<Triangle>,
}

type DistJson = BTreeMap<String, String>;

#[derive(Debug, Serialize, Deserialize)]
struct ModelFile {
    semiring: String,
    d: u32,
    target: String,
    space: SpaceFile,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    vertex_dists: BTreeMap<String, DistJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    edge_dists: BTreeMap<String, DistJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    tri_dists: BTreeMap<String, DistJson>,
}

#[derive(Debug, Deserialize)]
struct EmpiricalFile {
    d: u32,
    #[serde(default)]
    semiring: Option<String>,
    #[serde(default)]
    measurements: Option<Vec<String>>,
    contexts: Vec<Vec<String>>,
    dists: BTreeMap<String, DistJson>,
}

#[derive(Debug, Deserialize)]
struct GlueFile {
    #[serde(default)]
    semiring: Option<String>,
    p1: DistJson,
    p2: DistJson,
    f1: BTreeMap<String, String>,
    f2: BTreeMap<String, String>,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn parse_target(s: &str, d: u32) -> Result<Target> {
    match s {
        "nerve" => Ok(Target::Nerve(d)),
        "delta" => Ok(Target::DeltaZ(d)),
        _ => Err(Error::Parse(format!(
            "unknown target {s:?} (expected \"nerve\" or \"delta\")"
        ))),
    }
}

fn target_name(t: Target) -> &'static str {
    match t {
        Target::Nerve(_) => "nerve",
        Target::DeltaZ(_) => "delta",
    }
}

struct LoadedModel {
    space: SSet2,
    semiring: SemiringKind,
    target: Target,
    file: ModelFile,
}

impl LoadedModel {
    fn scenario(&self) -> (SSet2, Target, SemiringKind) {
        (self.space.clone(), self.target, self.semiring)
    }

    fn has_dists(&self) -> bool {
        !(self.file.vertex_dists.is_empty()
            && self.file.edge_dists.is_empty()
            && self.file.tri_dists.is_empty())
    }

    fn to_simpdist(&self) -> Result<SimpDist> {
        let parse_table = |table: &BTreeMap<String, DistJson>,
                           dim: usize|
         -> Result<BTreeMap<String, Dist<Word>>> {
            let len = self.target.word_len(dim);
            let mut out = BTreeMap::new();
            for (id, entries) in table {
                let parsed: Vec<(Word, Scalar)> = entries
                    .iter()
                    .map(|(w, v)| {
                        Ok((
                            Word::parse(w, self.target.modulus(), len)?,
                            self.semiring.parse_scalar(v)?,
                        ))
                    })
                    .collect::<Result<_>>()?;
                out.insert(id.clone(), Dist::new(self.semiring, parsed)?);
            }
            Ok(out)
        };
        SimpDist::new(
            self.space.clone(),
            self.semiring,
            self.target,
            parse_table(&self.file.vertex_dists, 0)?,
            parse_table(&self.file.edge_dists, 1)?,
            parse_table(&self.file.tri_dists, 2)?,
        )
    }
}

fn load_model(path: &Path, semiring_override: &Option<String>) -> Result<LoadedModel> {
    let file: ModelFile = parse_json(path, &read_file(path)?)?;
    let semiring: SemiringKind = semiring_override
        .as_deref()
        .unwrap_or(&file.semiring)
        .parse()?;
    let target = parse_target(&file.target, file.d)?;
    let space = SSet2::new(
        file.space.vertices.clone(),
        file.space.edges.clone(),
        file.space.triangles.clone(),
    )?;
    space.validate()?;
    Ok(LoadedModel {
        space,
        semiring,
        target,
        file,
    })
}

fn dist_to_json(dist: &Dist<Word>, d: u32) -> DistJson {
    dist.iter()
        .map(|(w, s)| (w.render(d), s.to_string()))
        .collect()
}

fn simpdist_to_model_file(p: &SimpDist) -> ModelFile {
    let d = p.target().modulus();
    let space = p.space();
    ModelFile {
        semiring: p.semiring().to_string(),
        d,
        target: target_name(p.target()).to_string(),
        space: SpaceFile {
            vertices: space.vertices.clone(),
            edges: space.edges.clone(),
            triangles: space.triangles.clone(),
        },
        vertex_dists: space
            .vertices
            .iter()
            .filter_map(|v| p.vertex_dist(v).map(|dst| (v.clone(), dist_to_json(dst, d))))
            .collect(),
        edge_dists: space
            .edges
            .iter()
            .filter_map(|e| {
                p.edge_dist(&e.id)
                    .map(|dst| (e.id.clone(), dist_to_json(dst, d)))
            })
            .collect(),
        tri_dists: space
            .triangles
            .iter()
            .filter_map(|t| {
                p.tri_dist(&t.id)
                    .map(|dst| (t.id.clone(), dist_to_json(dst, d)))
            })
            .collect(),
    }
}

pub fn model_json(p: &SimpDist) -> String {
    serde_json::to_string_pretty(&simpdist_to_model_file(p)).expect("serializable")
}

/// Parse a model JSON string back into a simplicial distribution.
pub fn model_from_json(text: &str) -> Result<SimpDist> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let semiring: SemiringKind = file.semiring.parse()?;
    let target = parse_target(&file.target, file.d)?;
    let space = SSet2::new(
        file.space.vertices.clone(),
        file.space.edges.clone(),
        file.space.triangles.clone(),
    )?;
    LoadedModel {
        space,
        semiring,
        target,
        file,
    }
    .to_simpdist()
}

fn load_empirical(path: &Path, semiring_override: &Option<String>) -> Result<EmpiricalModel> {
    let file: EmpiricalFile = parse_json(path, &read_file(path)?)?;
    let semiring: SemiringKind = semiring_override
        .as_deref()
        .or(file.semiring.as_deref())
        .unwrap_or("rational")
        .parse()?;
    let measurements = file.measurements.clone().unwrap_or_else(|| {
        let mut seen = Vec::new();
        for ctx in &file.contexts {
            for m in ctx {
                if !seen.contains(m) {
                    seen.push(m.clone());
                }
            }
        }
        seen
    });
    let mut dists = Vec::new();
    for ctx in &file.contexts {
        let key = ctx.join(",");
        let entries = file.dists.get(&key).ok_or_else(|| {
            Error::Parse(format!("no distribution given for context \"{key}\""))
        })?;
        let parsed: Vec<(Word, Scalar)> = entries
            .iter()
            .map(|(w, v)| {
                Ok((
                    Word::parse(w, file.d, ctx.len())?,
                    semiring.parse_scalar(v)?,
                ))
            })
            .collect::<Result<_>>()?;
        dists.push(Dist::new(semiring, parsed)?);
    }
    Ok(EmpiricalModel {
        d: file.d,
        semiring,
        measurements,
        contexts: file.contexts,
        dists,
    })
}

fn parse_labels(labeling: &str) -> Result<BTreeMap<String, u32>> {
    let mut labels = BTreeMap::new();
    for part in labeling.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (id, value) = part.split_once('=').ok_or_else(|| {
            Error::Parse(format!("labeling entry {part:?} is not of the form id=value"))
        })?;
        let value: u32 = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad label value in {part:?}")))?;
        labels.insert(id.trim().to_string(), value);
    }
    Ok(labels)
}

// ---------------------------------------------------------------------------
// rendering

fn fmt_rational(r: &BigRational, float: bool) -> String {
    let exact = if r.denom() == &num_bigint::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    };
    if float {
        format!("{exact} ({:.6})", rational_to_f64(r))
    } else {
        exact
    }
}

fn fmt_scalar(s: &Scalar, float: bool) -> String {
    match s.as_rational() {
        Some(r) if float => fmt_rational(r, true),
        _ => s.to_string(),
    }
}

/// Lay out a `d x d` box of entry strings.
fn box_lines(dist: &Dist<Word>, d: u32, float: bool) -> Vec<String> {
    let mut lines = Vec::new();
    let width = Target::Nerve(d)
        .outcomes(2)
        .iter()
        .map(|w| fmt_scalar(&dist.weight(w), float).len())
        .max()
        .unwrap_or(1);
    for a in 0..d {
        let mut row = Vec::new();
        for b in 0..d {
            row.push(format!(
                "{:>width$}",
                fmt_scalar(&dist.weight(&Word::pair(a, b)), float)
            ));
        }
        lines.push(row.join("  "));
    }
    lines
}

/// Box-table rendering: a CHSH-shaped model becomes the grid
/// of four boxes; other shapes fall back to labeled per-simplex
/// listings.
pub fn render_box_table(p: &SimpDist, float: bool) -> String {
    let d = p.target().modulus();
    if p.target() == Target::Nerve(2) {
        if let Ok(boxes) = polytope::chsh_shape(p.space()) {
            let xs = [&boxes[0].0, &boxes[2].0];
            let ys = [&boxes[0].1, &boxes[1].1];
            let blocks: Vec<Vec<Vec<String>>> = (0..2)
                .map(|row| {
                    (0..2)
                        .map(|col| {
                            let (_, _, t) = &boxes[row * 2 + col];
                            box_lines(p.tri_dist(t).unwrap(), d, float)
                        })
                        .collect()
                })
                .collect();
            let label_w = xs.iter().map(|x| x.len()).max().unwrap_or(0);
            let col_w: Vec<usize> = (0..2)
                .map(|col| {
                    blocks
                        .iter()
                        .flat_map(|row| row[col].iter().map(|l| l.len()))
                        .chain(std::iter::once(ys[col].len()))
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let mut out = Vec::new();
            out.push(format!(
                "{:label_w$}   {:>w0$}   {:>w1$}",
                "",
                ys[0],
                ys[1],
                w0 = col_w[0],
                w1 = col_w[1]
            ));
            for (row, x) in xs.iter().enumerate() {
                for (line, (left, right)) in blocks[row][0].iter().zip(&blocks[row][1]).enumerate()
                {
                    let label = if line == 0 { x.as_str() } else { "" };
                    out.push(
                        format!(
                            "{:label_w$}   {:>w0$}   {:>w1$}",
                            label,
                            left,
                            right,
                            w0 = col_w[0],
                            w1 = col_w[1]
                        )
                        .trim_end()
                        .to_string(),
                    );
                }
                out.push(String::new());
            }
            while out.last().is_some_and(|l| l.is_empty()) {
                out.pop();
            }
            return out.join("\n");
        }
    }
    let mut out = Vec::new();
    for t in &p.space().triangles {
        let dist = p.tri_dist(&t.id).unwrap();
        out.push(format!("triangle {}:", t.id));
        match p.target() {
            Target::Nerve(_) => out.extend(box_lines(dist, d, float).iter().map(|l| format!("  {l}"))),
            Target::DeltaZ(_) => {
                for (w, s) in dist.iter() {
                    out.push(format!("  {}: {}", w.render(d), fmt_scalar(s, float)));
                }
            }
        }
    }
    for e in &p.space().edges {
        let dist = p.edge_dist(&e.id).unwrap();
        out.push(format!("edge {}:", e.id));
        match p.target() {
            Target::DeltaZ(_) if d == 2 => {
                out.extend(box_lines(dist, d, float).iter().map(|l| format!("  {l}")))
            }
            _ => {
                for (w, s) in dist.iter() {
                    out.push(format!("  {}: {}", w.render(d), fmt_scalar(s, float)));
                }
            }
        }
    }
    if let Target::DeltaZ(_) = p.target() {
        for v in &p.space().vertices {
            if let Some(dist) = p.vertex_dist(v) {
                let entries: Vec<String> = dist
                    .iter()
                    .map(|(w, s)| format!("{}: {}", w.render(d), fmt_scalar(s, float)))
                    .collect();
                out.push(format!("vertex {v}: {}", entries.join(", ")));
            }
        }
    }
    out.join("\n")
}

fn witness_json(witness: &Dist<DetMap>) -> serde_json::Value {
    let entries: Vec<serde_json::Value> = witness
        .iter()
        .map(|(phi, w)| {
            json!({
                "labels": phi.labels,
                "weight": w.to_string(),
            })
        })
        .collect();
    json!(entries)
}

fn witness_table(witness: &Dist<DetMap>, float: bool) -> String {
    witness
        .iter()
        .map(|(phi, w)| {
            let labels: Vec<String> = phi
                .labels
                .iter()
                .map(|(id, l)| format!("{id}={l}"))
                .collect();
            format!("  {}  [{}]", fmt_scalar(w, float), labels.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

// ---------------------------------------------------------------------------
// dispatch

pub fn run(cli: &Cli) -> Result<String> {
    let report = dispatch(cli)?;
    if let Some(path) = &cli.out {
        std::fs::write(path, report.as_bytes())
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Ok(format!("wrote {}", path.display()))
    } else {
        Ok(report)
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    let json_mode = cli.format == OutFormat::Json;
    match &cli.command {
        Command::Validate { file } => {
            let model = load_model(file, &cli.semiring)?;
            if model.has_dists() {
                let p = model.to_simpdist()?;
                p.validate()?;
            }
            Ok(if json_mode {
                json!({"ok": true}).to_string()
            } else {
                "ok".to_string()
            })
        }
        Command::Check { file } => {
            let p = load_model(file, &cli.semiring)?.to_simpdist()?;
            let outcome = polytope::is_noncontextual(&p)?;
            if json_mode {
                Ok(serde_json::to_string_pretty(&json!({
                    "noncontextual": outcome.noncontextual,
                    "witness": outcome.witness.as_ref().map(witness_json),
                }))
                .unwrap())
            } else {
                let mut out = String::new();
                out.push_str(if outcome.noncontextual {
                    "noncontextual"
                } else {
                    "contextual"
                });
                if p.semiring() == SemiringKind::RealField {
                    out.push_str(" (signed-rational mode: witness weights may be negative)");
                }
                if let Some(w) = &outcome.witness {
                    out.push_str("\nwitness:\n");
                    out.push_str(&witness_table(w, cli.float));
                }
                Ok(out)
            }
        }
        Command::Cf { file } => {
            let p = load_model(file, &cli.semiring)?.to_simpdist()?;
            let cf = polytope::contextual_fraction(&p)?;
            Ok(if json_mode {
                json!({"contextual_fraction": fmt_rational(&cf, false)}).to_string()
            } else {
                format!("CF = {}", fmt_rational(&cf, cli.float))
            })
        }
        Command::Strong { file } => {
            let p = load_model(file, &cli.semiring)?.to_simpdist()?;
            let strong = simpdist::is_strongly_contextual(&p)?;
            Ok(if json_mode {
                json!({"strongly_contextual": strong}).to_string()
            } else if strong {
                "strongly contextual".to_string()
            } else {
                "not strongly contextual".to_string()
            })
        }
        Command::Wi { file } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, semiring) = model.scenario();
            let p = model.to_simpdist()?;
            let ctx = MonoidContext::new(space, target, semiring)?;
            let witness = ctx.is_weakly_invertible(&p)?;
            if json_mode {
                Ok(serde_json::to_string_pretty(&json!({
                    "weakly_invertible": witness.is_some(),
                    "witness": witness.as_ref().map(witness_json),
                }))
                .unwrap())
            } else {
                match witness {
                    Some(w) => Ok(format!(
                        "weakly invertible\nwitness:\n{}",
                        witness_table(&w, cli.float)
                    )),
                    None => Ok("not weakly invertible".to_string()),
                }
            }
        }
        Command::InvertibleFraction { file } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, semiring) = model.scenario();
            let p = model.to_simpdist()?;
            let ctx = MonoidContext::new(space, target, semiring)?;
            let fr = ctx.invertible_fraction(&p)?;
            Ok(if json_mode {
                json!({"invertible_fraction": fmt_rational(&fr, false)}).to_string()
            } else {
                format!("IF = {}", fmt_rational(&fr, cli.float))
            })
        }
        Command::Isupp { file, map } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, semiring) = model.scenario();
            let p = model.to_simpdist()?;
            let ctx = MonoidContext::new(space, target, semiring)?;
            let phi = DetMap::new(target, parse_labels(map)?);
            phi.validate_on(ctx.space())?;
            let member = ctx.isupp_member(&p, &phi)?;
            Ok(if json_mode {
                json!({"isupp_member": member}).to_string()
            } else {
                format!(
                    "{} the invertible support",
                    if member { "in" } else { "not in" }
                )
            })
        }
        Command::Mult { a, b } => {
            let ma = load_model(a, &cli.semiring)?;
            let (space, target, semiring) = ma.scenario();
            let p = ma.to_simpdist()?;
            let q = load_model(b, &cli.semiring)?.to_simpdist()?;
            let ctx = MonoidContext::new(space, target, semiring)?;
            let product = ctx.mult(&p, &q)?;
            Ok(if json_mode {
                model_json(&product)
            } else {
                render_box_table(&product, cli.float)
            })
        }
        Command::Inverse { file } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, semiring) = model.scenario();
            let p = model.to_simpdist()?;
            let ctx = MonoidContext::new(space, target, semiring)?;
            match ctx.inverse(&p)? {
                Some(inv) => Ok(if json_mode {
                    model_json(&inv)
                } else {
                    render_box_table(&inv, cli.float)
                }),
                None => Ok(if json_mode {
                    json!({"invertible": false}).to_string()
                } else {
                    "not invertible".to_string()
                }),
            }
        }
        Command::Vertices { file } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, _) = model.scenario();
            let reports = polytope::enumerate_vertices(&space, target, cli.cap)?;
            if json_mode {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        json!({
                            "deterministic": r.is_deterministic,
                            "strongly_contextual": r.is_strongly_contextual,
                            "contextual_fraction": fmt_rational(&r.contextual_fraction, false),
                            "model": serde_json::from_str::<serde_json::Value>(&model_json(&r.dist)).unwrap(),
                        })
                    })
                    .collect();
                Ok(serde_json::to_string_pretty(&json!({
                    "count": reports.len(),
                    "vertices": items,
                }))
                .unwrap())
            } else {
                let mut out = vec![format!("{} vertices", reports.len())];
                for (i, r) in reports.iter().enumerate() {
                    out.push(format!(
                        "vertex {i}: deterministic={} strongly_contextual={} CF={}",
                        r.is_deterministic,
                        r.is_strongly_contextual,
                        fmt_rational(&r.contextual_fraction, cli.float)
                    ));
                    out.push(render_box_table(&r.dist, cli.float));
                }
                Ok(out.join("\n"))
            }
        }
        Command::Chsh { file } => {
            let p = load_model(file, &cli.semiring)?.to_simpdist()?;
            let report = polytope::chsh_check(&p)?;
            if json_mode {
                Ok(serde_json::to_string_pretty(&json!({
                    "correlators": report
                        .correlators
                        .iter()
                        .map(|((x, y), c)| json!({"x": x, "y": y, "value": fmt_rational(c, false)}))
                        .collect::<Vec<_>>(),
                    "inequalities": report
                        .inequalities
                        .iter()
                        .map(|(label, v, ok)| json!({
                            "inequality": label,
                            "value": fmt_rational(v, false),
                            "satisfied": ok,
                        }))
                        .collect::<Vec<_>>(),
                    "all_satisfied": report.all_satisfied,
                }))
                .unwrap())
            } else {
                let mut out = Vec::new();
                for ((x, y), c) in &report.correlators {
                    out.push(format!("<{x},{y}> = {}", fmt_rational(c, cli.float)));
                }
                for (label, v, ok) in &report.inequalities {
                    out.push(format!(
                        "{label}: value {} [{}]",
                        fmt_rational(v, cli.float),
                        if *ok { "ok" } else { "violated" }
                    ));
                }
                out.push(if report.all_satisfied {
                    "all CHSH inequalities satisfied".to_string()
                } else {
                    "CHSH violation".to_string()
                });
                Ok(out.join("\n"))
            }
        }
        Command::Realize { file } => {
            let model = load_empirical(file, &cli.semiring)?;
            let p = simpdist::realize(&model)?;
            Ok(if json_mode {
                model_json(&p)
            } else {
                render_box_table(&p, cli.float)
            })
        }
        Command::Homotopy { file, phi, psi } => {
            let model = load_model(file, &cli.semiring)?;
            let (space, target, _) = model.scenario();
            let phi0 = DetMap::new(target, parse_labels(phi)?);
            let phi1 = DetMap::new(target, parse_labels(psi)?);
            let homotopic = crate::sset::homotopy_classes(&phi0, &phi1, &space)?;
            let outcome = polytope::distribution_homotopy(&phi0, &phi1, &space)?;
            let (kind, witnesses) = match &outcome {
                polytope::HomotopyOutcome::NoSolution => ("none", vec![]),
                polytope::HomotopyOutcome::Unique(f) => ("unique", vec![f.clone()]),
                polytope::HomotopyOutcome::NonUnique(f, g) => {
                    ("non-unique", vec![f.clone(), g.clone()])
                }
            };
            let vertex_flags: Vec<bool> = witnesses
                .iter()
                .map(polytope::is_vertex)
                .collect::<Result<_>>()?;
            if json_mode {
                Ok(serde_json::to_string_pretty(&json!({
                    "maps_homotopic": homotopic,
                    "distribution_homotopy": kind,
                    "vertices": vertex_flags,
                    "witnesses": witnesses
                        .iter()
                        .map(|f| serde_json::from_str::<serde_json::Value>(&model_json(f)).unwrap())
                        .collect::<Vec<_>>(),
                }))
                .unwrap())
            } else {
                let mut out = vec![
                    format!(
                        "deterministic maps are {}homotopic",
                        if homotopic { "" } else { "not " }
                    ),
                    format!("distribution homotopy: {kind}"),
                ];
                for (f, is_v) in witnesses.iter().zip(vertex_flags) {
                    out.push(format!("witness (vertex: {is_v}):"));
                    out.push(render_box_table(f, cli.float));
                }
                Ok(out.join("\n"))
            }
        }
        Command::Glue { file } => {
            let glue: GlueFile = parse_json(file, &read_file(file)?)?;
            let semiring: SemiringKind = cli
                .semiring
                .as_deref()
                .or(glue.semiring.as_deref())
                .unwrap_or("rational")
                .parse()?;
            let parse_dist = |table: &DistJson| -> Result<Dist<String>> {
                Dist::new(
                    semiring,
                    table
                        .iter()
                        .map(|(k, v)| Ok((k.clone(), semiring.parse_scalar(v)?)))
                        .collect::<Result<Vec<_>>>()?,
                )
            };
            let p1 = parse_dist(&glue.p1)?;
            let p2 = parse_dist(&glue.p2)?;
            let lookup = |map: &BTreeMap<String, String>, k: &String| {
                map.get(k).cloned().unwrap_or_else(|| k.clone())
            };
            let glued = glue_pullback(
                &p1,
                &p2,
                |k| lookup(&glue.f1, k),
                |k| lookup(&glue.f2, k),
            )?;
            let table: BTreeMap<String, String> = glued
                .iter()
                .map(|((a, b), w)| (format!("{a},{b}"), w.to_string()))
                .collect();
            Ok(if json_mode {
                serde_json::to_string_pretty(&table).unwrap()
            } else {
                table
                    .iter()
                    .map(|(k, v)| format!("{k}: {v}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
    }
}

/// Entry point used by the `sdist` binary.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version through this path too
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(report) => {
            println!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
