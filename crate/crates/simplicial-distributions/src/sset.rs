//! 2-truncated simplicial sets and simplicial maps into the nerve
//! `N(Z_d)` or the vertex-determined space `Delta_{Z_d}`.
//!
//! Only nondegenerate generators up to dimension 2 are stored; the
//! edge convention is `d1 = source`, `d0 = target`, so for a triangle
//! the `d1` face is the composite edge (the nerve's "x XOR y" edge).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A tuple of `Z_d` elements: an n-simplex of the target space.
/// Rendered as a digit string (`"01"`) for d <= 10, comma-separated
/// otherwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(a: u32) -> Word {
        Word(vec![a])
    }

    pub fn pair(a: u32, b: u32) -> Word {
        Word(vec![a, b])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_mod(&self, other: &Word, d: u32) -> Word {
        debug_assert_eq!(self.0.len(), other.0.len());
        Word(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| (a + b) % d)
                .collect(),
        )
    }

    pub fn neg_mod(&self, d: u32) -> Word {
        Word(self.0.iter().map(|a| (d - a % d) % d).collect())
    }

    pub fn render(&self, d: u32) -> String {
        if d <= 10 {
            self.0.iter().map(|a| a.to_string()).collect()
        } else {
            self.0
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn parse(s: &str, d: u32, len: usize) -> Result<Word> {
        let values: Vec<u32> = if d <= 10 {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad outcome digit in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad outcome entry in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() != len {
            return Err(Error::Parse(format!(
                "outcome {s:?} has length {}, expected {len}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| **v >= d) {
            return Err(Error::Parse(format!("outcome entry {v} is not in Z_{d}")));
        }
        Ok(Word(values))
    }
}

/// Target outcome space: the nerve of `Z_d` or `Delta_{Z_d}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Nerve(u32),
    DeltaZ(u32),
}

impl Target {
    pub fn modulus(self) -> u32 {
        match self {
            Target::Nerve(d) | Target::DeltaZ(d) => d,
        }
    }

    /// Length of the outcome word carried by a simplex of dimension
    /// `dim`: nerve n-simplices are n-tuples, `Delta_{Z_d}` n-simplices
    /// are (n+1)-tuples.
    pub fn word_len(self, dim: usize) -> usize {
        match self {
            Target::Nerve(_) => dim,
            Target::DeltaZ(_) => dim + 1,
        }
    }

    /// All outcome words of a simplex of dimension `dim`, in order.
    pub fn outcomes(self, dim: usize) -> Vec<Word> {
        let d = self.modulus();
        let len = self.word_len(dim);
        let mut out = Vec::with_capacity((d as usize).pow(len as u32));
        let mut current = vec![0u32; len];
        loop {
            out.push(Word(current.clone()));
            let mut i = len;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                current[i] += 1;
                if current[i] < d {
                    break;
                }
                current[i] = 0;
            }
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Nerve(d) => write!(f, "nerve Z_{d}"),
            Target::DeltaZ(d) => write!(f, "delta Z_{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    pub id: String,
    pub d0: String,
    pub d1: String,
    pub d2: String,
}

/// A 2-truncated simplicial set: generators and face incidences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SSet2 {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    pub triangles: Vec<Triangle>,
}

impl SSet2 {
    /// Checks id uniqueness per dimension and that all referenced ids
    /// exist. Simplicial identities are checked separately by
    /// [`SSet2::validate`].
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>, triangles: Vec<Triangle>) -> Result<Self> {
        let space = SSet2 {
            vertices,
            edges,
            triangles,
        };
        space.check_refs()?;
        Ok(space)
    }

    fn check_refs(&self) -> Result<()> {
        let mut errors = Vec::new();
        let mut vset = BTreeSet::new();
        for v in &self.vertices {
            if !vset.insert(v.clone()) {
                errors.push(format!("duplicate vertex id {v:?}"));
            }
        }
        let mut eset = BTreeSet::new();
        for e in &self.edges {
            if !eset.insert(e.id.clone()) {
                errors.push(format!("duplicate edge id {:?}", e.id));
            }
            for v in [&e.src, &e.dst] {
                if !vset.contains(v) {
                    errors.push(format!("edge {:?} references unknown vertex {v:?}", e.id));
                }
            }
        }
        let mut tset = BTreeSet::new();
        for t in &self.triangles {
            if !tset.insert(t.id.clone()) {
                errors.push(format!("duplicate triangle id {:?}", t.id));
            }
            for e in [&t.d0, &t.d1, &t.d2] {
                if !eset.contains(e) {
                    errors.push(format!("triangle {:?} references unknown edge {e:?}", t.id));
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }

    pub fn edge(&self, id: &str) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn triangle(&self, id: &str) -> Option<&Triangle> {
        self.triangles.iter().find(|t| t.id == id)
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertices.iter().any(|v| v == id)
    }

    pub fn is_one_dimensional(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Vertex sequence (v0, v1, v2) of a triangle, where the d2 face is
    /// [v0, v1], d0 is [v1, v2] and d1 is [v0, v2].
    pub fn triangle_vertices(&self, t: &Triangle) -> Result<(String, String, String)> {
        let d2 = self
            .edge(&t.d2)
            .ok_or_else(|| Error::Precondition(format!("missing edge {:?}", t.d2)))?;
        let d0 = self
            .edge(&t.d0)
            .ok_or_else(|| Error::Precondition(format!("missing edge {:?}", t.d0)))?;
        Ok((d2.src.clone(), d2.dst.clone(), d0.dst.clone()))
    }

    /// Check the vertex-level simplicial identities for every triangle:
    /// d0(d0 t) = d0(d1 t), d0(d2 t) = d1(d0 t), d1(d1 t) = d1(d2 t).
    pub fn validate(&self) -> Result<()> {
        self.check_refs()?;
        let mut errors = Vec::new();
        for t in &self.triangles {
            let e0 = self.edge(&t.d0).unwrap();
            let e1 = self.edge(&t.d1).unwrap();
            let e2 = self.edge(&t.d2).unwrap();
            if e0.dst != e1.dst {
                errors.push(format!(
                    "triangle {:?}: d0(d0)={:?} but d0(d1)={:?} (identity d0 d0 = d0 d1)",
                    t.id, e0.dst, e1.dst
                ));
            }
            if e2.dst != e0.src {
                errors.push(format!(
                    "triangle {:?}: d0(d2)={:?} but d1(d0)={:?} (identity d0 d2 = d1 d0)",
                    t.id, e2.dst, e0.src
                ));
            }
            if e1.src != e2.src {
                errors.push(format!(
                    "triangle {:?}: d1(d1)={:?} but d1(d2)={:?} (identity d1 d1 = d1 d2)",
                    t.id, e1.src, e2.src
                ));
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }
}

/// The prebuilt example spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardSpace {
    /// The standard triangle: 3 vertices, 3 edges, 1 triangle.
    Delta2,
    /// The simplicial circle: 1 vertex, 1 looping edge.
    Circle,
    /// A triangle whose d1 and d2 faces are the same edge and whose d0
    /// face is a loop; 1 vertex, 2 edges, 1 triangle.
    GluedTriangle,
    /// The square made of four triangles around a central vertex.
    ChshCone,
    /// The four outer edges of the square.
    ChshBoundary,
    /// Two vertices joined by two parallel edges.
    TwoEdgeLoop,
}

impl FromStr for StandardSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta2" => Ok(StandardSpace::Delta2),
            "circle" => Ok(StandardSpace::Circle),
            "glued-triangle" => Ok(StandardSpace::GluedTriangle),
            "chsh-cone" => Ok(StandardSpace::ChshCone),
            "chsh-boundary" => Ok(StandardSpace::ChshBoundary),
            "two-edge-loop" => Ok(StandardSpace::TwoEdgeLoop),
            _ => Err(Error::Parse(format!("unknown standard space {s:?}"))),
        }
    }
}

fn edge(id: &str, src: &str, dst: &str) -> Edge {
    Edge {
        id: id.into(),
        src: src.into(),
        dst: dst.into(),
    }
}

fn tri(id: &str, d0: &str, d1: &str, d2: &str) -> Triangle {
    Triangle {
        id: id.into(),
        d0: d0.into(),
        d1: d1.into(),
        d2: d2.into(),
    }
}

pub fn build_standard(name: StandardSpace) -> SSet2 {
    let space = match name {
        StandardSpace::Delta2 => SSet2::new(
            vec!["v0".into(), "v1".into(), "v2".into()],
            vec![edge("x", "v0", "v1"), edge("y", "v1", "v2"), edge("z", "v0", "v2")],
            vec![tri("t", "y", "z", "x")],
        ),
        StandardSpace::Circle => SSet2::new(
            vec!["x".into()],
            vec![edge("s", "x", "x")],
            vec![],
        ),
        StandardSpace::GluedTriangle => SSet2::new(
            vec!["v".into()],
            vec![edge("e", "v", "v"), edge("z", "v", "v")],
            vec![tri("t", "z", "e", "e")],
        ),
        StandardSpace::ChshCone => {
            // outer vertices x_i feed into the cone vertex c, which feeds
            // the outer vertices y_j; each triangle s_ij has d2 = x_i,
            // d0 = y_j and d1 = the boundary edge z_ij (the "x XOR y" face)
            let vertices = vec!["c".into(), "x0".into(), "x1".into(), "y0".into(), "y1".into()];
            let mut edges = vec![
                edge("x0", "x0", "c"),
                edge("x1", "x1", "c"),
                edge("y0", "c", "y0"),
                edge("y1", "c", "y1"),
            ];
            let mut triangles = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    edges.push(edge(&format!("z{i}{j}"), &format!("x{i}"), &format!("y{j}")));
                    triangles.push(tri(
                        &format!("s{i}{j}"),
                        &format!("y{j}"),
                        &format!("z{i}{j}"),
                        &format!("x{i}"),
                    ));
                }
            }
            SSet2::new(vertices, edges, triangles)
        }
        StandardSpace::ChshBoundary => {
            let vertices = vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()];
            let mut edges = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    edges.push(edge(&format!("z{i}{j}"), &format!("x{i}"), &format!("y{j}")));
                }
            }
            SSet2::new(vertices, edges, vec![])
        }
        StandardSpace::TwoEdgeLoop => SSet2::new(
            vec!["u".into(), "w".into()],
            vec![edge("x", "u", "w"), edge("y", "u", "w")],
            vec![],
        ),
    };
    space.expect("standard spaces are well formed")
}

/// A simplicial map between 2-truncated simplicial sets, given by id
/// maps in each dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SMap {
    pub vertices: BTreeMap<String, String>,
    pub edges: BTreeMap<String, String>,
    pub triangles: BTreeMap<String, String>,
}

impl SMap {
    pub fn identity(space: &SSet2) -> SMap {
        SMap {
            vertices: space.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
            edges: space.edges.iter().map(|e| (e.id.clone(), e.id.clone())).collect(),
            triangles: space
                .triangles
                .iter()
                .map(|t| (t.id.clone(), t.id.clone()))
                .collect(),
        }
    }

    /// Check that the id maps are total on the domain, land in the
    /// codomain and preserve faces.
    pub fn validate(&self, dom: &SSet2, cod: &SSet2) -> Result<()> {
        let mut errors = Vec::new();
        for v in &dom.vertices {
            match self.vertices.get(v) {
                None => errors.push(format!("vertex {v:?} has no image")),
                Some(w) if !cod.has_vertex(w) => {
                    errors.push(format!("vertex {v:?} maps to unknown vertex {w:?}"))
                }
                _ => {}
            }
        }
        for e in &dom.edges {
            let Some(img_id) = self.edges.get(&e.id) else {
                errors.push(format!("edge {:?} has no image", e.id));
                continue;
            };
            let Some(img) = cod.edge(img_id) else {
                errors.push(format!("edge {:?} maps to unknown edge {img_id:?}", e.id));
                continue;
            };
            if self.vertices.get(&e.src) != Some(&img.src)
                || self.vertices.get(&e.dst) != Some(&img.dst)
            {
                errors.push(format!(
                    "edge {:?}: image {:?} does not preserve endpoints",
                    e.id, img_id
                ));
            }
        }
        for t in &dom.triangles {
            let Some(img_id) = self.triangles.get(&t.id) else {
                errors.push(format!("triangle {:?} has no image", t.id));
                continue;
            };
            let Some(img) = cod.triangle(img_id) else {
                errors.push(format!(
                    "triangle {:?} maps to unknown triangle {img_id:?}",
                    t.id
                ));
                continue;
            };
            for (face, dom_face, cod_face) in [
                ("d0", &t.d0, &img.d0),
                ("d1", &t.d1, &img.d1),
                ("d2", &t.d2, &img.d2),
            ] {
                if self.edges.get(dom_face) != Some(cod_face) {
                    errors.push(format!(
                        "triangle {:?}: {face} face is not preserved by the image {:?}",
                        t.id, img_id
                    ));
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }
}

/// Disjoint union with injections; ids are relabeled with `0:`/`1:`
/// prefixes.
pub fn disjoint_union(a: &SSet2, b: &SSet2) -> (SSet2, SMap, SMap) {
    let relabel = |prefix: &str, s: &str| format!("{prefix}{s}");
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    let mut maps = Vec::new();
    for (prefix, part) in [("0:", a), ("1:", b)] {
        let mut map = SMap {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            triangles: BTreeMap::new(),
        };
        for v in &part.vertices {
            let nv = relabel(prefix, v);
            map.vertices.insert(v.clone(), nv.clone());
            vertices.push(nv);
        }
        for e in &part.edges {
            let ne = Edge {
                id: relabel(prefix, &e.id),
                src: relabel(prefix, &e.src),
                dst: relabel(prefix, &e.dst),
            };
            map.edges.insert(e.id.clone(), ne.id.clone());
            edges.push(ne);
        }
        for t in &part.triangles {
            let nt = Triangle {
                id: relabel(prefix, &t.id),
                d0: relabel(prefix, &t.d0),
                d1: relabel(prefix, &t.d1),
                d2: relabel(prefix, &t.d2),
            };
            map.triangles.insert(t.id.clone(), nt.id.clone());
            triangles.push(nt);
        }
        maps.push(map);
    }
    let space = SSet2::new(vertices, edges, triangles).expect("relabeled union is well formed");
    let right = maps.pop().unwrap();
    let left = maps.pop().unwrap();
    (space, left, right)
}

/// The triangulated cylinder over a 1-dimensional space, with the two
/// end inclusions and the per-edge (lower, upper) triangle pairs.
#[derive(Debug, Clone)]
pub struct Prism {
    pub space: SSet2,
    /// Inclusion of the original space at level 0 (a homotopy "from"
    /// map lives here).
    pub bottom: SMap,
    /// Inclusion at level 1 (a homotopy "to" map lives here).
    pub top: SMap,
    /// edge id -> (lower triangle id, upper triangle id)
    pub triangles_over: BTreeMap<String, (String, String)>,
}

pub fn prism(space: &SSet2) -> Result<Prism> {
    if !space.is_one_dimensional() {
        return Err(Error::Unsupported(
            "prism is only implemented for 1-dimensional spaces".into(),
        ));
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    for v in &space.vertices {
        vertices.push(format!("{v}.0"));
        vertices.push(format!("{v}.1"));
    }
    for v in &space.vertices {
        edges.push(edge(&format!("{v}.I"), &format!("{v}.0"), &format!("{v}.1")));
    }
    let mut triangles_over = BTreeMap::new();
    for e in &space.edges {
        let (u, w) = (&e.src, &e.dst);
        let bottom_id = format!("{}.0", e.id);
        let top_id = format!("{}.1", e.id);
        let diag_id = format!("{}.D", e.id);
        edges.push(edge(&bottom_id, &format!("{u}.0"), &format!("{w}.0")));
        edges.push(edge(&top_id, &format!("{u}.1"), &format!("{w}.1")));
        edges.push(edge(&diag_id, &format!("{u}.0"), &format!("{w}.1")));
        let lower = format!("{}.L", e.id);
        let upper = format!("{}.U", e.id);
        triangles.push(tri(&lower, &format!("{w}.I"), &diag_id, &bottom_id));
        triangles.push(tri(&upper, &top_id, &diag_id, &format!("{u}.I")));
        triangles_over.insert(e.id.clone(), (lower, upper));
    }
    let prism_space = SSet2::new(vertices, edges, triangles)?;
    prism_space.validate()?;
    let end = |level: usize| SMap {
        vertices: space
            .vertices
            .iter()
            .map(|v| (v.clone(), format!("{v}.{level}")))
            .collect(),
        edges: space
            .edges
            .iter()
            .map(|e| (e.id.clone(), format!("{}.{level}", e.id)))
            .collect(),
        triangles: BTreeMap::new(),
    };
    Ok(Prism {
        bottom: end(0),
        top: end(1),
        space: prism_space,
        triangles_over,
    })
}

/// A simplicial map into the target, encoded as an edge labeling
/// (nerve) or a vertex labeling (`Delta_{Z_d}`). Plays the role of the
/// deterministic distributions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DetMap {
    pub target: Target,
    pub labels: BTreeMap<String, u32>,
}

impl DetMap {
    pub fn new(target: Target, labels: BTreeMap<String, u32>) -> DetMap {
        DetMap { target, labels }
    }

    pub fn label(&self, id: &str) -> Result<u32> {
        self.labels
            .get(id)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("no label for simplex {id:?}")))
    }

    /// Check the map is a simplicial map on `space`: total labels in
    /// range and, for nerve targets, the triangle relation
    /// `label(d1) = label(d2) + label(d0)` in `Z_d`.
    pub fn validate_on(&self, space: &SSet2) -> Result<()> {
        let d = self.target.modulus();
        let mut errors = Vec::new();
        let ids: Vec<&String> = match self.target {
            Target::Nerve(_) => space.edges.iter().map(|e| &e.id).collect(),
            Target::DeltaZ(_) => space.vertices.iter().collect(),
        };
        for id in ids {
            match self.labels.get(id) {
                None => errors.push(format!("missing label for {id:?}")),
                Some(l) if *l >= d => errors.push(format!("label {l} for {id:?} not in Z_{d}")),
                _ => {}
            }
        }
        if let Target::Nerve(_) = self.target {
            for t in &space.triangles {
                let (l0, l1, l2) = (
                    self.labels.get(&t.d0),
                    self.labels.get(&t.d1),
                    self.labels.get(&t.d2),
                );
                if let (Some(l0), Some(l1), Some(l2)) = (l0, l1, l2) {
                    if (l2 + l0) % d != *l1 {
                        errors.push(format!(
                            "triangle {:?}: label(d1)={l1} but label(d2)+label(d0)={} mod {d}",
                            t.id,
                            (l2 + l0) % d
                        ));
                    }
                }
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Validation(errors))
        }
    }

    pub fn vertex_value(&self, _space: &SSet2, id: &str) -> Result<Word> {
        match self.target {
            Target::Nerve(_) => Ok(Word::empty()),
            Target::DeltaZ(_) => Ok(Word::single(self.label(id)?)),
        }
    }

    pub fn edge_value(&self, space: &SSet2, id: &str) -> Result<Word> {
        match self.target {
            Target::Nerve(_) => Ok(Word::single(self.label(id)?)),
            Target::DeltaZ(_) => {
                let e = space
                    .edge(id)
                    .ok_or_else(|| Error::Precondition(format!("unknown edge {id:?}")))?;
                Ok(Word::pair(self.label(&e.src)?, self.label(&e.dst)?))
            }
        }
    }

    pub fn tri_value(&self, space: &SSet2, id: &str) -> Result<Word> {
        let t = space
            .triangle(id)
            .ok_or_else(|| Error::Precondition(format!("unknown triangle {id:?}")))?;
        match self.target {
            Target::Nerve(_) => Ok(Word::pair(self.label(&t.d2)?, self.label(&t.d0)?)),
            Target::DeltaZ(_) => {
                let (v0, v1, v2) = space.triangle_vertices(t)?;
                Ok(Word(vec![
                    self.label(&v0)?,
                    self.label(&v1)?,
                    self.label(&v2)?,
                ]))
            }
        }
    }

    /// Pointwise sum of labels (the product of deterministic maps in
    /// the simplicial group of maps).
    pub fn add(&self, other: &DetMap) -> Result<DetMap> {
        if self.target != other.target {
            return Err(Error::Precondition("targets differ".into()));
        }
        let d = self.target.modulus();
        let mut labels = BTreeMap::new();
        for (id, l) in &self.labels {
            let r = other
                .labels
                .get(id)
                .ok_or_else(|| Error::Precondition(format!("no label for {id:?}")))?;
            labels.insert(id.clone(), (l + r) % d);
        }
        Ok(DetMap {
            target: self.target,
            labels,
        })
    }

    /// Pointwise label negation (the group inverse).
    pub fn negate(&self) -> DetMap {
        let d = self.target.modulus();
        DetMap {
            target: self.target,
            labels: self
                .labels
                .iter()
                .map(|(id, l)| (id.clone(), (d - l % d) % d))
                .collect(),
        }
    }

    /// Pull back along a simplicial map `f: Z -> X`, yielding a map on
    /// the domain of `f`.
    pub fn restrict_along(&self, f: &SMap) -> DetMap {
        let source = match self.target {
            Target::Nerve(_) => &f.edges,
            Target::DeltaZ(_) => &f.vertices,
        };
        DetMap {
            target: self.target,
            labels: source
                .iter()
                .filter_map(|(dom_id, cod_id)| {
                    self.labels.get(cod_id).map(|l| (dom_id.clone(), *l))
                })
                .collect(),
        }
    }
}

/// Enumerate the simplicial maps `X -> Y` by brute force. Nerve
/// targets are searched over edge labelings with triangle-constraint
/// pruning; `Delta_{Z_d}` targets take all vertex labelings.
pub fn enumerate_det_maps(space: &SSet2, target: Target) -> Result<Vec<DetMap>> {
    let d = target.modulus();
    if d < 2 {
        return Err(Error::Precondition("modulus must be at least 2".into()));
    }
    match target {
        Target::Nerve(_) => enumerate_nerve_maps(space, target, &BTreeMap::new()),
        Target::DeltaZ(_) => {
            let n = space.vertices.len();
            let count = (d as f64).powi(n as i32);
            if count > 4_194_304.0 {
                return Err(Error::Unsupported(format!(
                    "vertex labeling space Z_{d}^{n} is too large to enumerate"
                )));
            }
            let mut maps = Vec::new();
            let mut current = vec![0u32; n];
            loop {
                let labels = space
                    .vertices
                    .iter()
                    .cloned()
                    .zip(current.iter().copied())
                    .collect();
                maps.push(DetMap::new(target, labels));
                let mut i = n;
                loop {
                    if i == 0 {
                        return Ok(maps);
                    }
                    i -= 1;
                    current[i] += 1;
                    if current[i] < d {
                        break;
                    }
                    current[i] = 0;
                }
            }
        }
    }
}

/// Backtracking over edges in sorted id order with immediate triangle
/// constraint checks; `pinned` entries are fixed in advance.
fn enumerate_nerve_maps(
    space: &SSet2,
    target: Target,
    pinned: &BTreeMap<String, u32>,
) -> Result<Vec<DetMap>> {
    let d = target.modulus();
    let mut edge_ids: Vec<&str> = space.edges.iter().map(|e| e.id.as_str()).collect();
    edge_ids.sort_unstable();
    for (id, l) in pinned {
        if space.edge(id).is_none() {
            return Err(Error::Precondition(format!("pinned unknown edge {id:?}")));
        }
        if *l >= d {
            return Err(Error::Precondition(format!("pinned label {l} not in Z_{d}")));
        }
    }

    // triangle constraints as (d0, d1, d2) edge-id triples
    let constraints: Vec<(&str, &str, &str)> = space
        .triangles
        .iter()
        .map(|t| (t.d0.as_str(), t.d1.as_str(), t.d2.as_str()))
        .collect();

    let mut maps = Vec::new();
    let mut assignment: BTreeMap<String, u32> = pinned.clone();
    fn consistent(assignment: &BTreeMap<String, u32>, constraints: &[(&str, &str, &str)], d: u32) -> bool {
        for (d0, d1, d2) in constraints {
            if let (Some(l0), Some(l1), Some(l2)) = (
                assignment.get(*d0),
                assignment.get(*d1),
                assignment.get(*d2),
            ) {
                if (l2 + l0) % d != *l1 {
                    return false;
                }
            }
        }
        true
    }
    fn search(
        idx: usize,
        edge_ids: &[&str],
        d: u32,
        constraints: &[(&str, &str, &str)],
        assignment: &mut BTreeMap<String, u32>,
        target: Target,
        out: &mut Vec<DetMap>,
    ) {
        if idx == edge_ids.len() {
            out.push(DetMap::new(target, assignment.clone()));
            return;
        }
        let id = edge_ids[idx];
        if assignment.contains_key(id) {
            if consistent(assignment, constraints, d) {
                search(idx + 1, edge_ids, d, constraints, assignment, target, out);
            }
            return;
        }
        for l in 0..d {
            assignment.insert(id.to_string(), l);
            if consistent(assignment, constraints, d) {
                search(idx + 1, edge_ids, d, constraints, assignment, target, out);
            }
            assignment.remove(id);
        }
    }
    if consistent(&assignment, &constraints, d) {
        search(0, &edge_ids, d, &constraints, &mut assignment, target, &mut maps);
    }
    maps.sort();
    Ok(maps)
}

/// Decide whether two nerve-target maps on a 1-dimensional space are
/// simplicially homotopic, by exhausting labelings of the prism that
/// restrict to `phi0` at the bottom and `phi1` at the top.
pub fn homotopy_classes(phi0: &DetMap, phi1: &DetMap, space: &SSet2) -> Result<bool> {
    if !matches!(phi0.target, Target::Nerve(_)) || phi0.target != phi1.target {
        return Err(Error::Precondition(
            "homotopy check requires two maps with the same nerve target".into(),
        ));
    }
    phi0.validate_on(space)?;
    phi1.validate_on(space)?;
    let pr = prism(space)?;
    let mut pinned = BTreeMap::new();
    for e in &space.edges {
        pinned.insert(pr.bottom.edges[&e.id].clone(), phi0.label(&e.id)?);
        pinned.insert(pr.top.edges[&e.id].clone(), phi1.label(&e.id)?);
    }
    let maps = enumerate_nerve_maps(&pr.space, phi0.target, &pinned)?;
    Ok(!maps.is_empty())
}
