//! Simplicial distributions `p: X -> D_R(Y)` for `Y` the nerve of
//! `Z_d` or `Delta_{Z_d}`, stored on the nondegenerate simplices.
//!
//! The marginal-compatibility invariants say exactly that the stored
//! family is a simplicial map: for a nerve triangle with distribution
//! over pairs `(a, b)`, the `d2`, `d0` and `d1` faces carry the
//! marginals in `a`, `b` and `a + b`.

use std::collections::{BTreeMap, BTreeSet};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::semiring::{Scalar, SemiringKind};
use crate::sset::{DetMap, Edge, SMap, SSet2, Target, Triangle, Word};

/// Dimension-indexed reference to a stored simplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimplexRef<'a> {
    Vertex(&'a str),
    Edge(&'a str),
    Tri(&'a str),
}

impl<'a> SimplexRef<'a> {
    pub fn dim(&self) -> usize {
        match self {
            SimplexRef::Vertex(_) => 0,
            SimplexRef::Edge(_) => 1,
            SimplexRef::Tri(_) => 2,
        }
    }

    pub fn id(&self) -> &'a str {
        match self {
            SimplexRef::Vertex(id) | SimplexRef::Edge(id) | SimplexRef::Tri(id) => id,
        }
    }
}

/// Face map on outcome words: the image in the target space of the
/// `i`-th face of a simplex of dimension `dim` carrying outcome `w`.
pub fn face_word(target: Target, dim: usize, i: usize, w: &Word) -> Word {
    match target {
        Target::Nerve(d) => match (dim, i) {
            (1, _) => Word::empty(),
            (2, 0) => Word::single(w.0[1]),
            (2, 1) => Word::single((w.0[0] + w.0[1]) % d),
            (2, 2) => Word::single(w.0[0]),
            _ => unreachable!("face of dimension {dim}"),
        },
        Target::DeltaZ(_) => {
            let mut v = w.0.clone();
            v.remove(i);
            Word(v)
        }
    }
}

/// A simplicial distribution with values in `D_R(Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpDist {
    space: SSet2,
    semiring: SemiringKind,
    target: Target,
    vertex_dists: BTreeMap<String, Dist<Word>>,
    edge_dists: BTreeMap<String, Dist<Word>>,
    tri_dists: BTreeMap<String, Dist<Word>>,
}

impl SimpDist {
    /// Assemble from explicitly stored distributions. Coverage, word
    /// shapes and semiring agreement are checked here; the marginal
    /// invariants are checked by [`SimpDist::validate`].
    pub fn new(
        space: SSet2,
        semiring: SemiringKind,
        target: Target,
        vertex_dists: BTreeMap<String, Dist<Word>>,
        edge_dists: BTreeMap<String, Dist<Word>>,
        tri_dists: BTreeMap<String, Dist<Word>>,
    ) -> Result<Self> {
        let p = SimpDist {
            space,
            semiring,
            target,
            vertex_dists,
            edge_dists,
            tri_dists,
        };
        p.check_shape()?;
        Ok(p)
    }

    fn check_shape(&self) -> Result<()> {
        let mut errors = Vec::new();
        let d = self.target.modulus();
        if matches!(self.target, Target::DeltaZ(_)) {
            for v in &self.space.vertices {
                if !self.vertex_dists.contains_key(v) {
                    errors.push(format!("no distribution stored for vertex {v:?}"));
                }
            }
        } else if !self.vertex_dists.is_empty() {
            errors.push("nerve targets do not store vertex distributions".into());
        }
        for e in &self.space.edges {
            if !self.edge_dists.contains_key(&e.id) {
                errors.push(format!("no distribution stored for edge {:?}", e.id));
            }
        }
        for t in &self.space.triangles {
            if !self.tri_dists.contains_key(&t.id) {
                errors.push(format!("no distribution stored for triangle {:?}", t.id));
            }
        }
        for (dim, table) in [
            (0usize, &self.vertex_dists),
            (1, &self.edge_dists),
            (2, &self.tri_dists),
        ] {
            let len = self.target.word_len(dim);
            for (id, dist) in table {
                if dist.semiring() != self.semiring {
                    errors.push(format!("distribution on {id:?} has the wrong semiring"));
                }
                for w in dist.support() {
                    if w.len() != len || w.0.iter().any(|a| *a >= d) {
                        errors.push(format!(
                            "distribution on {id:?} has outcome {:?} outside Z_{d}^{len}",
                            w.render(d)
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

    /// Build from top-dimensional data: triangle distributions plus
    /// explicit distributions for the simplices not covered by any
    /// higher simplex. Face distributions are derived by
    /// marginalization and the result is validated, so incompatible
    /// marginals on shared faces are reported.
    pub fn from_top(
        space: SSet2,
        semiring: SemiringKind,
        target: Target,
        tri_dists: BTreeMap<String, Dist<Word>>,
        free_edge_dists: BTreeMap<String, Dist<Word>>,
        free_vertex_dists: BTreeMap<String, Dist<Word>>,
    ) -> Result<Self> {
        let mut edge_dists: BTreeMap<String, Dist<Word>> = BTreeMap::new();
        for t in &space.triangles {
            let dist = tri_dists
                .get(&t.id)
                .ok_or_else(|| Error::Precondition(format!("no distribution for {:?}", t.id)))?;
            for (i, face) in [(0usize, &t.d0), (1, &t.d1), (2, &t.d2)] {
                let marg = dist.pushforward(|w| face_word(target, 2, i, w));
                edge_dists.entry(face.clone()).or_insert(marg);
            }
        }
        for (id, dist) in free_edge_dists {
            edge_dists.entry(id).or_insert(dist);
        }
        let mut vertex_dists: BTreeMap<String, Dist<Word>> = BTreeMap::new();
        if matches!(target, Target::DeltaZ(_)) {
            for e in &space.edges {
                if let Some(dist) = edge_dists.get(&e.id) {
                    let d1 = dist.pushforward(|w| face_word(target, 1, 1, w));
                    let d0 = dist.pushforward(|w| face_word(target, 1, 0, w));
                    vertex_dists.entry(e.src.clone()).or_insert(d1);
                    vertex_dists.entry(e.dst.clone()).or_insert(d0);
                }
            }
            for (id, dist) in free_vertex_dists {
                vertex_dists.entry(id).or_insert(dist);
            }
        }
        let p = SimpDist::new(space, semiring, target, vertex_dists, edge_dists, tri_dists)?;
        p.validate()?;
        Ok(p)
    }

    pub fn space(&self) -> &SSet2 {
        &self.space
    }

    pub fn semiring(&self) -> SemiringKind {
        self.semiring
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn vertex_dist(&self, id: &str) -> Option<&Dist<Word>> {
        self.vertex_dists.get(id)
    }

    pub fn edge_dist(&self, id: &str) -> Option<&Dist<Word>> {
        self.edge_dists.get(id)
    }

    pub fn tri_dist(&self, id: &str) -> Option<&Dist<Word>> {
        self.tri_dists.get(id)
    }

    /// All stored simplices with their distributions. For nerve
    /// targets vertices carry the trivial distribution and are not
    /// stored.
    pub fn stored(&self) -> impl Iterator<Item = (SimplexRef<'_>, &Dist<Word>)> {
        let vs = self
            .vertex_dists
            .iter()
            .map(|(id, d)| (SimplexRef::Vertex(id.as_str()), d));
        let es = self
            .edge_dists
            .iter()
            .map(|(id, d)| (SimplexRef::Edge(id.as_str()), d));
        let ts = self
            .tri_dists
            .iter()
            .map(|(id, d)| (SimplexRef::Tri(id.as_str()), d));
        vs.chain(es).chain(ts)
    }

    /// The value of a deterministic map on a stored simplex.
    pub fn det_value(&self, phi: &DetMap, simplex: SimplexRef<'_>) -> Result<Word> {
        match simplex {
            SimplexRef::Vertex(id) => phi.vertex_value(&self.space, id),
            SimplexRef::Edge(id) => phi.edge_value(&self.space, id),
            SimplexRef::Tri(id) => phi.tri_value(&self.space, id),
        }
    }

    /// Check every marginal invariant exactly, collecting all failures.
    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        self.check_shape()?;
        let mut errors = Vec::new();
        for t in &self.space.triangles {
            let dist = &self.tri_dists[&t.id];
            for (i, face) in [(0usize, &t.d0), (1, &t.d1), (2, &t.d2)] {
                let marg = dist.pushforward(|w| face_word(self.target, 2, i, w));
                if marg != self.edge_dists[face] {
                    errors.push(format!(
                        "triangle {:?}: d{i}-marginal disagrees with edge {face:?}",
                        t.id
                    ));
                }
            }
        }
        if matches!(self.target, Target::DeltaZ(_)) {
            for e in &self.space.edges {
                let dist = &self.edge_dists[&e.id];
                for (i, vertex) in [(0usize, &e.dst), (1, &e.src)] {
                    let marg = dist.pushforward(|w| face_word(self.target, 1, i, w));
                    if marg != self.vertex_dists[vertex] {
                        errors.push(format!(
                            "edge {:?}: d{i}-marginal disagrees with vertex {vertex:?}",
                            e.id
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

    /// Convex mixture of simplicial distributions over a common
    /// scenario; the coefficients must sum to one.
    pub fn mix(parts: &[(Scalar, &SimpDist)]) -> Result<SimpDist> {
        let (_, first) = parts
            .first()
            .ok_or_else(|| Error::Precondition("empty mixture".into()))?;
        for (_, p) in parts {
            if p.space != first.space || p.target != first.target || p.semiring != first.semiring {
                return Err(Error::Precondition(
                    "mixture requires a common space, target and semiring".into(),
                ));
            }
        }
        let mix_table = |pick: &dyn Fn(&SimpDist) -> &BTreeMap<String, Dist<Word>>| {
            let mut out: BTreeMap<String, Dist<Word>> = BTreeMap::new();
            for id in pick(first).keys() {
                let mixed = Dist::mix(
                    parts
                        .iter()
                        .map(|(c, p)| (c.clone(), &pick(p)[id])),
                )?;
                out.insert(id.clone(), mixed);
            }
            Ok::<_, Error>(out)
        };
        SimpDist::new(
            first.space.clone(),
            first.semiring,
            first.target,
            mix_table(&|p| &p.vertex_dists)?,
            mix_table(&|p| &p.edge_dists)?,
            mix_table(&|p| &p.tri_dists)?,
        )
    }
}

/// The deterministic distribution `delta . phi`.
pub fn deterministic_embed(space: &SSet2, phi: &DetMap, semiring: SemiringKind) -> Result<SimpDist> {
    phi.validate_on(space)?;
    let target = phi.target;
    let mut vertex_dists = BTreeMap::new();
    if matches!(target, Target::DeltaZ(_)) {
        for v in &space.vertices {
            vertex_dists.insert(v.clone(), Dist::delta(phi.vertex_value(space, v)?, semiring));
        }
    }
    let mut edge_dists = BTreeMap::new();
    for e in &space.edges {
        edge_dists.insert(
            e.id.clone(),
            Dist::delta(phi.edge_value(space, &e.id)?, semiring),
        );
    }
    let mut tri_dists = BTreeMap::new();
    for t in &space.triangles {
        tri_dists.insert(
            t.id.clone(),
            Dist::delta(phi.tri_value(space, &t.id)?, semiring),
        );
    }
    SimpDist::new(
        space.clone(),
        semiring,
        target,
        vertex_dists,
        edge_dists,
        tri_dists,
    )
}

/// The comparison map: send a distribution over simplicial maps to the
/// simplexwise mixture of their deterministic images.
pub fn theta(space: &SSet2, d: &Dist<DetMap>) -> Result<SimpDist> {
    let semiring = d.semiring();
    let mut target = None;
    for phi in d.support() {
        let t = *target.get_or_insert(phi.target);
        if phi.target != t {
            return Err(Error::Precondition(
                "theta requires maps with a common target".into(),
            ));
        }
        phi.validate_on(space)?;
    }
    let target =
        target.ok_or_else(|| Error::Precondition("theta of an empty distribution".into()))?;
    let mut vertex_dists = BTreeMap::new();
    if matches!(target, Target::DeltaZ(_)) {
        for v in &space.vertices {
            let entries: Vec<(Word, Scalar)> = d
                .iter()
                .map(|(phi, w)| Ok((phi.vertex_value(space, v)?, w.clone())))
                .collect::<Result<_>>()?;
            vertex_dists.insert(v.clone(), Dist::new(semiring, entries)?);
        }
    }
    let mut edge_dists = BTreeMap::new();
    for e in &space.edges {
        let entries: Vec<(Word, Scalar)> = d
            .iter()
            .map(|(phi, w)| Ok((phi.edge_value(space, &e.id)?, w.clone())))
            .collect::<Result<_>>()?;
        edge_dists.insert(e.id.clone(), Dist::new(semiring, entries)?);
    }
    let mut tri_dists = BTreeMap::new();
    for t in &space.triangles {
        let entries: Vec<(Word, Scalar)> = d
            .iter()
            .map(|(phi, w)| Ok((phi.tri_value(space, &t.id)?, w.clone())))
            .collect::<Result<_>>()?;
        tri_dists.insert(t.id.clone(), Dist::new(semiring, entries)?);
    }
    SimpDist::new(
        space.clone(),
        semiring,
        target,
        vertex_dists,
        edge_dists,
        tri_dists,
    )
}

/// The simplicial maps whose value has nonzero weight on every stored
/// simplex.
pub fn support(p: &SimpDist) -> Result<Vec<DetMap>> {
    let maps = crate::sset::enumerate_det_maps(p.space(), p.target())?;
    let mut out = Vec::new();
    'maps: for phi in maps {
        for (simplex, dist) in p.stored() {
            let value = p.det_value(&phi, simplex)?;
            if dist.weight(&value).is_zero() {
                continue 'maps;
            }
        }
        out.push(phi);
    }
    Ok(out)
}

pub fn is_strongly_contextual(p: &SimpDist) -> Result<bool> {
    Ok(support(p)?.is_empty())
}

/// Pull back a distribution along a simplicial map `f: Z -> X` between
/// the stored spaces.
pub fn restrict(p: &SimpDist, f: &SMap, domain: &SSet2) -> Result<SimpDist> {
    f.validate(domain, p.space())?;
    let mut vertex_dists = BTreeMap::new();
    if matches!(p.target(), Target::DeltaZ(_)) {
        for v in &domain.vertices {
            let img = &f.vertices[v];
            let dist = p
                .vertex_dist(img)
                .ok_or_else(|| Error::Precondition(format!("no distribution on {img:?}")))?;
            vertex_dists.insert(v.clone(), dist.clone());
        }
    }
    let mut edge_dists = BTreeMap::new();
    for e in &domain.edges {
        let img = &f.edges[&e.id];
        let dist = p
            .edge_dist(img)
            .ok_or_else(|| Error::Precondition(format!("no distribution on {img:?}")))?;
        edge_dists.insert(e.id.clone(), dist.clone());
    }
    let mut tri_dists = BTreeMap::new();
    for t in &domain.triangles {
        let img = &f.triangles[&t.id];
        let dist = p
            .tri_dist(img)
            .ok_or_else(|| Error::Precondition(format!("no distribution on {img:?}")))?;
        tri_dists.insert(t.id.clone(), dist.clone());
    }
    SimpDist::new(
        domain.clone(),
        p.semiring(),
        p.target(),
        vertex_dists,
        edge_dists,
        tri_dists,
    )
}

/// A presheaf of distributions on contexts of at most two measurements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmpiricalModel {
    pub d: u32,
    pub semiring: SemiringKind,
    /// Measurement ids in declaration order (the well-order used for
    /// realization).
    pub measurements: Vec<String>,
    /// Contexts in declaration order, each of one or two measurements.
    pub contexts: Vec<Vec<String>>,
    /// Context distributions over assignments, outcome words in
    /// context order; parallel to `contexts`.
    pub dists: Vec<Dist<Word>>,
}

impl EmpiricalModel {
    /// Check context shapes and exact compatibility of overlapping
    /// contexts.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        if self.d < 2 {
            errors.push("outcome modulus must be at least 2".into());
        }
        if self.contexts.len() != self.dists.len() {
            return Err(Error::Validation(vec![format!(
                "{} contexts but {} distributions",
                self.contexts.len(),
                self.dists.len()
            )]));
        }
        let known: BTreeSet<&String> = self.measurements.iter().collect();
        for (ctx, dist) in self.contexts.iter().zip(&self.dists) {
            if ctx.is_empty() || ctx.len() > 2 {
                return Err(Error::Unsupported(format!(
                    "context {ctx:?} has size {}; only sizes 1 and 2 are supported",
                    ctx.len()
                )));
            }
            if ctx.len() == 2 && ctx[0] == ctx[1] {
                errors.push(format!("context {ctx:?} repeats a measurement"));
            }
            for m in ctx {
                if !known.contains(m) {
                    errors.push(format!("context {ctx:?} uses unknown measurement {m:?}"));
                }
            }
            if dist.semiring() != self.semiring {
                errors.push(format!("context {ctx:?} has the wrong semiring"));
            }
            for w in dist.support() {
                if w.len() != ctx.len() || w.0.iter().any(|a| *a >= self.d) {
                    errors.push(format!(
                        "context {ctx:?} has outcome outside Z_{}^{}",
                        self.d,
                        ctx.len()
                    ));
                }
            }
        }
        // exact compatibility on overlaps, via single-measurement marginals
        let mut marginals: BTreeMap<&String, (usize, Dist<Word>)> = BTreeMap::new();
        for (idx, (ctx, dist)) in self.contexts.iter().zip(&self.dists).enumerate() {
            for (pos, m) in ctx.iter().enumerate() {
                let marg = dist.pushforward(|w| Word::single(w.0[pos]));
                match marginals.get(m) {
                    Some((first_idx, existing)) if existing != &marg => {
                        errors.push(format!(
                            "contexts {:?} and {:?} disagree on the marginal of {m:?}",
                            self.contexts[*first_idx], ctx
                        ));
                    }
                    Some(_) => {}
                    None => {
                        marginals.insert(m, (idx, marg));
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

    fn marginal_of(&self, m: &str) -> Option<Dist<Word>> {
        for (ctx, dist) in self.contexts.iter().zip(&self.dists) {
            if let Some(pos) = ctx.iter().position(|x| x == m) {
                return Some(dist.pushforward(|w| Word::single(w.0[pos])));
            }
        }
        None
    }
}

fn fresh_id(taken: &BTreeSet<String>, base: &str) -> String {
    let mut id = base.to_string();
    while taken.contains(&id) {
        id.push('\'');
    }
    id
}

/// Role assignment for measurements in the realized cone: a
/// measurement either feeds the apex (`d2` faces, rows of the boxes)
/// or is fed by it (`d0` faces, columns).
fn orient_measurements(model: &EmpiricalModel) -> Option<BTreeMap<String, bool>> {
    // true = "first" role (edge into the apex)
    let mut role: BTreeMap<String, bool> = BTreeMap::new();
    for ctx in &model.contexts {
        if ctx.len() != 2 {
            continue;
        }
        let (a, b) = (&ctx[0], &ctx[1]);
        let (ra, rb) = (role.get(a).copied(), role.get(b).copied());
        match (ra, rb) {
            (None, None) => {
                role.insert(a.clone(), true);
                role.insert(b.clone(), false);
            }
            (Some(ra), None) => {
                role.insert(b.clone(), !ra);
            }
            (None, Some(rb)) => {
                role.insert(a.clone(), !rb);
            }
            (Some(ra), Some(rb)) => {
                if ra == rb {
                    return None;
                }
            }
        }
    }
    for m in &model.measurements {
        role.entry(m.clone()).or_insert(true);
    }
    Some(role)
}

/// Realize a presheaf of distributions as a simplicial distribution on
/// a cone, with nerve target. Contextuality, strong contextuality and
/// the contextual fraction agree between the model and its
/// realization.
///
/// When the context relation is two-colorable the cone follows the
/// square convention: for a context `(m1, m2)` the triangle has
/// `d2 = m1`'s edge, `d0 = m2`'s edge and `d1` the boundary XOR edge,
/// so the stored triangle distribution is the context's box verbatim.
/// Contexts written against the coloring are transposed. Otherwise the
/// plain join convention is used: all cone edges leave the apex, the
/// boundary edge is the `d0` face, and the stored triangle
/// distribution is the box reindexed by `(a, b) -> (a, b - a)`.
pub fn realize(model: &EmpiricalModel) -> Result<SimpDist> {
    model.validate()?;
    let d = model.d;
    let target = Target::Nerve(d);
    let taken: BTreeSet<String> = model.measurements.iter().cloned().collect();
    let apex = fresh_id(&taken, "c");
    let mut vertices = vec![apex.clone()];
    vertices.extend(model.measurements.iter().cloned());

    let mut edges = Vec::new();
    let mut triangles = Vec::new();
    let mut edge_dists: BTreeMap<String, Dist<Word>> = BTreeMap::new();
    let mut tri_dists: BTreeMap<String, Dist<Word>> = BTreeMap::new();

    let roles = orient_measurements(model);
    for m in &model.measurements {
        let into_apex = match &roles {
            Some(roles) => roles[m],
            None => false,
        };
        let (src, dst) = if into_apex {
            (m.clone(), apex.clone())
        } else {
            (apex.clone(), m.clone())
        };
        edges.push(Edge {
            id: m.clone(),
            src,
            dst,
        });
        let marg = model.marginal_of(m).ok_or_else(|| {
            Error::Precondition(format!("measurement {m:?} appears in no context"))
        })?;
        edge_dists.insert(m.clone(), marg);
    }

    for (ctx, dist) in model.contexts.iter().zip(&model.dists) {
        if ctx.len() != 2 {
            continue;
        }
        match &roles {
            Some(roles) => {
                // square convention; transpose contexts written against
                // the coloring
                let (m1, m2, box_dist) = if roles[&ctx[0]] {
                    (&ctx[0], &ctx[1], dist.clone())
                } else {
                    (
                        &ctx[1],
                        &ctx[0],
                        dist.pushforward(|w| Word::pair(w.0[1], w.0[0])),
                    )
                };
                let z_id = format!("xor[{m1},{m2}]");
                let t_id = format!("ctx[{m1},{m2}]");
                edges.push(Edge {
                    id: z_id.clone(),
                    src: m1.clone(),
                    dst: m2.clone(),
                });
                edge_dists.insert(
                    z_id.clone(),
                    box_dist.pushforward(|w| Word::single((w.0[0] + w.0[1]) % d)),
                );
                triangles.push(Triangle {
                    id: t_id.clone(),
                    d0: m2.clone(),
                    d1: z_id,
                    d2: m1.clone(),
                });
                tri_dists.insert(t_id, box_dist);
            }
            None => {
                // join convention: boundary edge is the d0 face and the
                // triangle distribution is sheared
                let (m1, m2) = (&ctx[0], &ctx[1]);
                let z_id = format!("xor[{m1},{m2}]");
                let t_id = format!("ctx[{m1},{m2}]");
                edges.push(Edge {
                    id: z_id.clone(),
                    src: m1.clone(),
                    dst: m2.clone(),
                });
                edge_dists.insert(
                    z_id.clone(),
                    dist.pushforward(|w| Word::single((d + w.0[1] - w.0[0]) % d)),
                );
                triangles.push(Triangle {
                    id: t_id.clone(),
                    d0: z_id,
                    d1: m2.clone(),
                    d2: m1.clone(),
                });
                tri_dists.insert(
                    t_id,
                    dist.pushforward(|w| Word::pair(w.0[0], (d + w.0[1] - w.0[0]) % d)),
                );
            }
        }
    }

    let space = SSet2::new(vertices, edges, triangles)?;
    space.validate()?;
    let p = SimpDist::new(
        space,
        model.semiring,
        target,
        BTreeMap::new(),
        edge_dists,
        tri_dists,
    )?;
    p.validate()?;
    Ok(p)
}

/// The join of a point with a 1-dimensional base: one new apex vertex,
/// a cone edge per base vertex, a triangle per base edge with the base
/// edge as the `d0` face.
#[derive(Debug, Clone)]
pub struct Cone {
    pub space: SSet2,
    pub base: SSet2,
    pub apex: String,
    /// base vertex id -> cone edge id
    pub vertex_edges: BTreeMap<String, String>,
    /// base edge id -> triangle id
    pub edge_triangles: BTreeMap<String, String>,
}

pub fn cone(base: &SSet2) -> Result<Cone> {
    if !base.is_one_dimensional() {
        return Err(Error::Unsupported(
            "cones are only built over spaces of dimension at most 1".into(),
        ));
    }
    let taken: BTreeSet<String> = base.vertices.iter().cloned().collect();
    let apex = fresh_id(&taken, "c");
    let mut vertices = vec![apex.clone()];
    vertices.extend(base.vertices.iter().cloned());
    let edge_taken: BTreeSet<String> = base.edges.iter().map(|e| e.id.clone()).collect();
    let mut edges = base.edges.clone();
    let mut vertex_edges = BTreeMap::new();
    for v in &base.vertices {
        let id = fresh_id(&edge_taken, &format!("{apex}-{v}"));
        edges.push(Edge {
            id: id.clone(),
            src: apex.clone(),
            dst: v.clone(),
        });
        vertex_edges.insert(v.clone(), id);
    }
    let mut triangles = Vec::new();
    let mut edge_triangles = BTreeMap::new();
    for e in &base.edges {
        let id = format!("cone-{}", e.id);
        triangles.push(Triangle {
            id: id.clone(),
            d0: e.id.clone(),
            d1: vertex_edges[&e.dst].clone(),
            d2: vertex_edges[&e.src].clone(),
        });
        edge_triangles.insert(e.id.clone(), id);
    }
    let space = SSet2::new(vertices, edges, triangles)?;
    space.validate()?;
    Ok(Cone {
        space,
        base: base.clone(),
        apex,
        vertex_edges,
        edge_triangles,
    })
}

/// Convert a `Delta_{Z_d}`-valued distribution on a 1-dimensional
/// space into a nerve-valued distribution on its cone, by the
/// difference reindexing `(a_0, ..., a_n) -> (a_0, a_1 - a_0, ...)`.
pub fn decalage_to_nerve(p: &SimpDist) -> Result<(Cone, SimpDist)> {
    let Target::DeltaZ(d) = p.target() else {
        return Err(Error::Precondition(
            "decalage conversion starts from a Delta target".into(),
        ));
    };
    let cone = self::cone(p.space())?;
    let target = Target::Nerve(d);
    let mut edge_dists = BTreeMap::new();
    for (v, cone_edge) in &cone.vertex_edges {
        let dist = p
            .vertex_dist(v)
            .ok_or_else(|| Error::Precondition(format!("no distribution on vertex {v:?}")))?;
        edge_dists.insert(cone_edge.clone(), dist.clone());
    }
    let mut tri_dists = BTreeMap::new();
    for e in &p.space().edges {
        let dist = p.edge_dist(&e.id).unwrap();
        edge_dists.insert(
            e.id.clone(),
            dist.pushforward(|w| Word::single((d + w.0[1] - w.0[0]) % d)),
        );
        tri_dists.insert(
            cone.edge_triangles[&e.id].clone(),
            dist.pushforward(|w| Word::pair(w.0[0], (d + w.0[1] - w.0[0]) % d)),
        );
    }
    let q = SimpDist::new(
        cone.space.clone(),
        p.semiring(),
        target,
        BTreeMap::new(),
        edge_dists,
        tri_dists,
    )?;
    q.validate()?;
    Ok((cone, q))
}

/// Inverse of [`decalage_to_nerve`]: recover the `Delta_{Z_d}`-valued
/// distribution on the base from a nerve-valued distribution on the
/// cone.
pub fn decalage_from_nerve(cone: &Cone, q: &SimpDist) -> Result<SimpDist> {
    let Target::Nerve(d) = q.target() else {
        return Err(Error::Precondition(
            "inverse decalage starts from a nerve target".into(),
        ));
    };
    if q.space() != &cone.space {
        return Err(Error::Precondition(
            "distribution does not live on the given cone".into(),
        ));
    }
    let target = Target::DeltaZ(d);
    let mut vertex_dists = BTreeMap::new();
    for (v, cone_edge) in &cone.vertex_edges {
        vertex_dists.insert(v.clone(), q.edge_dist(cone_edge).unwrap().clone());
    }
    let mut edge_dists = BTreeMap::new();
    for e in &cone.base.edges {
        let tri = q.tri_dist(&cone.edge_triangles[&e.id]).unwrap();
        edge_dists.insert(
            e.id.clone(),
            tri.pushforward(|w| Word::pair(w.0[0], (w.0[0] + w.0[1]) % d)),
        );
    }
    let p = SimpDist::new(
        cone.base.clone(),
        q.semiring(),
        target,
        vertex_dists,
        edge_dists,
        BTreeMap::new(),
    )?;
    p.validate()?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, enumerate_det_maps, StandardSpace};

    const R: SemiringKind = SemiringKind::NonnegRational;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d, R).unwrap()
    }

    /// The four-box table on the CHSH cone, boxes listed as
    /// (p00, p01, p10, p11) for s00, s01, s10, s11.
    pub(crate) fn chsh_table(boxes: [[(i64, i64); 4]; 4]) -> SimpDist {
        let space = build_standard(StandardSpace::ChshCone);
        let mut tri_dists = BTreeMap::new();
        for (idx, entries) in boxes.iter().enumerate() {
            let id = format!("s{}{}", idx / 2, idx % 2);
            let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
            let dist = Dist::new(
                R,
                entries
                    .iter()
                    .zip(outcomes)
                    .map(|((n, d), (a, b))| (Word::pair(a, b), q(*n, *d))),
            )
            .unwrap();
            tri_dists.insert(id, dist);
        }
        SimpDist::from_top(space, R, Target::Nerve(2), tri_dists, BTreeMap::new(), BTreeMap::new())
            .unwrap()
    }

    pub(crate) fn pr_box() -> SimpDist {
        let half = |a: i64| (a, 2);
        chsh_table([
            [half(1), half(0), half(0), half(1)],
            [half(1), half(0), half(0), half(1)],
            [half(1), half(0), half(0), half(1)],
            [half(0), half(1), half(1), half(0)],
        ])
    }

    #[test]
    fn pr_box_validates() {
        let p = pr_box();
        p.validate().unwrap();
    }

    #[test]
    fn broken_marginal_reported() {
        let space = build_standard(StandardSpace::Delta2);
        let mut tri = BTreeMap::new();
        tri.insert(
            "t".to_string(),
            Dist::new(
                R,
                vec![(Word::pair(0, 0), q(1, 2)), (Word::pair(1, 1), q(1, 2))],
            )
            .unwrap(),
        );
        let good = SimpDist::from_top(
            space.clone(),
            R,
            Target::Nerve(2),
            tri.clone(),
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        good.validate().unwrap();
        // now overwrite the d1 edge with a disagreeing distribution
        let mut edge_dists = good.edge_dists.clone();
        edge_dists.insert(
            "z".to_string(),
            Dist::new(R, vec![(Word::single(0), q(1, 2)), (Word::single(1), q(1, 2))]).unwrap(),
        );
        let bad = SimpDist::new(
            space,
            R,
            Target::Nerve(2),
            BTreeMap::new(),
            edge_dists,
            good.tri_dists.clone(),
        )
        .unwrap();
        let err = bad.validate().unwrap_err();
        match err {
            Error::Validation(list) => assert!(list.iter().any(|m| m.contains("d1-marginal"))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn deterministic_embeds_validate_and_have_singleton_support() {
        for space in [
            build_standard(StandardSpace::ChshCone),
            build_standard(StandardSpace::GluedTriangle),
        ] {
            for phi in enumerate_det_maps(&space, Target::Nerve(2)).unwrap() {
                let p = deterministic_embed(&space, &phi, R).unwrap();
                p.validate().unwrap();
                assert_eq!(support(&p).unwrap(), vec![phi]);
            }
        }
    }

    #[test]
    fn theta_of_delta_is_deterministic_embed() {
        let space = build_standard(StandardSpace::ChshCone);
        for phi in enumerate_det_maps(&space, Target::Nerve(2)).unwrap() {
            let d = Dist::delta(phi.clone(), R);
            assert_eq!(
                theta(&space, &d).unwrap(),
                deterministic_embed(&space, &phi, R).unwrap()
            );
        }
    }

    #[test]
    fn theta_uniform_mixture_is_uniform_table() {
        let space = build_standard(StandardSpace::ChshCone);
        let maps = enumerate_det_maps(&space, Target::Nerve(2)).unwrap();
        assert_eq!(maps.len(), 16);
        let d = Dist::new(R, maps.into_iter().map(|m| (m, q(1, 16)))).unwrap();
        let p = theta(&space, &d).unwrap();
        p.validate().unwrap();
        for t in &p.space().triangles {
            let dist = p.tri_dist(&t.id).unwrap();
            for w in Target::Nerve(2).outcomes(2) {
                assert_eq!(dist.weight(&w), q(1, 4));
            }
        }
        // every map has weight 1/4 > 0 everywhere
        assert_eq!(support(&p).unwrap().len(), 16);
    }

    #[test]
    fn theta_is_convex_linear() {
        let space = build_standard(StandardSpace::GluedTriangle);
        let maps = enumerate_det_maps(&space, Target::Nerve(2)).unwrap();
        let d1 = Dist::delta(maps[0].clone(), R);
        let d2 = Dist::delta(maps[1].clone(), R);
        let alpha = q(1, 3);
        let beta = q(2, 3);
        let mixed_d = Dist::mix(vec![(alpha.clone(), &d1), (beta.clone(), &d2)]).unwrap();
        let left = theta(&space, &mixed_d).unwrap();
        let t1 = theta(&space, &d1).unwrap();
        let t2 = theta(&space, &d2).unwrap();
        let right = SimpDist::mix(&[(alpha, &t1), (beta, &t2)]).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn pr_box_is_strongly_contextual() {
        assert!(is_strongly_contextual(&pr_box()).unwrap());
    }

    #[test]
    fn identity_table_is_not_strongly_contextual() {
        let one = |v: i64| (v, 1);
        let ident = chsh_table([
            [one(1), one(0), one(0), one(0)],
            [one(1), one(0), one(0), one(0)],
            [one(1), one(0), one(0), one(0)],
            [one(1), one(0), one(0), one(0)],
        ]);
        assert!(!is_strongly_contextual(&ident).unwrap());
    }

    #[test]
    fn restrict_pr_box_to_boundary() {
        let p = pr_box();
        let boundary = build_standard(StandardSpace::ChshBoundary);
        let mut f = SMap::identity(&boundary);
        f.triangles.clear();
        let restricted = restrict(&p, &f, &boundary).unwrap();
        for (idx, expected) in [("z00", 0), ("z01", 0), ("z10", 0), ("z11", 1)] {
            assert_eq!(
                restricted.edge_dist(idx).unwrap(),
                &Dist::delta(Word::single(expected), R)
            );
        }
    }

    #[test]
    fn restrict_along_identity() {
        let p = pr_box();
        let f = SMap::identity(p.space());
        let space = p.space().clone();
        assert_eq!(restrict(&p, &f, &space).unwrap(), p);
    }

    #[test]
    fn glued_triangle_restriction_formula() {
        // box (p^ab) with p01 = p11 restricts to the d0 circle with
        // weight 1 - 2 p01 at 0
        let space = build_standard(StandardSpace::GluedTriangle);
        let mut tri = BTreeMap::new();
        tri.insert(
            "t".to_string(),
            Dist::new(
                R,
                vec![
                    (Word::pair(0, 0), q(1, 6)),
                    (Word::pair(0, 1), q(1, 4)),
                    (Word::pair(1, 0), q(1, 3)),
                    (Word::pair(1, 1), q(1, 4)),
                ],
            )
            .unwrap(),
        );
        let p = SimpDist::from_top(
            space.clone(),
            R,
            Target::Nerve(2),
            tri,
            BTreeMap::new(),
            BTreeMap::new(),
        )
        .unwrap();
        let circle = build_standard(StandardSpace::Circle);
        let f = SMap {
            vertices: [("x".to_string(), "v".to_string())].into(),
            edges: [("s".to_string(), "z".to_string())].into(),
            triangles: BTreeMap::new(),
        };
        let r = restrict(&p, &f, &circle).unwrap();
        // 1 - 2 * (1/4) = 1/2
        assert_eq!(r.edge_dist("s").unwrap().weight(&Word::single(0)), q(1, 2));
    }

    fn chsh_model(boxes: [[(i64, i64); 4]; 4]) -> EmpiricalModel {
        let ms = ["x0", "x1", "y0", "y1"];
        let contexts: Vec<Vec<String>> = vec![
            vec!["x0".into(), "y0".into()],
            vec!["x0".into(), "y1".into()],
            vec!["x1".into(), "y0".into()],
            vec!["x1".into(), "y1".into()],
        ];
        let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let dists = boxes
            .iter()
            .map(|entries| {
                Dist::new(
                    R,
                    entries
                        .iter()
                        .zip(outcomes)
                        .map(|((n, d), (a, b))| (Word::pair(a, b), q(*n, *d))),
                )
                .unwrap()
            })
            .collect();
        EmpiricalModel {
            d: 2,
            semiring: R,
            measurements: ms.iter().map(|m| m.to_string()).collect(),
            contexts,
            dists,
        }
    }

    #[test]
    fn realize_chsh_pr_model_gives_pr_table() {
        let half = |a: i64| (a, 2);
        let model = chsh_model([
            [half(1), half(0), half(0), half(1)],
            [half(1), half(0), half(0), half(1)],
            [half(1), half(0), half(0), half(1)],
            [half(0), half(1), half(1), half(0)],
        ]);
        let p = realize(&model).unwrap();
        p.validate().unwrap();
        let reference = pr_box();
        // same boxes per context, same boundary XOR edges
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let t = p.tri_dist(&format!("ctx[x{i},y{j}]")).unwrap();
            let r = reference.tri_dist(&format!("s{i}{j}")).unwrap();
            assert_eq!(t, r);
        }
        assert!(is_strongly_contextual(&p).unwrap());
    }

    #[test]
    fn realize_single_context_model() {
        let model = EmpiricalModel {
            d: 2,
            semiring: R,
            measurements: vec!["a".into(), "b".into()],
            contexts: vec![vec!["a".into(), "b".into()]],
            dists: vec![Dist::new(
                R,
                vec![
                    (Word::pair(0, 0), q(1, 2)),
                    (Word::pair(1, 1), q(1, 2)),
                ],
            )
            .unwrap()],
        };
        let p = realize(&model).unwrap();
        assert_eq!(p.space().triangles.len(), 1);
        // a single box is never strongly contextual when some outcome
        // has support on a consistent assignment
        assert!(!is_strongly_contextual(&p).unwrap());
    }

    #[test]
    fn realize_cyclic_model_falls_back_to_join() {
        // Specker triangle: three pairwise contexts with perfect
        // anticorrelation; possibilistically strongly contextual
        let anti = Dist::new(
            R,
            vec![(Word::pair(0, 1), q(1, 2)), (Word::pair(1, 0), q(1, 2))],
        )
        .unwrap();
        let model = EmpiricalModel {
            d: 2,
            semiring: R,
            measurements: vec!["a".into(), "b".into(), "c".into()],
            contexts: vec![
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
                vec!["c".into(), "a".into()],
            ],
            dists: vec![anti.clone(), anti.clone(), anti],
        };
        let p = realize(&model).unwrap();
        p.validate().unwrap();
        assert_eq!(p.space().triangles.len(), 3);
        assert!(is_strongly_contextual(&p).unwrap());
    }

    #[test]
    fn realize_preserves_path_models() {
        // a path a - b - c written in the "wrong" order still realizes
        // on the square convention via transposition
        let joint = Dist::new(
            R,
            vec![(Word::pair(0, 0), q(1, 2)), (Word::pair(1, 1), q(1, 2))],
        )
        .unwrap();
        let model = EmpiricalModel {
            d: 2,
            semiring: R,
            measurements: vec!["a".into(), "b".into(), "c".into()],
            contexts: vec![
                vec!["a".into(), "b".into()],
                vec!["b".into(), "c".into()],
            ],
            dists: vec![joint.clone(), joint],
        };
        let p = realize(&model).unwrap();
        p.validate().unwrap();
        assert!(!is_strongly_contextual(&p).unwrap());
    }

    #[test]
    fn circle_delta_distribution_and_decalage() {
        let circle = build_standard(StandardSpace::Circle);
        let edge = Dist::new(
            R,
            vec![
                (Word::pair(0, 0), q(1, 3)),
                (Word::pair(0, 1), q(1, 4)),
                (Word::pair(1, 0), q(1, 4)),
                (Word::pair(1, 1), q(1, 6)),
            ],
        )
        .unwrap();
        let p = SimpDist::from_top(
            circle,
            R,
            Target::DeltaZ(2),
            BTreeMap::new(),
            [("s".to_string(), edge)].into(),
            BTreeMap::new(),
        )
        .unwrap();
        p.validate().unwrap();
        let (cone, nerve) = decalage_to_nerve(&p).unwrap();
        nerve.validate().unwrap();
        // p_tau(a, b) = p^{a, a+b}
        let tri = nerve.tri_dist(&cone.edge_triangles["s"]).unwrap();
        assert_eq!(tri.weight(&Word::pair(0, 0)), q(1, 3));
        assert_eq!(tri.weight(&Word::pair(0, 1)), q(1, 4));
        assert_eq!(tri.weight(&Word::pair(1, 1)), q(1, 4));
        assert_eq!(tri.weight(&Word::pair(1, 0)), q(1, 6));
        // round trip
        let back = decalage_from_nerve(&cone, &nerve).unwrap();
        assert_eq!(back, p);
        // support size is preserved
        assert_eq!(support(&p).unwrap().len(), support(&nerve).unwrap().len());
    }

    #[test]
    fn decalage_sends_deltas_to_deterministic() {
        let circle = build_standard(StandardSpace::Circle);
        for phi in enumerate_det_maps(&circle, Target::DeltaZ(2)).unwrap() {
            let p = deterministic_embed(&circle, &phi, R).unwrap();
            let (_, nerve) = decalage_to_nerve(&p).unwrap();
            let s = support(&nerve).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(
                deterministic_embed(nerve.space(), &s[0], R).unwrap(),
                nerve
            );
        }
    }

    #[test]
    fn mix_of_simpdists() {
        let p = pr_box();
        let ident = {
            let one = |v: i64| (v, 1);
            chsh_table([
                [one(1), one(0), one(0), one(0)],
                [one(1), one(0), one(0), one(0)],
                [one(1), one(0), one(0), one(0)],
                [one(1), one(0), one(0), one(0)],
            ])
        };
        let m = SimpDist::mix(&[(q(1, 2), &p), (q(1, 2), &ident)]).unwrap();
        m.validate().unwrap();
        assert_eq!(
            m.tri_dist("s00").unwrap().weight(&Word::pair(0, 0)),
            q(3, 4)
        );
    }
}
