//! The polytope of simplicial distributions on a scenario and the
//! exact decision procedures built on it: noncontextuality, contextual
//! fraction, CHSH inequalities, vertex enumeration and homotopy
//! solving.
//!
//! The polytope is coordinatized by the entries of the distributions
//! on "free" simplices (triangles, edges not covered by a triangle,
//! and for `Delta` targets vertices not covered by an edge); the other
//! stored distributions are marginals of these, so the constraints are
//! the per-simplex normalizations plus agreement of shared faces.

pub mod lp;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::semiring::{Scalar, SemiringKind};
use crate::simpdist::{face_word, SimpDist};
use crate::sset::{enumerate_det_maps, prism, DetMap, SSet2, Target, Word};
pub use lp::{lp_solve, solve_linear_system, LinSolve, LinearProgram, LpOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Cls {
    Vertex,
    Edge,
    Tri,
}

/// Coordinates and affine constraints of the distribution polytope of
/// a scenario.
pub(crate) struct Scenario {
    space: SSet2,
    target: Target,
    var_index: BTreeMap<(Cls, String, Word), usize>,
    vars: Vec<(Cls, String, Word)>,
    /// normalizations and face agreements
    equalities: Vec<(Vec<BigRational>, BigRational)>,
    /// canonical linear expression of each edge distribution entry
    edge_expr: BTreeMap<String, BTreeMap<Word, Vec<usize>>>,
    free_edges: Vec<String>,
    free_vertices: Vec<String>,
}

impl Scenario {
    pub(crate) fn new(space: &SSet2, target: Target) -> Result<Scenario> {
        space.validate()?;
        let mut vars = Vec::new();
        let mut var_index = BTreeMap::new();
        let push_vars = |cls: Cls, id: &str, dim: usize, vars: &mut Vec<_>, var_index: &mut BTreeMap<_, _>| {
            for w in target.outcomes(dim) {
                let idx = vars.len();
                vars.push((cls, id.to_string(), w.clone()));
                var_index.insert((cls, id.to_string(), w), idx);
            }
        };
        for t in &space.triangles {
            push_vars(Cls::Tri, &t.id, 2, &mut vars, &mut var_index);
        }
        let covered_edge = |id: &str| {
            space
                .triangles
                .iter()
                .any(|t| t.d0 == id || t.d1 == id || t.d2 == id)
        };
        let mut free_edges = Vec::new();
        for e in &space.edges {
            if !covered_edge(&e.id) {
                push_vars(Cls::Edge, &e.id, 1, &mut vars, &mut var_index);
                free_edges.push(e.id.clone());
            }
        }
        let mut free_vertices = Vec::new();
        if matches!(target, Target::DeltaZ(_)) {
            for v in &space.vertices {
                let covered = space.edges.iter().any(|e| &e.src == v || &e.dst == v);
                if !covered {
                    push_vars(Cls::Vertex, v, 0, &mut vars, &mut var_index);
                    free_vertices.push(v.clone());
                }
            }
        }
        let num_vars = vars.len();

        // canonical expressions for every edge: marginal of the first
        // covering triangle face, or the edge's own variables
        let mut edge_expr: BTreeMap<String, BTreeMap<Word, Vec<usize>>> = BTreeMap::new();
        let mut edge_alternatives: Vec<(String, BTreeMap<Word, Vec<usize>>)> = Vec::new();
        let tri_face_expr = |t_id: &str, i: usize| -> BTreeMap<Word, Vec<usize>> {
            let mut expr: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
            for w in target.outcomes(2) {
                let fw = face_word(target, 2, i, &w);
                let idx = var_index[&(Cls::Tri, t_id.to_string(), w)];
                expr.entry(fw).or_default().push(idx);
            }
            for w in target.outcomes(1) {
                expr.entry(w).or_default();
            }
            expr
        };
        for t in &space.triangles {
            for (i, face) in [(0usize, &t.d0), (1, &t.d1), (2, &t.d2)] {
                let expr = tri_face_expr(&t.id, i);
                if edge_expr.contains_key(face) {
                    edge_alternatives.push((face.clone(), expr));
                } else {
                    edge_expr.insert(face.clone(), expr);
                }
            }
        }
        for id in &free_edges {
            let mut expr: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
            for w in target.outcomes(1) {
                expr.insert(w.clone(), vec![var_index[&(Cls::Edge, id.clone(), w)]]);
            }
            edge_expr.insert(id.clone(), expr);
        }

        // vertex expressions for Delta targets
        let mut vertex_expr: BTreeMap<String, BTreeMap<Word, Vec<usize>>> = BTreeMap::new();
        let mut vertex_alternatives: Vec<(String, BTreeMap<Word, Vec<usize>>)> = Vec::new();
        if matches!(target, Target::DeltaZ(_)) {
            for e in &space.edges {
                let base = &edge_expr[&e.id];
                for (i, v) in [(0usize, &e.dst), (1, &e.src)] {
                    let mut expr: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
                    for w in target.outcomes(0) {
                        expr.entry(w).or_default();
                    }
                    for (we, idxs) in base {
                        let fw = face_word(target, 1, i, we);
                        expr.entry(fw).or_default().extend(idxs.iter().copied());
                    }
                    if vertex_expr.contains_key(v) {
                        vertex_alternatives.push((v.clone(), expr));
                    } else {
                        vertex_expr.insert(v.clone(), expr);
                    }
                }
            }
            for id in &free_vertices {
                let mut expr: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
                for w in target.outcomes(0) {
                    expr.insert(w.clone(), vec![var_index[&(Cls::Vertex, id.clone(), w)]]);
                }
                vertex_expr.insert(id.clone(), expr);
            }
        }

        // equalities: normalization of each free simplex, then
        // agreement of every alternative face expression with the
        // canonical one
        let mut equalities = Vec::new();
        let norm_row = |ids: std::ops::Range<usize>| {
            let mut row = vec![BigRational::zero(); num_vars];
            for i in ids {
                row[i] = BigRational::one();
            }
            (row, BigRational::one())
        };
        let mut offset = 0;
        for t in &space.triangles {
            let count = target.outcomes(2).len();
            let _ = t;
            equalities.push(norm_row(offset..offset + count));
            offset += count;
        }
        for _ in &free_edges {
            let count = target.outcomes(1).len();
            equalities.push(norm_row(offset..offset + count));
            offset += count;
        }
        for _ in &free_vertices {
            let count = target.outcomes(0).len();
            equalities.push(norm_row(offset..offset + count));
            offset += count;
        }
        let agreement = |canonical: &BTreeMap<Word, Vec<usize>>,
                             other: &BTreeMap<Word, Vec<usize>>,
                             equalities: &mut Vec<(Vec<BigRational>, BigRational)>| {
            for (w, idxs) in canonical {
                let mut row = vec![BigRational::zero(); num_vars];
                for &i in idxs {
                    row[i] += BigRational::one();
                }
                for &i in other.get(w).map(|v| v.as_slice()).unwrap_or(&[]) {
                    row[i] -= BigRational::one();
                }
                if row.iter().any(|c| !c.is_zero()) {
                    equalities.push((row, BigRational::zero()));
                }
            }
        };
        for (edge, expr) in &edge_alternatives {
            agreement(&edge_expr[edge], expr, &mut equalities);
        }
        for (vertex, expr) in &vertex_alternatives {
            agreement(&vertex_expr[vertex], expr, &mut equalities);
        }

        Ok(Scenario {
            space: space.clone(),
            target,
            var_index,
            vars,
            equalities,
            edge_expr,
            free_edges,
            free_vertices,
        })
    }

    pub(crate) fn num_vars(&self) -> usize {
        self.vars.len()
    }

    /// Coordinates of a validated distribution on this scenario.
    fn coordinates(&self, p: &SimpDist) -> Result<Vec<BigRational>> {
        if p.space() != &self.space || p.target() != self.target {
            return Err(Error::Precondition(
                "distribution does not live on this scenario".into(),
            ));
        }
        let mut out = vec![BigRational::zero(); self.vars.len()];
        for (i, (cls, id, w)) in self.vars.iter().enumerate() {
            let dist = match cls {
                Cls::Tri => p.tri_dist(id),
                Cls::Edge => p.edge_dist(id),
                Cls::Vertex => p.vertex_dist(id),
            }
            .ok_or_else(|| Error::Precondition(format!("no distribution on {id:?}")))?;
            let weight = dist.weight(w);
            out[i] = weight
                .as_rational()
                .ok_or_else(|| {
                    Error::Precondition("rational coordinates require a rational semiring".into())
                })?
                .clone();
        }
        Ok(out)
    }

    /// Rebuild a distribution from polytope coordinates.
    fn dist_from_coordinates(&self, v: &[BigRational], semiring: SemiringKind) -> Result<SimpDist> {
        let dist_for = |cls: Cls, id: &str, dim: usize| -> Result<Dist<Word>> {
            let entries: Vec<(Word, Scalar)> = self
                .target
                .outcomes(dim)
                .into_iter()
                .map(|w| {
                    let idx = self.var_index[&(cls, id.to_string(), w.clone())];
                    Ok((w, Scalar::from_rational(v[idx].clone(), semiring)?))
                })
                .collect::<Result<_>>()?;
            Dist::new(semiring, entries)
        };
        let mut tri_dists = BTreeMap::new();
        for t in &self.space.triangles {
            tri_dists.insert(t.id.clone(), dist_for(Cls::Tri, &t.id, 2)?);
        }
        let mut free_edge_dists = BTreeMap::new();
        for id in &self.free_edges {
            free_edge_dists.insert(id.clone(), dist_for(Cls::Edge, id, 1)?);
        }
        let mut free_vertex_dists = BTreeMap::new();
        for id in &self.free_vertices {
            free_vertex_dists.insert(id.clone(), dist_for(Cls::Vertex, id, 0)?);
        }
        SimpDist::from_top(
            self.space.clone(),
            semiring,
            self.target,
            tri_dists,
            free_edge_dists,
            free_vertex_dists,
        )
    }

    /// Indices of the coordinates picked out by a deterministic map:
    /// coefficient one at `(x, phi(x))` for every free simplex.
    fn det_column(&self, phi: &DetMap) -> Result<Vec<usize>> {
        let mut cols = Vec::new();
        for (i, (cls, id, w)) in self.vars.iter().enumerate() {
            let value = match cls {
                Cls::Tri => phi.tri_value(&self.space, id)?,
                Cls::Edge => phi.edge_value(&self.space, id)?,
                Cls::Vertex => phi.vertex_value(&self.space, id)?,
            };
            if &value == w {
                cols.push(i);
            }
        }
        Ok(cols)
    }
}

/// Outcome of the noncontextuality decision, with the witnessing
/// distribution over deterministic maps when one exists.
#[derive(Debug, Clone)]
pub struct NcOutcome {
    pub noncontextual: bool,
    pub witness: Option<Dist<DetMap>>,
}

/// Decide whether `p` lies in the image of the comparison map.
///
/// Over the nonnegative rationals this is an exact LP feasibility
/// problem with one variable per deterministic map. Over the Booleans
/// it is the canonical union check. Over the rational field the
/// positivity constraint is dropped and only exact linear solvability
/// with total weight one is required.
pub fn is_noncontextual(p: &SimpDist) -> Result<NcOutcome> {
    p.validate()?;
    match p.semiring() {
        SemiringKind::NonnegRational => rational_noncontextual(p),
        SemiringKind::Boolean => boolean_noncontextual(p),
        SemiringKind::RealField => real_noncontextual(p),
    }
}

fn rational_noncontextual(p: &SimpDist) -> Result<NcOutcome> {
    let scenario = Scenario::new(p.space(), p.target())?;
    let maps = enumerate_det_maps(p.space(), p.target())?;
    let coords = scenario.coordinates(p)?;
    let n = maps.len();
    let mut lp = LinearProgram::feasibility(n);
    let mut rows: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); n]; scenario.num_vars()];
    for (j, phi) in maps.iter().enumerate() {
        for &i in &scenario.det_column(phi)? {
            rows[i][j] = BigRational::one();
        }
    }
    for (row, rhs) in rows.into_iter().zip(coords) {
        lp.equalities.push((row, rhs));
    }
    lp.equalities
        .push((vec![BigRational::one(); n], BigRational::one()));
    match lp_solve(&lp)? {
        LpOutcome::Optimal { assignment, .. } => {
            let witness = witness_from_weights(&maps, &assignment, SemiringKind::NonnegRational)?;
            Ok(NcOutcome {
                noncontextual: true,
                witness: Some(witness),
            })
        }
        LpOutcome::Infeasible => Ok(NcOutcome {
            noncontextual: false,
            witness: None,
        }),
        LpOutcome::Unbounded => unreachable!("feasibility problem"),
    }
}

fn witness_from_weights(
    maps: &[DetMap],
    weights: &[BigRational],
    semiring: SemiringKind,
) -> Result<Dist<DetMap>> {
    Dist::new(
        semiring,
        maps.iter()
            .zip(weights)
            .filter(|(_, w)| !w.is_zero())
            .map(|(phi, w)| Ok((phi.clone(), Scalar::from_rational(w.clone(), semiring)?)))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn boolean_noncontextual(p: &SimpDist) -> Result<NcOutcome> {
    // the set of maps everywhere consistent with p, accumulated
    // directly rather than through the support operation
    let maps = enumerate_det_maps(p.space(), p.target())?;
    let mut consistent = Vec::new();
    'maps: for phi in maps {
        for (simplex, dist) in p.stored() {
            if dist.weight(&p.det_value(&phi, simplex)?).is_zero() {
                continue 'maps;
            }
        }
        consistent.push(phi);
    }
    if consistent.is_empty() {
        return Ok(NcOutcome {
            noncontextual: false,
            witness: None,
        });
    }
    // p is noncontextual iff the union of the consistent maps
    // reproduces every stored support exactly
    for (simplex, dist) in p.stored() {
        for w in dist.support() {
            let covered = consistent
                .iter()
                .map(|phi| p.det_value(phi, simplex))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .any(|value| value == w);
            if !covered {
                return Ok(NcOutcome {
                    noncontextual: false,
                    witness: None,
                });
            }
        }
    }
    let one = SemiringKind::Boolean.one();
    let witness = Dist::new(
        SemiringKind::Boolean,
        consistent.into_iter().map(|phi| (phi, one.clone())),
    )?;
    Ok(NcOutcome {
        noncontextual: true,
        witness: Some(witness),
    })
}

fn real_noncontextual(p: &SimpDist) -> Result<NcOutcome> {
    let scenario = Scenario::new(p.space(), p.target())?;
    let maps = enumerate_det_maps(p.space(), p.target())?;
    let coords = scenario.coordinates(p)?;
    let n = maps.len();
    let mut rows: Vec<(Vec<BigRational>, BigRational)> = Vec::new();
    let mut matrix: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); n]; scenario.num_vars()];
    for (j, phi) in maps.iter().enumerate() {
        for &i in &scenario.det_column(phi)? {
            matrix[i][j] = BigRational::one();
        }
    }
    for (row, rhs) in matrix.into_iter().zip(coords) {
        rows.push((row, rhs));
    }
    rows.push((vec![BigRational::one(); n], BigRational::one()));
    match solve_linear_system(&rows, n) {
        LinSolve::Inconsistent => Ok(NcOutcome {
            noncontextual: false,
            witness: None,
        }),
        LinSolve::Unique(sol) => Ok(NcOutcome {
            noncontextual: true,
            witness: Some(witness_from_weights(&maps, &sol, SemiringKind::RealField)?),
        }),
        LinSolve::Affine { particular, .. } => Ok(NcOutcome {
            noncontextual: true,
            witness: Some(witness_from_weights(
                &maps,
                &particular,
                SemiringKind::RealField,
            )?),
        }),
    }
}

/// The contextual fraction `1 - max { sum b : Theta(b) <= p, b >= 0 }`,
/// exact.
pub fn contextual_fraction(p: &SimpDist) -> Result<BigRational> {
    Ok(BigRational::one() - noncontextual_fraction(p)?)
}

pub fn noncontextual_fraction(p: &SimpDist) -> Result<BigRational> {
    Ok(noncontextual_decomposition(p)?.0)
}

/// The optimal noncontextual part: the maximal total weight together
/// with the maximizing subprobability over deterministic maps.
pub fn noncontextual_decomposition(
    p: &SimpDist,
) -> Result<(BigRational, Vec<(DetMap, BigRational)>)> {
    if p.semiring() != SemiringKind::NonnegRational {
        return Err(Error::Unsupported(
            "the contextual fraction is defined over the nonnegative rationals".into(),
        ));
    }
    p.validate()?;
    let scenario = Scenario::new(p.space(), p.target())?;
    let maps = enumerate_det_maps(p.space(), p.target())?;
    let coords = scenario.coordinates(p)?;
    let n = maps.len();
    let mut lp = LinearProgram::maximize(n, vec![BigRational::one(); n]);
    let mut rows: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); n]; scenario.num_vars()];
    for (j, phi) in maps.iter().enumerate() {
        for &i in &scenario.det_column(phi)? {
            rows[i][j] = BigRational::one();
        }
    }
    for (row, rhs) in rows.into_iter().zip(coords) {
        lp.leq.push((row, rhs));
    }
    match lp_solve(&lp)? {
        LpOutcome::Optimal { value, assignment } => {
            let decomposition = maps
                .into_iter()
                .zip(assignment)
                .filter(|(_, w)| !w.is_zero())
                .collect();
            Ok((value, decomposition))
        }
        LpOutcome::Infeasible => unreachable!("b = 0 is always feasible"),
        LpOutcome::Unbounded => unreachable!("bounded by normalization"),
    }
}

/// Correlators and the eight CHSH inequalities of a distribution on a
/// CHSH-shaped cone.
#[derive(Debug, Clone)]
pub struct ChshReport {
    /// `((x edge, y edge), <xy>)` per box, in enumeration order
    pub correlators: Vec<((String, String), BigRational)>,
    /// `(description, value, satisfied)` for each inequality
    pub inequalities: Vec<(String, BigRational, bool)>,
    pub all_satisfied: bool,
}

/// Recognize the CHSH cone shape: four triangles around a common
/// middle vertex, two shared `d2` edges and two shared `d0` edges.
pub(crate) fn chsh_shape(space: &SSet2) -> Result<[(String, String, String); 4]> {
    let wrong = || Error::Precondition("space is not CHSH-shaped".into());
    if space.triangles.len() != 4 || space.edges.len() != 8 || space.vertices.len() != 5 {
        return Err(wrong());
    }
    let mut apex: Option<String> = None;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for t in &space.triangles {
        let d2 = space.edge(&t.d2).unwrap();
        let d0 = space.edge(&t.d0).unwrap();
        let middle = d2.dst.clone();
        if d0.src != middle {
            return Err(wrong());
        }
        match &apex {
            None => apex = Some(middle),
            Some(a) if *a != middle => return Err(wrong()),
            _ => {}
        }
        if !xs.contains(&t.d2) {
            xs.push(t.d2.clone());
        }
        if !ys.contains(&t.d0) {
            ys.push(t.d0.clone());
        }
    }
    if xs.len() != 2 || ys.len() != 2 {
        return Err(wrong());
    }
    xs.sort();
    ys.sort();
    let mut boxes = Vec::new();
    for x in &xs {
        for y in &ys {
            let t = space
                .triangles
                .iter()
                .find(|t| &t.d2 == x && &t.d0 == y)
                .ok_or_else(wrong)?;
            boxes.push((x.clone(), y.clone(), t.id.clone()));
        }
    }
    boxes.try_into().map_err(|_| wrong())
}

pub fn chsh_check(p: &SimpDist) -> Result<ChshReport> {
    if p.target() != Target::Nerve(2) {
        return Err(Error::Precondition(
            "CHSH inequalities require the nerve of Z_2".into(),
        ));
    }
    p.validate()?;
    let boxes = chsh_shape(p.space())?;
    let mut correlators = Vec::new();
    for (x, y, t) in &boxes {
        let dist = p.tri_dist(t).unwrap();
        let mut corr = BigRational::zero();
        for (w, weight) in dist.iter() {
            let sign = if (w.0[0] + w.0[1]) % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            };
            corr += sign
                * weight
                    .as_rational()
                    .ok_or_else(|| {
                        Error::Unsupported("CHSH correlators need rational weights".into())
                    })?
                    .clone();
        }
        correlators.push(((x.clone(), y.clone()), corr));
    }
    let two = BigRational::from_integer(2.into());
    let mut inequalities = Vec::new();
    let mut all = true;
    for minus_at in 0..4 {
        for flip in [false, true] {
            let mut value = BigRational::zero();
            let mut label = String::new();
            for (k, ((x, y), corr)) in correlators.iter().enumerate() {
                let mut sign = if k == minus_at { -1i32 } else { 1 };
                if flip {
                    sign = -sign;
                }
                label.push_str(if sign > 0 { "+" } else { "-" });
                label.push_str(&format!("<{x},{y}>"));
                if sign > 0 {
                    value += corr.clone();
                } else {
                    value -= corr.clone();
                }
            }
            let satisfied = value <= two;
            all &= satisfied;
            inequalities.push((format!("{label} <= 2"), value, satisfied));
        }
    }
    Ok(ChshReport {
        correlators,
        inequalities,
        all_satisfied: all,
    })
}

/// An extreme point of the distribution polytope together with the
/// recomputed analysis flags.
#[derive(Debug, Clone)]
pub struct VertexReport {
    pub dist: SimpDist,
    pub is_deterministic: bool,
    pub is_strongly_contextual: bool,
    pub contextual_fraction: BigRational,
}

pub const DEFAULT_VERTEX_CAP: usize = 32;

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return;
    }
    loop {
        visit(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Coordinates of all extreme points of `{A v = b, v >= 0}` for the
/// scenario's equality system extended by `extra` rows, via
/// enumeration of tight nonnegativity sets.
pub(crate) fn enumerate_vertex_coordinates(
    scenario: &Scenario,
    extra: &[(Vec<BigRational>, BigRational)],
) -> Vec<Vec<BigRational>> {
    let n = scenario.num_vars();
    let equalities: Vec<(Vec<BigRational>, BigRational)> = scenario
        .equalities
        .iter()
        .chain(extra)
        .cloned()
        .collect();
    let all_cols: Vec<usize> = (0..n).collect();
    let rank = lp::column_rank(&equalities, &all_cols);
    let k = n - rank;
    let mut seen = std::collections::BTreeSet::new();
    combinations(n, k, |zeros| {
        let mut is_zero = vec![false; n];
        for &z in zeros {
            is_zero[z] = true;
        }
        let support: Vec<usize> = (0..n).filter(|i| !is_zero[*i]).collect();
        let reduced: Vec<(Vec<BigRational>, BigRational)> = equalities
            .iter()
            .map(|(row, rhs)| {
                (
                    support.iter().map(|&c| row[c].clone()).collect(),
                    rhs.clone(),
                )
            })
            .collect();
        if let LinSolve::Unique(sol) = solve_linear_system(&reduced, support.len()) {
            if sol.iter().all(|v| !v.is_negative()) {
                let mut full = vec![BigRational::zero(); n];
                for (&c, v) in support.iter().zip(sol) {
                    full[c] = v;
                }
                seen.insert(full);
            }
        }
    });
    seen.into_iter().collect()
}

/// Enumerate all extreme points of the distribution polytope by
/// choosing tight nonnegativity sets of co-dimension size, solving the
/// square rational system and keeping the feasible solutions.
pub fn enumerate_vertices(
    space: &SSet2,
    target: Target,
    cap: Option<usize>,
) -> Result<Vec<VertexReport>> {
    let scenario = Scenario::new(space, target)?;
    let n = scenario.num_vars();
    let cap = cap.unwrap_or(DEFAULT_VERTEX_CAP);
    if n > cap {
        return Err(Error::Unsupported(format!(
            "vertex enumeration attempted with {n} variables, above the cap of {cap}"
        )));
    }
    let mut reports = Vec::new();
    for coords in enumerate_vertex_coordinates(&scenario, &[]) {
        let dist = scenario.dist_from_coordinates(&coords, SemiringKind::NonnegRational)?;
        let is_deterministic = dist.stored().all(|(_, d)| d.as_delta().is_some());
        let is_strongly_contextual = crate::simpdist::is_strongly_contextual(&dist)?;
        let cf = contextual_fraction(&dist)?;
        reports.push(VertexReport {
            dist,
            is_deterministic,
            is_strongly_contextual,
            contextual_fraction: cf,
        });
    }
    Ok(reports)
}

/// Extreme-point test: the columns of the equality system indexed by
/// the support of `p` must be linearly independent.
pub fn is_vertex(p: &SimpDist) -> Result<bool> {
    if p.semiring() != SemiringKind::NonnegRational {
        return Err(Error::Unsupported(
            "the vertex test is defined over the nonnegative rationals".into(),
        ));
    }
    p.validate()?;
    let scenario = Scenario::new(p.space(), p.target())?;
    let coords = scenario.coordinates(p)?;
    let support: Vec<usize> = coords
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i)
        .collect();
    Ok(lp::column_rank(&scenario.equalities, &support) == support.len())
}

/// Result of solving for all distribution homotopies between two
/// deterministic maps.
#[derive(Debug, Clone)]
pub enum HomotopyOutcome {
    NoSolution,
    Unique(SimpDist),
    NonUnique(SimpDist, SimpDist),
}

/// Solve the affine system for simplicial distributions `F` on the
/// prism over a 1-dimensional space whose bottom restriction is the
/// deterministic image of `phi0` and whose top restriction is that of
/// `phi1`.
pub fn distribution_homotopy(
    phi0: &DetMap,
    phi1: &DetMap,
    space: &SSet2,
) -> Result<HomotopyOutcome> {
    if !matches!(phi0.target, Target::Nerve(_)) || phi0.target != phi1.target {
        return Err(Error::Precondition(
            "homotopies are solved for nerve targets".into(),
        ));
    }
    phi0.validate_on(space)?;
    phi1.validate_on(space)?;
    let pr = prism(space)?;
    let scenario = Scenario::new(&pr.space, phi0.target)?;
    let n = scenario.num_vars();
    let mut equalities = scenario.equalities.clone();
    let mut pin = |edge_id: &str, label: u32| {
        let expr = &scenario.edge_expr[edge_id];
        for (w, idxs) in expr {
            let mut row = vec![BigRational::zero(); n];
            for &i in idxs {
                row[i] += BigRational::one();
            }
            let rhs = if *w == Word::single(label) {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            equalities.push((row, rhs));
        }
        Ok::<_, Error>(())
    };
    for e in &space.edges {
        pin(&pr.bottom.edges[&e.id], phi0.label(&e.id)?)?;
        pin(&pr.top.edges[&e.id], phi1.label(&e.id)?)?;
    }

    let solve_with_objective = |objective: Vec<BigRational>| -> Result<Option<(BigRational, Vec<BigRational>)>> {
        let lp = LinearProgram {
            num_vars: n,
            equalities: equalities.clone(),
            leq: Vec::new(),
            objective,
        };
        match lp_solve(&lp)? {
            LpOutcome::Optimal { value, assignment } => Ok(Some((value, assignment))),
            LpOutcome::Infeasible => Ok(None),
            LpOutcome::Unbounded => unreachable!("distribution entries are bounded"),
        }
    };

    let Some((_, base)) = solve_with_objective(vec![BigRational::zero(); n])? else {
        return Ok(HomotopyOutcome::NoSolution);
    };
    for i in 0..n {
        let mut up = vec![BigRational::zero(); n];
        up[i] = BigRational::one();
        let (max_v, max_a) = solve_with_objective(up)?.expect("feasible set is nonempty");
        let mut down = vec![BigRational::zero(); n];
        down[i] = -BigRational::one();
        let (min_v, min_a) = solve_with_objective(down)?.expect("feasible set is nonempty");
        if max_v != -min_v {
            let first = scenario.dist_from_coordinates(&max_a, SemiringKind::NonnegRational)?;
            let second = scenario.dist_from_coordinates(&min_a, SemiringKind::NonnegRational)?;
            return Ok(HomotopyOutcome::NonUnique(first, second));
        }
    }
    Ok(HomotopyOutcome::Unique(scenario.dist_from_coordinates(
        &base,
        SemiringKind::NonnegRational,
    )?))
}
