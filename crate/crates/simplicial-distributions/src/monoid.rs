//! The convex-monoid structure on simplicial distributions valued in a
//! simplicial group: simplexwise convolution, the deterministic units,
//! weak invertibility, invertible support and invertible fraction.
//!
//! Over a zero-sum-free integral semiring the units of the monoid are
//! exactly the deterministic distributions, so weak invertibility is
//! decided by an exact LP over the enumerated simplicial maps. That LP
//! is assembled from the stored distributions of the embedded units,
//! deliberately not sharing the constraint-assembly path of the
//! noncontextuality LP in the polytope module, so agreement of the two
//! decisions is a real cross-check.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dist::{convolve, Dist};
use crate::error::{Error, Result};
use crate::polytope::{lp_solve, solve_linear_system, LinSolve, LinearProgram, LpOutcome};
use crate::semiring::{Scalar, SemiringKind};
use crate::simpdist::{deterministic_embed, support, theta, SimpDist, SimplexRef};
use crate::sset::{enumerate_det_maps, DetMap, SSet2, Target, Word};

/// A scenario together with the cached unit list of its monoid of
/// distributions (the deterministic distributions, which are exactly
/// the units over zero-sum-free integral semirings).
pub struct MonoidContext {
    space: SSet2,
    target: Target,
    semiring: SemiringKind,
    units: Vec<DetMap>,
}

impl MonoidContext {
    pub fn new(space: SSet2, target: Target, semiring: SemiringKind) -> Result<Self> {
        space.validate()?;
        let units = enumerate_det_maps(&space, target)?;
        Ok(MonoidContext {
            space,
            target,
            semiring,
            units,
        })
    }

    pub fn space(&self) -> &SSet2 {
        &self.space
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn semiring(&self) -> SemiringKind {
        self.semiring
    }

    /// The monoid units as simplicial maps.
    pub fn units(&self) -> &[DetMap] {
        &self.units
    }

    fn check_member(&self, p: &SimpDist) -> Result<()> {
        if p.space() != &self.space || p.target() != self.target || p.semiring() != self.semiring {
            return Err(Error::Precondition(
                "distribution does not belong to this monoid".into(),
            ));
        }
        Ok(())
    }

    fn require_units_characterized(&self) -> Result<()> {
        if self.semiring.zero_sum_free() && self.semiring.integral() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "the unit characterization needs a zero-sum-free integral semiring, got {}",
                self.semiring
            )))
        }
    }

    /// Simplexwise group convolution of two distributions.
    pub fn mult(&self, p: &SimpDist, q: &SimpDist) -> Result<SimpDist> {
        self.check_member(p)?;
        self.check_member(q)?;
        let d = self.target.modulus();
        let conv_table = |pick: &dyn Fn(&SimpDist, &str) -> Option<Dist<Word>>,
                          ids: Vec<String>|
         -> Result<BTreeMap<String, Dist<Word>>> {
            let mut out = BTreeMap::new();
            for id in ids {
                let a = pick(p, &id).expect("validated coverage");
                let b = pick(q, &id).expect("validated coverage");
                let c = convolve(&a, &b, |u, w| Some(u.add_mod(w, d)))?;
                out.insert(id, c);
            }
            Ok(out)
        };
        let vertex_ids: Vec<String> = if matches!(self.target, Target::DeltaZ(_)) {
            self.space.vertices.clone()
        } else {
            Vec::new()
        };
        let product = SimpDist::new(
            self.space.clone(),
            self.semiring,
            self.target,
            conv_table(&|r, id| r.vertex_dist(id).cloned(), vertex_ids)?,
            conv_table(
                &|r, id| r.edge_dist(id).cloned(),
                self.space.edges.iter().map(|e| e.id.clone()).collect(),
            )?,
            conv_table(
                &|r, id| r.tri_dist(id).cloned(),
                self.space.triangles.iter().map(|t| t.id.clone()).collect(),
            )?,
        )?;
        product.validate()?;
        Ok(product)
    }

    /// The deterministic embed of the all-zero labeling.
    pub fn identity(&self) -> Result<SimpDist> {
        let labels: BTreeMap<String, u32> = match self.target {
            Target::Nerve(_) => self.space.edges.iter().map(|e| (e.id.clone(), 0)).collect(),
            Target::DeltaZ(_) => self.space.vertices.iter().map(|v| (v.clone(), 0)).collect(),
        };
        deterministic_embed(&self.space, &DetMap::new(self.target, labels), self.semiring)
    }

    /// Two-sided inverse, when one exists. Over semirings with
    /// negation this solves the simplexwise convolution systems
    /// exactly; over zero-sum-free integral semirings only the
    /// deterministic distributions are invertible.
    pub fn inverse(&self, p: &SimpDist) -> Result<Option<SimpDist>> {
        self.check_member(p)?;
        p.validate()?;
        let candidate = if self.semiring.has_negation() {
            match self.solve_inverse_systems(p)? {
                Some(q) => q,
                None => return Ok(None),
            }
        } else {
            // units are the deterministic distributions; read the
            // labeling off the stored deltas
            let mut labels = BTreeMap::new();
            let label_source: Vec<(&str, Option<&Dist<Word>>)> = match self.target {
                Target::Nerve(_) => self
                    .space
                    .edges
                    .iter()
                    .map(|e| (e.id.as_str(), p.edge_dist(&e.id)))
                    .collect(),
                Target::DeltaZ(_) => self
                    .space
                    .vertices
                    .iter()
                    .map(|v| (v.as_str(), p.vertex_dist(v)))
                    .collect(),
            };
            for (id, dist) in label_source {
                let dist = dist.expect("validated coverage");
                match dist.as_delta() {
                    Some(w) => {
                        labels.insert(id.to_string(), w.0[0]);
                    }
                    None => return Ok(None),
                }
            }
            // every stored simplex must be deterministic, not only the
            // label-carrying ones
            if p.stored().any(|(_, dist)| dist.as_delta().is_none()) {
                return Ok(None);
            }
            let phi = DetMap::new(self.target, labels);
            deterministic_embed(&self.space, &phi.negate(), self.semiring)?
        };
        let identity = self.identity()?;
        if self.mult(p, &candidate)? == identity && self.mult(&candidate, p)? == identity {
            Ok(Some(candidate))
        } else {
            Ok(None)
        }
    }

    fn solve_inverse_systems(&self, p: &SimpDist) -> Result<Option<SimpDist>> {
        let d = self.target.modulus();
        let mut vertex_dists = BTreeMap::new();
        let mut edge_dists = BTreeMap::new();
        let mut tri_dists = BTreeMap::new();
        for (simplex, dist) in p.stored() {
            let outcomes = self.target.outcomes(simplex.dim());
            let n = outcomes.len();
            // convolution by p as a linear map: row c, column h has
            // coefficient p(c - h)
            let mut rows = Vec::with_capacity(n);
            for c in outcomes.iter() {
                let mut row = Vec::with_capacity(n);
                for h in outcomes.iter() {
                    let diff = c.add_mod(&h.neg_mod(d), d);
                    let w = dist.weight(&diff);
                    row.push(
                        w.as_rational()
                            .ok_or_else(|| {
                                Error::Unsupported(
                                    "inverse solving needs rational weights".into(),
                                )
                            })?
                            .clone(),
                    );
                }
                let rhs = if c.0.iter().all(|a| *a == 0) {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                rows.push((row, rhs));
            }
            let solution = match solve_linear_system(&rows, n) {
                LinSolve::Unique(sol) => sol,
                LinSolve::Affine { particular, .. } => particular,
                LinSolve::Inconsistent => return Ok(None),
            };
            let entries: Vec<(Word, Scalar)> = outcomes
                .into_iter()
                .zip(solution)
                .map(|(w, v)| Ok((w, Scalar::from_rational(v, self.semiring)?)))
                .collect::<Result<_>>()?;
            let q = Dist::new(self.semiring, entries)?;
            match simplex {
                SimplexRef::Vertex(id) => vertex_dists.insert(id.to_string(), q),
                SimplexRef::Edge(id) => edge_dists.insert(id.to_string(), q),
                SimplexRef::Tri(id) => tri_dists.insert(id.to_string(), q),
            };
        }
        let q = SimpDist::new(
            self.space.clone(),
            self.semiring,
            self.target,
            vertex_dists,
            edge_dists,
            tri_dists,
        )?;
        match q.validate() {
            Ok(()) => Ok(Some(q)),
            Err(_) => Ok(None),
        }
    }

    /// Rows of the exact LP `sum_u b_u * (embedded unit u) (rel) p`,
    /// one row per stored simplex and outcome, assembled from the unit
    /// embeddings.
    fn unit_mixture_rows(
        &self,
        p: &SimpDist,
    ) -> Result<(Vec<Vec<BigRational>>, Vec<BigRational>)> {
        let embedded: Vec<SimpDist> = self
            .units
            .iter()
            .map(|u| deterministic_embed(&self.space, u, self.semiring))
            .collect::<Result<_>>()?;
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (simplex, dist) in p.stored() {
            for w in self.target.outcomes(simplex.dim()) {
                let mut row = Vec::with_capacity(embedded.len());
                for e in &embedded {
                    let entry = match simplex {
                        SimplexRef::Vertex(id) => e.vertex_dist(id),
                        SimplexRef::Edge(id) => e.edge_dist(id),
                        SimplexRef::Tri(id) => e.tri_dist(id),
                    }
                    .expect("unit embeddings cover the space")
                    .weight(&w);
                    row.push(entry.as_rational().expect("rational semiring").clone());
                }
                rows.push(row);
                rhs.push(
                    dist.weight(&w)
                        .as_rational()
                        .ok_or_else(|| {
                            Error::Unsupported(
                                "unit-mixture LPs need rational weights".into(),
                            )
                        })?
                        .clone(),
                );
            }
        }
        Ok((rows, rhs))
    }

    /// Decide membership in the image of the structure map restricted
    /// to distributions over the units; the witnessing distribution is
    /// returned when it exists.
    pub fn is_weakly_invertible(&self, p: &SimpDist) -> Result<Option<Dist<DetMap>>> {
        self.check_member(p)?;
        self.require_units_characterized()?;
        p.validate()?;
        match self.semiring {
            SemiringKind::Boolean => {
                // canonical possibilistic witness: the support itself
                let supp = support(p)?;
                if supp.is_empty() {
                    return Ok(None);
                }
                let one = SemiringKind::Boolean.one();
                let witness = Dist::new(
                    SemiringKind::Boolean,
                    supp.into_iter().map(|phi| (phi, one.clone())),
                )?;
                if &theta(&self.space, &witness)? == p {
                    Ok(Some(witness))
                } else {
                    Ok(None)
                }
            }
            SemiringKind::NonnegRational => {
                let n = self.units.len();
                let (rows, rhs) = self.unit_mixture_rows(p)?;
                let mut lp = LinearProgram::feasibility(n);
                for (row, b) in rows.into_iter().zip(rhs) {
                    lp.equalities.push((row, b));
                }
                lp.equalities
                    .push((vec![BigRational::one(); n], BigRational::one()));
                match lp_solve(&lp)? {
                    LpOutcome::Optimal { assignment, .. } => {
                        let witness = Dist::new(
                            self.semiring,
                            self.units
                                .iter()
                                .zip(assignment)
                                .filter(|(_, w)| !w.is_zero())
                                .map(|(u, w)| {
                                    Ok((u.clone(), Scalar::from_rational(w, self.semiring)?))
                                })
                                .collect::<Result<Vec<_>>>()?,
                        )?;
                        Ok(Some(witness))
                    }
                    LpOutcome::Infeasible => Ok(None),
                    LpOutcome::Unbounded => unreachable!("feasibility problem"),
                }
            }
            SemiringKind::RealField => unreachable!("rejected above"),
        }
    }

    /// Membership of a unit in the invertible support of `p`: the
    /// maximal coefficient of the unit over decompositions of `p` into
    /// units plus one free remainder is strictly positive.
    pub fn isupp_member(&self, p: &SimpDist, m: &DetMap) -> Result<bool> {
        self.check_member(p)?;
        self.require_rational()?;
        p.validate()?;
        let Some(m_idx) = self.units.iter().position(|u| u == m) else {
            return Err(Error::Precondition(
                "the queried map is not a unit of this monoid".into(),
            ));
        };
        let n = self.units.len();
        let (rows, rhs) = self.unit_mixture_rows(p)?;
        let num_rows = rows.len();
        // variables: unit weights, then one remainder entry per row
        let total = n + num_rows;
        let mut lp = LinearProgram::maximize(total, {
            let mut c = vec![BigRational::zero(); total];
            c[m_idx] = BigRational::one();
            c
        });
        for (i, (row, b)) in rows.into_iter().zip(rhs).enumerate() {
            let mut full = row;
            full.resize(total, BigRational::zero());
            full[n + i] = BigRational::one();
            lp.equalities.push((full, b));
        }
        match lp_solve(&lp)? {
            LpOutcome::Optimal { value, .. } => Ok(value.is_positive()),
            LpOutcome::Infeasible => unreachable!("the trivial decomposition is feasible"),
            LpOutcome::Unbounded => unreachable!("unit mass is bounded"),
        }
    }

    fn require_rational(&self) -> Result<()> {
        if self.semiring == SemiringKind::NonnegRational {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "invertible fractions are defined over the nonnegative rationals, got {}",
                self.semiring
            )))
        }
    }

    /// The maximal total unit mass over decompositions of `p` through
    /// the structure map: `max { sum b : mixture of units <= p }`.
    pub fn invertible_fraction(&self, p: &SimpDist) -> Result<BigRational> {
        self.check_member(p)?;
        self.require_rational()?;
        p.validate()?;
        let n = self.units.len();
        let (rows, rhs) = self.unit_mixture_rows(p)?;
        let mut lp = LinearProgram::maximize(n, vec![BigRational::one(); n]);
        for (row, b) in rows.into_iter().zip(rhs) {
            lp.leq.push((row, b));
        }
        match lp_solve(&lp)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            LpOutcome::Infeasible => unreachable!("zero is feasible"),
            LpOutcome::Unbounded => unreachable!("bounded by normalization"),
        }
    }

    pub fn is_strongly_noninvertible(&self, p: &SimpDist) -> Result<bool> {
        Ok(self.invertible_fraction(p)?.is_zero())
    }
}
