//! Cross-module law checks on randomized models, beyond the
//! acceptance criteria.

mod common;

use std::collections::BTreeMap;

use common::*;
use num_rational::BigRational;
use num_traits::{One, Zero};

use simplicial_distributions::polytope::{
    contextual_fraction, enumerate_vertices, is_noncontextual, is_vertex,
};
use simplicial_distributions::simpdist::{deterministic_embed, realize, restrict, theta};
use simplicial_distributions::sset::{enumerate_det_maps, SMap};
use simplicial_distributions::{
    build_standard, Dist, EmpiricalModel, MonoidContext, SimpDist, StandardSpace, Target, Word,
};

#[test]
fn cf_zero_iff_noncontextual_and_cf_if_identity() {
    let mut rng = rng(21);
    let ctx = MonoidContext::new(build_standard(StandardSpace::ChshCone), Target::Nerve(2), R)
        .unwrap();
    for i in 0..60 {
        let p = random_chsh_mixed_family(&mut rng, i);
        let cf = contextual_fraction(&p).unwrap();
        let nc = is_noncontextual(&p).unwrap().noncontextual;
        assert_eq!(cf.is_zero(), nc, "CF = 0 iff noncontextual, model {i}");
        let if_val = ctx.invertible_fraction(&p).unwrap();
        assert_eq!(BigRational::one() - cf, if_val, "1 - CF = IF, model {i}");
    }
}

#[test]
fn noncontextual_witnesses_reproduce_the_model() {
    let mut rng = rng(22);
    for i in 0..30 {
        let p = random_unit_mixture(&mut rng, &StandardSpace::ChshCone, Target::Nerve(2));
        let outcome = is_noncontextual(&p).unwrap();
        assert!(outcome.noncontextual);
        let witness = outcome.witness.unwrap();
        assert_eq!(theta(p.space(), &witness).unwrap(), p, "model {i}");
    }
}

#[test]
fn restriction_does_not_decrease_the_invertible_fraction() {
    let mut rng = rng(23);
    let cone = build_standard(StandardSpace::ChshCone);
    let boundary = build_standard(StandardSpace::ChshBoundary);
    let mut inclusion = SMap::identity(&boundary);
    inclusion.triangles.clear();
    let cone_ctx = MonoidContext::new(cone, Target::Nerve(2), R).unwrap();
    let boundary_ctx = MonoidContext::new(boundary.clone(), Target::Nerve(2), R).unwrap();
    for i in 0..30 {
        let p = random_chsh_mixed_family(&mut rng, i);
        let restricted = restrict(&p, &inclusion, &boundary).unwrap();
        let if_p = cone_ctx.invertible_fraction(&p).unwrap();
        let if_r = boundary_ctx.invertible_fraction(&restricted).unwrap();
        assert!(if_r >= if_p, "restriction monotonicity, model {i}");
    }
}

#[test]
fn deterministic_embeds_are_enumerated_vertices() {
    for space in [
        StandardSpace::Delta2,
        StandardSpace::GluedTriangle,
        StandardSpace::ChshCone,
    ] {
        let s = build_standard(space);
        let reports = enumerate_vertices(&s, Target::Nerve(2), None).unwrap();
        let vertices: Vec<&SimpDist> = reports.iter().map(|r| &r.dist).collect();
        for phi in enumerate_det_maps(&s, Target::Nerve(2)).unwrap() {
            let p = deterministic_embed(&s, &phi, R).unwrap();
            assert!(is_vertex(&p).unwrap());
            assert!(vertices.contains(&&p), "missing embed on {space:?}");
        }
    }
}

#[test]
fn theta_images_validate_and_contain_their_support() {
    let mut rng = rng(24);
    for _ in 0..50 {
        let p = random_unit_mixture(&mut rng, &StandardSpace::ChshCone, Target::Nerve(2));
        p.validate().unwrap();
    }
}

#[test]
fn product_of_deterministics_adds_labelings() {
    let ctx = MonoidContext::new(build_standard(StandardSpace::ChshCone), Target::Nerve(2), R)
        .unwrap();
    let units = ctx.units().to_vec();
    for (a, b) in [(0usize, 5usize), (3, 7), (10, 15), (2, 2)] {
        let pa = deterministic_embed(ctx.space(), &units[a], R).unwrap();
        let pb = deterministic_embed(ctx.space(), &units[b], R).unwrap();
        let sum = units[a].add(&units[b]).unwrap();
        assert_eq!(
            ctx.mult(&pa, &pb).unwrap(),
            deterministic_embed(ctx.space(), &sum, R).unwrap()
        );
    }
}

#[test]
fn realized_product_models_are_noncontextual() {
    let q2 = |n: i64, d: i64| q(n, d);
    // independent model: every context distribution is the product of
    // the single-measurement marginals
    let px = [q2(1, 3), q2(2, 5)];
    let py = [q2(1, 2), q2(3, 4)];
    let mut contexts = Vec::new();
    let mut dists = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            contexts.push(vec![format!("x{i}"), format!("y{j}")]);
            let m = |s: &simplicial_distributions::Scalar| s.as_rational().unwrap().clone();
            let (a0, b0) = (m(&px[i]), m(&py[j]));
            let one = BigRational::one();
            let entries = [
                (&a0 * &b0),
                (&a0 * (&one - &b0)),
                ((&one - &a0) * &b0),
                ((&one - &a0) * (&one - &b0)),
            ];
            let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
            dists.push(
                Dist::new(
                    R,
                    entries.into_iter().zip(outcomes).map(|(v, (a, b))| {
                        (
                            Word::pair(a, b),
                            simplicial_distributions::Scalar::from_rational(v, R).unwrap(),
                        )
                    }),
                )
                .unwrap(),
            );
        }
    }
    let model = EmpiricalModel {
        d: 2,
        semiring: R,
        measurements: vec!["x0".into(), "x1".into(), "y0".into(), "y1".into()],
        contexts,
        dists,
    };
    let p = realize(&model).unwrap();
    assert!(is_noncontextual(&p).unwrap().noncontextual);
    assert!(contextual_fraction(&p).unwrap().is_zero());

    // single-context models are always noncontextual
    let single = EmpiricalModel {
        d: 2,
        semiring: R,
        measurements: vec!["a".into(), "b".into()],
        contexts: vec![vec!["a".into(), "b".into()]],
        dists: vec![Dist::new(
            R,
            vec![
                (Word::pair(0, 1), q(2, 3)),
                (Word::pair(1, 0), q(1, 3)),
            ],
        )
        .unwrap()],
    };
    let p = realize(&single).unwrap();
    assert!(is_noncontextual(&p).unwrap().noncontextual);
}

#[test]
fn modulus_three_scenarios() {
    // the standard triangle over Z_3: the polytope is an 8-simplex, so
    // its vertices are precisely the nine deterministic labelings
    let space = build_standard(StandardSpace::Delta2);
    let reports = enumerate_vertices(&space, Target::Nerve(3), None).unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r.is_deterministic));
    assert_eq!(enumerate_det_maps(&space, Target::Nerve(3)).unwrap().len(), 9);

    // glued triangle over Z_3: deterministic embeds appear among the
    // vertices, every vertex passes the extreme-point test, and strong
    // contextuality matches CF = 1 on each
    let glued = build_standard(StandardSpace::GluedTriangle);
    let ctx = MonoidContext::new(glued.clone(), Target::Nerve(3), R).unwrap();
    let reports = enumerate_vertices(&glued, Target::Nerve(3), None).unwrap();
    let vertices: Vec<&SimpDist> = reports.iter().map(|r| &r.dist).collect();
    for phi in ctx.units() {
        let p = deterministic_embed(&glued, phi, R).unwrap();
        assert!(vertices.contains(&&p));
    }
    for r in &reports {
        assert!(is_vertex(&r.dist).unwrap());
        assert_eq!(
            r.is_strongly_contextual,
            r.contextual_fraction == BigRational::one()
        );
        let wi = ctx.is_weakly_invertible(&r.dist).unwrap().is_some();
        let nc = is_noncontextual(&r.dist).unwrap().noncontextual;
        assert_eq!(wi, nc);
        assert_eq!(nc, r.contextual_fraction.is_zero());
    }
    assert!(reports.iter().any(|r| r.is_strongly_contextual));

    // decalage round trip over Z_3 on the circle
    let circle = build_standard(StandardSpace::Circle);
    let q3 = |n: i64, d: i64| q(n, d);
    let edge = Dist::new(
        R,
        vec![
            (Word::pair(0, 0), q3(1, 6)),
            (Word::pair(0, 1), q3(1, 6)),
            (Word::pair(1, 0), q3(1, 6)),
            (Word::pair(1, 2), q3(1, 6)),
            (Word::pair(2, 1), q3(1, 6)),
            (Word::pair(2, 2), q3(1, 6)),
        ],
    )
    .unwrap();
    let p = SimpDist::from_top(
        circle,
        R,
        Target::DeltaZ(3),
        BTreeMap::new(),
        [("s".to_string(), edge)].into(),
        BTreeMap::new(),
    )
    .unwrap();
    let (cone, nerve) = simplicial_distributions::simpdist::decalage_to_nerve(&p).unwrap();
    nerve.validate().unwrap();
    assert_eq!(
        simplicial_distributions::simpdist::decalage_from_nerve(&cone, &nerve).unwrap(),
        p
    );
}

#[test]
fn boolean_strong_contextuality_matches_possibilistic_collapse() {
    // collapsing a rational model to its support preserves strong
    // contextuality of the possibilistic kind for the PR box
    let pr = pr_box();
    let mut tri = BTreeMap::new();
    for t in &pr.space().triangles {
        let dist = pr.tri_dist(&t.id).unwrap();
        let one = B.one();
        tri.insert(
            t.id.clone(),
            Dist::new(B, dist.support().map(|w| (w.clone(), one.clone()))).unwrap(),
        );
    }
    let possibilistic = SimpDist::from_top(
        pr.space().clone(),
        B,
        Target::Nerve(2),
        tri,
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap();
    assert!(
        simplicial_distributions::simpdist::is_strongly_contextual(&possibilistic).unwrap()
    );
    assert!(!is_noncontextual(&possibilistic).unwrap().noncontextual);
}
