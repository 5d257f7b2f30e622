//! Seeded random model corpus shared by the acceptance criteria.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use simplicial_distributions::simpdist::theta;
use simplicial_distributions::sset::enumerate_det_maps;
use simplicial_distributions::{
    build_standard, Dist, Scalar, SemiringKind, SimpDist, StandardSpace, Target, Word,
};

pub const R: SemiringKind = SemiringKind::NonnegRational;
pub const B: SemiringKind = SemiringKind::Boolean;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d, R).unwrap()
}

pub fn brat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// A random rational in [0, 1] with a small denominator.
pub fn rat01(rng: &mut ChaCha8Rng) -> BigRational {
    let den = rng.gen_range(2i64..=8);
    let num = rng.gen_range(0i64..=den);
    brat(num, den)
}

/// A random rational in [lo, hi], biased toward the endpoints so that
/// extremal boxes occur often.
pub fn rat_between(rng: &mut ChaCha8Rng, lo: &BigRational, hi: &BigRational) -> BigRational {
    match rng.gen_range(0u8..6) {
        0 => lo.clone(),
        1 => hi.clone(),
        _ => {
            let t = rat01(rng);
            lo + (hi - lo) * t
        }
    }
}

fn scalar(r: BigRational) -> Scalar {
    Scalar::from_rational(r, R).unwrap()
}

fn pair_dist(entries: [BigRational; 4]) -> Dist<Word> {
    let outcomes = [(0, 0), (0, 1), (1, 0), (1, 1)];
    Dist::new(
        R,
        entries
            .into_iter()
            .zip(outcomes)
            .map(|(v, (a, b))| (Word::pair(a, b), scalar(v))),
    )
    .unwrap()
}

/// A random box with prescribed marginals `P(a=0) = px`, `P(b=0) = py`.
fn box_with_marginals(rng: &mut ChaCha8Rng, px: &BigRational, py: &BigRational) -> [BigRational; 4] {
    let one = BigRational::one();
    let zero = BigRational::zero();
    let lo = (px + py - &one).max(zero);
    let hi = px.min(py).clone();
    let p00 = rat_between(rng, &lo, &hi);
    let p01 = px - &p00;
    let p10 = py - &p00;
    let p11 = &one - px - py + &p00;
    [p00, p01, p10, p11]
}

pub fn chsh_from_boxes(boxes: [[BigRational; 4]; 4]) -> SimpDist {
    let space = build_standard(StandardSpace::ChshCone);
    let mut tri = BTreeMap::new();
    for (idx, entries) in boxes.into_iter().enumerate() {
        tri.insert(format!("s{}{}", idx / 2, idx % 2), pair_dist(entries));
    }
    SimpDist::from_top(space, R, Target::Nerve(2), tri, BTreeMap::new(), BTreeMap::new()).unwrap()
}

pub fn pr_box() -> SimpDist {
    let h = || brat(1, 2);
    let z = BigRational::zero;
    chsh_from_boxes([
        [h(), z(), z(), h()],
        [h(), z(), z(), h()],
        [h(), z(), z(), h()],
        [z(), h(), h(), z()],
    ])
}

pub fn identity_table() -> SimpDist {
    let o = BigRational::one;
    let z = BigRational::zero;
    chsh_from_boxes([
        [o(), z(), z(), z()],
        [o(), z(), z(), z()],
        [o(), z(), z(), z()],
        [o(), z(), z(), z()],
    ])
}

/// A random rational CHSH model: random edge marginals, then a random
/// joint box per context inside the compatible interval.
pub fn random_chsh(rng: &mut ChaCha8Rng) -> SimpDist {
    let px = [rat01(rng), rat01(rng)];
    let py = [rat01(rng), rat01(rng)];
    let mut boxes: Vec<[BigRational; 4]> = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            boxes.push(box_with_marginals(rng, &px[i], &py[j]));
        }
    }
    chsh_from_boxes(boxes.try_into().unwrap())
}

/// A random mixture of deterministic distributions (noncontextual by
/// construction) on any scenario.
pub fn random_unit_mixture(
    rng: &mut ChaCha8Rng,
    space: &StandardSpace,
    target: Target,
) -> SimpDist {
    let space = build_standard(*space);
    let units = enumerate_det_maps(&space, target).unwrap();
    let k = rng.gen_range(1..=4.min(units.len()));
    let mut weights: Vec<i64> = (0..k).map(|_| rng.gen_range(1i64..10)).collect();
    let total: i64 = weights.iter().sum();
    let mut entries = Vec::new();
    for w in weights.drain(..) {
        let u = units[rng.gen_range(0..units.len())].clone();
        entries.push((u, q(w, total)));
    }
    let d = Dist::new(R, entries).unwrap();
    theta(&space, &d).unwrap()
}

/// Random CHSH model drawn from three families: free boxes, PR-box
/// mixtures, and unit mixtures.
pub fn random_chsh_mixed_family(rng: &mut ChaCha8Rng, idx: usize) -> SimpDist {
    match idx % 3 {
        0 => random_chsh(rng),
        1 => {
            let t = rat01(rng);
            let nc = random_unit_mixture(rng, &StandardSpace::ChshCone, Target::Nerve(2));
            SimpDist::mix(&[
                (scalar(t.clone()), &pr_box()),
                (scalar(BigRational::one() - t), &nc),
            ])
            .unwrap()
        }
        _ => random_unit_mixture(rng, &StandardSpace::ChshCone, Target::Nerve(2)),
    }
}

/// A random distribution on the standard triangle: any normalized box.
pub fn random_delta2(rng: &mut ChaCha8Rng) -> SimpDist {
    let mut nums: Vec<i64> = (0..4).map(|_| rng.gen_range(0i64..8)).collect();
    if nums.iter().all(|n| *n == 0) {
        nums[rng.gen_range(0..4)] = 1;
    }
    let total: i64 = nums.iter().sum();
    let entries: Vec<BigRational> = nums.into_iter().map(|n| brat(n, total)).collect();
    let space = build_standard(StandardSpace::Delta2);
    SimpDist::from_top(
        space,
        R,
        Target::Nerve(2),
        [("t".to_string(), pair_dist(entries.try_into().unwrap()))].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

/// A random distribution on the glued triangle: p01 = p11 forced.
pub fn random_glued(rng: &mut ChaCha8Rng) -> SimpDist {
    let half = brat(1, 2);
    let zero = BigRational::zero();
    let p01 = rat_between(rng, &zero, &half);
    let rest = BigRational::one() - brat(2, 1) * &p01;
    let p00 = rat_between(rng, &zero, &rest);
    let p10 = &rest - &p00;
    let space = build_standard(StandardSpace::GluedTriangle);
    SimpDist::from_top(
        space,
        R,
        Target::Nerve(2),
        [(
            "t".to_string(),
            pair_dist([p00, p01.clone(), p10, p01]),
        )]
        .into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

pub fn random_rational_model(rng: &mut ChaCha8Rng, space: &StandardSpace, idx: usize) -> SimpDist {
    match space {
        StandardSpace::ChshCone => random_chsh_mixed_family(rng, idx),
        StandardSpace::Delta2 => random_delta2(rng),
        StandardSpace::GluedTriangle => random_glued(rng),
        _ => random_unit_mixture(rng, space, Target::Nerve(2)),
    }
}

// ---------------------------------------------------------------------------
// possibilistic (Boolean) models

fn bool_pair_dist(mask: u8) -> Dist<Word> {
    let outcomes = [(0u32, 0u32), (0, 1), (1, 0), (1, 1)];
    let one = B.one();
    Dist::new(
        B,
        outcomes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, (a, b))| (Word::pair(*a, *b), one.clone())),
    )
    .unwrap()
}

fn mask_row_union(mask: u8) -> (bool, bool) {
    // outcomes in bit order 00, 01, 10, 11; rows indexed by a
    (mask & 0b0011 != 0, mask & 0b1100 != 0)
}

fn mask_col_union(mask: u8) -> (bool, bool) {
    (mask & 0b0101 != 0, mask & 0b1010 != 0)
}

fn mask_xor_union(mask: u8) -> (bool, bool) {
    (mask & 0b1001 != 0, mask & 0b0110 != 0)
}

pub fn random_bool_delta2(rng: &mut ChaCha8Rng) -> SimpDist {
    let mask = rng.gen_range(1u8..16);
    SimpDist::from_top(
        build_standard(StandardSpace::Delta2),
        B,
        Target::Nerve(2),
        [("t".to_string(), bool_pair_dist(mask))].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

pub fn random_bool_glued(rng: &mut ChaCha8Rng) -> SimpDist {
    // the d1 = d2 gluing needs the row union to equal the XOR union
    let mask = loop {
        let mask = rng.gen_range(1u8..16);
        if mask_row_union(mask) == mask_xor_union(mask) {
            break mask;
        }
    };
    SimpDist::from_top(
        build_standard(StandardSpace::GluedTriangle),
        B,
        Target::Nerve(2),
        [("t".to_string(), bool_pair_dist(mask))].into(),
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

fn nonempty_subset(rng: &mut ChaCha8Rng) -> (bool, bool) {
    match rng.gen_range(0u8..3) {
        0 => (true, false),
        1 => (false, true),
        _ => (true, true),
    }
}

pub fn random_bool_chsh(rng: &mut ChaCha8Rng) -> SimpDist {
    let sx = [nonempty_subset(rng), nonempty_subset(rng)];
    let sy = [nonempty_subset(rng), nonempty_subset(rng)];
    let mut tri = BTreeMap::new();
    for i in 0..2 {
        for j in 0..2 {
            let candidates: Vec<u8> = (1u8..16)
                .filter(|m| mask_row_union(*m) == sx[i] && mask_col_union(*m) == sy[j])
                .collect();
            let mask = candidates[rng.gen_range(0..candidates.len())];
            tri.insert(format!("s{i}{j}"), bool_pair_dist(mask));
        }
    }
    SimpDist::from_top(
        build_standard(StandardSpace::ChshCone),
        B,
        Target::Nerve(2),
        tri,
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap()
}

pub fn random_boolean_model(rng: &mut ChaCha8Rng, space: &StandardSpace) -> SimpDist {
    match space {
        StandardSpace::ChshCone => random_bool_chsh(rng),
        StandardSpace::Delta2 => random_bool_delta2(rng),
        StandardSpace::GluedTriangle => random_bool_glued(rng),
        _ => unimplemented!("boolean corpus covers the three main spaces"),
    }
}
