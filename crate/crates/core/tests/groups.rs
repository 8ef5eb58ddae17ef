use std::f64::consts::PI;

use hyperwalk_core::groups::Generator;
use hyperwalk_core::{Family, GroupError, GroupModel, Isometry, Word};
use proptest::prelude::*;

fn reflection_pairs() -> impl Iterator<Item = (u32, u32)> {
    (3..=14u32).flat_map(|n| (4..=12u32).step_by(2).map(move |m| (n, m)))
}

#[test]
fn reflection_relators() {
    let mut checked = 0;
    for (n, m) in reflection_pairs() {
        let Ok(g) = GroupModel::build(Family::Reflection, n, m) else {
            assert!(m * (n - 2) <= 2 * n);
            continue;
        };
        let k = n as usize;
        for i in 0..k {
            assert!(g.evaluate(&Word::new(vec![i, i])).unwrap().is_identity(1e-9));
            let pair = Word::new(vec![i, (i + 1) % k]).power(m as usize / 2);
            assert!(g.evaluate(&pair).unwrap().is_identity(1e-9), "({n},{m}) i={i}");
        }
        checked += 1;
    }
    assert_eq!(checked, reflection_pairs().filter(|&(n, m)| m * (n - 2) > 2 * n).count());
    assert!(checked > 50);
}

#[test]
fn fuchsian_inverses() {
    for n in (4..=14u32).step_by(2) {
        for m in 3..=12u32 {
            let Ok(g) = GroupModel::build(Family::Fuchsian, n, m) else {
                continue;
            };
            let k = n as usize;
            for i in 0..k {
                let gen = &g.generators[i];
                assert!(!gen.iso.reversing);
                assert_eq!(gen.inverse, (i + k / 2) % k);
                assert!(g.evaluate(&Word::new(vec![i, gen.inverse])).unwrap().is_identity(1e-9));
            }
        }
    }
}

#[test]
fn construction_examples() {
    let g = GroupModel::build(Family::Reflection, 4, 6).unwrap();
    assert_eq!(g.rank(), 4);
    let f = GroupModel::build(Family::Fuchsian, 4, 5).unwrap();
    let w = f.parse_word("t1,t3").unwrap();
    assert!(f.evaluate(&w).unwrap().is_identity(1e-9));
    assert_eq!(
        GroupModel::build(Family::Fuchsian, 5, 4).unwrap_err(),
        GroupError::FuchsianSides { n: 5 }
    );
    assert_eq!(
        GroupModel::build(Family::Reflection, 5, 5).unwrap_err(),
        GroupError::ReflectionOrder { m: 5 }
    );
    assert!(matches!(GroupModel::build(Family::Reflection, 4, 4), Err(GroupError::Geom(_))));
}

#[test]
fn translations_have_twice_the_inradius() {
    let f = GroupModel::build(Family::Fuchsian, 6, 4).unwrap();
    let two_h = 2.0 * f.spec.inradius;
    for gen in &f.generators {
        let l = hyperwalk_core::translation_length(&gen.iso).unwrap();
        assert!((l - two_h).abs() < 1e-9);
        // centre to the neighbouring tile centre
        assert!((gen.iso.displacement_from_origin() - two_h).abs() < 1e-9);
    }
}

#[test]
fn word_evaluation_examples() {
    let g = GroupModel::build(Family::Reflection, 6, 4).unwrap();
    assert!(g.evaluate(&Word::empty()).unwrap().is_identity(0.0));
    assert!(g.evaluate(&g.parse_word("r1,r1").unwrap()).unwrap().is_identity(1e-9));
    let e = g.evaluate(&g.parse_word("r1,r4").unwrap()).unwrap();
    assert!(!e.reversing);
    let l = hyperwalk_core::translation_length(&e).unwrap();
    assert!((l - 4.0 * g.spec.inradius).abs() < 1e-9);
    assert!(matches!(g.parse_word("r7"), Err(GroupError::UnknownLabel(_))));
    assert!(matches!(g.parse_word("t1"), Err(GroupError::UnknownLabel(_))));
    assert!(matches!(
        g.evaluate(&Word::new(vec![9])),
        Err(GroupError::LetterOutOfRange { index: 9, rank: 6 })
    ));
}

#[test]
fn geometric_distance_examples() {
    let g = GroupModel::build(Family::Reflection, 4, 8).unwrap();
    assert_eq!(g.geo_distance(&Word::empty()).unwrap(), 0.0);
    assert!((g.geo_distance(&Word::new(vec![0])).unwrap() - 2.0 * g.spec.inradius).abs() < 1e-9);
    let axis = g.parse_word("r1,r3").unwrap();
    let l = g.geo_distance(&axis).unwrap();
    for k in 1..=8 {
        assert!((g.geo_distance(&axis.power(k)).unwrap() - k as f64 * l).abs() < 1e-9 * k as f64);
    }
}

#[test]
fn census_adds_exactly_the_generators_past_twice_the_inradius() {
    let g = GroupModel::build(Family::Reflection, 4, 8).unwrap();
    let two_h = 2.0 * g.spec.inradius;
    let c = g.ball_census(two_h + 1e-6, two_h + 1e-6).unwrap();
    assert_eq!(c.counts, vec![1, 5]);
    // brute force over every word of length <= 3
    let mut close = Vec::new();
    for len in 1..=3u32 {
        for code in 0..4usize.pow(len) {
            let letters: Vec<usize> = (0..len).map(|j| (code / 4usize.pow(j)) % 4).collect();
            let iso = g.evaluate(&Word::new(letters)).unwrap();
            let d = g.displacement(&iso);
            if d > 1e-9 && d <= two_h + 1e-6
                && !close.iter().any(|c: &Isometry| c.approx_eq(&iso, 1e-9)) {
                    close.push(iso);
                }
        }
    }
    assert_eq!(close.len(), 4);
}

#[test]
fn census_below_twice_the_inradius_is_trivial() {
    let g = GroupModel::build(Family::Reflection, 6, 4).unwrap();
    let c = g.ball_census(0.99 * 2.0 * g.spec.inradius, 0.1).unwrap();
    assert!(c.counts.iter().all(|&k| k == 1));
}

fn rotated_labels(g: &GroupModel) -> GroupModel {
    let k = g.rank();
    let mut out = g.clone();
    out.generators = (0..k)
        .map(|i| {
            let src = &g.generators[(i + 1) % k];
            Generator {
                label: format!("{}{}", g.family.letter(), i + 1),
                iso: src.iso,
                inverse: (src.inverse + k - 1) % k,
            }
        })
        .collect();
    out
}

#[test]
fn census_does_not_depend_on_the_labelling() {
    for (family, n, m) in [(Family::Reflection, 5, 4), (Family::Fuchsian, 6, 4)] {
        let g = GroupModel::build(family, n, m).unwrap();
        let r = rotated_labels(&g);
        assert_eq!(g.ball_census(6.0, 0.5).unwrap(), r.ball_census(6.0, 0.5).unwrap());
    }
}

#[test]
fn census_sandwich_and_unit_growth() {
    let g = GroupModel::build(Family::Reflection, 4, 8).unwrap();
    let c = g.ball_census(10.0, 0.5).unwrap();
    assert!(c.counts.windows(2).all(|w| w[0] <= w[1]));
    assert_eq!(c.counts[0], 1);
    assert!((c.slope_estimate - 1.0).abs() < 0.2, "slope {}", c.slope_estimate);
    let a = g.spec.diameter();
    for (&r, &k) in c.radius_grid.iter().zip(&c.counts) {
        if r < 2.0 * a {
            continue;
        }
        let lo = 4.0 * PI * ((r - a) / 2.0).sinh().powi(2) / g.spec.area;
        let hi = 4.0 * PI * ((r + a) / 2.0).sinh().powi(2) / g.spec.area;
        assert!(lo <= k as f64 && k as f64 <= hi, "R={r}: {lo} <= {k} <= {hi}");
    }
}

#[test]
fn a_mirror_point_is_rejected_as_base_point() {
    let g = GroupModel::build(Family::Reflection, 4, 8).unwrap();
    let h = g.spec.inradius;
    assert!(matches!(g.with_base_offset(h), Err(GroupError::NontrivialStabilizer { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distance_is_at_most_length_times_longest_step(
        pick in 0usize..4,
        letters in prop::collection::vec(0usize..64, 0..12),
    ) {
        let (family, n, m) = [(Family::Reflection, 4, 8), (Family::Reflection, 7, 4), (Family::Fuchsian, 4, 8), (Family::Fuchsian, 8, 3)][pick];
        let g = GroupModel::build(family, n, m).unwrap();
        let w = Word::new(letters.into_iter().map(|l| l % g.rank()).collect());
        let d = g.geo_distance(&w).unwrap();
        prop_assert!(d <= w.len() as f64 * g.max_step_displacement() + 1e-9);
    }
}
