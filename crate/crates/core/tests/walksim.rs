use hyperwalk_core::walksim::{
    divergence_probe, estimate_drift, estimate_entropy, estimate_stats, first_passage, first_passage_curve,
    rotation_check, sample_boundary, sample_path,
};
use hyperwalk_core::{Family, GroupModel, StepMeasure, WalkConfig, Word};
use proptest::prelude::*;

fn model(family: Family, n: u32, m: u32) -> GroupModel {
    GroupModel::build(family, n, m).unwrap()
}

fn configs() -> Vec<WalkConfig> {
    let mut out = Vec::new();
    for (family, n, m, skew) in [
        (Family::Reflection, 4, 8, vec![0.4, 0.1, 0.4, 0.1]),
        (Family::Reflection, 5, 4, vec![0.3, 0.1, 0.2, 0.2, 0.2]),
        (Family::Fuchsian, 6, 4, vec![0.1, 0.3, 0.1, 0.1, 0.3, 0.1]),
    ] {
        let g = model(family, n, m);
        out.push(WalkConfig::simple(g.clone()));
        out.push(WalkConfig::new(g, StepMeasure::new(skew).unwrap()));
    }
    out
}

#[test]
fn fundamental_inequality_holds_empirically() {
    for cfg in configs() {
        let cfg = cfg.steps(50).trials(2000).seed(17);
        let s = estimate_stats(&cfg).unwrap();
        assert!(s.drift_hat.is_finite() && s.entropy_hat.is_finite());
        assert!(s.drift_stderr >= 0.0 && s.entropy_stderr >= 0.0);
        assert!(
            s.entropy_hat <= s.drift_hat * s.volume_hat + 3.0 * s.fi_stderr,
            "{}({},{}): {s:?}",
            cfg.model.family,
            cfg.model.n(),
            cfg.model.m()
        );
        assert!(s.drift_hat <= cfg.model.max_step_displacement() + 1e-12);
        assert_eq!(s.samples_used, 2000);
    }
}

#[test]
fn estimates_are_reproducible() {
    let cfg = WalkConfig::simple(model(Family::Fuchsian, 4, 8)).steps(40).trials(500).seed(99);
    assert_eq!(estimate_stats(&cfg).unwrap(), estimate_stats(&cfg).unwrap());
    assert_eq!(sample_path(&cfg, 7).unwrap(), sample_path(&cfg, 7).unwrap());
    let other = estimate_stats(&cfg.clone().seed(100)).unwrap();
    assert_ne!(estimate_stats(&cfg).unwrap().drift_hat, other.drift_hat);
}

#[test]
fn stderr_shrinks_like_one_over_root_trials() {
    let cfg = WalkConfig::simple(model(Family::Reflection, 4, 8)).steps(50).seed(4);
    let small = estimate_drift(&cfg.clone().trials(4000)).unwrap();
    let large = estimate_drift(&cfg.trials(8000)).unwrap();
    let ratio = large.stderr / small.stderr;
    assert!((ratio - 0.5f64.sqrt()).abs() < 0.1, "ratio {ratio}");
}

#[test]
fn entropy_bounds() {
    let cfg = WalkConfig::simple(model(Family::Reflection, 4, 8)).trials(4000).seed(8);
    for steps in [4, 8, 16] {
        let h = estimate_entropy(&cfg.clone().steps(steps)).unwrap();
        assert!(h.value <= 4f64.ln() + 1e-12);
    }
    let short = estimate_entropy(&cfg.clone().steps(5)).unwrap();
    let long = estimate_entropy(&cfg.clone().steps(10)).unwrap();
    assert!(long.value <= short.value + 4.0 * (short.stderr + long.stderr).max(1e-3));
}

#[test]
fn point_mass_walk_is_deterministic() {
    let g = model(Family::Fuchsian, 6, 4);
    let l = 2.0 * g.spec.inradius;
    let cfg = WalkConfig::new(g, StepMeasure::point_mass(6, 0)).steps(60).trials(10);
    let s = estimate_stats(&cfg).unwrap();
    assert!((s.drift_hat - l).abs() < 1e-9);
    assert_eq!(s.entropy_hat, 0.0);
    assert!(s.degenerate);
}

#[test]
fn first_passage_beats_the_product_of_weights() {
    let cfg = WalkConfig::simple(model(Family::Reflection, 4, 8)).trials(10_000).seed(21);
    for word in ["r1", "r1,r3", "r2,r4", "r1,r3,r1"] {
        let w = cfg.model.parse_word(word).unwrap();
        let fp = first_passage(&cfg, &w, 100).unwrap();
        let product = 0.25f64.powi(w.len() as i32);
        assert!(fp.f_hat >= product - 3.0 * fp.stderr, "{word}: {fp:?}");
        assert!(fp.green_upper <= -product.ln() + 3.0 * fp.stderr / product);
    }
    let skew = StepMeasure::new(vec![0.4, 0.1, 0.4, 0.1]).unwrap();
    let cfg = WalkConfig::new(cfg.model.clone(), skew).trials(10_000).seed(22);
    let w = cfg.model.parse_word("r1,r3").unwrap();
    let fp = first_passage(&cfg, &w, 100).unwrap();
    assert!(fp.f_hat >= 0.16 - 3.0 * fp.stderr);
}

#[test]
fn passage_probability_grows_with_the_horizon() {
    let cfg = WalkConfig::simple(model(Family::Fuchsian, 4, 8)).trials(3000).seed(2);
    let w = cfg.model.parse_word("t1,t2").unwrap();
    let curve = first_passage_curve(&cfg, &w, 60).unwrap();
    assert!(curve.windows(2).all(|p| p[0] <= p[1]));
    let mut last = 0.0;
    for h in [2, 5, 10, 30, 60] {
        let f = first_passage(&cfg, &w, h).unwrap().f_hat;
        assert!(f >= last);
        assert_eq!(f, curve[h]);
        last = f;
    }
}

#[test]
fn an_unreachable_horizon_has_no_hits() {
    let cfg = WalkConfig::simple(model(Family::Reflection, 4, 8)).trials(100);
    let w = cfg.model.parse_word("r1,r3").unwrap().power(3);
    let fp = first_passage(&cfg, &w, 6).unwrap();
    assert!(fp.f_hat <= 0.05);
    let far = cfg.model.parse_word("r1,r3").unwrap().power(10);
    let fp = first_passage(&cfg, &far, 20).unwrap();
    assert!(fp.zero_hits && fp.green_upper.is_infinite());
}

#[test]
fn probe_distances_are_exact_multiples() {
    let cfg = WalkConfig::simple(model(Family::Reflection, 4, 8)).trials(2000).steps(100).seed(5);
    let g = cfg.model.parse_word("r1,r3").unwrap();
    let rows = divergence_probe(&cfg, &g, 3).unwrap();
    let h = cfg.model.spec.inradius;
    let cost = 2.0 * 4f64.ln();
    for row in &rows {
        let k = row.k as f64;
        assert!((row.geo_distance - k * 4.0 * h).abs() < 1e-9);
        assert!((row.lower_gap - k * (4.0 * h - cost)).abs() < 1e-9);
    }
    assert!(rows[1].lower_gap > 0.0 && rows[3].lower_gap > rows[2].lower_gap);
    assert_eq!(rows[0].green_upper, 0.0);
}

#[test]
fn boundary_histogram_is_rotation_symmetric() {
    for (family, n, m) in [(Family::Reflection, 4, 8), (Family::Fuchsian, 4, 8), (Family::Reflection, 5, 4)] {
        let cfg = WalkConfig::simple(model(family, n, m)).trials(20_000).seed(6);
        let s = sample_boundary(&cfg).unwrap();
        assert_eq!(s.histogram.iter().sum::<u64>() as usize, s.converged);
        assert!(s.converged <= s.trials);
        let check = rotation_check(&s, n);
        assert!(check.passes, "{family}({n},{m}): {check:?}");
        assert_eq!(sample_boundary(&cfg).unwrap().angles, s.angles);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_points_follow_the_word(
        letters in prop::collection::vec(0usize..4, 0..20),
    ) {
        let g = model(Family::Reflection, 4, 8);
        let path = hyperwalk_core::walksim::path_of_word(&g, &Word::new(letters.clone())).unwrap();
        prop_assert_eq!(path.len(), letters.len() + 1);
        for (k, p) in path.iter().enumerate() {
            prop_assert_eq!(p.word_length, k);
            let d = g.geo_distance(&Word::new(letters[..k].to_vec())).unwrap();
            prop_assert!((p.distance - d).abs() < 1e-9);
        }
    }
}
