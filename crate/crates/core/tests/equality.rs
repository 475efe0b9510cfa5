use bonnesen_core::bonnesen::{verify_chain, Mode};
use bonnesen_core::equality::{
    build_equality_instance, classify, destretch, detect_homothety, EqualityWitness, ANGLE_TOL,
};
use bonnesen_core::geometry::{hausdorff, stretch, ConvexBody, Direction};
use bonnesen_core::harness::rng::SplitMix64;
use bonnesen_core::harness::{random_body, EqualityKind};
use bonnesen_core::{Error, Tolerances};
use proptest::prelude::*;

fn random_direction(d: usize, seed: u64) -> Direction {
    Direction::new(SplitMix64::new(seed).unit_vector(d)).unwrap()
}

#[test]
fn homothety_survives_only_coarse_tolerances_under_noise() {
    let a = random_body(3, 14, 41).unwrap();
    let b = a.affine_image(2.0, &[1.0, 1.0, 1.0]).unwrap();
    let h = detect_homothety(&a, &b, 1e-9).unwrap().unwrap();
    assert!((h.lambda - 2.0).abs() <= 1e-9);
    assert!(h.t.iter().all(|t| (t - 1.0).abs() <= 1e-9));

    let mut rng = SplitMix64::new(42);
    let noise = 1e-3 * b.diameter();
    let jittered: Vec<Vec<f64>> = b
        .vertices()
        .iter()
        .map(|v| {
            v.iter()
                .zip(rng.unit_vector(3))
                .map(|(x, e)| x + noise * e)
                .collect()
        })
        .collect();
    let noisy = ConvexBody::hull(&jittered, 3).unwrap();
    assert!(detect_homothety(&a, &noisy, 1e-6).unwrap().is_none());
    assert!(detect_homothety(&a, &noisy, 1e-2).unwrap().is_some());
}

#[test]
fn strict_pairs_never_get_witnesses() {
    let tol = Tolerances::default();
    let mut checked = 0;
    for seed in 0..60 {
        let d = 2 + (seed % 2) as usize;
        let a = random_body(d, 8, 3 * seed).unwrap();
        let b = random_body(d, 9, 3 * seed + 1).unwrap();
        let u = random_direction(d, 3 * seed + 2);
        for mode in [Mode::Section, Mode::Projection] {
            let r = verify_chain(&a, &b, 0.5, 0.5, &u, mode, &tol).unwrap();
            if r.gap_bonnesen > 1e-3 * r.lhs {
                let out = classify(&a, &b, 0.5, 0.5, &u, mode, &tol);
                assert!(
                    matches!(out, Err(Error::PreconditionViolated(_))),
                    "seed {seed}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked >= 100);
}

#[test]
fn recovered_directions_match_construction() {
    let tol = Tolerances::default();
    for seed in 0..60 {
        for d in [2, 3] {
            for kind in [
                EqualityKind::SectionStretch,
                EqualityKind::ProjectionStretch,
            ] {
                let s = build_equality_instance(kind, seed, d).unwrap();
                let truth = s.truth.clone().unwrap();
                let w = classify(&s.a, &s.b, s.alpha, s.beta, &s.u, s.mode, &tol).unwrap();
                let EqualityWitness::StretchedPair(p) = w else {
                    panic!("{kind:?} seed {seed} d {d}: {}", w.kind_name());
                };
                // v and -v describe the same segment direction up to relabeling
                let angle = p.v.angle_to(&truth.v).min(p.v.angle_to(&truth.v.negated()));
                assert!(angle <= ANGLE_TOL);
                let diam = s.a.diameter().max(s.b.diameter());
                assert!((p.lambda_a - truth.lambda_a).abs() <= 1e-6 * diam);
                assert!((p.lambda_b - truth.lambda_b).abs() <= 1e-6 * diam);
                assert!(p.lambda_a.min(p.lambda_b) <= 1e-6 * diam);
            }
        }
    }
}

#[test]
fn witnesses_reassemble_the_inputs() {
    let tol = Tolerances::default();
    for seed in 0..20 {
        let s = build_equality_instance(EqualityKind::SectionStretch, seed, 3).unwrap();
        let EqualityWitness::StretchedPair(p) =
            classify(&s.a, &s.b, s.alpha, s.beta, &s.u, s.mode, &tol).unwrap()
        else {
            panic!("seed {seed}");
        };
        let a = stretch(&p.a_prime, p.v.as_slice(), p.lambda_a).unwrap();
        let b = stretch(
            &p.b_prime.translate(&p.w).unwrap(),
            p.v.as_slice(),
            p.lambda_b,
        )
        .unwrap();
        assert!(hausdorff(&a, &s.a) <= 1e-6 * s.a.diameter());
        assert!(hausdorff(&b, &s.b) <= 1e-6 * s.b.diameter());
        let image = p.a_prime.affine_image(p.hom.lambda, &p.hom.t).unwrap();
        assert!(hausdorff(&image, &p.b_prime) <= 1e-6 * p.b_prime.diameter().max(1e-12));
    }
}

#[test]
fn witness_json_carries_all_fields() {
    let s = build_equality_instance(EqualityKind::SectionStretch, 2, 3).unwrap();
    let w = classify(
        &s.a,
        &s.b,
        s.alpha,
        s.beta,
        &s.u,
        s.mode,
        &Tolerances::default(),
    )
    .unwrap();
    let v = serde_json::to_value(&w).unwrap();
    assert_eq!(v["kind"], "StretchedPair");
    for key in [
        "v",
        "lambda_a",
        "lambda_b",
        "a_prime",
        "b_prime",
        "w",
        "h",
        "hom",
        "residuals",
    ] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let back: EqualityWitness = serde_json::from_value(v).unwrap();
    assert_eq!(back.kind_name(), "StretchedPair");

    let a = random_body(3, 10, 5).unwrap();
    let w = classify(
        &a,
        &a,
        0.5,
        0.5,
        &Direction::axis(3, 0),
        Mode::Projection,
        &Tolerances::default(),
    )
    .unwrap();
    let v = serde_json::to_value(&w).unwrap();
    assert_eq!(v["kind"], "Homothetic");
    assert!((v["lambda"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn erosion_is_monotone_in_length(seed in 0u64..10_000, d in 2usize..=3, len in 0.2f64..1.5) {
        let tol = Tolerances::default();
        let v = random_direction(d, seed + 1);
        let k = stretch(&random_body(d, 8, seed).unwrap(), v.as_slice(), len).unwrap();
        let short = destretch(&k, &v, 0.3 * len, &tol).unwrap();
        let long = destretch(&k, &v, 0.9 * len, &tol).unwrap();
        let eps = 1e-9 * k.scale();
        prop_assert!(long.vertices().iter().all(|x| short.contains(x, eps)));
        prop_assert!(short.vertices().iter().all(|x| k.contains(x, eps)));
        prop_assert!(long.volume() <= short.volume() + eps);
    }
}
