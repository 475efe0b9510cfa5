use bonnesen_core::geometry::{section, shapes, stretch, ConvexBody, Direction};
use bonnesen_core::harness::random_body;
use bonnesen_core::harness::rng::SplitMix64;
use bonnesen_core::oracle::grid_section_profile;
use bonnesen_core::{build_profile, SectionProfile};
use proptest::prelude::*;

fn random_direction(d: usize, seed: u64) -> Direction {
    Direction::new(SplitMix64::new(seed).unit_vector(d)).unwrap()
}

fn area_via_section(k: &ConvexBody, u: &Direction, p: f64) -> f64 {
    section(k, u, p)
        .unwrap()
        .map_or(0.0, |s| s.intrinsic_volume())
}

#[test]
fn area_agrees_with_explicit_sections() {
    for seed in 0..10 {
        let k = random_body(3, 15, seed).unwrap();
        let u = random_direction(3, seed + 50);
        let prof = build_profile(&k, &u).unwrap();
        for i in 1..20 {
            let p = prof.p_min + (prof.p_max - prof.p_min) * i as f64 / 20.0;
            let a = prof.area(p);
            let b = area_via_section(&k, &u, p);
            assert!(
                (a - b).abs() <= 1e-9 * prof.q.max(1.0),
                "seed {seed} p {p}: {a} vs {b}"
            );
        }
    }
}

#[test]
fn q_matches_dense_scan() {
    let k = random_body(3, 30, 3).unwrap();
    let u = random_direction(3, 3);
    let prof = build_profile(&k, &u).unwrap();
    let scan = (1..10_000)
        .map(|i| prof.p_min + (prof.p_max - prof.p_min) * i as f64 / 10_000.0)
        .map(|p| area_via_section(&k, &u, p))
        .fold(0.0, f64::max);
    assert!(prof.q >= scan - 1e-12);
    assert!((prof.q - scan) / prof.q <= 1e-4);
}

#[test]
fn level_bounds_are_consistent() {
    for seed in 0..10 {
        let k = random_body(3, 20, 200 + seed).unwrap();
        let u = random_direction(3, 200 + seed);
        let prof = build_profile(&k, &u).unwrap();
        let width = prof.p_max - prof.p_min;
        for j in 1..10 {
            let s = prof.q * j as f64 / 10.0;
            let (lo, hi) = prof.level_bounds(s).unwrap();
            assert!(lo <= hi);
            assert!(prof.area(lo) >= s - 1e-6 * prof.q);
            assert!(prof.area(hi) >= s - 1e-6 * prof.q);
            if hi + 1e-4 * width < prof.p_max {
                assert!(prof.area(hi + 1e-4 * width) < s);
            }
            if lo - 1e-4 * width > prof.p_min {
                assert!(prof.area(lo - 1e-4 * width) < s);
            }
        }
    }
}

#[test]
fn layer_cake_recovers_volume() {
    let k = random_body(3, 20, 5).unwrap();
    let u = random_direction(3, 5);
    let v = build_profile(&k, &u)
        .unwrap()
        .layer_cake_volume(8192)
        .unwrap();
    assert!((v - k.volume()).abs() / k.volume() <= 5e-3);
}

#[test]
fn integrating_areas_over_offsets_recovers_volume() {
    // Simpson's rule in p, independent of the level-set route.
    for seed in 0..10 {
        let k = random_body(3, 14, 400 + seed).unwrap();
        let u = random_direction(3, 400 + seed);
        let prof = build_profile(&k, &u).unwrap();
        let n = 4000;
        let h = (prof.p_max - prof.p_min) / n as f64;
        let mut sum = prof.area(prof.p_min) + prof.area(prof.p_max);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            sum += w * prof.area(prof.p_min + i as f64 * h);
        }
        let v = sum * h / 3.0;
        assert!((v - k.volume()).abs() / k.volume() <= 1e-5, "seed {seed}");
    }
}

#[test]
fn stretched_cube_has_plateau_of_stretch_length() {
    let u = Direction::axis(3, 2);
    let k = stretch(&shapes::cube(3), u.as_slice(), 0.7).unwrap();
    let prof = build_profile(&k, &u).unwrap();
    assert!(prof.has_plateau());
    assert!((prof.q - 1.0).abs() <= 1e-12);
    assert!((prof.q_hi - prof.q_lo - 1.7).abs() <= 1e-6);
}

#[test]
fn translating_moves_the_maximal_slab() {
    let k = random_body(3, 12, 77).unwrap();
    let u = random_direction(3, 77);
    let t = [0.3, -0.2, 0.5];
    let shift: f64 = t.iter().zip(u.as_slice()).map(|(a, b)| a * b).sum();
    let p = build_profile(&k, &u).unwrap();
    let q = build_profile(&k.translate(&t).unwrap(), &u).unwrap();
    assert!((p.q - q.q).abs() <= 1e-9 * p.q);
    assert!((q.p_min - p.p_min - shift).abs() <= 1e-12);
    let argmax = |s: &SectionProfile| 0.5 * (s.q_lo + s.q_hi);
    assert!((argmax(&q) - argmax(&p) - shift).abs() <= 1e-4 * (p.p_max - p.p_min));
}

#[test]
fn grid_profile_agrees_with_exact_profile() {
    let mut suite = vec![
        (shapes::cube(3), Direction::axis(3, 0)),
        (shapes::cross_polytope(3), Direction::axis(3, 2)),
    ];
    suite.extend((0..5).map(|s| {
        (
            random_body(3, 12, 900 + s).unwrap(),
            random_direction(3, 900 + s),
        )
    }));
    for (k, u) in &suite {
        let exact = build_profile(k, u).unwrap();
        let grid = grid_section_profile(k, u, 64, 100).unwrap();
        for (&p, &a) in grid.offsets.iter().zip(&grid.areas) {
            assert!((a - exact.area(p)).abs() <= 0.03 * exact.q + 1e-3);
        }
        let (p_star, _) = grid.argmax();
        let dist = if p_star < exact.q_lo {
            exact.q_lo - p_star
        } else {
            (p_star - exact.q_hi).max(0.0)
        };
        // the grid peak may sit anywhere on a near-flat top
        let near_top = exact.area(p_star) >= exact.q * 0.97;
        assert!(dist <= 2.0 * grid.step() || near_top);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn profile_is_unimodal(seed in 0u64..10_000, d in 2usize..=4) {
        let k = random_body(d, 6 + (seed % 15) as usize, seed).unwrap();
        let u = random_direction(d, seed ^ 0x55);
        let prof = build_profile(&k, &u).unwrap();
        let tol = 1e-9 * prof.q.max(1.0);
        let areas: Vec<f64> = (0..200)
            .map(|i| prof.p_min + (prof.p_max - prof.p_min) * (i as f64 + 0.5) / 200.0)
            .map(|p| prof.area(p))
            .collect();
        let peak = areas.iter().cloned().fold(0.0, f64::max);
        prop_assert!(peak <= prof.q + tol);
        let top = areas.iter().position(|&a| a == peak).unwrap();
        for w in areas[..=top].windows(2) {
            prop_assert!(w[1] >= w[0] - tol);
        }
        for w in areas[top..].windows(2) {
            prop_assert!(w[1] <= w[0] + tol);
        }
    }

    #[test]
    fn profile_scales_with_dilation(seed in 0u64..10_000, c in 0.2f64..3.0) {
        let k = random_body(3, 12, seed).unwrap();
        let u = random_direction(3, seed);
        let p = build_profile(&k, &u).unwrap();
        let q = build_profile(&k.affine_image(c, &[0.0; 3]).unwrap(), &u).unwrap();
        prop_assert!((q.q - c * c * p.q).abs() <= 1e-8 * q.q);
    }
}
