use std::f64::consts::TAU;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use escape_core::certificate::{certificate_from_profile, Envelope};
use escape_core::geometry::{Point, Polygon, RadialProfile};
use escape_core::lowerbound::periodic_rearrangement;
use escape_core::oracle::{random_kernel_point, random_star_polygon};
use escape_core::render::{certificate_scene, render_scene};
use escape_core::spiral::{escape, optimal_beta, worst_case_escape, SpiralParams, RATIO_BOUND};

fn instance(seed: u64) -> (Polygon, Point) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = random_star_polygon(&mut rng);
    let s = random_kernel_point(&mut rng, &p, 0.2, 1e-3);
    (p, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn certificate_between_disk_bounds(seed in any::<u64>()) {
        let (p, s) = instance(seed);
        let profile = RadialProfile::new(&p, s).unwrap();
        let c = certificate_from_profile(&profile).unwrap();
        let d = profile.min_distance();
        prop_assert!(c.length >= d * (1.0 - 1e-12));
        prop_assert!(c.length <= d * (1.0 + TAU) * (1.0 + 1e-12));
        prop_assert!(c.length <= profile.max_distance() * (1.0 + 1e-12));
        prop_assert!((0.0..=TAU).contains(&c.alpha_star));
        prop_assert!(c.candidate_count <= 4 * p.len());
        prop_assert!((c.x_star * (1.0 + c.alpha_star) - c.length).abs() <= 1e-12 * c.length);
    }

    #[test]
    fn envelope_matches_boundary_hits(seed in any::<u64>(), t in 0.0f64..1.0) {
        let (p, s) = instance(seed);
        let profile = RadialProfile::new(&p, s).unwrap();
        let env = Envelope::build(&profile).unwrap();
        let x = profile.min_distance() + t * (profile.max_distance() - profile.min_distance());
        let alpha = env.alpha(x);
        prop_assert!((alpha - profile.max_inside_arc(x)).abs() <= 1e-9);
        for i in env.alive_at(x) {
            prop_assert!(env.candidates[i].arc(x).unwrap() <= alpha + 1e-12);
        }
    }

    #[test]
    fn spiral_ratio_bounded(seed in any::<u64>()) {
        let (p, s) = instance(seed);
        let profile = RadialProfile::new(&p, s).unwrap();
        let cert = certificate_from_profile(&profile).unwrap();
        let (_, worst) = worst_case_escape(&p, s, optimal_beta(), 360).unwrap();
        prop_assert!(worst >= cert.length * (1.0 - 1e-9));
        prop_assert!(worst / cert.length <= RATIO_BOUND + 1e-6);
    }

    #[test]
    fn spiral_scale_invariant(seed in any::<u64>(), k in 0.01f64..100.0, rot in 0.0f64..TAU) {
        let (p, s) = instance(seed);
        let d = p.boundary_distance(s);
        let params = SpiralParams { rotation: rot, ..SpiralParams::for_distance(d) };
        let base = escape(&p, s, params).unwrap();
        let scaled_params = SpiralParams { rotation: rot, ..SpiralParams::for_distance(k * d) };
        let scaled = escape(&p.scaled(k), s * k, scaled_params).unwrap();
        prop_assert!((scaled.path_length - k * base.path_length).abs() <= 1e-8 * k * base.path_length);
    }

    #[test]
    fn rearrangement_never_longer(
        n in prop::sample::select(vec![3usize, 4, 8, 16]),
        steps in prop::collection::vec((0usize..16, 0.01f64..5.0), 1..80),
    ) {
        let mut depth = vec![0.0f64; n];
        let mut visits: Vec<(usize, f64)> = (0..n).map(|j| { depth[j] = 0.5; (j, 0.5) }).collect();
        for (ray, step) in steps {
            let ray = ray % n;
            depth[ray] += step;
            visits.push((ray, depth[ray]));
        }
        let r = periodic_rearrangement(n, &visits).unwrap();
        prop_assert!(r.holds(1e-12), "{:?}", r);
    }

    #[test]
    fn render_is_deterministic(seed in any::<u64>()) {
        let (p, s) = instance(seed);
        let profile = RadialProfile::new(&p, s).unwrap();
        let cert = certificate_from_profile(&profile).unwrap();
        let a = render_scene(&certificate_scene(&p, s, &cert)).unwrap();
        let b = render_scene(&certificate_scene(&p, s, &cert)).unwrap();
        prop_assert_eq!(a, b);
    }
}
