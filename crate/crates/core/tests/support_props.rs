//! Property checks for the support calculus: metric axioms, agreement with
//! the inflation oracle, and the exact affine laws of support evaluation.
//! Inputs come from a dyadic lattice so the closed-form identities can be
//! asserted without tolerance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mnc_core::sample::SetSampler;
use mnc_core::support::{
    brute_force_hausdorff_oracle, eval_support, hausdorff_distance, set_norm, DirectionVector,
};
use mnc_core::StructuredSet;

fn sampler() -> SetSampler {
    SetSampler::new(3)
}

/// Random dyadic direction: an integer budget of 32 thirty-seconds split
/// over a few head coordinates and the tail, with random signs on the head.
fn sample_direction(rng: &mut ChaCha8Rng, block: usize, coords: usize) -> DirectionVector {
    let mut budget = 32i32;
    let mut head = vec![0.0; coords];
    for h in head.iter_mut() {
        let take = rng.gen_range(0..=budget);
        budget -= take;
        *h = take as f64 / 32.0 * if rng.gen_bool(0.5) { -1.0 } else { 1.0 };
    }
    let tail = rng.gen_range(0..=budget) as f64 / 32.0;
    DirectionVector::new(block, head, tail).unwrap()
}

#[test]
fn metric_axioms_on_sampled_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = sampler();
    for _ in 0..40 {
        let a = s.sample(&mut rng).convex_hull();
        let b = s.sample(&mut rng).convex_hull();
        let c = s.sample(&mut rng).convex_hull();
        let dab = hausdorff_distance(&a, &b);
        let dba = hausdorff_distance(&b, &a);
        assert!(dab.value >= 0.0);
        assert_eq!(dab.value, dba.value, "symmetry");
        let daa = hausdorff_distance(&a, &a);
        assert_eq!(daa.value, 0.0, "identity");
        let dac = hausdorff_distance(&a, &c);
        let dbc = hausdorff_distance(&b, &c);
        let slack = 2.0 * (dab.tolerance + dbc.tolerance + dac.tolerance).max(1e-9);
        assert!(
            dac.value <= dab.value + dbc.value + slack,
            "triangle: {} > {} + {}",
            dac.value,
            dab.value,
            dbc.value
        );
    }
}

#[test]
fn distance_to_origin_is_the_set_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let s = sampler();
    let origin = StructuredSet::origin(3);
    for _ in 0..60 {
        let a = s.sample(&mut rng).convex_hull();
        let d = hausdorff_distance(&origin, &a);
        assert!(
            (set_norm(&a) - d.value).abs() <= d.tolerance + 1e-9,
            "norm {} vs distance {} (tol {})",
            set_norm(&a),
            d.value,
            d.tolerance
        );
    }
}

#[test]
fn isometry_against_the_inflation_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let s = sampler();
    for i in 0..60 {
        let dims = 1 + i % 3;
        let a = s.sample_zero_tail_low_dim(&mut rng, dims);
        let b = s.sample_zero_tail_low_dim(&mut rng, dims);
        let fast = hausdorff_distance(&a, &b);
        let slow = brute_force_hausdorff_oracle(&a, &b, 100_000).unwrap();
        assert!(
            (fast.value - slow).abs() <= 1e-3_f64.max(fast.tolerance),
            "dims {dims}: search {} (tol {}) vs oracle {}",
            fast.value,
            fast.tolerance,
            slow
        );
    }
}

#[test]
fn support_is_additive_and_homogeneous_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = sampler();
    for _ in 0..200 {
        let a = s.sample(&mut rng);
        let b = s.sample(&mut rng);
        let block = rng.gen_range(0..3);
        let coords = rng.gen_range(0..=3);
        let dir = sample_direction(&mut rng, block, coords);

        let sum_set = a.minkowski_sum(&b);
        let lhs = eval_support(&sum_set, &dir).value();
        let rhs = eval_support(&a, &dir).value() + eval_support(&b, &dir).value();
        assert_eq!(lhs, rhs, "additivity");

        let k = rng.gen_range(0..=16) as f64 / 4.0;
        let lhs = eval_support(&a.scale(k), &dir).value();
        let rhs = k * eval_support(&a, &dir).value();
        assert_eq!(lhs, rhs, "positive homogeneity, k = {k}");
    }
}

#[test]
fn convexified_union_support_is_the_pointwise_max() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = sampler();
    for _ in 0..100 {
        let a = s.sample(&mut rng);
        let b = s.sample(&mut rng);
        let u = a.convexify_union(&b);
        let block = rng.gen_range(0..3);
        let coords = rng.gen_range(0..=3);
        let dir = sample_direction(&mut rng, block, coords);
        let lhs = eval_support(&u, &dir).value();
        let rhs = eval_support(&a, &dir).value().max(eval_support(&b, &dir).value());
        assert_eq!(lhs, rhs);
        // Idempotence: joining a set with itself changes nothing.
        let uu = a.convexify_union(&a);
        assert_eq!(eval_support(&uu, &dir).value(), eval_support(&a, &dir).value());
    }
}
